//! Recursive-descent parser for the expression language.
//!
//! ```text
//! expr   := [ "+" | "-" ] term { ("+" | "-") term }
//! term   := factor { "*" factor }
//! factor := atom [ "^" uint ]
//! atom   := rational | "x" | "n" | "u" [ "[" int "," uint "]" ]
//!         | "Theta" "(" expr ")" | "Dinv" "(" expr ")" | "Dx" "(" expr ")"
//!         | "S" [ "^" int ] "(" expr ")" | builtin | "(" expr ")"
//! ```

use std::fmt;

use ddkp_core::symmetry::BuiltinName;
use ddkp_core::{normalize, Expression, Jet, Rational, Tree};

use crate::error::Error;

/// A syntax error with its 1-based position and the tokens that would have
/// been accepted there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub found: String,
    pub expected: Vec<String>,
    pub message: Option<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.line, self.column)?;
        if let Some(m) = &self.message {
            return write!(f, "{m}");
        }
        write!(f, "unexpected {}", self.found)?;
        if !self.expected.is_empty() {
            write!(f, ", expected one of: {}", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

const BUILTINS: [BuiltinName; 7] = [
    BuiltinName::K,
    BuiltinName::G3,
    BuiltinName::W,
    BuiltinName::M,
    BuiltinName::N,
    BuiltinName::H,
    BuiltinName::N2,
];

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(s) => write!(f, "number `{s}`"),
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next().expect("peeked");
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut s = String::new();
            while chars.peek().is_some_and(char::is_ascii_digit) {
                s.push(bump(&mut chars));
            }
            Tok::Num(s)
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while chars
                .peek()
                .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
            {
                s.push(bump(&mut chars));
            }
            Tok::Ident(s)
        } else if "+-*/^()[],".contains(c) {
            Tok::Sym(bump(&mut chars))
        } else {
            return Err(ParseError {
                line: l,
                column: col,
                found: format!("character `{c}`"),
                expected: Vec::new(),
                message: None,
            });
        };
        out.push(Spanned {
            tok,
            line: l,
            column: col,
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

fn expected(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

const ATOM_START: [&str; 15] = [
    "number", "x", "n", "u", "Theta", "Dinv", "Dx", "S", "K", "G3", "W", "M", "N", "H", "N2",
];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, at: &Spanned, expected: Vec<String>) -> ParseError {
        ParseError {
            line: at.line,
            column: at.column,
            found: at.tok.to_string(),
            expected,
            message: None,
        }
    }

    fn fail<T>(&self, expected: Vec<String>) -> Result<T, ParseError> {
        Err(self.error_at(&self.toks[self.pos], expected))
    }

    fn fail_msg<T>(&self, at: &Spanned, message: String) -> Result<T, ParseError> {
        let mut e = self.error_at(at, Vec::new());
        e.message = Some(message);
        Err(e)
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail(vec![format!("`{c}`")])
        }
    }

    fn uint(&mut self) -> Result<u32, ParseError> {
        let at = self.toks[self.pos].clone();
        match &at.tok {
            Tok::Num(s) => {
                self.next();
                s.parse()
                    .or_else(|_| self.fail_msg(&at, format!("integer `{s}` is too large")))
            }
            _ => self.fail(expected(&["non-negative integer"])),
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let negative = self.eat('-');
        let at = self.toks[self.pos].clone();
        match &at.tok {
            Tok::Num(s) => {
                self.next();
                let v: i64 = s
                    .parse()
                    .or_else(|_| self.fail_msg(&at, format!("integer `{s}` is too large")))?;
                Ok(if negative { -v } else { v })
            }
            _ => self.fail(expected(&["integer"])),
        }
    }

    fn expr(&mut self) -> Result<Tree, ParseError> {
        let mut items = Vec::new();
        let mut negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let t = self.term()?;
            items.push(if negate { Tree::Neg(Box::new(t)) } else { t });
            negate = match self.peek() {
                Tok::Sym('+') => false,
                Tok::Sym('-') => true,
                _ => break,
            };
            self.next();
        }
        Ok(if items.len() == 1 {
            items.pop().expect("one item")
        } else {
            Tree::Add(items)
        })
    }

    fn term(&mut self) -> Result<Tree, ParseError> {
        let mut items = vec![self.factor()?];
        while self.eat('*') {
            items.push(self.factor()?);
        }
        Ok(if items.len() == 1 {
            items.pop().expect("one item")
        } else {
            Tree::Mul(items)
        })
    }

    fn factor(&mut self) -> Result<Tree, ParseError> {
        let a = self.atom()?;
        if self.eat('^') {
            let k = self.uint()?;
            return Ok(Tree::Pow(Box::new(a), k));
        }
        Ok(a)
    }

    fn call(&mut self) -> Result<Box<Tree>, ParseError> {
        self.expect('(')?;
        let e = self.expr()?;
        self.expect(')')?;
        Ok(Box::new(e))
    }

    fn atom(&mut self) -> Result<Tree, ParseError> {
        let at = self.toks[self.pos].clone();
        match &at.tok {
            Tok::Num(s) => {
                self.next();
                let mut text = s.clone();
                if self.eat('/') {
                    let d = self.toks[self.pos].clone();
                    match &d.tok {
                        Tok::Num(den) if den.trim_start_matches('0').is_empty() => {
                            return self.fail_msg(&d, "zero denominator".into());
                        }
                        Tok::Num(den) => {
                            text = format!("{text}/{den}");
                            self.next();
                        }
                        _ => return self.fail(expected(&["denominator"])),
                    }
                }
                let value: Rational = text.parse().expect("digits form a rational");
                Ok(Tree::Const(value))
            }
            Tok::Sym('(') => {
                self.next();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.next();
                match name.as_str() {
                    "x" => Ok(Tree::X),
                    "n" => Ok(Tree::N),
                    "u" => {
                        if !self.eat('[') {
                            return Ok(Tree::Jet(Jet::U));
                        }
                        let shift = self.int()?;
                        self.expect(',')?;
                        if *self.peek() == Tok::Sym('-') {
                            let at = self.toks[self.pos].clone();
                            return self
                                .fail_msg(&at, "derivative order must be non-negative".into());
                        }
                        let order = self.uint()?;
                        self.expect(']')?;
                        Ok(Tree::Jet(Jet::new(shift, order)))
                    }
                    "Theta" => Ok(Tree::Theta(self.call()?)),
                    "Dinv" => Ok(Tree::Dinv(self.call()?)),
                    "Dx" => Ok(Tree::Dx(self.call()?)),
                    "S" => {
                        let k = if self.eat('^') { self.int()? } else { 1 };
                        Ok(Tree::Shift(k, self.call()?))
                    }
                    "t" => self.fail_msg(
                        &at,
                        "`t` is not an expression variable; time enters only through time-dependent symmetries".into(),
                    ),
                    other => match BUILTINS.iter().find(|b| b.as_str() == other) {
                        Some(b) => Ok(Tree::Builtin(*b)),
                        None => Err(self.error_at(&at, expected(&ATOM_START))),
                    },
                }
            }
            _ => self.fail(expected(&ATOM_START)),
        }
    }
}

/// Parses source text into an unnormalized tree.
pub fn parse_tree(src: &str) -> Result<Tree, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail(expected(&["`+`", "`-`", "`*`", "`^`", "end of input"]));
    }
    Ok(e)
}

/// Parses and normalizes. `Δ⁻¹` of a pure coefficient is rejected.
pub fn parse(src: &str) -> Result<Expression, Error> {
    Ok(normalize(&parse_tree(src)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ddkp_core::symmetry::builtin;
    use ddkp_core::Error as CoreError;

    #[test]
    fn examples() {
        let e = parse("u[0,1] + 2*u*u[0,1]").unwrap();
        let want = &Expression::u(1)
            + &(&Expression::u(0) * &Expression::u(1)).scale(&ddkp_core::rational::int(2));
        assert_eq!(e, want);
        assert_eq!(parse("K").unwrap(), builtin(BuiltinName::K));
        assert!(parse("Theta(u) - Dinv(Dx(u))").unwrap().is_zero());
        assert_eq!(parse("-1/2*x").unwrap(), builtin(BuiltinName::N));
    }

    #[test]
    fn shifts_and_powers() {
        assert_eq!(
            parse("S^-1(u[1,2])").unwrap(),
            Expression::jet(Jet::new(0, 2))
        );
        assert_eq!(parse("S(u)^2").unwrap(), parse("u[1,0]*u[1,0]").unwrap());
        assert_eq!(parse("(x + 1)^0").unwrap(), Expression::one());
    }

    #[test]
    fn positioned_errors() {
        let e = parse_tree("u +\n  t").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        let e = parse_tree("u[0,-1]").unwrap_err();
        assert_eq!(e.column, 5);
        let e = parse_tree("u^-1").unwrap_err();
        assert_eq!(e.column, 3);
        assert_eq!(e.expected, vec!["non-negative integer".to_string()]);
        let e = parse_tree("u^1.5").unwrap_err();
        assert_eq!(e.column, 4);
        let e = parse_tree("u^1/2").unwrap_err();
        assert_eq!(e.column, 4);
        let e = parse_tree("2 * ").unwrap_err();
        assert!(e.expected.contains(&"Theta".to_string()));
        assert!(parse_tree("1/0").is_err());
        assert!(parse_tree("UX").is_err());
        assert!(parse_tree("(u").unwrap_err().to_string().contains("`)`"));
    }

    #[test]
    fn non_summable_is_an_engine_error() {
        assert!(matches!(
            parse("Theta(x)"),
            Err(Error::Engine(CoreError::NonSummableAtom { .. }))
        ));
    }
}
