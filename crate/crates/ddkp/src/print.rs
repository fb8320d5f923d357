//! Canonical text and LaTeX rendering.

use std::cmp::{Ordering, Reverse};
use std::fmt::Write;

use ddkp_core::symmetry::TimePolynomial;
use ddkp_core::{Atom, Expression, Jet, Monomial, Rational};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// The canonical source form; parsing it gives back the same normal form.
pub fn print_canonical(e: &Expression) -> String {
    e.to_string()
}

/// Things that render as a LaTeX math-mode string.
pub trait Latex {
    fn latex(&self) -> String;
}

/// LaTeX in the conventional notation: `u_{x}`, `u_{m,j}`, `\Theta^{d}(...)`.
pub fn print_latex<T: Latex + ?Sized>(value: &T) -> String {
    value.latex()
}

impl Latex for Expression {
    fn latex(&self) -> String {
        let mut out = String::new();
        write_expression(&mut out, self);
        out
    }
}

impl Latex for TimePolynomial {
    fn latex(&self) -> String {
        let mut out = String::new();
        for (k, e) in self.terms() {
            let mut content = if *k == 0 { Rational::one() } else { content(e) };
            if let Some(lead) = display_order(e).first().filter(|_| *k > 0) {
                if lead.coeff().is_negative() {
                    content = -content;
                }
            }
            let inner = e.scale(&content.recip());
            if content.is_negative() {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let c = content.abs();
            if !c.is_one() {
                write_rational(&mut out, &c);
            }
            match k {
                0 => {}
                1 => out.push('t'),
                k => {
                    out.push('t');
                    write_exponent(&mut out, *k);
                }
            }
            out.push('(');
            write_expression(&mut out, &inner);
            out.push(')');
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Positive rational `c` with `e / c` having coprime integer coefficients.
fn content(e: &Expression) -> Rational {
    let mut num = num_bigint::BigInt::zero();
    let mut den = num_bigint::BigInt::one();
    for t in e.terms() {
        num = num.gcd(t.coeff().numer());
        den = den.lcm(t.coeff().denom());
    }
    if num.is_zero() {
        Rational::one()
    } else {
        Rational::new(num, den)
    }
}

/// Terms in reading order: explicit `x` and `n` first, then local terms by
/// degree and highest derivative, then nonlocal ones.
fn display_order(e: &Expression) -> Vec<&Monomial> {
    let mut terms: Vec<&Monomial> = e.terms().iter().collect();
    terms.sort_by(|a, b| display_key(a, b));
    terms
}

fn display_key(a: &Monomial, b: &Monomial) -> Ordering {
    let key = |m: &Monomial| {
        let top = m.jets().iter().map(|(j, _)| j.order).max().unwrap_or(0);
        (
            Reverse(m.xdeg()),
            Reverse(m.ndeg()),
            !m.atoms().is_empty(),
            m.jet_degree(),
            Reverse(top),
        )
    };
    key(a).cmp(&key(b)).then_with(|| a.key_cmp(b))
}

fn write_expression(out: &mut String, e: &Expression) {
    let terms = display_order(e);
    if terms.is_empty() {
        out.push('0');
        return;
    }
    for (i, t) in terms.into_iter().enumerate() {
        if t.coeff().is_negative() {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        let c = t.coeff().abs();
        let bare = t.xdeg() == 0 && t.ndeg() == 0 && t.is_scalar();
        if !c.is_one() || bare {
            write_rational(out, &c);
        }
        write_factors(out, t);
    }
}

fn write_rational(out: &mut String, c: &Rational) {
    if c.is_integer() {
        write!(out, "{}", c.numer()).expect("string write");
    } else {
        write!(out, "\\frac{{{}}}{{{}}}", c.numer(), c.denom()).expect("string write");
    }
}

fn write_exponent(out: &mut String, e: u32) {
    match e {
        1 => {}
        2..=9 => write!(out, "^{e}").expect("string write"),
        _ => write!(out, "^{{{e}}}").expect("string write"),
    }
}

fn write_factors(out: &mut String, m: &Monomial) {
    if m.xdeg() > 0 {
        out.push('x');
        write_exponent(out, m.xdeg());
    }
    if m.ndeg() > 0 {
        out.push('n');
        write_exponent(out, m.ndeg());
    }
    for (j, e) in m.jets() {
        write_jet(out, *j);
        write_exponent(out, *e);
    }
    for (a, e) in m.atoms() {
        write_atom(out, a);
        write_exponent(out, *e);
    }
}

fn write_jet(out: &mut String, j: Jet) {
    match (j.shift, j.order) {
        (0, 0) => out.push('u'),
        (0, k) => write!(out, "u_{{{}}}", "x".repeat(k as usize)).expect("string write"),
        (m, k) => write!(out, "u_{{{m},{k}}}").expect("string write"),
    }
}

/// `Δ^{-d}(u_{m,k})` with `k >= d` is `Θ^d(u_{m,k-d})`.
fn theta_chain(a: &Atom) -> Option<(u32, Jet)> {
    let core = a.core();
    let alone = core.xdeg() == 0 && core.ndeg() == 0;
    match (core.jets(), core.atoms()) {
        ([(j, 1)], []) if alone && j.order >= 1 => Some((1, Jet::new(j.shift, j.order - 1))),
        ([], [(inner, 1)]) if alone => {
            let (d, j) = theta_chain(inner)?;
            (j.order >= 1).then(|| (d + 1, Jet::new(j.shift, j.order - 1)))
        }
        _ => None,
    }
}

fn write_atom(out: &mut String, a: &Atom) {
    if let Some((d, j)) = theta_chain(a) {
        out.push_str("\\Theta");
        if d > 1 {
            write_exponent(out, d);
        }
        out.push('(');
        write_jet(out, j);
        out.push(')');
    } else {
        out.push_str("(\\mathcal{S}-1)^{-1}\\left(");
        let mut core = String::new();
        write_factors(&mut core, a.core());
        out.push_str(&core);
        out.push_str("\\right)");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;
    use ddkp_core::symmetry::{builtin, BuiltinName, Suite};

    fn strip(s: &str) -> String {
        s.chars().filter(|c| !c.is_whitespace()).collect()
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(print_canonical(&builtin(BuiltinName::N)), "-1/2*x");
        assert_eq!(print_canonical(&Expression::zero()), "0");
        assert_eq!(
            print_canonical(&builtin(BuiltinName::W)),
            "n*u[0,1] + x*u[0,2] + 3*Dinv(u[0,1]) + 2*x*Dinv(u[0,2]) + u^2 + 2*x*u*u[0,1]"
        );
    }

    #[test]
    fn latex_examples() {
        assert_eq!(strip(&print_latex(&builtin(BuiltinName::H))), "-xu_{x}-u");
        assert_eq!(
            print_latex(&builtin(BuiltinName::K)),
            "u_{xx}+2uu_{x}+2\\Theta(u_{x})"
        );
        assert_eq!(
            print_latex(&builtin(BuiltinName::W)),
            "xu_{xx}+2xuu_{x}+2x\\Theta(u_{x})+nu_{x}+u^2+3\\Theta(u)"
        );
        assert_eq!(
            print_latex(&parse("Theta(u[0,1])").unwrap()),
            "\\Theta(u_{x})"
        );
        assert_eq!(
            print_latex(&parse("Theta(Theta(u[0,1]))").unwrap()),
            "\\Theta^2(u_{x})"
        );
        assert_eq!(
            print_latex(&parse("Dinv(u*u[0,1])").unwrap()),
            "(\\mathcal{S}-1)^{-1}\\left(uu_{x}\\right)"
        );
        assert_eq!(
            print_latex(&parse("1/2*u[-1,3]^2").unwrap()),
            "\\frac{1}{2}u_{-1,3}^2"
        );
        assert_eq!(print_latex(&Expression::zero()), "0");
    }

    #[test]
    fn time_polynomial_latex() {
        let s = Suite::default();
        let ts = s.time_symmetry(&builtin(BuiltinName::H), 8).unwrap();
        assert_eq!(
            print_latex(&ts.polynomial),
            "(-xu_{x}-u)+2t(u_{xx}+2uu_{x}+2\\Theta(u_{x}))"
        );
        let ts = s.time_symmetry(&parse("x").unwrap(), 8).unwrap();
        assert_eq!(
            print_latex(&ts.polynomial),
            "(x)-2t(xu_{x}+u)+2t^2(u_{xx}+2uu_{x}+2\\Theta(u_{x}))"
        );
    }
}
