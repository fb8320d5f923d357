//! Fréchet derivatives and the Lie bracket.
//!
//! `F_*(V)` is computed directly on normal forms: a jet `u_{m,j}` linearizes
//! to `S^m D_x^j V`, coefficients in `x` and `n` are constants, and an atom
//! `Δ⁻¹(g)` linearizes to `Δ⁻¹(g_*(V))`. The operator presentation
//! `F_* = Σ ∂F/∂u_{i,j} S^i D_x^j` returned by [`frechet_operator`] is only
//! used for display and as a cross-check of that path.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Display, Formatter};

use num_traits::One;

use crate::calculus::{dx, shift};
use crate::dinv::{apply_dinv_with, Summation};
use crate::error::Result;
use crate::expr::{Atom, Expression, Jet, Monomial};
use crate::rational::int;

/// Which side the fixed element sits on in an adjoint action.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `X -> [A, X]`
    #[default]
    Left,
    /// `X -> [X, A]`
    Right,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Left => Orientation::Right,
            Orientation::Right => Orientation::Left,
        }
    }
}

pub fn directional_derivative(f: &Expression, v: &Expression) -> Result<Expression> {
    directional_derivative_with(f, v, Summation::QuasiLocal)
}

/// `F_*(V)`.
pub fn directional_derivative_with(
    f: &Expression,
    v: &Expression,
    summation: Summation,
) -> Result<Expression> {
    Linearizer::new(v, summation).expression(f)
}

struct Linearizer<'a> {
    direction: &'a Expression,
    summation: Summation,
    derivatives: Vec<Expression>,
    jets: BTreeMap<Jet, Expression>,
    atoms: BTreeMap<Atom, Expression>,
}

impl<'a> Linearizer<'a> {
    fn new(direction: &'a Expression, summation: Summation) -> Self {
        Linearizer {
            direction,
            summation,
            derivatives: vec![direction.clone()],
            jets: BTreeMap::new(),
            atoms: BTreeMap::new(),
        }
    }

    fn jet(&mut self, jet: Jet) -> &Expression {
        if !self.jets.contains_key(&jet) {
            while self.derivatives.len() <= jet.order as usize {
                let next = dx(self.derivatives.last().unwrap_or(self.direction));
                self.derivatives.push(next);
            }
            let value = shift(&self.derivatives[jet.order as usize], jet.shift);
            self.jets.insert(jet, value);
        }
        &self.jets[&jet]
    }

    fn atom(&mut self, atom: &Atom) -> Result<&Expression> {
        if !self.atoms.contains_key(atom) {
            let inner = self.monomial(atom.core())?;
            let value = apply_dinv_with(&inner, self.summation)?;
            self.atoms.insert(atom.clone(), value);
        }
        Ok(&self.atoms[atom])
    }

    fn expression(&mut self, f: &Expression) -> Result<Expression> {
        let mut terms = Vec::new();
        for t in f.terms() {
            self.push_monomial(t, &mut terms)?;
        }
        Ok(Expression::from_terms(terms))
    }

    fn monomial(&mut self, m: &Monomial) -> Result<Expression> {
        let mut terms = Vec::new();
        self.push_monomial(m, &mut terms)?;
        Ok(Expression::from_terms(terms))
    }

    fn push_monomial(&mut self, m: &Monomial, out: &mut Vec<Monomial>) -> Result<()> {
        for (i, (jet, e)) in m.jets().iter().enumerate() {
            let rest = m.without_one_jet(i);
            let rest = rest.clone().with_coeff(rest.coeff() * int(i64::from(*e)));
            out.extend(self.jet(*jet).terms().iter().map(|t| t.mul(&rest)));
        }
        for (i, (atom, e)) in m.atoms().iter().enumerate() {
            let rest = m.without_one_atom(i);
            let rest = rest.clone().with_coeff(rest.coeff() * int(i64::from(*e)));
            out.extend(self.atom(atom)?.terms().iter().map(|t| t.mul(&rest)));
        }
        Ok(())
    }
}

pub fn lie_bracket(f: &Expression, g: &Expression) -> Result<Expression> {
    lie_bracket_with(f, g, Summation::QuasiLocal)
}

/// `[F, G] = F_*(G) - G_*(F)`.
pub fn lie_bracket_with(
    f: &Expression,
    g: &Expression,
    summation: Summation,
) -> Result<Expression> {
    let fg = directional_derivative_with(f, g, summation)?;
    let gf = directional_derivative_with(g, f, summation)?;
    Ok(fg - gf)
}

pub fn ad_power(
    a: &Expression,
    x: &Expression,
    k: usize,
    orientation: Orientation,
) -> Result<Expression> {
    ad_power_with(a, x, k, orientation, Summation::QuasiLocal)
}

/// `ad_A^k X`, iterating `X -> [A, X]` (left) or `X -> [X, A]` (right).
pub fn ad_power_with(
    a: &Expression,
    x: &Expression,
    k: usize,
    orientation: Orientation,
    summation: Summation,
) -> Result<Expression> {
    let mut acc = x.clone();
    for _ in 0..k {
        if acc.is_zero() {
            break;
        }
        acc = match orientation {
            Orientation::Left => lie_bracket_with(a, &acc, summation)?,
            Orientation::Right => lie_bracket_with(&acc, a, summation)?,
        };
    }
    Ok(acc)
}

/// One primitive of an operator word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpSymbol {
    Shift(i64),
    Dx(u32),
    Dinv,
    Mul(Expression),
}

/// A composition of primitives, applied right to left.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OperatorWord(pub Vec<OpSymbol>);

impl OperatorWord {
    fn for_jet(jet: Jet) -> Self {
        let mut word = Vec::new();
        if jet.shift != 0 {
            word.push(OpSymbol::Shift(jet.shift));
        }
        if jet.order != 0 {
            word.push(OpSymbol::Dx(jet.order));
        }
        OperatorWord(word)
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, v: &Expression, summation: Summation) -> Result<Expression> {
        let mut acc = v.clone();
        for sym in self.0.iter().rev() {
            acc = match sym {
                OpSymbol::Shift(k) => shift(&acc, *k),
                OpSymbol::Dx(j) => (0..*j).fold(acc, |a, _| dx(&a)),
                OpSymbol::Dinv => apply_dinv_with(&acc, summation)?,
                OpSymbol::Mul(e) => e * &acc,
            };
        }
        Ok(acc)
    }
}

/// `coeff · word` in the operator presentation of a Fréchet derivative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrechetTerm {
    pub coeff: Expression,
    pub word: OperatorWord,
}

/// `F_*` as a list of `∂F/∂(factor) · word`. Atoms expand through the chain
/// rule into words starting with `Δ⁻¹`.
pub fn frechet_operator(f: &Expression) -> Vec<FrechetTerm> {
    let mut jets: BTreeMap<Jet, Vec<Monomial>> = BTreeMap::new();
    let mut atoms: BTreeMap<Atom, Vec<Monomial>> = BTreeMap::new();
    for m in f.terms() {
        for (i, (jet, e)) in m.jets().iter().enumerate() {
            let rest = m.without_one_jet(i);
            let c = rest.coeff() * int(i64::from(*e));
            jets.entry(*jet).or_default().push(rest.with_coeff(c));
        }
        for (i, (atom, e)) in m.atoms().iter().enumerate() {
            let rest = m.without_one_atom(i);
            let c = rest.coeff() * int(i64::from(*e));
            atoms
                .entry(atom.clone())
                .or_default()
                .push(rest.with_coeff(c));
        }
    }
    let mut out = Vec::new();
    for (jet, partial) in jets {
        let coeff = Expression::from_terms(partial);
        if !coeff.is_zero() {
            out.push(FrechetTerm {
                coeff,
                word: OperatorWord::for_jet(jet),
            });
        }
    }
    for (atom, partial) in atoms {
        let coeff = Expression::from_terms(partial);
        if coeff.is_zero() {
            continue;
        }
        for inner in frechet_operator(&atom.argument()) {
            let mut word = vec![OpSymbol::Dinv];
            if inner.coeff.as_constant().is_none_or(|c| !c.is_one()) {
                word.push(OpSymbol::Mul(inner.coeff));
            }
            word.extend(inner.word.0);
            out.push(FrechetTerm {
                coeff: coeff.clone(),
                word: OperatorWord(word),
            });
        }
    }
    out
}

/// Applies an operator presentation term by term.
pub fn apply_operator(
    op: &[FrechetTerm],
    v: &Expression,
    summation: Summation,
) -> Result<Expression> {
    let mut terms = Vec::new();
    for t in op {
        let applied = t.word.apply(v, summation)?;
        terms.extend((&t.coeff * &applied).into_terms());
    }
    Ok(Expression::from_terms(terms))
}

impl Display for OpSymbol {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            OpSymbol::Shift(1) => f.write_str("S"),
            OpSymbol::Shift(k) => write!(f, "S^{k}"),
            OpSymbol::Dx(1) => f.write_str("Dx"),
            OpSymbol::Dx(j) => write!(f, "Dx^{j}"),
            OpSymbol::Dinv => f.write_str("Dinv"),
            OpSymbol::Mul(e) => write!(f, "({e})"),
        }
    }
}

impl Display for OperatorWord {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl Display for FrechetTerm {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match (self.coeff.as_constant(), self.word.is_identity()) {
            (Some(c), false) if c.is_one() => write!(f, "{}", self.word),
            (_, true) => write!(f, "({})", self.coeff),
            _ => write!(f, "({}) {}", self.coeff, self.word),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dinv::theta;
    use crate::rational::ratio;
    use crate::symmetry::builtin::{builtin, BuiltinName};

    fn u() -> Expression {
        Expression::u(0)
    }

    #[test]
    fn derivative_examples() {
        let v = &Expression::u(3) + &(&u() * &Expression::x());
        let sq = directional_derivative(&(&u() * &u()), &v).unwrap();
        assert_eq!(sq, (&u() * &v).scale(&int(2)));
        let s1 = Expression::jet(Jet::new(1, 0));
        assert_eq!(directional_derivative(&s1, &v).unwrap(), shift(&v, 1));
        let th = theta(&u()).unwrap();
        assert_eq!(directional_derivative(&th, &v).unwrap(), theta(&v).unwrap());
    }

    #[test]
    fn frechet_of_k() {
        let k = builtin(BuiltinName::K);
        let op = frechet_operator(&k);
        let expected = [
            (&Expression::u(1).scale(&int(2)), OperatorWord(vec![])),
            (&u().scale(&int(2)), OperatorWord(vec![OpSymbol::Dx(1)])),
            (&Expression::one(), OperatorWord(vec![OpSymbol::Dx(2)])),
            (
                &Expression::int(2),
                OperatorWord(vec![OpSymbol::Dinv, OpSymbol::Dx(2)]),
            ),
        ];
        assert_eq!(op.len(), expected.len());
        for (t, (c, w)) in op.iter().zip(expected) {
            assert_eq!(&t.coeff, c);
            assert_eq!(t.word, w);
        }
        let v = &(&Expression::n() * &u()) + &Expression::u(2).pow(2);
        let direct = directional_derivative(&k, &v).unwrap();
        assert_eq!(
            apply_operator(&op, &v, Summation::QuasiLocal).unwrap(),
            direct
        );
    }

    #[test]
    fn frechet_of_n_and_h() {
        assert!(frechet_operator(&builtin(BuiltinName::N)).is_empty());
        let op = frechet_operator(&builtin(BuiltinName::H));
        assert_eq!(op.len(), 2);
        assert_eq!(op[0].coeff, Expression::int(-1));
        assert!(op[0].word.is_identity());
        assert_eq!(op[1].coeff, -Expression::x());
        assert_eq!(op[1].word, OperatorWord(vec![OpSymbol::Dx(1)]));
    }

    #[test]
    fn sl2_brackets() {
        let k = builtin(BuiltinName::K);
        let n = builtin(BuiltinName::N);
        let h = builtin(BuiltinName::H);
        assert_eq!(lie_bracket(&k, &n).unwrap(), h);
        assert_eq!(lie_bracket(&h, &n).unwrap(), n.scale(&int(-2)));
        assert_eq!(lie_bracket(&h, &k).unwrap(), k.scale(&int(2)));
        assert_eq!(n.scale(&int(-2)), Expression::x());
        assert_eq!(n, Expression::x().scale(&ratio(-1, 2)));
    }

    #[test]
    fn adjoint_powers() {
        let k = builtin(BuiltinName::K);
        let n = builtin(BuiltinName::N);
        assert!(ad_power(&k, &k, 1, Orientation::Left).unwrap().is_zero());
        assert_eq!(ad_power(&n, &k, 0, Orientation::Right).unwrap(), k);
        assert_eq!(
            ad_power(&n, &k, 1, Orientation::Right).unwrap(),
            builtin(BuiltinName::H)
        );
        assert_eq!(
            ad_power(&n, &k, 2, Orientation::Right).unwrap(),
            Expression::x()
        );
    }
}
