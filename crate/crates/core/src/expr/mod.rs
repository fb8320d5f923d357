//! Normalized quasi-local expressions.
//!
//! An [`Expression`] is a sum of [`Monomial`]s
//!
//! ```text
//! c · x^a · n^b · Π u_{m,j}^e · Π Δ⁻¹(core)^e
//! ```
//!
//! where `Δ⁻¹ = (S-1)^{-1}` and every `core` is itself a coefficient-free
//! monomial (rational coefficient 1, no `x`, no `n`). Linearity and the
//! `x`/`n` rules of [`crate::dinv`] guarantee that any application of `Δ⁻¹`
//! can be brought into this shape, so atoms are free commuting generators
//! indexed by their cores.
//!
//! Terms are kept in one global order (see [`Monomial::key_cmp`]) with no
//! repeated keys and no zero coefficients; structural equality is therefore
//! equality of normal forms.

mod display;

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::{int, Rational};

/// `u_{m,j} = S^m D_x^j u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Jet {
    pub shift: i64,
    pub order: u32,
}

impl Jet {
    pub const U: Jet = Jet { shift: 0, order: 0 };

    pub const fn new(shift: i64, order: u32) -> Self {
        Jet { shift, order }
    }

    /// `u_{0,j}`.
    pub const fn dx(order: u32) -> Self {
        Jet { shift: 0, order }
    }
}

/// `Δ⁻¹(core)`: the formal `(S-1)^{-1}` of a coefficient-free monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Atom {
    core: Arc<Monomial>,
    depth: u32,
    degree: u32,
}

impl Atom {
    /// Caller guarantees `core` is coefficient free and not the unit monomial.
    pub(crate) fn from_core(core: Monomial) -> Self {
        debug_assert!(core.is_core() && !core.is_unit());
        let depth = 1 + core.depth();
        let degree = core.jet_degree();
        Atom {
            core: Arc::new(core),
            depth,
            degree,
        }
    }

    pub fn core(&self) -> &Monomial {
        &self.core
    }

    /// The argument of `Δ⁻¹` as an expression.
    pub fn argument(&self) -> Expression {
        Expression {
            terms: vec![(*self.core).clone()],
        }
    }

    /// Nesting depth: `Δ⁻¹(u)` has depth 1, `Δ⁻¹(Δ⁻¹(u))` depth 2.
    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Largest `|m|` over the jets inside the atom.
    pub fn shift_span(&self) -> u64 {
        self.core.shift_span()
    }
}

impl Ord for Atom {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.core, &other.core) {
            return Ordering::Equal;
        }
        self.core.key_cmp(&other.core)
    }
}

impl PartialOrd for Atom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    coeff: Rational,
    xdeg: u32,
    ndeg: u32,
    jets: Vec<(Jet, u32)>,
    atoms: Vec<(Atom, u32)>,
}

impl Monomial {
    pub fn constant(coeff: Rational) -> Self {
        Monomial {
            coeff,
            xdeg: 0,
            ndeg: 0,
            jets: Vec::new(),
            atoms: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// Builds a monomial from unsorted factor lists; repeated factors are merged.
    pub fn new(
        coeff: Rational,
        xdeg: u32,
        ndeg: u32,
        jets: impl IntoIterator<Item = (Jet, u32)>,
        atoms: impl IntoIterator<Item = (Atom, u32)>,
    ) -> Self {
        let mut jets: Vec<(Jet, u32)> = jets.into_iter().filter(|(_, e)| *e > 0).collect();
        jets.sort_by_key(|a| a.0);
        let jets = merge_powers(jets);
        let mut atoms: Vec<(Atom, u32)> = atoms.into_iter().filter(|(_, e)| *e > 0).collect();
        atoms.sort_by(|a, b| a.0.cmp(&b.0));
        let atoms = merge_powers(atoms);
        Monomial {
            coeff,
            xdeg,
            ndeg,
            jets,
            atoms,
        }
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn xdeg(&self) -> u32 {
        self.xdeg
    }

    pub fn ndeg(&self) -> u32 {
        self.ndeg
    }

    pub fn jets(&self) -> &[(Jet, u32)] {
        &self.jets
    }

    pub fn atoms(&self) -> &[(Atom, u32)] {
        &self.atoms
    }

    /// Polynomial degree in `u`, counting jets inside atoms.
    pub fn jet_degree(&self) -> u32 {
        let local: u32 = self.jets.iter().map(|(_, e)| e).sum();
        let nonlocal: u32 = self.atoms.iter().map(|(a, e)| a.degree * e).sum();
        local + nonlocal
    }

    /// Total atom nesting depth.
    pub fn depth(&self) -> u32 {
        self.atoms.iter().map(|(a, e)| a.depth * e).sum()
    }

    pub fn shift_span(&self) -> u64 {
        let local = self
            .jets
            .iter()
            .map(|(j, _)| j.shift.unsigned_abs())
            .max()
            .unwrap_or(0);
        let nonlocal = self
            .atoms
            .iter()
            .map(|(a, _)| a.shift_span())
            .max()
            .unwrap_or(0);
        local.max(nonlocal)
    }

    /// No jet and no atom factor.
    pub fn is_scalar(&self) -> bool {
        self.jets.is_empty() && self.atoms.is_empty()
    }

    /// Coefficient 1, no `x`, no `n`.
    pub fn is_core(&self) -> bool {
        self.coeff.is_one() && self.xdeg == 0 && self.ndeg == 0
    }

    pub(crate) fn is_unit(&self) -> bool {
        self.is_core() && self.is_scalar()
    }

    /// Splits off the jet/atom part with coefficient 1.
    pub fn core_part(&self) -> Monomial {
        Monomial {
            coeff: Rational::one(),
            xdeg: 0,
            ndeg: 0,
            jets: self.jets.clone(),
            atoms: self.atoms.clone(),
        }
    }

    pub(crate) fn with_coeff(mut self, coeff: Rational) -> Self {
        self.coeff = coeff;
        self
    }

    pub(crate) fn with_degrees(mut self, xdeg: u32, ndeg: u32) -> Self {
        self.xdeg = xdeg;
        self.ndeg = ndeg;
        self
    }

    /// Lowers the power of the `i`-th jet by one.
    pub(crate) fn without_one_jet(&self, i: usize) -> Monomial {
        let mut out = self.clone();
        if out.jets[i].1 == 1 {
            out.jets.remove(i);
        } else {
            out.jets[i].1 -= 1;
        }
        out
    }

    /// Lowers the power of the `i`-th atom by one.
    pub(crate) fn without_one_atom(&self, i: usize) -> Monomial {
        let mut out = self.clone();
        if out.atoms[i].1 == 1 {
            out.atoms.remove(i);
        } else {
            out.atoms[i].1 -= 1;
        }
        out
    }

    pub(crate) fn map_jets(&self, f: impl Fn(Jet) -> Jet) -> Monomial {
        let mut out = self.clone();
        for (j, _) in out.jets.iter_mut() {
            *j = f(*j);
        }
        out
    }

    pub(crate) fn without_atoms(&self) -> Monomial {
        let mut out = self.clone();
        out.atoms.clear();
        out
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            coeff: &self.coeff * &other.coeff,
            xdeg: self.xdeg + other.xdeg,
            ndeg: self.ndeg + other.ndeg,
            jets: merge_sorted(&self.jets, &other.jets),
            atoms: merge_sorted(&self.atoms, &other.atoms),
        }
    }

    /// Global term order: polynomial degree in `u`, then nesting depth, then the
    /// expanded jet list (shift, then order), then the expanded atom list, then
    /// `(xdeg, ndeg)`. Coefficients are ignored.
    pub fn key_cmp(&self, other: &Monomial) -> Ordering {
        self.jet_degree()
            .cmp(&other.jet_degree())
            .then_with(|| self.depth().cmp(&other.depth()))
            .then_with(|| expanded(&self.jets).cmp(expanded(&other.jets)))
            .then_with(|| expanded(&self.atoms).cmp(expanded(&other.atoms)))
            .then_with(|| (self.xdeg, self.ndeg).cmp(&(other.xdeg, other.ndeg)))
    }

    pub fn same_key(&self, other: &Monomial) -> bool {
        self.xdeg == other.xdeg
            && self.ndeg == other.ndeg
            && self.jets == other.jets
            && self.atoms == other.atoms
    }
}

fn expanded<T>(factors: &[(T, u32)]) -> impl Iterator<Item = &T> {
    factors
        .iter()
        .flat_map(|(f, e)| core::iter::repeat_n(f, *e as usize))
}

fn merge_powers<T: PartialEq>(sorted: Vec<(T, u32)>) -> Vec<(T, u32)> {
    let mut out: Vec<(T, u32)> = Vec::with_capacity(sorted.len());
    for (f, e) in sorted {
        match out.last_mut() {
            Some((g, p)) if *g == f => *p += e,
            _ => out.push((f, e)),
        }
    }
    out
}

fn merge_sorted<T: Ord + Clone>(a: &[(T, u32)], b: &[(T, u32)]) -> Vec<(T, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                out.push((a[i].0.clone(), a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// A normalized quasi-local expression. The zero expression has no terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Expression {
    terms: Vec<Monomial>,
}

impl Expression {
    pub fn zero() -> Self {
        Expression { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_monomial(Monomial::constant(c))
    }

    pub fn int(v: i64) -> Self {
        Self::constant(int(v))
    }

    pub fn x() -> Self {
        Self::from_monomial(Monomial::one().with_degrees(1, 0))
    }

    pub fn n() -> Self {
        Self::from_monomial(Monomial::one().with_degrees(0, 1))
    }

    pub fn jet(jet: Jet) -> Self {
        Self::from_monomial(Monomial::new(Rational::one(), 0, 0, [(jet, 1)], []))
    }

    /// `u_{0,j}`.
    pub fn u(order: u32) -> Self {
        Self::jet(Jet::dx(order))
    }

    pub(crate) fn atom(atom: Atom) -> Self {
        Self::from_monomial(Monomial::new(Rational::one(), 0, 0, [], [(atom, 1)]))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        if m.coeff.is_zero() {
            Self::zero()
        } else {
            Expression { terms: vec![m] }
        }
    }

    /// Sorts, collects like terms and drops zeros.
    pub fn from_terms(mut terms: Vec<Monomial>) -> Self {
        terms.sort_by(|a, b| a.key_cmp(b));
        let mut out: Vec<Monomial> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.same_key(&t) => last.coeff += t.coeff,
                _ => {
                    if let Some(last) = out.last() {
                        if last.coeff.is_zero() {
                            out.pop();
                        }
                    }
                    out.push(t);
                }
            }
        }
        if out.last().is_some_and(|t| t.coeff.is_zero()) {
            out.pop();
        }
        Expression { terms: out }
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Monomial> {
        self.terms
    }

    /// Number of terms; empty exactly when [`Expression::is_zero`].
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a rational constant, if the expression is one.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [t] if t.is_scalar() && t.xdeg == 0 && t.ndeg == 0 => Some(t.coeff.clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Expression {
        if c.is_zero() {
            return Self::zero();
        }
        Expression {
            terms: self
                .terms
                .iter()
                .map(|t| t.clone().with_coeff(&t.coeff * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Expression {
        Self::from_terms(self.terms.iter().map(|t| t.mul(m)).collect())
    }

    pub fn pow(&self, k: u32) -> Expression {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// No term carries an explicit `x` or `n`.
    pub fn is_coefficient_free(&self) -> bool {
        self.terms.iter().all(|t| t.xdeg == 0 && t.ndeg == 0)
    }

    /// Largest `|m|` over all jets, including those nested in atoms.
    pub fn shift_span(&self) -> u64 {
        self.terms
            .iter()
            .map(Monomial::shift_span)
            .max()
            .unwrap_or(0)
    }

    pub fn max_depth(&self) -> u32 {
        self.terms
            .iter()
            .flat_map(|t| t.atoms.iter().map(|(a, _)| a.depth))
            .max()
            .unwrap_or(0)
    }
}

/// Sound but incomplete equality: identical normal forms.
pub fn equal_nf(a: &Expression, b: &Expression) -> bool {
    a == b
}

impl From<Rational> for Expression {
    fn from(c: Rational) -> Self {
        Expression::constant(c)
    }
}

impl From<Monomial> for Expression {
    fn from(m: Monomial) -> Self {
        Expression::from_monomial(m)
    }
}

impl Add<&Expression> for &Expression {
    type Output = Expression;
    fn add(self, rhs: &Expression) -> Expression {
        let mut terms = Vec::with_capacity(self.len() + rhs.len());
        terms.extend_from_slice(&self.terms);
        terms.extend_from_slice(&rhs.terms);
        Expression::from_terms(terms)
    }
}

impl Add for Expression {
    type Output = Expression;
    fn add(mut self, rhs: Expression) -> Expression {
        self.terms.extend(rhs.terms);
        Expression::from_terms(self.terms)
    }
}

impl Neg for &Expression {
    type Output = Expression;
    fn neg(self) -> Expression {
        Expression {
            terms: self
                .terms
                .iter()
                .map(|t| t.clone().with_coeff(-&t.coeff))
                .collect(),
        }
    }
}

impl Neg for Expression {
    type Output = Expression;
    fn neg(mut self) -> Expression {
        for t in self.terms.iter_mut() {
            t.coeff = -core::mem::take(&mut t.coeff);
        }
        self
    }
}

impl Sub<&Expression> for &Expression {
    type Output = Expression;
    fn sub(self, rhs: &Expression) -> Expression {
        self + &(-rhs)
    }
}

impl Sub for Expression {
    type Output = Expression;
    fn sub(self, rhs: Expression) -> Expression {
        self + (-rhs)
    }
}

impl Mul<&Expression> for &Expression {
    type Output = Expression;
    fn mul(self, rhs: &Expression) -> Expression {
        let mut terms = Vec::with_capacity(self.len() * rhs.len());
        for a in &self.terms {
            for b in &rhs.terms {
                terms.push(a.mul(b));
            }
        }
        Expression::from_terms(terms)
    }
}

impl Mul for Expression {
    type Output = Expression;
    fn mul(self, rhs: Expression) -> Expression {
        &self * &rhs
    }
}

impl core::iter::Sum for Expression {
    fn sum<I: Iterator<Item = Expression>>(iter: I) -> Self {
        Expression::from_terms(iter.flat_map(Expression::into_terms).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn u() -> Expression {
        Expression::u(0)
    }

    fn ux() -> Expression {
        Expression::u(1)
    }

    #[test]
    fn cancellation_and_doubling() {
        assert!((&ux() + &(-ux())).is_zero());
        assert_eq!(&ux() + &ux(), ux().scale(&int(2)));
    }

    #[test]
    fn products() {
        let sq = &u() * &u();
        assert_eq!(sq.terms()[0].jets(), &[(Jet::U, 2)]);
        let lhs = &(&u() + &ux()) * &(&u() - &ux());
        let rhs = &(&u() * &u()) - &(&ux() * &ux());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn key_order_groups_by_degree() {
        let e = &(&(&u() * &u()) + &Expression::x()) + &ux();
        let degrees: Vec<u32> = e.terms().iter().map(Monomial::jet_degree).collect();
        assert_eq!(degrees, vec![0, 1, 2]);
    }

    #[test]
    fn as_constant() {
        assert_eq!(
            Expression::constant(ratio(1, 2)).as_constant(),
            Some(ratio(1, 2))
        );
        assert_eq!(Expression::zero().as_constant(), Some(Rational::zero()));
        assert_eq!(Expression::x().as_constant(), None);
    }
}
