//! The shift `S` and the total derivative `D_x` on normal forms.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::dinv::{apply_dinv_with, Summation};
use crate::expr::{Atom, Expression, Jet, Monomial};
use crate::rational::{binomial, int, Rational};

/// `S^k e`.
///
/// Jets move `(m, j) -> (m + k, j)`, `n` becomes `n + k` (expanded), `x` is
/// fixed, and atoms follow `S Δ⁻¹ = Δ⁻¹ + 1` (or `S⁻¹ Δ⁻¹ = Δ⁻¹ - S⁻¹`)
/// applied `|k|` times.
pub fn shift(e: &Expression, k: i64) -> Expression {
    if k == 0 || e.is_zero() {
        return e.clone();
    }
    let mut atoms = BTreeMap::new();
    e.terms()
        .iter()
        .map(|t| shift_monomial(t, k, &mut atoms))
        .sum()
}

fn shift_monomial(m: &Monomial, k: i64, atoms: &mut BTreeMap<Atom, Expression>) -> Expression {
    let local = m
        .without_atoms()
        .map_jets(|j| Jet::new(j.shift + k, j.order))
        .with_degrees(m.xdeg(), 0);
    let mut out = Expression::from_monomial(local);
    if m.ndeg() > 0 {
        out = &out * &binomial_shift(m.ndeg(), k);
    }
    for (atom, e) in m.atoms() {
        let shifted = atoms
            .entry(atom.clone())
            .or_insert_with(|| shift_atom(atom, k))
            .pow(*e);
        out = &out * &shifted;
    }
    out
}

/// `(n + k)^b` expanded.
fn binomial_shift(b: u32, k: i64) -> Expression {
    (0..=b)
        .map(|i| {
            let c = binomial(b, i) * int(k).pow(b as i32 - i as i32);
            Expression::from_monomial(Monomial::one().with_degrees(0, i).with_coeff(c))
        })
        .sum()
}

fn shift_atom(atom: &Atom, k: i64) -> Expression {
    let core = atom.argument();
    let mut out = Expression::atom(atom.clone());
    if k > 0 {
        for i in 0..k {
            out = &out + &shift(&core, i);
        }
    } else {
        for i in k..0 {
            out = &out - &shift(&core, i);
        }
    }
    out
}

/// `D_x e`. `D_x` commutes with `S` and with `Δ⁻¹`; `n` is a constant.
pub fn dx(e: &Expression) -> Expression {
    let mut atoms = BTreeMap::new();
    let mut terms = Vec::new();
    for t in e.terms() {
        dx_monomial(t, &mut atoms, &mut terms);
    }
    Expression::from_terms(terms)
}

/// `D_x^k e`.
pub fn dx_n(e: &Expression, k: u32) -> Expression {
    (0..k).fold(e.clone(), |acc, _| dx(&acc))
}

fn dx_monomial(m: &Monomial, atoms: &mut BTreeMap<Atom, Expression>, out: &mut Vec<Monomial>) {
    if m.xdeg() > 0 {
        let c = m.coeff() * int(i64::from(m.xdeg()));
        out.push(m.clone().with_degrees(m.xdeg() - 1, m.ndeg()).with_coeff(c));
    }
    for (i, (jet, e)) in m.jets().iter().enumerate() {
        let rest = m.without_one_jet(i);
        let rest = rest.clone().with_coeff(rest.coeff() * int(i64::from(*e)));
        let next = Monomial::new(
            Rational::from_integer(1.into()),
            0,
            0,
            [(Jet::new(jet.shift, jet.order + 1), 1)],
            [],
        );
        out.push(rest.mul(&next));
    }
    for (i, (atom, e)) in m.atoms().iter().enumerate() {
        let d = atoms.entry(atom.clone()).or_insert_with(|| dx_atom(atom));
        if d.is_zero() {
            continue;
        }
        let rest = m.without_one_atom(i);
        let rest = rest.clone().with_coeff(rest.coeff() * int(i64::from(*e)));
        out.extend(d.terms().iter().map(|t| t.mul(&rest)));
    }
}

fn dx_atom(atom: &Atom) -> Expression {
    let d = dx(&atom.argument());
    // every term of D_x(core) still carries a jet or an atom
    apply_dinv_with(&d, Summation::QuasiLocal)
        .expect("derivative of a core keeps a jet or atom factor")
}
