//! Raw expression trees, as produced by a parser, and their normalization.

use alloc::boxed::Box;
use alloc::vec::Vec;

use num_traits::One;

use crate::calculus::{dx, shift};
use crate::dinv::{apply_dinv_with, Summation};
use crate::error::Result;
use crate::expr::{Expression, Jet, Monomial};
use crate::rational::Rational;
use crate::symmetry::builtin::{builtin, BuiltinName};

#[derive(Clone, Debug, PartialEq)]
pub enum Tree {
    Const(Rational),
    X,
    N,
    Jet(Jet),
    Builtin(BuiltinName),
    Add(Vec<Tree>),
    Mul(Vec<Tree>),
    Neg(Box<Tree>),
    Pow(Box<Tree>, u32),
    /// `Θ(f) = Δ⁻¹(D_x f)`
    Theta(Box<Tree>),
    Dinv(Box<Tree>),
    Dx(Box<Tree>),
    Shift(i64, Box<Tree>),
}

impl Tree {
    pub fn difference(a: Tree, b: Tree) -> Tree {
        Tree::Add(alloc::vec![a, Tree::Neg(Box::new(b))])
    }
}

/// Canonical form of a tree, rejecting non-summable `Δ⁻¹` arguments.
pub fn normalize(tree: &Tree) -> Result<Expression> {
    normalize_with(tree, Summation::QuasiLocal)
}

pub fn normalize_with(tree: &Tree, summation: Summation) -> Result<Expression> {
    let go = |t: &Tree| normalize_with(t, summation);
    Ok(match tree {
        Tree::Const(c) => Expression::constant(c.clone()),
        Tree::X => Expression::x(),
        Tree::N => Expression::n(),
        Tree::Jet(j) => Expression::jet(*j),
        Tree::Builtin(name) => builtin(*name),
        Tree::Add(items) => {
            let mut terms = Vec::new();
            for t in items {
                terms.extend(go(t)?.into_terms());
            }
            Expression::from_terms(terms)
        }
        Tree::Mul(items) => {
            let mut acc = Expression::one();
            for t in items {
                acc = &acc * &go(t)?;
                if acc.is_zero() {
                    break;
                }
            }
            acc
        }
        Tree::Neg(t) => -go(t)?,
        Tree::Pow(t, k) => go(t)?.pow(*k),
        Tree::Theta(t) => apply_dinv_with(&dx(&go(t)?), summation)?,
        Tree::Dinv(t) => apply_dinv_with(&go(t)?, summation)?,
        Tree::Dx(t) => dx(&go(t)?),
        Tree::Shift(k, t) => shift(&go(t)?, *k),
    })
}

impl From<&Monomial> for Tree {
    fn from(m: &Monomial) -> Tree {
        let mut factors = Vec::new();
        if !m.coeff().is_one() {
            factors.push(Tree::Const(m.coeff().clone()));
        }
        if m.xdeg() > 0 {
            factors.push(Tree::Pow(Box::new(Tree::X), m.xdeg()));
        }
        if m.ndeg() > 0 {
            factors.push(Tree::Pow(Box::new(Tree::N), m.ndeg()));
        }
        for (j, e) in m.jets() {
            factors.push(Tree::Pow(Box::new(Tree::Jet(*j)), *e));
        }
        for (a, e) in m.atoms() {
            let arg = Tree::from(a.core());
            factors.push(Tree::Pow(Box::new(Tree::Dinv(Box::new(arg))), *e));
        }
        Tree::Mul(factors)
    }
}

impl From<&Expression> for Tree {
    fn from(e: &Expression) -> Tree {
        Tree::Add(e.terms().iter().map(Tree::from).collect())
    }
}
