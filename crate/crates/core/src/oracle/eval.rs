//! Exact evaluation of normal forms on lattice states.
//!
//! A jet `u_{m,j}` at site `n` reads `D_x^j u(n + m, x)`; `Δ⁻¹(f)` at `n` is
//! the definite sum `Σ_{k=n0}^{n-1} f(k)` (empty for `n <= n0`). The same
//! evaluator runs over three value types: rationals at a point `x`,
//! polynomials in `x`, and dual numbers carrying a direction.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::Result;
use crate::expr::{Atom, Expression, Monomial};
use crate::rational::{int, Rational};

use super::dual::DualValue;
use super::poly::XPoly;
use super::state::LatticeState;

pub trait Scalar:
    Clone
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(r: &Rational) -> Self;
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl Scalar for XPoly {
    fn from_rational(r: &Rational) -> Self {
        XPoly::constant(r.clone())
    }
}

impl Scalar for DualValue {
    fn from_rational(r: &Rational) -> Self {
        DualValue::constant(r.clone())
    }
}

fn pow<S: Scalar>(base: &S, e: u32) -> S {
    let mut acc = S::one();
    for _ in 0..e {
        acc = acc * base.clone();
    }
    acc
}

pub(crate) trait JetSource {
    type Value: Scalar;
    fn jet(&mut self, site: i64, order: u32) -> Self::Value;
    fn x(&self) -> Self::Value;
}

struct PointSource<'a> {
    state: &'a LatticeState,
    x: Rational,
    cache: BTreeMap<(i64, u32), Rational>,
}

impl JetSource for PointSource<'_> {
    type Value = Rational;

    fn jet(&mut self, site: i64, order: u32) -> Rational {
        let state = self.state;
        let x = &self.x;
        self.cache
            .entry((site, order))
            .or_insert_with(|| match state.site(site) {
                Some(p) => p.derivative(order).eval(x),
                None => Rational::zero(),
            })
            .clone()
    }

    fn x(&self) -> Rational {
        self.x.clone()
    }
}

struct PolySource<'a> {
    state: &'a LatticeState,
}

impl JetSource for PolySource<'_> {
    type Value = XPoly;

    fn jet(&mut self, site: i64, order: u32) -> XPoly {
        self.state
            .site(site)
            .map(|p| p.derivative(order))
            .unwrap_or_default()
    }

    fn x(&self) -> XPoly {
        XPoly::x()
    }
}

/// Site values carry the tangent `D_x^j V(site, x)`, with `V` evaluated as a
/// polynomial in `x` and differentiated there.
struct DualSource<'a> {
    point: PointSource<'a>,
    direction: &'a Expression,
    tangents: Evaluator<PolySource<'a>>,
    values: BTreeMap<i64, XPoly>,
}

impl JetSource for DualSource<'_> {
    type Value = DualValue;

    fn jet(&mut self, site: i64, order: u32) -> DualValue {
        let primal = self.point.jet(site, order);
        let direction = self.direction;
        let tangents = &mut self.tangents;
        let v = self
            .values
            .entry(site)
            .or_insert_with(|| tangents.eval(direction, site));
        DualValue::new(primal, v.derivative(order).eval(&self.point.x))
    }

    fn x(&self) -> DualValue {
        DualValue::constant(self.point.x.clone())
    }
}

pub(crate) struct Evaluator<J: JetSource> {
    source: J,
    base: i64,
    /// `sums[atom][i]` is the atom's value at site `base + i`.
    sums: BTreeMap<Atom, Vec<J::Value>>,
}

impl<J: JetSource> Evaluator<J> {
    fn new(source: J, base: i64) -> Self {
        Evaluator {
            source,
            base,
            sums: BTreeMap::new(),
        }
    }

    pub(crate) fn eval(&mut self, e: &Expression, n: i64) -> J::Value {
        e.terms()
            .iter()
            .fold(J::Value::zero(), |acc, t| acc + self.monomial(t, n))
    }

    fn monomial(&mut self, m: &Monomial, n: i64) -> J::Value {
        let mut acc = J::Value::from_rational(m.coeff());
        if m.xdeg() > 0 {
            acc = acc * pow(&self.source.x(), m.xdeg());
        }
        if m.ndeg() > 0 {
            acc = acc * J::Value::from_rational(&int(n).pow(m.ndeg() as i32));
        }
        for (jet, e) in m.jets() {
            let v = self.source.jet(n + jet.shift, jet.order);
            acc = acc * pow(&v, *e);
        }
        for (atom, e) in m.atoms() {
            let v = self.atom(atom, n);
            acc = acc * pow(&v, *e);
        }
        acc
    }

    fn atom(&mut self, atom: &Atom, n: i64) -> J::Value {
        if n <= self.base {
            return J::Value::zero();
        }
        let idx = (n - self.base) as usize;
        let mut sums = self
            .sums
            .remove(atom)
            .unwrap_or_else(|| vec![J::Value::zero()]);
        while sums.len() <= idx {
            let k = self.base + sums.len() as i64 - 1;
            let term = self.monomial(atom.core(), k);
            let next = sums[sums.len() - 1].clone() + term;
            sums.push(next);
        }
        let out = sums[idx].clone();
        self.sums.insert(atom.clone(), sums);
        out
    }
}

/// Value of `e` at site `n` and point `x`.
pub fn eval(e: &Expression, state: &LatticeState, n: i64, x: &Rational) -> Result<Rational> {
    Ok(eval_sites(e, state, &[n], x)?.remove(0))
}

/// Values of `e` at several sites for one `x`, sharing partial sums.
pub fn eval_sites(
    e: &Expression,
    state: &LatticeState,
    sites: &[i64],
    x: &Rational,
) -> Result<Vec<Rational>> {
    state.check_reach(e.shift_span())?;
    let source = PointSource {
        state,
        x: x.clone(),
        cache: BTreeMap::new(),
    };
    let mut ev = Evaluator::new(source, state.base_point());
    Ok(sites.iter().map(|&n| ev.eval(e, n)).collect())
}

/// Value of `e` at site `n` as a polynomial in `x`.
pub fn eval_poly(e: &Expression, state: &LatticeState, n: i64) -> Result<XPoly> {
    state.check_reach(e.shift_span())?;
    let mut ev = Evaluator::new(PolySource { state }, state.base_point());
    Ok(ev.eval(e, n))
}

/// Tangent of `F` along `V`: every site value `u(k, x)` is perturbed by
/// `ε V(k, x)` and `F` is evaluated in dual arithmetic.
pub fn directional_eval(
    f: &Expression,
    v: &Expression,
    state: &LatticeState,
    n: i64,
    x: &Rational,
) -> Result<Rational> {
    state.check_reach(f.shift_span())?;
    state.check_reach(v.shift_span())?;
    let base = state.base_point();
    let source = DualSource {
        point: PointSource {
            state,
            x: x.clone(),
            cache: BTreeMap::new(),
        },
        direction: v,
        tangents: Evaluator::new(PolySource { state }, base),
        values: BTreeMap::new(),
    };
    let mut ev = Evaluator::new(source, base);
    Ok(ev.eval(f, n).tangent)
}
