//! `Δ⁻¹ = (S - 1)^{-1}` and `Θ = Δ⁻¹ D_x`.
//!
//! Per term `c · x^a · n^b · T` (with `T` the jet/atom core):
//!
//! * linearity over rational coefficients;
//! * `Δ⁻¹(x^a T) = x^a Δ⁻¹(T)`;
//! * `Δ⁻¹(n T) = n Δ⁻¹(T) - Δ⁻¹(T) - Δ⁻¹(Δ⁻¹(T))`, repeated until no `n` is left;
//! * the remaining `Δ⁻¹(T)` becomes an [`Atom`].
//!
//! Each rule is exact for sums taken from a base point left of the support.
//! `Δ⁻¹((S - 1) h) = h` is not a rule: it only holds up to the value of `h`
//! at the base point.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::calculus::dx;
use crate::error::{Error, Result};
use crate::expr::{Atom, Expression, Monomial};
use crate::rational::power_sum;

/// What `Δ⁻¹` does with a term that has no jet and no atom factor.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Summation {
    /// Reject with [`Error::NonSummableAtom`]: such a term leaves the
    /// quasi-local space.
    #[default]
    QuasiLocal,
    /// Use the polynomial antidifference `Δ⁻¹(n^b) = sum_{k=0}^{n-1} k^b`,
    /// e.g. `Δ⁻¹(1) = n`. Needed once brackets with `x`-dependent fields such
    /// as `N = -x/2` are taken.
    Polynomial,
}

pub fn apply_dinv(e: &Expression) -> Result<Expression> {
    apply_dinv_with(e, Summation::QuasiLocal)
}

pub fn apply_dinv_with(e: &Expression, summation: Summation) -> Result<Expression> {
    let mut terms = Vec::new();
    for t in e.terms() {
        terms.extend(dinv_monomial(t, summation)?.into_terms());
    }
    Ok(Expression::from_terms(terms))
}

/// `Θ(f) = Δ⁻¹(D_x f)`.
pub fn theta(e: &Expression) -> Result<Expression> {
    apply_dinv(&dx(e))
}

pub fn theta_with(e: &Expression, summation: Summation) -> Result<Expression> {
    apply_dinv_with(&dx(e), summation)
}

fn dinv_monomial(m: &Monomial, summation: Summation) -> Result<Expression> {
    let core = m.core_part();
    let scalar = Monomial::one()
        .with_coeff(m.coeff().clone())
        .with_degrees(m.xdeg(), 0);
    let summed = if core.is_scalar() {
        match summation {
            Summation::QuasiLocal => {
                return Err(Error::NonSummableAtom {
                    term: m.to_string(),
                })
            }
            Summation::Polynomial => power_sum(m.ndeg())
                .into_iter()
                .enumerate()
                .map(|(i, c)| {
                    Expression::from_monomial(
                        Monomial::one().with_degrees(0, i as u32).with_coeff(c),
                    )
                })
                .sum(),
        }
    } else {
        dinv_n_core(m.ndeg(), &core, summation)?
    };
    Ok(summed.mul_monomial(&scalar))
}

/// `Δ⁻¹(n^b T)` for a non-trivial core `T`.
fn dinv_n_core(b: u32, core: &Monomial, summation: Summation) -> Result<Expression> {
    if b == 0 {
        return Ok(Expression::atom(Atom::from_core(core.clone())));
    }
    let inner = dinv_n_core(b - 1, core, summation)?;
    let n_minus_one = &Expression::n() - &Expression::one();
    Ok(&(&n_minus_one * &inner) - &apply_dinv_with(&inner, summation)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::shift;
    use crate::expr::Jet;
    use crate::rational::int;

    #[test]
    fn zero_and_constants() {
        assert!(apply_dinv(&Expression::zero()).unwrap().is_zero());
        assert!(theta(&Expression::int(7)).unwrap().is_zero());
        assert!(matches!(
            apply_dinv(&Expression::x()),
            Err(Error::NonSummableAtom { .. })
        ));
        assert!(matches!(
            theta(&Expression::x()),
            Err(Error::NonSummableAtom { .. })
        ));
    }

    #[test]
    fn x_pulls_out() {
        let e = &Expression::x() * &Expression::u(2);
        let lhs = apply_dinv(&e).unwrap();
        let rhs = &Expression::x() * &theta(&Expression::u(1)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn n_reduction() {
        let uxx = Expression::u(2);
        let lhs = apply_dinv(&(&Expression::n() * &uxx)).unwrap();
        let th = theta(&Expression::u(1)).unwrap();
        let rhs = &(&(&Expression::n() * &th) - &th) - &apply_dinv(&th).unwrap();
        assert_eq!(lhs, rhs);
        // (S - 1) of the result gives back n u_xx
        assert_eq!(&shift(&lhs, 1) - &lhs, &Expression::n() * &uxx);
    }

    #[test]
    fn right_inverse_of_difference() {
        let f = &(&Expression::n().pow(3) * &Expression::jet(Jet::new(1, 0)))
            + &(&Expression::x() * &theta(&Expression::u(0)).unwrap());
        let g = apply_dinv(&f).unwrap();
        assert_eq!(&shift(&g, 1) - &g, f);
    }

    #[test]
    fn polynomial_summation() {
        let one = apply_dinv_with(&Expression::int(3), Summation::Polynomial).unwrap();
        assert_eq!(one, Expression::n().scale(&int(3)));
        let f = &(&Expression::n().pow(2) * &Expression::x()) + &Expression::n();
        let g = apply_dinv_with(&f, Summation::Polynomial).unwrap();
        assert_eq!(&shift(&g, 1) - &g, f);
    }
}
