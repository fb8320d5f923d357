//! Algebraic laws of the calculus, checked on normal forms.

mod common;

use ddkp_core::rational::int;
use ddkp_core::{
    apply_dinv, apply_dinv_with, dx, dx_n, equal_nf, normalize, shift, Expression, Summation, Tree,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normalize_is_idempotent(seed in any::<u64>()) {
        let e = common::sampler(seed).expression();
        let again = normalize(&Tree::from(&e)).unwrap();
        prop_assert!(equal_nf(&again, &e));
    }

    #[test]
    fn dx_is_a_derivation(seed in any::<u64>()) {
        let mut s = common::sampler(seed);
        let (a, b) = (s.expression(), s.expression());
        prop_assert_eq!(dx(&(&a * &b)), &(&dx(&a) * &b) + &(&a * &dx(&b)));
        prop_assert_eq!(dx(&(&a + &b)), &dx(&a) + &dx(&b));
        prop_assert_eq!(dx_n(&a, 2), dx(&dx(&a)));
    }

    #[test]
    fn shift_is_an_algebra_automorphism(seed in any::<u64>(), k in -2i64..=2) {
        let mut s = common::sampler(seed);
        let (a, b) = (s.expression(), s.expression());
        prop_assert_eq!(shift(&(&a * &b), k), &shift(&a, k) * &shift(&b, k));
        prop_assert_eq!(shift(&(&a + &b), k), &shift(&a, k) + &shift(&b, k));
        prop_assert_eq!(shift(&shift(&a, k), -k), a.clone());
        prop_assert_eq!(shift(&shift(&a, 1), k), shift(&a, k + 1));
        prop_assert_eq!(dx(&shift(&a, k)), shift(&dx(&a), k));
    }

    #[test]
    fn dinv_is_a_right_inverse_of_the_difference(seed in any::<u64>()) {
        let mut s = common::sampler(seed);
        let f = s.summable();
        let g = apply_dinv(&f).unwrap();
        prop_assert_eq!(&shift(&g, 1) - &g, f.clone());
        prop_assert_eq!(dx(&g), apply_dinv(&dx(&f)).unwrap());
        let e = s.expression();
        let h = apply_dinv_with(&e, Summation::Polynomial).unwrap();
        prop_assert_eq!(&shift(&h, 1) - &h, e);
    }

    #[test]
    fn dinv_is_linear(seed in any::<u64>()) {
        let mut s = common::sampler(seed);
        let (a, b) = (s.summable(), s.summable());
        let lhs = apply_dinv(&(&a.scale(&int(3)) - &b)).unwrap();
        let rhs = &apply_dinv(&a).unwrap().scale(&int(3)) - &apply_dinv(&b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn dinv_of_n_times_a_jet() {
    let u = Expression::u(0);
    let lhs = apply_dinv(&(&Expression::n() * &u)).unwrap();
    let du = apply_dinv(&u).unwrap();
    let rhs = &(&(&Expression::n() * &du) - &du) - &apply_dinv(&du).unwrap();
    assert_eq!(lhs, rhs);
    let x = Expression::x();
    assert_eq!(apply_dinv(&(&x * &u)).unwrap(), &x * &du);
}
