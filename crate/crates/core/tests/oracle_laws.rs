//! The rewrite rules agree with the definite-sum semantics value by value.

mod common;

use ddkp_core::oracle::{eval, eval_poly, eval_sites, zero_test, OracleVerdict, ZeroTestConfig};
use ddkp_core::rational::int;
use ddkp_core::{apply_dinv, apply_dinv_with, dx, equal_nf, shift, theta, Expression, Summation};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn dx_matches_the_x_derivative(seed in any::<u64>()) {
        let e = common::sampler(seed).expression();
        let st = common::state(seed, e.shift_span() + 1);
        for n in common::sites(&st, e.shift_span()) {
            prop_assert_eq!(
                eval_poly(&dx(&e), &st, n).unwrap(),
                eval_poly(&e, &st, n).unwrap().derivative(1)
            );
        }
    }

    #[test]
    fn shift_moves_the_site(seed in any::<u64>(), k in -1i64..=2) {
        let e = common::sampler(seed).expression();
        let span = e.shift_span() + 2;
        let st = common::state(seed ^ 0xa5, span);
        let x = int(13);
        let sites: Vec<i64> = common::sites(&st, e.shift_span())
            .into_iter()
            .filter(|n| n + k >= st.base_point())
            .collect();
        let moved: Vec<i64> = sites.iter().map(|n| n + k).collect();
        prop_assert_eq!(
            eval_sites(&shift(&e, k), &st, &sites, &x).unwrap(),
            eval_sites(&e, &st, &moved, &x).unwrap()
        );
    }

    #[test]
    fn dinv_realization(seed in any::<u64>()) {
        let mut s = common::sampler(seed);
        let f = s.summable();
        let g = apply_dinv(&f).unwrap();
        let st = common::state(seed, g.shift_span() + 1);
        let x = int(-7);
        let sites = common::sites(&st, g.shift_span());
        let gv = eval_sites(&g, &st, &sites, &x).unwrap();
        let fv = eval_sites(&f, &st, &sites, &x).unwrap();
        // (S - 1) Δ⁻¹ = id, and Δ⁻¹ f vanishes at the base point.
        for i in 0..sites.len() - 1 {
            prop_assert_eq!(&gv[i + 1] - &gv[i], fv[i].clone());
        }
        prop_assert_eq!(gv[0].clone(), int(0));
        // S Δ⁻¹ = Δ⁻¹ + 1 and D_x Δ⁻¹ = Δ⁻¹ D_x, each against the oracle.
        let sg = eval_sites(&shift(&g, 1), &st, &sites, &x).unwrap();
        for i in 0..sites.len() {
            prop_assert_eq!(sg[i].clone(), &gv[i] + &fv[i]);
        }
        for &n in &sites {
            prop_assert_eq!(
                eval_poly(&apply_dinv(&dx(&f)).unwrap(), &st, n).unwrap(),
                eval_poly(&g, &st, n).unwrap().derivative(1)
            );
        }
    }

    #[test]
    fn coefficient_rules(seed in any::<u64>()) {
        let mut s = common::sampler(seed);
        let t = s.summable();
        let xt = &Expression::x() * &t;
        let nt = &Expression::n() * &t;
        let dt = apply_dinv(&t).unwrap();
        let st = common::state(seed, dt.shift_span() + 2);
        let sites = common::sites(&st, dt.shift_span() + 1);
        for x in [int(3), int(-5)] {
            // R3: x leaves the sum; R4: summation by parts against n.
            let tv = eval_sites(&t, &st, &sites, &x).unwrap();
            let r3 = eval_sites(&apply_dinv(&xt).unwrap(), &st, &sites, &x).unwrap();
            let r4 = eval_sites(&apply_dinv(&nt).unwrap(), &st, &sites, &x).unwrap();
            let mut acc_x = int(0);
            let mut acc_n = int(0);
            for (i, &n) in sites.iter().enumerate() {
                prop_assert_eq!(r3[i].clone(), acc_x.clone());
                prop_assert_eq!(r4[i].clone(), acc_n.clone());
                acc_x += &x * &tv[i];
                acc_n += int(n) * &tv[i];
            }
        }
    }

    #[test]
    fn polynomial_summation(seed in any::<u64>()) {
        let e = common::sampler(seed).expression();
        let g = apply_dinv_with(&e, Summation::Polynomial).unwrap();
        let st = common::state(seed, g.shift_span() + 1);
        let x = int(2);
        let sites = common::sites(&st, g.shift_span());
        let gv = eval_sites(&g, &st, &sites, &x).unwrap();
        let ev = eval_sites(&e, &st, &sites, &x).unwrap();
        for i in 0..sites.len() - 1 {
            prop_assert_eq!(&gv[i + 1] - &gv[i], ev[i].clone());
        }
    }
}

#[test]
fn equal_nf_is_not_semantic_equality_but_the_oracle_separates() {
    let u = Expression::u(0);
    let ux = Expression::u(1);
    let a = theta(&(&u * &ux)).unwrap();
    let b = &u * &theta(&ux).unwrap();
    assert!(!equal_nf(&a, &b));
    match zero_test(&(&a - &b), &ZeroTestConfig::default()).unwrap() {
        OracleVerdict::Nonzero { witness } => {
            let v = eval(&(&a - &b), &witness.state, witness.site, &witness.x).unwrap();
            assert_eq!(v, witness.value);
            assert_ne!(v, int(0));
        }
        other => panic!("expected a nonzero verdict, got {other:?}"),
    }
}

#[test]
fn commuting_products_are_exact_zero() {
    let u = Expression::u(0);
    let t = theta(&u).unwrap();
    let e = &(&t * &u) - &(&u * &t);
    assert!(e.is_zero());
    assert_eq!(
        zero_test(&e, &ZeroTestConfig::default()).unwrap(),
        OracleVerdict::ExactZero
    );
}
