//! Seeded random expressions for property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dinv::{apply_dinv, theta};
use crate::expr::{Expression, Jet};
use crate::rational::ratio;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleShape {
    pub max_terms: usize,
    /// Jet factors per term, at most.
    pub max_jets: usize,
    pub max_shift: i64,
    pub max_order: u32,
    /// Nesting of `(S-1)^{-1}`, at most.
    pub max_depth: u32,
    /// Allow explicit `x` and `n` factors.
    pub coefficients: bool,
}

impl Default for SampleShape {
    fn default() -> Self {
        SampleShape {
            max_terms: 3,
            max_jets: 2,
            max_shift: 1,
            max_order: 2,
            max_depth: 2,
            coefficients: true,
        }
    }
}

pub struct Sampler {
    shape: SampleShape,
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(shape: SampleShape, seed: u64) -> Self {
        Sampler {
            shape,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn jet(&mut self) -> Jet {
        let s = self.shape.max_shift;
        Jet::new(
            self.rng.random_range(-s..=s),
            self.rng.random_range(0..=self.shape.max_order),
        )
    }

    /// Product of one or more jets, times a nonlocal factor now and then.
    fn core(&mut self, depth: u32) -> Expression {
        let k = self.rng.random_range(1..=self.shape.max_jets.max(1));
        let mut e = Expression::one();
        for _ in 0..k {
            e = &e * &Expression::jet(self.jet());
        }
        if depth > 0 && self.rng.random_bool(0.3) {
            e = &e * &self.nonlocal(depth);
        }
        e
    }

    /// `Θ(core)` or `(S-1)^{-1}(core)` with at most `depth` levels.
    fn nonlocal(&mut self, depth: u32) -> Expression {
        let inner = self.core(depth - 1);
        if self.rng.random_bool(0.5) {
            theta(&inner).expect("cores carry a jet")
        } else {
            apply_dinv(&inner).expect("cores carry a jet")
        }
    }

    fn coefficient(&mut self) -> Expression {
        let mut num = 0;
        while num == 0 {
            num = self.rng.random_range(-4..=4);
        }
        let den = self.rng.random_range(1..=3);
        Expression::constant(ratio(num, den))
    }

    fn term(&mut self, local_allowed: bool, with_factor: bool) -> Expression {
        let mut t = self.coefficient();
        if self.shape.coefficients {
            if self.rng.random_bool(0.25) {
                t = &t * &Expression::x();
            }
            if self.rng.random_bool(0.25) {
                t = &t * &Expression::n();
            }
        }
        let bare = local_allowed && self.rng.random_bool(0.1);
        if with_factor || !bare {
            t = &t * &self.core(self.shape.max_depth);
            if self.shape.max_depth > 0 && self.rng.random_bool(0.3) {
                t = &t * &self.nonlocal(self.shape.max_depth);
            }
        }
        t
    }

    fn sum(&mut self, pure_allowed: bool) -> Expression {
        let k = self.rng.random_range(1..=self.shape.max_terms.max(1));
        let mut e = Expression::zero();
        for _ in 0..k {
            e = &e + &self.term(pure_allowed, !pure_allowed);
        }
        e
    }

    /// Any small expression; terms may be pure coefficients.
    pub fn expression(&mut self) -> Expression {
        self.sum(true)
    }

    /// Every term carries a jet, so `(S-1)^{-1}` applies under the strict
    /// summation policy, and the expression vanishes left of any support.
    pub fn summable(&mut self) -> Expression {
        loop {
            let e = self.sum(false);
            if !e.is_zero() {
                return e;
            }
        }
    }

    /// A nonzero expression from [`Sampler::expression`].
    pub fn nonzero(&mut self) -> Expression {
        loop {
            let e = self.expression();
            if !e.is_zero() {
                return e;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_summable() {
        let a: alloc::vec::Vec<_> = {
            let mut s = Sampler::new(SampleShape::default(), 7);
            (0..20).map(|_| s.expression()).collect()
        };
        let mut s = Sampler::new(SampleShape::default(), 7);
        for e in &a {
            assert_eq!(&s.expression(), e);
        }
        for _ in 0..50 {
            let e = s.summable();
            assert!(e.terms().iter().all(|t| !t.is_scalar()));
            apply_dinv(&e).unwrap();
        }
    }
}
