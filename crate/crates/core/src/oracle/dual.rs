use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::Rational;

/// First-order perturbation `primal + ε·tangent` with `ε² = 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DualValue {
    pub primal: Rational,
    pub tangent: Rational,
}

impl DualValue {
    pub fn new(primal: Rational, tangent: Rational) -> Self {
        DualValue { primal, tangent }
    }

    pub fn constant(primal: Rational) -> Self {
        DualValue {
            primal,
            tangent: Rational::zero(),
        }
    }
}

impl Zero for DualValue {
    fn zero() -> Self {
        DualValue::constant(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.primal.is_zero() && self.tangent.is_zero()
    }
}

impl One for DualValue {
    fn one() -> Self {
        DualValue::constant(Rational::one())
    }
}

impl Add for DualValue {
    type Output = DualValue;
    fn add(self, rhs: DualValue) -> DualValue {
        DualValue::new(self.primal + rhs.primal, self.tangent + rhs.tangent)
    }
}

impl Sub for DualValue {
    type Output = DualValue;
    fn sub(self, rhs: DualValue) -> DualValue {
        DualValue::new(self.primal - rhs.primal, self.tangent - rhs.tangent)
    }
}

impl Neg for DualValue {
    type Output = DualValue;
    fn neg(self) -> DualValue {
        DualValue::new(-self.primal, -self.tangent)
    }
}

impl Mul for DualValue {
    type Output = DualValue;
    fn mul(self, rhs: DualValue) -> DualValue {
        let tangent = &self.primal * &rhs.tangent + &self.tangent * &rhs.primal;
        DualValue::new(self.primal * rhs.primal, tangent)
    }
}
