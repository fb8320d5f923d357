use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::{int, Rational};

/// Polynomial in `x` with exact coefficients, lowest degree first, no
/// trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct XPoly(Vec<Rational>);

impl XPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        XPoly(coeffs)
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        XPoly(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn derivative(&self, k: u32) -> XPoly {
        let k = k as usize;
        if k == 0 {
            return self.clone();
        }
        if self.0.len() <= k {
            return XPoly::zero();
        }
        let coeffs = self.0[k..]
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let falling: i64 = ((i + 1)..=(i + k)).map(|v| v as i64).product();
                c * int(falling)
            })
            .collect();
        XPoly(coeffs)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }
}

impl Zero for XPoly {
    fn zero() -> Self {
        XPoly(Vec::new())
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl One for XPoly {
    fn one() -> Self {
        XPoly(vec![Rational::one()])
    }
}

impl Add for XPoly {
    type Output = XPoly;
    fn add(self, rhs: XPoly) -> XPoly {
        let (mut long, short) = if self.0.len() >= rhs.0.len() {
            (self.0, rhs.0)
        } else {
            (rhs.0, self.0)
        };
        for (a, b) in long.iter_mut().zip(short) {
            *a += b;
        }
        XPoly::new(long)
    }
}

impl Neg for XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        XPoly(self.0.into_iter().map(|c| -c).collect())
    }
}

impl Sub for XPoly {
    type Output = XPoly;
    fn sub(self, rhs: XPoly) -> XPoly {
        self + (-rhs)
    }
}

impl Mul for XPoly {
    type Output = XPoly;
    fn mul(self, rhs: XPoly) -> XPoly {
        if self.is_zero() || rhs.is_zero() {
            return XPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        XPoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_and_eval() {
        // 3 + 2x + x^3
        let p = XPoly::new(vec![int(3), int(2), int(0), int(1)]);
        assert_eq!(p.eval(&int(2)), int(15));
        assert_eq!(p.derivative(1), XPoly::new(vec![int(2), int(0), int(3)]));
        assert_eq!(p.derivative(3), XPoly::constant(int(6)));
        assert!(p.derivative(4).is_zero());
        let sq = p.clone() * p.clone();
        assert_eq!(sq.eval(&int(2)), int(225));
    }
}
