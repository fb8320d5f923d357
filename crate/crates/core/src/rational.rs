//! Exact rationals. `BigRational` keeps itself reduced with a positive
//! denominator, which is all the algebra needs.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Binomial coefficient `C(n, k)` as an exact rational.
pub fn binomial(n: u32, k: u32) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

/// Coefficients (ascending powers of `n`) of the polynomial
/// `P_b(n) = sum_{k=0}^{n-1} k^b`, the antidifference of `n^b` vanishing at `n = 0`.
///
/// Uses `n^{b+1} = sum_{j=0}^{b} C(b+1, j) P_j(n)`.
pub fn power_sum(b: u32) -> Vec<Rational> {
    let mut table: Vec<Vec<Rational>> = Vec::with_capacity(b as usize + 1);
    for p in 0..=b {
        let mut poly = vec![Rational::zero(); p as usize + 2];
        poly[p as usize + 1] = Rational::one();
        for (j, prev) in table.iter().enumerate() {
            let c = binomial(p + 1, j as u32);
            for (i, a) in prev.iter().enumerate() {
                poly[i] -= &c * a;
            }
        }
        let denom = int(i64::from(p) + 1);
        for a in poly.iter_mut() {
            *a /= &denom;
        }
        table.push(poly);
    }
    table.pop().unwrap_or_default()
}
