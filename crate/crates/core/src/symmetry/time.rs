use alloc::vec::Vec;
use core::fmt;

use crate::expr::Expression;
use crate::rational::int;

/// `Σ_k t^k · coeff_k` with normalized, nonzero coefficients and strictly
/// increasing `k`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TimePolynomial {
    terms: Vec<(u32, Expression)>,
}

impl TimePolynomial {
    pub fn new(terms: impl IntoIterator<Item = (u32, Expression)>) -> Self {
        let mut terms: Vec<(u32, Expression)> = terms.into_iter().collect();
        terms.sort_by_key(|(k, _)| *k);
        let mut out: Vec<(u32, Expression)> = Vec::with_capacity(terms.len());
        for (k, e) in terms {
            match out.last_mut() {
                Some((last, acc)) if *last == k => *acc = &*acc + &e,
                _ => out.push((k, e)),
            }
        }
        out.retain(|(_, e)| !e.is_zero());
        TimePolynomial { terms: out }
    }

    pub fn constant(e: Expression) -> Self {
        Self::new([(0, e)])
    }

    pub fn terms(&self) -> &[(u32, Expression)] {
        &self.terms
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.last().map(|(k, _)| *k)
    }

    pub fn coefficient(&self, k: u32) -> Expression {
        self.terms
            .iter()
            .find(|(j, _)| *j == k)
            .map(|(_, e)| e.clone())
            .unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `∂/∂t`.
    pub fn derivative(&self) -> TimePolynomial {
        Self::new(
            self.terms
                .iter()
                .filter(|(k, _)| *k > 0)
                .map(|(k, e)| (k - 1, e.scale(&int(i64::from(*k))))),
        )
    }
}

impl fmt::Display for TimePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, e)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match k {
                0 => write!(f, "({e})")?,
                1 => write!(f, "t*({e})")?,
                _ => write!(f, "t^{k}*({e})")?,
            }
        }
        Ok(())
    }
}
