use alloc::collections::BTreeMap;

use crate::error::{Error, Result};

use super::poly::XPoly;

/// A compactly supported lattice field `n -> u(n, x)` at fixed time, with the
/// base point `n0` from which every `Δ⁻¹` is summed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeState {
    sites: BTreeMap<i64, XPoly>,
    base_point: i64,
    margin: u32,
}

impl LatticeState {
    /// Requires `base_point < min(support) - margin`.
    pub fn new(sites: BTreeMap<i64, XPoly>, base_point: i64, margin: u32) -> Result<Self> {
        let sites: BTreeMap<i64, XPoly> = sites
            .into_iter()
            .filter(|(_, p)| !num_traits::Zero::is_zero(p))
            .collect();
        if let Some(&min) = sites.keys().next() {
            let limit = min - i64::from(margin);
            if base_point >= limit {
                return Err(Error::BasePointViolation {
                    base_point,
                    reach: limit,
                });
            }
        }
        if margin == 0 {
            return Err(Error::InvalidArgument(
                "state margin must be positive".into(),
            ));
        }
        Ok(LatticeState {
            sites,
            base_point,
            margin,
        })
    }

    pub fn sites(&self) -> &BTreeMap<i64, XPoly> {
        &self.sites
    }

    pub fn site(&self, n: i64) -> Option<&XPoly> {
        self.sites.get(&n)
    }

    pub fn base_point(&self) -> i64 {
        self.base_point
    }

    pub fn margin(&self) -> u32 {
        self.margin
    }

    pub fn support(&self) -> Option<(i64, i64)> {
        Some((*self.sites.keys().next()?, *self.sites.keys().next_back()?))
    }

    /// Every site read by an expression with the given shift span, summed
    /// from the base point, must lie left of the support.
    pub(crate) fn check_reach(&self, span: u64) -> Result<()> {
        let Some((min, _)) = self.support() else {
            return Ok(());
        };
        let reach = self.base_point.saturating_add(span as i64);
        if reach >= min {
            return Err(Error::BasePointViolation {
                base_point: self.base_point,
                reach,
            });
        }
        Ok(())
    }
}
