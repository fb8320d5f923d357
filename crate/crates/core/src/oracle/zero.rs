//! Randomized exact zero testing.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::expr::Expression;
use crate::rational::{int, Rational};

use super::eval::eval_sites;
use super::poly::XPoly;
use super::state::LatticeState;

pub const DEFAULT_SEED: u64 = 0x5_eedd_c0de;

/// Where a zero test evaluates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SampleSites {
    /// Every site from the base point to two past the support plus the
    /// expression's shift span.
    Span,
    Explicit(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroTestConfig {
    pub trials: u32,
    pub support_width: u32,
    pub xdeg_max: u32,
    pub coefficient_range: u32,
    pub n_samples: SampleSites,
    pub x_samples: Vec<Rational>,
    pub seed: u64,
}

impl Default for ZeroTestConfig {
    fn default() -> Self {
        ZeroTestConfig {
            trials: 20,
            support_width: 6,
            xdeg_max: 4,
            coefficient_range: 9,
            n_samples: SampleSites::Span,
            x_samples: vec![int(1009), int(-2017), int(3511)],
            seed: DEFAULT_SEED,
        }
    }
}

impl ZeroTestConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_trials(mut self, trials: u32) -> Self {
        self.trials = trials;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub trial: u32,
    pub site: i64,
    pub x: Rational,
    pub value: Rational,
    pub state: LatticeState,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    ExactZero,
    /// Nonzero, but constant in `n` on every state and `x` sample: a residual
    /// in the kernel of `S - 1`.
    ZeroModNConstant {
        witness: Witness,
    },
    Nonzero {
        witness: Witness,
    },
}

impl OracleVerdict {
    pub fn is_exact_zero(&self) -> bool {
        matches!(self, OracleVerdict::ExactZero)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            OracleVerdict::ExactZero => None,
            OracleVerdict::ZeroModNConstant { witness } | OracleVerdict::Nonzero { witness } => {
                Some(witness)
            }
        }
    }
}

/// Deterministic random state for `(cfg.seed, trial)`: `support_width`
/// consecutive sites starting at 0, each a polynomial of degree at most
/// `xdeg_max` with nonzero integer coefficients in `[-range, range]`, and the
/// base point left of the support by more than `shift_span`.
pub fn random_state(cfg: &ZeroTestConfig, trial: u32, shift_span: u64) -> LatticeState {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(u64::from(trial));
    let range = i64::from(cfg.coefficient_range.max(1));
    let mut sites = BTreeMap::new();
    for n in 0..i64::from(cfg.support_width.max(1)) {
        let degree = rng.random_range(0..=cfg.xdeg_max);
        let coeffs = (0..=degree)
            .map(|_| {
                let mag = rng.random_range(1..=range);
                if rng.random_bool(0.5) {
                    int(mag)
                } else {
                    int(-mag)
                }
            })
            .collect();
        sites.insert(n, XPoly::new(coeffs));
    }
    let margin = u32::try_from(shift_span).unwrap_or(u32::MAX).max(1);
    LatticeState::new(sites, -i64::from(margin) - 1, margin)
        .expect("base point is left of the support by construction")
}

fn sample_sites(cfg: &ZeroTestConfig, state: &LatticeState, span: u64) -> Vec<i64> {
    match &cfg.n_samples {
        SampleSites::Explicit(sites) => sites.clone(),
        SampleSites::Span => {
            let hi = state.support().map_or(0, |(_, hi)| hi) + span as i64 + 2;
            (state.base_point()..=hi).collect()
        }
    }
}

/// Evaluates `e` on `cfg.trials` random states at every sample site and
/// point. A single nonzero value is conclusive; the reported witness is the
/// first nonzero value in (trial, site, x) order.
pub fn zero_test(e: &Expression, cfg: &ZeroTestConfig) -> Result<OracleVerdict> {
    let span = e.shift_span();
    let mut first: Option<Witness> = None;
    let mut varies_in_n = false;
    for trial in 0..cfg.trials {
        let state = random_state(cfg, trial, span);
        let sites = sample_sites(cfg, &state, span);
        // values[x][site]
        let mut values = Vec::with_capacity(cfg.x_samples.len());
        for x in &cfg.x_samples {
            values.push(eval_sites(e, &state, &sites, x)?);
        }
        if first.is_none() {
            'scan: for (si, site) in sites.iter().enumerate() {
                for (xi, x) in cfg.x_samples.iter().enumerate() {
                    if !values[xi][si].is_zero() {
                        first = Some(Witness {
                            trial,
                            site: *site,
                            x: x.clone(),
                            value: values[xi][si].clone(),
                            state: state.clone(),
                        });
                        break 'scan;
                    }
                }
            }
        }
        if values
            .iter()
            .any(|row| row.windows(2).any(|w| w[0] != w[1]))
        {
            varies_in_n = true;
        }
        if varies_in_n && first.is_some() {
            break;
        }
    }
    Ok(match first {
        None => OracleVerdict::ExactZero,
        Some(witness) if varies_in_n => OracleVerdict::Nonzero { witness },
        Some(witness) => OracleVerdict::ZeroModNConstant { witness },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dinv::theta;

    #[test]
    fn states_are_deterministic() {
        let cfg = ZeroTestConfig::default().with_seed(1);
        assert_eq!(random_state(&cfg, 0, 0), random_state(&cfg, 0, 0));
        assert_ne!(random_state(&cfg, 0, 0), random_state(&cfg, 1, 0));
    }

    #[test]
    fn degenerate_state() {
        let cfg = ZeroTestConfig {
            support_width: 1,
            xdeg_max: 0,
            ..ZeroTestConfig::default()
        };
        let s = random_state(&cfg, 0, 0);
        assert_eq!(s.sites().len(), 1);
        assert_eq!(s.site(0).unwrap().degree(), Some(0));
    }

    #[test]
    fn verdicts() {
        let cfg = ZeroTestConfig::default().with_trials(4);
        let u = Expression::u(0);
        assert!(zero_test(&(&u - &u), &cfg).unwrap().is_exact_zero());
        let lhs = theta(&(&u * &Expression::u(1))).unwrap();
        let rhs = &u * &theta(&Expression::u(1)).unwrap();
        assert!(matches!(
            zero_test(&(&lhs - &rhs), &cfg).unwrap(),
            OracleVerdict::Nonzero { .. }
        ));
        assert!(matches!(
            zero_test(&Expression::x(), &cfg).unwrap(),
            OracleVerdict::ZeroModNConstant { .. }
        ));
    }
}
