#![allow(dead_code)]

use ddkp_core::oracle::{random_state, LatticeState, ZeroTestConfig};
use ddkp_core::sample::{SampleShape, Sampler};
use ddkp_core::Expression;

pub fn sampler(seed: u64) -> Sampler {
    Sampler::new(SampleShape::default(), seed)
}

pub fn small_sampler(seed: u64) -> Sampler {
    Sampler::new(
        SampleShape {
            max_terms: 2,
            max_depth: 1,
            ..SampleShape::default()
        },
        seed,
    )
}

/// A random state valid for expressions reaching `span` sites.
pub fn state(seed: u64, span: u64) -> LatticeState {
    let cfg = ZeroTestConfig {
        support_width: 4,
        xdeg_max: 3,
        ..ZeroTestConfig::default()
    }
    .with_seed(seed);
    random_state(&cfg, 0, span)
}

/// Sites from the base point to past the support, where every value of an
/// expression with the given span is determined.
pub fn sites(state: &LatticeState, span: u64) -> Vec<i64> {
    let (_, hi) = state.support().expect("non-empty support");
    (state.base_point()..=hi + span as i64 + 2).collect()
}

pub fn span(es: &[&Expression]) -> u64 {
    es.iter().map(|e| e.shift_span()).max().unwrap_or(0)
}
