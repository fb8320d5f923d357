//! Independent exact semantics for normal forms.
//!
//! States are compactly supported in `n` and polynomial in `x`; `Δ⁻¹` is the
//! definite sum from a base point left of everything an expression can reach,
//! so `(S - 1) Δ⁻¹ = 1` holds exactly and every rewrite rule of the algebra
//! can be checked value by value. All arithmetic is exact.

mod dual;
mod eval;
mod poly;
mod state;
mod zero;

pub use dual::DualValue;
pub use eval::{directional_eval, eval, eval_poly, eval_sites, Scalar};
pub use poly::XPoly;
pub use state::LatticeState;
pub use zero::{
    random_state, zero_test, OracleVerdict, SampleSites, Witness, ZeroTestConfig, DEFAULT_SEED,
};
