//! Symbolic calculus for the differential-difference KP equation
//!
//! ```text
//! u_t = u_xx + 2 u u_x + 2 Θ(u_x),    Θ = (S - 1)^{-1} D_x
//! ```
//!
//! The crate is `no_std` (it needs `alloc`) and is organised in layers:
//!
//! * [`expr`], [`calculus`], [`dinv`] and [`tree`]: exact quasi-local
//!   expressions in the jet variables `u_{m,j} = S^m D_x^j u`, with
//!   coefficients polynomial in `x` and `n`, and the rewrite system that keeps
//!   them in normal form.
//! * [`variational`]: Fréchet derivatives, the Lie bracket `[F, G] = F_*(G) - G_*(F)`
//!   and iterated adjoint actions.
//! * [`oracle`]: an independent exact semantics on compactly supported
//!   lattice states, used to decide identities the rewrite system cannot close
//!   syntactically.
//! * [`symmetry`]: the named objects (`K`, `G3`, `W`, the `sl(2)` triple) and
//!   the symmetry, master symmetry, weight, nilpotency and time-dependent
//!   symmetry checks built on top of the layers above.
//! * [`sample`]: seeded random expressions for property checks.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod calculus;
pub mod dinv;
pub mod error;
pub mod expr;
pub mod oracle;
pub mod rational;
pub mod sample;
pub mod symmetry;
pub mod tree;
pub mod variational;

pub use calculus::{dx, dx_n, shift};
pub use dinv::{apply_dinv, apply_dinv_with, theta, theta_with, Summation};
pub use error::{Error, Result};
pub use expr::{equal_nf, Atom, Expression, Jet, Monomial};
pub use rational::Rational;
pub use tree::{normalize, normalize_with, Tree};
pub use variational::{
    ad_power, ad_power_with, apply_operator, directional_derivative, directional_derivative_with,
    frechet_operator, lie_bracket, lie_bracket_with, FrechetTerm, OpSymbol, OperatorWord,
    Orientation,
};
