//! Named objects of the DDKP calculus and the checks built on them.

pub mod builtin;
mod report;
mod suite;
mod time;

pub use builtin::{builtin, BuiltinName};
pub use report::{Check, Outcome, SymbolicVerdict, VerificationReport};
pub use suite::{Hierarchy, Suite, SuiteConfig, TimeSymmetry};
pub use time::TimePolynomial;
