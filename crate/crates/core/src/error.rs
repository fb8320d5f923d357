use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// `(S-1)^{-1}` met a term whose residual core has no jet and no nonlocal
    /// factor, which leaves the quasi-local space.
    #[error("non-summable term under (S-1)^-1: {term}")]
    NonSummableAtom { term: String },

    #[error("ad_K series did not terminate within {cap} steps")]
    NotNilpotent { cap: usize },

    #[error("expression grew to {terms} terms, above the ceiling of {ceiling}")]
    DepthBlowup { terms: usize, ceiling: usize },

    #[error("base point {base_point} is not left of site {reach} reachable by the expression")]
    BasePointViolation { base_point: i64, reach: i64 },

    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),

    #[error("depth {requested} exceeds the configured cap of {cap}")]
    DepthCap { requested: usize, cap: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
