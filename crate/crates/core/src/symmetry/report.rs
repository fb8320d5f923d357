use alloc::string::String;
use alloc::vec::Vec;
use core::time::Duration;

use crate::oracle::{OracleVerdict, ZeroTestConfig};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymbolicVerdict {
    SyntacticZero,
    NonzeroNormalForm { terms: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// An expression expected to vanish. The oracle runs whenever the normal
    /// form is not syntactically zero.
    Identity {
        symbolic: SymbolicVerdict,
        oracle: Option<OracleVerdict>,
        /// Only a syntactic zero counts.
        syntactic_only: bool,
    },
    /// A structural condition such as membership in the coefficient-free space.
    Condition { holds: bool, detail: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub outcome: Outcome,
}

impl Check {
    pub fn passed(&self) -> bool {
        match &self.outcome {
            Outcome::Identity {
                symbolic,
                oracle,
                syntactic_only,
            } => {
                *symbolic == SymbolicVerdict::SyntacticZero
                    || (!syntactic_only
                        && oracle.as_ref().is_some_and(OracleVerdict::is_exact_zero))
            }
            Outcome::Condition { holds, .. } => *holds,
        }
    }

    pub fn oracle(&self) -> Option<&OracleVerdict> {
        match &self.outcome {
            Outcome::Identity { oracle, .. } => oracle.as_ref(),
            Outcome::Condition { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub label: String,
    pub checks: Vec<Check>,
    /// Computed quantities worth recording next to the verdicts.
    pub notes: Vec<String>,
    pub parameters: ZeroTestConfig,
    /// Filled in by callers that can read a clock.
    pub elapsed: Option<Duration>,
}

impl VerificationReport {
    pub fn new(label: impl Into<String>, parameters: ZeroTestConfig) -> Self {
        VerificationReport {
            label: label.into(),
            checks: Vec::new(),
            notes: Vec::new(),
            parameters,
            elapsed: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}
