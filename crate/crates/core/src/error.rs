use thiserror::Error;

use crate::inverse::{CaseId, Coefficient, Violation};

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain a routine supports.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series did not meet its stopping rule within the term budget.
    #[error("series did not converge within {terms} terms (z = {z})")]
    NonConvergence { z: f64, terms: usize },

    /// The target of a monotone equation is outside the attainable range.
    #[error("target {target} outside attainable range ({lower}, {upper})")]
    Range { target: f64, lower: f64, upper: f64 },

    /// Geometric expansion failed to straddle the target.
    #[error("could not bracket target {target} (last bracket [{lo}, {hi}])")]
    Bracket { target: f64, lo: f64, hi: f64 },

    #[error("inadmissible data for case {case}: {violation}")]
    Inadmissible { case: CaseId, violation: Violation },

    #[error("case {case} requires known coefficient {coefficient}")]
    MissingCoefficient {
        case: CaseId,
        coefficient: Coefficient,
    },

    /// The similarity variable would exceed the series domain bound.
    #[error("xi exceeds the supported bound {bound} (profile target {target})")]
    DomainBoundExceeded { bound: f64, target: f64 },

    /// A recovered solution failed the characterizing system check.
    #[error("residual check failed: eq1 {residual_eq1:e}, eq2 {residual_eq2:e}")]
    ResidualCheck {
        residual_eq1: f64,
        residual_eq2: f64,
    },

    #[error("invalid problem data: {0}")]
    InvalidData(String),

    /// A convergence probe aborted at one of its sampled orders.
    #[error("probe failed at alpha = {alpha}: {source}")]
    Probe { alpha: f64, source: Box<Error> },
}

pub type Result<T> = std::result::Result<T, Error>;
