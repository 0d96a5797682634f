use thiserror::Error;

use crate::instance::Violation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("invalid instance: {}", join_violations(.0))]
    InvalidInstance(Vec<Violation>),

    #[error("weights ({w1}, {w2}) are not dominant: need w1 >= 2*w2")]
    WeightsNotDominant { w1: u64, w2: u64 },

    #[error("enumeration cap exceeded: {count} matchings > cap {cap}")]
    CapExceeded { count: u128, cap: u128 },

    #[error("c = {c} too small: need m - n >= m / c")]
    CTooSmall { c: String },

    #[error("the quadruple set T is empty; the Chebyshev bound is undefined")]
    TEmpty,

    #[error("geometric series diverges: c^2 n / m = {ratio} >= 1")]
    Divergent { ratio: String },

    #[error("no m up to {cap} reached p_hat >= {target}")]
    NotFound { cap: usize, target: f64 },

    #[error("inconsistent orientation: {0}")]
    InconsistentOrientation(String),

    #[error("instance file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the CLI: 2 for bad input, 3 for cap and
    /// divergence failures, 1 for anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParameters(_)
            | Error::InvalidInstance(_)
            | Error::WeightsNotDominant { .. }
            | Error::CTooSmall { .. }
            | Error::TEmpty
            | Error::InconsistentOrientation(_)
            | Error::Format(_)
            | Error::Json(_) => 2,
            Error::CapExceeded { .. } | Error::Divergent { .. } | Error::NotFound { .. } => 3,
            Error::Io(_) => 1,
        }
    }
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
