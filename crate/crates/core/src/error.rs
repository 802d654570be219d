use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the function.
    #[error("{func}: domain error: {msg}")]
    Domain { func: &'static str, msg: String },

    /// Parameters are valid in principle but not handled by the chosen
    /// evaluation route (pole coincidences, unsupported Meijer-G families).
    #[error("{func}: unsupported parameters: {msg}")]
    Unsupported { func: &'static str, msg: String },

    /// Result not representable as a finite f64.
    #[error("{func}: overflow: {msg}")]
    Overflow { func: &'static str, msg: String },

    /// An iterative method failed to reach the requested tolerance.
    #[error("{func}: no convergence after {iterations} iterations")]
    NoConvergence { func: &'static str, iterations: usize },

    /// The RF term expansion would exceed the combinatorial cap.
    #[error("term expansion needs more than {cap} terms (K = {k}, m = {m})")]
    Capacity { k: u32, m: u32, cap: usize },

    /// One or more configuration invariants are violated. Every violation
    /// is listed, not just the first.
    #[error("invalid configuration: {}", .0.join("; "))]
    InvalidConfig(Vec<String>),

    #[error("refusing Monte Carlo estimate with {requested} samples (minimum {minimum})")]
    TooFewSamples { requested: u64, minimum: u64 },
}

impl Error {
    pub(crate) fn domain(func: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain {
            func,
            msg: msg.into(),
        }
    }

    pub(crate) fn unsupported(func: &'static str, msg: impl Into<String>) -> Self {
        Error::Unsupported {
            func,
            msg: msg.into(),
        }
    }
}
