use thiserror::Error;

/// Errors surfaced by the library.
///
/// The CLI maps these onto its exit-code contract: `Input` is exit 3,
/// `CapExceeded` is exit 2, `Certification` and `Invariant` are exit 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-contract input (bad graph6, bad coloring, bad flag value).
    #[error("input error: {0}")]
    Input(String),

    /// A state-space cap was hit before an answer could be produced.
    /// `visited` reports how many states were processed before giving up.
    #[error("resource cap exceeded: visited {visited} states (cap {cap})")]
    CapExceeded { visited: u64, cap: u64 },

    /// A certificate check failed; the message names the failed condition.
    #[error("certification failed: {0}")]
    Certification(String),

    /// An internal invariant did not hold. This signals a bug in the engine
    /// and is never silently swallowed.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
