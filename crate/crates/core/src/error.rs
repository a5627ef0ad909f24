use thiserror::Error;

/// Everything that can go wrong between reading a graph and emitting a module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-contract input: bad graph files, invalid
    /// parameters, dimension mismatches.
    #[error("input error: {0}")]
    Input(String),

    /// The graph parsed but fails a precondition of the computation
    /// (not a tree, not negative definite, not a homology sphere, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// The computation sequence exceeded its step budget.
    #[error(
        "non-terminating input (graph likely not almost-rational or not negative definite): \
         step budget of {budget} exhausted"
    )]
    NonTermination { budget: u64 },

    /// A checked 64-bit operation overflowed.
    #[error("arithmetic overflow in {context}: input exceeds supported scale (64-bit)")]
    Overflow { context: &'static str },

    /// An internal identity that must hold exactly did not.
    #[error("consistency error: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn overflow(context: &'static str) -> Self {
        Error::Overflow { context }
    }

    /// True for failures of the run itself (budget, overflow, broken
    /// identities) as opposed to bad input.
    pub fn is_runtime_failure(&self) -> bool {
        matches!(
            self,
            Error::NonTermination { .. } | Error::Overflow { .. } | Error::Consistency(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
