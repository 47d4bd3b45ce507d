use thiserror::Error;

/// Errors produced by poset construction and the tame-order analyses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The generating pairs force `x < x` for the named element.
    #[error("relation contains a cycle through `{0}`")]
    CycleDetected(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("duplicate element `{0}`")]
    DuplicateElement(String),

    #[error("{what}: size {got} exceeds the limit of {limit}")]
    SizeLimitExceeded {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("multiplicity of `{0}` must be at least 1")]
    InvalidMultiplicity(String),

    /// The order embeds `R_{2,2}`; the witness lists `(x, x', y, y')`.
    #[error("order is not tame: witness ({}, {}, {}, {})", .witness[0], .witness[1], .witness[2], .witness[3])]
    NotTame { witness: [String; 4] },

    #[error("order is not reduced: `{0}` and `{1}` share their down-set and up-set")]
    NotReduced(String, String),

    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
