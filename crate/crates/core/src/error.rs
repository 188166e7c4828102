use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("element {0} does not lie in the group")]
    NotInGroup(String),

    #[error("subgroup is not normal: {0}")]
    NotNormal(String),

    #[error("generator images do not define a homomorphism")]
    NotAHomomorphism,

    #[error("section too large: {size} points exceed the bound {bound}")]
    SectionTooLarge { size: usize, bound: usize },

    #[error("series refinement exhausted: {0}")]
    RefinementExhausted(String),

    #[error("module splitting undecided after {0} attempts")]
    Undecided(usize),

    #[error("section is not a chief factor")]
    NotChief,

    #[error("radical undefined for the empty class")]
    EmptyFormation,

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("group order {order} exceeds the oracle bound {bound}")]
    OracleBound { order: String, bound: u64 },

    #[error("class not Fitting on this instance: {0}")]
    NotFitting(String),

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::InvalidSpec(_)
            | Error::MalformedPermutation(_)
            | Error::DegreeMismatch { .. }
            | Error::NotInGroup(_)
            | Error::NotNormal(_)
            | Error::EmptyFormation => 1,
            Error::SectionTooLarge { .. }
            | Error::OracleBound { .. }
            | Error::Undecided(_)
            | Error::RefinementExhausted(_) => 2,
            _ => 3,
        }
    }
}
