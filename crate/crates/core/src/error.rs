use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("qubit count mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("unsupported qubit count {n} (maximum {max})")]
    TooManyQubits { n: usize, max: usize },

    #[error("beta is only defined for commuting Paulis; {a} and {b} anticommute")]
    Anticommuting { a: String, b: String },

    #[error("{0} is not in the span of the given generators")]
    NotInSpan(String),

    #[error("invalid generating set: {0}")]
    InvalidGenerators(String),

    #[error("expected a subgroup of rank {expected}, got rank {actual}")]
    RankPrecondition { expected: usize, actual: usize },

    #[error("the identity is not a measurable observable")]
    IdentityMeasurement,

    #[error("outcome {given} contradicts the ontic state (response is {expected})")]
    OutcomeContract { expected: u8, given: u8 },

    #[error("invalid Pauli string {0:?}")]
    BadPauli(String),

    #[error("invalid Clifford specification: {0}")]
    InvalidClifford(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
