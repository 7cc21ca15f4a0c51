use thiserror::Error;

/// Crate-wide error type. Everything computable here is exact, so errors are
/// structural: a law fails at a named basis element, a linear system is
/// inconsistent, or an input file is malformed.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("linear system has no solution")]
    NoSolution,

    #[error("matrix is not invertible")]
    NotInvertible,

    #[error("multiplication is not associative at basis triple ({i}, {j}, {k})")]
    NotAssociative { i: usize, j: usize, k: usize },

    #[error("unit law fails at basis element {0}")]
    BadUnit(usize),

    #[error("action violates the algebra relations: {0}")]
    BadAction(String),

    #[error("matrix does not intertwine the action of basis element {0}")]
    NotIntertwiner(usize),

    #[error("element is not idempotent")]
    NotIdempotent,

    #[error("no lift exists (target not projective or map not epi)")]
    NoLift,

    #[error("no extension exists (target not injective or map not mono)")]
    NoExtension,

    #[error("no isomorphism certificate found: {0}")]
    NotIsomorphic(String),

    #[error("not a complex: d(n+1) o F(d(n)) != 0 at degree {0}")]
    NotAComplex(i64),

    #[error("complex is not split at degree {degree}: system {system} is unsolvable")]
    NotSplit { degree: i64, system: String },

    #[error("window mismatch: {0}")]
    WindowMismatch(String),

    #[error("grading violation: {0}")]
    GradingViolation(String),

    #[error("not an algebra isomorphism: {0}")]
    NotAnIsomorphism(String),

    #[error("internal invariant violated ({0}); this is a bug")]
    Internal(String),

    #[error("{file}:{line}: parse error: {msg}")]
    Parse {
        file: String,
        line: usize,
        msg: String,
    },

    #[error("{file}:{line}: validation of `{entity}` failed ({law}): {msg}")]
    Validation {
        entity: String,
        law: String,
        file: String,
        line: usize,
        msg: String,
    },

    #[error("unknown command `{0}`")]
    UnknownCommand(String),

    #[error("unknown entity `{0}`")]
    UnknownEntity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
