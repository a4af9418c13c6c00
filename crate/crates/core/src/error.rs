use thiserror::Error;

/// Errors raised by the library. Outcomes that are ordinary values (a
/// missing square root, a missing standard involution, two forms that are
/// not similar) are reported through `Option` instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    #[error("invalid ring descriptor: {0}")]
    InvalidRing(String),

    #[error("cannot parse {literal:?} as an element of {ring}")]
    InvalidLiteral { literal: String, ring: String },

    #[error("{0} is not a unit")]
    NotAUnit(String),

    #[error("operation requires a field, got {0}")]
    NotAField(String),

    #[error("operation requires a finite field, got {0}")]
    NotFinite(String),

    #[error("field too large for exhaustive search: {ring} has {size} elements (limit {limit})")]
    FieldTooLarge { ring: String, size: u64, limit: u64 },

    #[error("variable {0:?} is not assigned")]
    MissingVariable(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular")]
    Singular,

    #[error("algebra is not associative")]
    NotAssociative,

    #[error("algebra has no standard involution")]
    NoStandardInvolution,

    #[error("form is not semiregular")]
    NotSemiregular,

    #[error("a required square root does not exist: {0}")]
    NoSquareRoot(String),

    #[error("not a valid similarity: {0}")]
    InvalidSimilarity(String),

    #[error("map is not an algebra isomorphism: {0}")]
    NotAnIsomorphism(String),

    #[error("not a unit-fixing map: {0}")]
    NotUnitFixing(String),

    #[error("hypothesis not satisfied: {0}")]
    NotApplicable(String),

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("internal verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
