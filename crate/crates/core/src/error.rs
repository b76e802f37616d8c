use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("signature mismatch: operands live over different algebra signatures")]
    SignatureMismatch,

    #[error("series has non-unit constant term")]
    NonUnitConstantTerm,

    #[error("no rational square root for grouplike diagonal entry {0}")]
    NoSquareRoot(usize),

    #[error("grouplike bicharacter value is not a rational constant")]
    NonConstantGrouplikeValue,

    #[error("mode index parity does not match the twist flag")]
    ModeParityMismatch,

    #[error("twisted words have no z = 0 evaluation")]
    TwistedWordHasNoZeroEvaluation,

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("parse error at byte {offset}: expected {expected}")]
    ParseError { offset: usize, expected: String },

    #[error("Laurent exponent overflow")]
    ExponentOverflow,

    #[error("degenerate lattice: Gram matrix has zero determinant")]
    DegenerateLattice,

    #[error("invalid input: {0}")]
    Invalid(String),
}
