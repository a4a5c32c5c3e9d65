use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operator I is undefined on the unit 1")]
    IncrementOnUnit,

    #[error("index {index} out of range for depth {depth}")]
    IndexOutOfRange { index: usize, depth: usize },

    #[error("entry {entry} at position {position} has no word encoding (entries must be >= 1)")]
    NonPositiveEntry { position: usize, entry: i64 },

    #[error("word does not end in x1")]
    WordEndsInX0,

    #[error("exponent row has {exponents} entries but label row has {labels}")]
    RowLengthMismatch { exponents: usize, labels: usize },

    #[error("label {0} appears more than once")]
    DuplicateLabel(u32),

    #[error("labels must be positive integers")]
    ZeroLabel,

    #[error("arguments share the label {0}")]
    NotIndependent(u32),

    #[error("depth-zero fraction has no leading linear form")]
    DepthZero,

    #[error("no value assigned to x{0}")]
    MissingVariable(u32),

    #[error("linear form {form} vanishes at the evaluation point")]
    VanishingDenominator { form: String },

    #[error("{composition} is divergent: partial weight at j={index} is {weight}, requires > {index}")]
    NotConvergent {
        composition: String,
        index: usize,
        weight: i64,
    },

    #[error("the unit 1 is not allowed here")]
    UnitArgument,

    #[error("cutoff {cutoff} is smaller than depth {depth}")]
    CutoffTooSmall { cutoff: u64, depth: usize },

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}
