use thiserror::Error;

/// Errors raised by matrix validation, weighting and ranking.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty alternatives")]
    EmptyAlternatives,
    #[error("empty attributes")]
    EmptyAttributes,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("non-finite value at row {row}, column {col}")]
    NonFiniteValue { row: usize, col: usize },
    #[error("negative value at row {row}, column {col}")]
    NegativeValue { row: usize, col: usize },
    #[error("invalid attribute range for '{name}': lo {lo} > hi {hi}")]
    InvalidRange { name: String, lo: f64, hi: f64 },
    #[error("column {col} ('{name}') is all zero; vector normalization is undefined")]
    ZeroColumn { col: usize, name: String },
    #[error("column {col} has zero maximum; max-ratio normalization is undefined")]
    ZeroColumnMax { col: usize },
    #[error("zero value at row {row}, column {col}; reciprocal cost normalization is undefined")]
    ZeroCostValue { row: usize, col: usize },
    #[error("normalized value {0} outside (0, 1]")]
    ValueOutOfBand(f64),
    #[error("weights must be nonnegative, got {0}")]
    NegativeWeight(f64),
    #[error("weights must sum to 1, got {0}")]
    WeightSum(f64),
    #[error("comparison matrix must be square, got {rows} rows and {cols} columns")]
    NotSquare { rows: usize, cols: usize },
    #[error("comparison matrix diagonal must be exactly 1 at index {0}")]
    DiagonalNotOne(usize),
    #[error("reciprocity violated at ({i}, {j}): {a} * {b} != 1")]
    ReciprocityViolation { i: usize, j: usize, a: f64, b: f64 },
    #[error("judgment at ({i}, {j}) = {value} outside the 1/9..9 scale")]
    JudgmentOutOfScale { i: usize, j: usize, value: f64 },
    #[error("non-positive judgment at ({i}, {j}): {value}")]
    NonPositiveJudgment { i: usize, j: usize, value: f64 },
    #[error("no consistency reference index for order {0}")]
    UnsupportedOrder(usize),
    #[error("scenario networks disagree on the attribute list: {0}")]
    AttributeListMismatch(String),
    #[error("epochs must be at least 2, got {0}")]
    TooFewEpochs(u32),
    #[error("episode failed at epoch {epoch}: {source}")]
    EpisodeFailed {
        epoch: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("empty metrics list")]
    EmptyMetrics,
    #[error("mixed methods in metrics list: {0} and {1}")]
    MixedMethods(String, String),
    #[error("parameter labels disagree: evaluation matrix has {em:?}, judgments have {pcm:?}")]
    LabelMismatch { em: Vec<String>, pcm: Vec<String> },
}

pub type Result<T> = std::result::Result<T, Error>;
