use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("operators live on different spaces")]
    SpaceMismatch,

    #[error(
        "space of dimension {required} exceeds the configured limit {limit} \
         (roughly {bytes} bytes per dense column sweep)"
    )]
    DimensionLimit { required: u128, limit: usize, bytes: u128 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("repeated index {0} in Clifford product")]
    RepeatedIndex(usize),

    #[error("unknown presentation `{0}`")]
    UnknownPresentation(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("symbol `{0}` is not declared in the presentation")]
    UndeclaredSymbol(String),

    #[error("no operator or value assigned to symbol `{0}`")]
    MissingSymbol(String),

    #[error("orthonormal basis needs square roots, which the exact backend cannot represent")]
    InexactBasis,

    #[error("kernel of the lowering operator at j = {j} has dimension {dim}, expected 1")]
    KernelDimension { j: usize, dim: usize },

    #[error("coupled vector (j = {j}, n12 = {n12}) has norm {norm:e} below tolerance")]
    Degenerate { j: usize, n12: usize, norm: f64 },

    #[error("coupled vector (j = {j}, n12 = {n12}) failed validation: {what}")]
    Validation { j: usize, n12: usize, what: String },
}
