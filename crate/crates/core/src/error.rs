use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("expected {expected} entries, got {got}")]
    EntryCount { expected: usize, got: usize },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("direction has vanishing bilinear norm")]
    ZeroBilinearNorm,

    #[error("direction is not normalized (q.q = {re}{im:+}i)")]
    NotNormalized { re: f64, im: f64 },

    #[error("rotation and boost axes must be real")]
    ComplexAxis,

    #[error("sigma.axis is not diagonalizable for this axis")]
    DegenerateAxis,

    #[error("mass must be finite and non-negative, got {0}")]
    InvalidMass(f64),

    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error("grid needs at least {needed} points per axis, got {got:?}")]
    GridTooSmall { needed: usize, got: [usize; 4] },

    #[error("grid holds {got} values but extent requires {expected}")]
    GridShape { expected: usize, got: usize },

    #[error("momentum direction undefined for |p| = 0")]
    ZeroMomentum,

    #[error("q direction not normalizable: E^2 - m^2 = {0} must be positive")]
    NotNormalizable(f64),

    #[error("parameter {0} outside the supported range |x| <= 10")]
    ParameterOutOfRange(f64),

    #[error("empty tensor specification")]
    EmptySpec,

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
