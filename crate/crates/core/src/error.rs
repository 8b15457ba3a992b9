use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("matrix data has {got} entries, expected {rows}x{cols}")]
    BadShape {
        rows: usize,
        cols: usize,
        got: usize,
    },

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NotFinite { row: usize, col: usize },

    #[error("matrix is not symmetric: |a[{row},{col}] - a[{col},{row}]| = {gap:e}")]
    NotSymmetric { row: usize, col: usize, gap: f64 },

    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("ambient dimension {dim} exceeds the limit of {limit} for dense scatter")]
    AmbientTooLarge { dim: usize, limit: usize },

    #[error("regularization divisor for {which} is {value:e}, too close to zero")]
    DegenerateDivisor { which: &'static str, value: f64 },

    #[error("requested {requested} components but numerical rank is {rank}")]
    RankExceeded { requested: usize, rank: usize },

    #[error("degenerate data: {0}")]
    DegenerateData(&'static str),

    #[error("within-class scatter is singular (smallest eigenvalue {min_eigenvalue:e})")]
    SingularWithinClass { min_eigenvalue: f64 },

    #[error("between-class scatter has no eigenvalue above the rank tolerance")]
    EmptyBetweenClassRange,

    #[error("m = {m} exceeds the available discriminant range {available}")]
    MExceedsRange { m: usize, available: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("gallery is empty")]
    EmptyGallery,

    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("image {path} is {got:?} (width, height), expected {expected:?}")]
    MixedDimensions {
        path: PathBuf,
        expected: (usize, usize),
        got: (usize, usize),
    },

    #[error("unsupported image format: {0}")]
    UnsupportedFormat(String),

    #[error("class directory {0} contains no images")]
    EmptyClass(PathBuf),

    #[error("class {class} has {have} samples, split needs more than {need}")]
    NotEnoughSamples {
        class: usize,
        have: usize,
        need: usize,
    },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
