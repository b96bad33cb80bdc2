use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not symmetric (max asymmetry {max_asymmetry:e})")]
    NotSymmetric { max_asymmetry: f64 },

    #[error("non-finite value in {0}")]
    NonFinite(String),

    #[error(
        "eigen solver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})"
    )]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("matrix is not positive definite (pivot {pivot} = {value:e})")]
    NotPositiveDefinite { pivot: usize, value: f64 },

    #[error("singular system: {0}")]
    Singular(String),

    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("class {class} has {available} items but the split needs {required}")]
    Capacity {
        class: usize,
        required: usize,
        available: usize,
    },

    #[error("training diverged at epoch {epoch} (last finite epoch: {last_finite:?})")]
    Divergence {
        epoch: usize,
        last_finite: Option<usize>,
    },

    #[error("csv line {line}: expected {expected} fields, found {found}")]
    CsvRagged {
        line: u64,
        expected: usize,
        found: usize,
    },

    #[error("csv line {line}: field {field} is not numeric: {value:?}")]
    CsvNonNumeric {
        line: u64,
        field: usize,
        value: String,
    },

    #[error("csv file has no data rows")]
    CsvEmpty,

    #[error("csv line {line}: {message}")]
    CsvFormat { line: u64, message: String },

    #[error("bad magic number: expected {expected:#010x}, found {found:#010x}")]
    BadMagic { expected: u32, found: u32 },

    #[error("truncated payload: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },

    #[error("image count {images} does not match label count {labels}")]
    CountMismatch { images: usize, labels: usize },

    #[error("codes file: {0}")]
    CodesFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        let line = err.position().map(|p| p.line()).unwrap_or(0);
        match err.into_kind() {
            csv::ErrorKind::Io(io) => Error::Io(io),
            csv::ErrorKind::UnequalLengths {
                expected_len, len, ..
            } => Error::CsvRagged {
                line,
                expected: expected_len as usize,
                found: len as usize,
            },
            other => Error::CsvFormat {
                line,
                message: format!("{other:?}"),
            },
        }
    }
}

impl Error {
    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::NonFinite(_)
                | Error::NoConvergence { .. }
                | Error::NotPositiveDefinite { .. }
                | Error::Singular(_)
                | Error::Divergence { .. }
        )
    }
}
