use thiserror::Error;

/// Library-wide error type. Variants are grouped so the CLI can map them onto
/// exit codes: configuration problems (2), numerical failures (3), I/O (4).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("eigenvalue solver failed for {n}x{n} matrix: {detail}")]
    NumericalFailure { n: usize, detail: String },

    #[error(
        "tracking failed at (s, t) = ({s}, {t}): bisection depth exhausted \
         with contested indices {contested:?}"
    )]
    TrackingFailure {
        s: f64,
        t: f64,
        contested: Vec<usize>,
    },

    #[error(
        "rotated initialization failed after {attempts} attempts: \
         could not retain {needed} eigenvalues inside the {curve} region"
    )]
    InitializationFailure {
        attempts: usize,
        needed: usize,
        curve: String,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Parse(_) => 2,
            Error::NumericalFailure { .. }
            | Error::TrackingFailure { .. }
            | Error::InitializationFailure { .. } => 3,
            Error::Io { .. } => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
