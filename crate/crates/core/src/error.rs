use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("enumeration of {what} needs {size} elements, limit is {limit}")]
    ResourceGuard {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("radius {requested} exceeds the known horizon {truncation}")]
    Horizon { requested: u32, truncation: u32 },

    #[error("{0} is not in the identity's cluster")]
    NotInCluster(String),

    #[error("pattern library at radius {r} changed when the scan radius was doubled from {scan_radius}")]
    UnstableLibrary { r: u32, scan_radius: u32 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceGuard { .. } => 3,
            Error::UnstableLibrary { .. } => 4,
            Error::Io(_) => 1,
            _ => 2,
        }
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
