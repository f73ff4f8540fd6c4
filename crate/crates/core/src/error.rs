use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-contract input.
    #[error("input error: {0}")]
    Input(String),

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("building set violation: {0}")]
    BuildingSet(String),

    /// Dominant transforms would still meet in an excess locus after the center is removed.
    #[error("unsupported excess intersection: {0}")]
    UnsupportedExcessIntersection(String),

    /// An internal guard tripped (an invariant the engine relies on failed).
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// `true` for failures caused by the caller's data rather than by an engine guard.
    pub fn is_input(&self) -> bool {
        matches!(self, Error::Input(_) | Error::Geometry(_) | Error::BuildingSet(_) | Error::Json(_) | Error::Io(_))
    }
}
