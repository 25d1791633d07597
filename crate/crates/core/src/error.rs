use thiserror::Error;

/// Errors raised by the geoball library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A tabulated warping function violates the profile requirements.
    #[error("invalid profile sample {index} (t = {t}): {reason}")]
    InvalidSample { index: usize, t: f64, reason: String },

    /// A radial grid could not be built.
    #[error("invalid grid: {0}")]
    Grid(String),

    /// The operation does not apply to this kind of profile.
    #[error("{operation} does not apply to {profile} profiles: {hint}")]
    NotApplicable {
        operation: &'static str,
        profile: &'static str,
        hint: &'static str,
    },

    /// The eigenvalue bracket could not be established.
    #[error("oracle failure: {0}")]
    Oracle(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
