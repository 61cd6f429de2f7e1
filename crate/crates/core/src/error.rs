use std::path::PathBuf;

/// Errors raised by the solver, the shape-function builders and the harness.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of a function (h <= 0, q < 0, N too small, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The node geometry does not admit a shape function (singular moment matrix, nonpositive integral).
    #[error("ill-posed geometry at node {node}: {reason}")]
    IllPosedGeometry { node: usize, reason: String },

    /// A thermodynamic quantity that must stay positive did not.
    #[error("state corruption: {0}")]
    StateCorruption(String),

    /// Mismatched lengths or otherwise inconsistent call.
    #[error("usage error: {0}")]
    Usage(String),

    /// The Riemann data generates a vacuum; no star state exists.
    #[error("riemann data generates vacuum (pressure positivity violated by {deficit:.6e})")]
    Vacuum { deficit: f64 },

    #[error("step {step} at t = {t:.6e} rejected after {retries} retries: {reason}")]
    StepRejected {
        step: usize,
        t: f64,
        retries: usize,
        reason: String,
    },

    #[error("timestep underflow at t = {t:.6e}: dt = {dt:.3e}")]
    TimestepUnderflow { t: f64, dt: f64 },

    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
