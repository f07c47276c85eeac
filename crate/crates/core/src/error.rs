use thiserror::Error;

/// Errors produced by the calibration workbench.
#[derive(Debug, Error)]
pub enum CalError {
    #[error("invalid robot model: {0}")]
    InvalidModel(String),

    #[error("error parameter {param} does not address any cell of a {joints}-joint model")]
    BadAddress { param: String, joints: usize },

    #[error("twist offset for joint {joint} targets DH row {row}, which is continuity-protected")]
    ProtectedTwist { joint: usize, row: usize },

    #[error("wire geometry degenerate: measured point within {length:.6} mm of the anchor point")]
    DegenerateWire { length: f64 },

    #[error("wire length {length:.3} mm exceeds encoder range {max:.3} mm at point {index}")]
    WireRange { index: usize, length: f64, max: f64 },

    #[error("ordering search stuck: no joint subset isolates any of [{}]", stuck.join(", "))]
    OrderingFailed { stuck: Vec<String> },

    #[error("objective returned a non-finite value at candidate {candidate}")]
    NonFinite { candidate: f64 },

    #[error("measurement log does not cover the plan: {0}")]
    LogMismatch(String),

    #[error("plane fit is rank-deficient: probe points are collinear or coincident")]
    RankDeficient,

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{context}: {message}")]
    Format { context: String, message: String },
}

impl CalError {
    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CalError::Io {
            context: context.into(),
            source,
        }
    }

    pub fn format(context: impl Into<String>, message: impl ToString) -> Self {
        CalError::Format {
            context: context.into(),
            message: message.to_string(),
        }
    }
}
