use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LechError {
    /// Malformed or out-of-contract input.
    #[error("input error: {0}")]
    Input(String),
    /// The ideal does not have finite colength in the ambient ring.
    #[error("ideal is not primary to the maximal ideal: {0}")]
    InfiniteColength(String),
    /// A configured budget (box size, elimination size, visit cap) was exceeded.
    #[error("resource budget exceeded: {0}")]
    Resource(String),
    /// The Hilbert-Samuel function did not settle within the power limit.
    #[error("finite differences did not stabilize by power {}; lengths {lengths:?}", lengths.len())]
    Unstable { lengths: Vec<u64> },
}

impl LechError {
    /// Process exit code used by the CLI for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            LechError::Input(_) | LechError::InfiniteColength(_) => 2,
            LechError::Resource(_) | LechError::Unstable { .. } => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, LechError>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(LechError::Input(msg.into()))
}
