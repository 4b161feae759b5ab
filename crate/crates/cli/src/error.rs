use thiserror::Error;

/// Failures of a command, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// One or more invariants or proofs failed.
    #[error("{0}")]
    Invariant(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("integrator failure: {0}")]
    Integrator(tricycle_core::Error),
    #[error("unit-speed violation: {0}")]
    UnitSpeed(String),
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invariant(_) => 1,
            CliError::Config(_) | CliError::Io { .. } => 2,
            CliError::Integrator(_) => 3,
            CliError::UnitSpeed(_) => 4,
        }
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

impl From<tricycle_core::Error> for CliError {
    fn from(e: tricycle_core::Error) -> Self {
        use tricycle_core::Error as E;
        match e {
            E::MaxSteps(_) | E::StepUnderflow(_) => CliError::Integrator(e),
            E::NotUnitSpeed(d) => CliError::UnitSpeed(format!("max speed deviation {d:e}")),
            other => CliError::Config(other.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
