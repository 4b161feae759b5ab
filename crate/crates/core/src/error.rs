use thiserror::Error;

/// Failures raised by the kinematics, integrators and curve tools.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("state is not on the unit-energy level (H = {h})")]
    NotUnitEnergy { h: f64 },
    #[error("integrator exceeded {0} steps")]
    MaxSteps(usize),
    #[error("step size underflow at t = {0}")]
    StepUnderflow(f64),
    #[error("curve is not unit speed (max deviation {0:e})")]
    NotUnitSpeed(f64),
    #[error("design matrix is rank deficient")]
    Unfittable,
    #[error("elliptic modulus {0} outside [0, 1]")]
    Modulus(f64),
    #[error("branch selection failed: {0}")]
    Branch(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
