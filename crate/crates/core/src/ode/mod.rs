//! Deterministic explicit Runge–Kutta integration with uniform sampling.
//!
//! Two methods are available: classical fixed-step RK4 and the adaptive
//! Dormand–Prince 5(4) pair. Output is sampled at `t0 + i * sample_dt` plus the
//! final time, either by interpolation between accepted steps or by clipping
//! steps so that they land on the sample times.

mod dopri;
mod fields;
mod rk4;

pub use fields::{fn_field, FnField, GeodesicField, ReducedField, SingularField, TangentField, UnitSpeed};

use crate::error::{Error, Result};
use crate::linkage::Params;

/// A time-dependent vector field on `R^n`.
pub trait VectorField {
    fn dim(&self) -> usize;
    fn name(&self) -> &str;
    fn eval(&self, t: f64, y: &[f64], dy: &mut [f64]) -> Result<()>;

    /// Length parameters of the underlying linkage, if any.
    fn params(&self) -> Option<Params> {
        None
    }
}

/// Wraps `field` so that its vector is divided pointwise by `speed(y)`.
pub fn unit_speed_wrap<F, S>(field: F, speed: S) -> UnitSpeed<F, S>
where
    F: VectorField,
    S: Fn(&[f64]) -> f64,
{
    UnitSpeed::new(field, speed)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    /// Classical fourth-order Runge–Kutta with a fixed step.
    Rk4 { step: f64 },
    /// Dormand–Prince 5(4) with error control on the fifth-order solution.
    Dopri5 { rtol: f64, atol: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampling {
    /// Continuous extension between accepted steps (cubic Hermite for RK4).
    Interpolate,
    /// Steps are clipped to land exactly on each sample time.
    StepToSamples,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorSpec {
    pub method: Method,
    pub max_steps: usize,
    pub sampling: Sampling,
}

impl IntegratorSpec {
    pub fn adaptive(tol: f64) -> Self {
        Self { method: Method::Dopri5 { rtol: tol, atol: tol }, max_steps: 50_000_000, sampling: Sampling::Interpolate }
    }

    pub fn rk4(step: f64) -> Self {
        Self { method: Method::Rk4 { step }, max_steps: 50_000_000, sampling: Sampling::Interpolate }
    }

    pub fn with_sampling(mut self, sampling: Sampling) -> Self {
        self.sampling = sampling;
        self
    }

    pub fn with_max_steps(mut self, max_steps: usize) -> Self {
        self.max_steps = max_steps;
        self
    }

    fn validate(&self) -> Result<()> {
        let ok = match self.method {
            Method::Rk4 { step } => step > 0.0 && step.is_finite(),
            Method::Dopri5 { rtol, atol } => rtol > 0.0 && atol > 0.0 && rtol.is_finite() && atol.is_finite(),
        };
        if ok && self.max_steps > 0 {
            Ok(())
        } else {
            Err(Error::Invalid(format!("bad integrator spec {self:?}")))
        }
    }
}

impl Default for IntegratorSpec {
    fn default() -> Self {
        Self::adaptive(1e-10)
    }
}

/// Bookkeeping attached to a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryMeta {
    pub field: String,
    pub params: Option<Params>,
    pub spec: IntegratorSpec,
    pub sample_dt: f64,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
}

/// Time samples and the states at those times.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub meta: TrajectoryMeta,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> &[f64] {
        self.states.last().map(Vec::as_slice).unwrap_or(&[])
    }

    /// Column `i` of the state matrix.
    pub fn component(&self, i: usize) -> Vec<f64> {
        self.states.iter().map(|s| s[i]).collect()
    }
}

fn sample_times(t0: f64, t1: f64, dt: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut i = 0usize;
    loop {
        let t = t0 + i as f64 * dt;
        if t >= t1 - 1e-9 * dt {
            break;
        }
        out.push(t);
        i += 1;
    }
    out.push(t1);
    out
}

pub(crate) fn check_finite(t: f64, y: &[f64]) -> Result<()> {
    if y.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::Invalid(format!("non-finite state at t = {t}")))
    }
}

/// Integrates `field` from `y0` over `t_span`, sampling every `sample_dt`.
pub fn integrate<F: VectorField + ?Sized>(
    field: &F,
    y0: &[f64],
    t_span: (f64, f64),
    spec: &IntegratorSpec,
    sample_dt: f64,
) -> Result<Trajectory> {
    let (t0, t1) = t_span;
    if !(t1 > t0) || !t0.is_finite() || !t1.is_finite() {
        return Err(Error::Invalid(format!("empty time span ({t0}, {t1})")));
    }
    if !(sample_dt > 0.0 && sample_dt.is_finite()) {
        return Err(Error::Invalid(format!("sample_dt must be positive, got {sample_dt}")));
    }
    if y0.len() != field.dim() {
        return Err(Error::Invalid(format!("state has dimension {}, field expects {}", y0.len(), field.dim())));
    }
    spec.validate()?;
    check_finite(t0, y0)?;
    let samples = sample_times(t0, t1, sample_dt);
    let out = match spec.method {
        Method::Rk4 { step } => rk4::run(field, y0, &samples, step, spec)?,
        Method::Dopri5 { rtol, atol } => dopri::run(field, y0, &samples, rtol, atol, spec)?,
    };
    Ok(Trajectory {
        times: samples,
        states: out.states,
        meta: TrajectoryMeta {
            field: field.name().to_string(),
            params: field.params(),
            spec: *spec,
            sample_dt,
            accepted_steps: out.accepted,
            rejected_steps: out.rejected,
        },
    })
}

pub(crate) struct RunOutput {
    pub states: Vec<Vec<f64>>,
    pub accepted: usize,
    pub rejected: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_grid_includes_endpoint_once() {
        let s = sample_times(0.0, 1.0, 0.25);
        assert_eq!(s, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let s = sample_times(0.0, 1.1, 0.5);
        assert_eq!(s, vec![0.0, 0.5, 1.0, 1.1]);
    }
}
