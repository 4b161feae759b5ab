//! Plane curves sampled at uniform arc length and their curvature.

pub mod fd;
mod inflectional;
mod jacobi;
mod residual;

pub use inflectional::{circle_ic, inflectional_ic, mu_classify, mu_readings, MuReadings, Shape};
pub use jacobi::jacobi_cn;
pub use residual::{elastica_residual, fit_soliton_ab, soliton2_residual, ElasticaResidual, SolitonFit, SolitonResidual};

use crate::error::{Error, Result};

/// Tolerance on `| |x'| - 1 |` for curves flagged as unit speed.
pub const UNIT_SPEED_TOL: f64 = 1e-6;
/// Accuracy order of the velocity and acceleration stencils applied to positions.
///
/// Positions are exact to integrator precision, so truncation dominates at
/// practical spacings. The one-sided second-difference stencils amplify
/// rounding of the data by about `170 eps / dt^2`.
pub const POSITION_ACCURACY: usize = 6;

/// Uniformly sampled plane curve.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarCurve {
    pub points: Vec<[f64; 2]>,
    pub dt: f64,
    pub unit_speed: bool,
}

impl PlanarCurve {
    pub fn new(points: Vec<[f64; 2]>, dt: f64, unit_speed: bool) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::Invalid(format!("sample spacing must be positive, got {dt}")));
        }
        Ok(Self { points, dt, unit_speed })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn coords(&self, i: usize) -> Vec<f64> {
        self.points.iter().map(|p| p[i]).collect()
    }

    /// `max | |x'(t)| - 1 |` by finite differences.
    pub fn speed_deviation(&self) -> f64 {
        if self.len() < fd::min_samples(1, POSITION_ACCURACY) {
            return f64::INFINITY;
        }
        let vx = fd::derivative_with(&self.coords(0), self.dt, 1, POSITION_ACCURACY);
        let vy = fd::derivative_with(&self.coords(1), self.dt, 1, POSITION_ACCURACY);
        vx.iter().zip(&vy).map(|(a, b)| (a.hypot(*b) - 1.0).abs()).fold(0.0, f64::max)
    }
}

/// Curvature and up to four of its derivatives on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureSeries {
    pub t: Vec<f64>,
    /// `cols[i]` is the `i`-th derivative of the curvature.
    pub cols: Vec<Vec<f64>>,
}

impl CurvatureSeries {
    /// Builds a series from known columns (curvature first).
    pub fn from_columns(t: Vec<f64>, cols: Vec<Vec<f64>>) -> Result<Self> {
        if cols.is_empty() || cols.len() > 5 || cols.iter().any(|c| c.len() != t.len()) {
            return Err(Error::Invalid("curvature columns must match the time grid".into()));
        }
        Ok(Self { t, cols })
    }

    /// Curvature samples with derivatives up to `upto` by finite differences.
    pub fn from_kappa(t: Vec<f64>, kappa: Vec<f64>, upto: usize) -> Result<Self> {
        Self::from_columns(t, vec![kappa])?.extend_fd(upto)
    }

    pub fn dt(&self) -> f64 {
        if self.t.len() < 2 {
            0.0
        } else {
            self.t[1] - self.t[0]
        }
    }

    pub fn kappa(&self) -> &[f64] {
        &self.cols[0]
    }

    /// Derivative column `i`, if present.
    pub fn d(&self, i: usize) -> Option<&[f64]> {
        self.cols.get(i).map(Vec::as_slice)
    }

    /// Appends the missing derivative columns up to `upto` by differentiating the highest known column.
    pub fn extend_fd(self, upto: usize) -> Result<Self> {
        self.extend_fd_with(upto, fd::DEFAULT_ACCURACY)
    }

    /// Same as [`extend_fd`](Self::extend_fd) with stencils of the given (even) accuracy order.
    pub fn extend_fd_with(mut self, upto: usize, accuracy: usize) -> Result<Self> {
        if upto > 4 {
            return Err(Error::Invalid("at most four curvature derivatives".into()));
        }
        if accuracy < 2 || !accuracy.is_multiple_of(2) {
            return Err(Error::Invalid(format!("accuracy order must be even and positive, got {accuracy}")));
        }
        let top = self.cols.len() - 1;
        if upto > top && self.t.len() < fd::min_samples(upto - top, accuracy) {
            return Err(Error::Invalid("too few samples for finite differences".into()));
        }
        let dt = self.dt();
        for i in top + 1..=upto {
            let col = fd::derivative_with(&self.cols[top], dt, i - top, accuracy);
            self.cols.push(col);
        }
        Ok(self)
    }
}

/// Per-sample Frenet data of a curve.
#[derive(Debug, Clone, PartialEq)]
pub struct Frenet {
    pub tangent: Vec<[f64; 2]>,
    pub normal: Vec<[f64; 2]>,
    pub kappa: Vec<f64>,
}

/// Tangent, left normal and signed curvature by finite differences.
pub fn frenet_fd(c: &PlanarCurve) -> Result<Frenet> {
    if c.len() < fd::min_samples(2, POSITION_ACCURACY) {
        return Err(Error::Invalid("too few samples for finite differences".into()));
    }
    let dev = c.speed_deviation();
    if !c.unit_speed || dev > UNIT_SPEED_TOL {
        return Err(Error::NotUnitSpeed(dev));
    }
    let (x, y) = (c.coords(0), c.coords(1));
    let d1 = |v: &[f64]| fd::derivative_with(v, c.dt, 1, POSITION_ACCURACY);
    let (vx, vy) = (d1(&x), d1(&y));
    let (ax, ay) = (fd::derivative_with(&x, c.dt, 2, POSITION_ACCURACY), fd::derivative_with(&y, c.dt, 2, POSITION_ACCURACY));
    let mut out = Frenet { tangent: Vec::with_capacity(c.len()), normal: Vec::with_capacity(c.len()), kappa: Vec::with_capacity(c.len()) };
    for i in 0..c.len() {
        let s = vx[i].hypot(vy[i]);
        let t = [vx[i] / s, vy[i] / s];
        let n = [-t[1], t[0]];
        out.kappa.push((ax[i] * n[0] + ay[i] * n[1]) / (s * s));
        out.tangent.push(t);
        out.normal.push(n);
    }
    Ok(out)
}
