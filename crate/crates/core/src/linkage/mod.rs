//! Pointwise kinematics of the two-link tricycle.
//!
//! The front vertex `x` is joined to two rear wheels `m1`, `m2` by rigid
//! segments of lengths `l1`, `l2`; each rear wheel obeys the no-slip
//! constraint. Everything here is a pure function of its inputs.

mod conserved;
mod filament;
mod frame;
mod hamiltonian;
mod poisson;
mod reduced;
mod singular;
mod tracks;

pub use conserved::{a_from_b, b_trig, conserved_set, elastica_constants, g_trig, TrigState};
pub use filament::{filament_projection, momentum_gradient, FilamentProjection};
pub use frame::{bracket_frame, growth_vector, horizontal_frame};
pub use hamiltonian::{
    curvature_jet, curvature_jet_unchecked, eta_from_gamma, eta_from_gamma_general, eta_from_tangent, gamma,
    geodesic_field, hamiltonian, lifted_state, momenta_l, unit_energy_state, CurvatureJet,
};
pub use poisson::{poisson_bracket, DEFAULT_FD_STEP};
pub use reduced::reduced_field;
pub use singular::{singular_curvature, singular_elastica_a, singular_field, SingularVelocity};
pub use tracks::{planar_curvature, track_kinematics, track_kinematics_at, tracks, Track, TrackKinematics, Tracks};

use crate::error::{Error, Result};

/// Tolerance for accepting a state as lying on `H = 1/2`.
pub const UNIT_ENERGY_TOL: f64 = 1e-9;
/// Tolerance on `sin((a1 - a2)/2)` below which equal-length configurations are degenerate.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Segment lengths of the two links.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    l1: f64,
    l2: f64,
}

impl Params {
    pub fn new(l1: f64, l2: f64) -> Result<Self> {
        if !(l1.is_finite() && l2.is_finite() && l1 > 0.0 && l2 > 0.0) {
            return Err(Error::InvalidParams(format!("lengths must be positive, got ({l1}, {l2})")));
        }
        Ok(Self { l1, l2 })
    }

    /// Both links of unit length.
    pub fn unit() -> Self {
        Self { l1: 1.0, l2: 1.0 }
    }

    pub fn l1(&self) -> f64 {
        self.l1
    }

    pub fn l2(&self) -> f64 {
        self.l2
    }

    pub fn is_equal(&self) -> bool {
        self.l1 == self.l2
    }

    pub fn is_unit(&self) -> bool {
        self.l1 == 1.0 && self.l2 == 1.0
    }
}

/// Configuration: front vertex and the two segment directions (unwrapped radians).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ConfigPoint {
    pub x1: f64,
    pub x2: f64,
    pub alpha1: f64,
    pub alpha2: f64,
}

impl ConfigPoint {
    pub fn new(x1: f64, x2: f64, alpha1: f64, alpha2: f64) -> Self {
        Self { x1, x2, alpha1, alpha2 }
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.x1, self.x2, self.alpha1, self.alpha2]
    }

    pub fn from_slice(y: &[f64]) -> Self {
        Self::new(y[0], y[1], y[2], y[3])
    }

    /// Equal-length configurations with `m1 = m2` are excluded from the configuration space.
    pub fn is_degenerate_for(&self, params: &Params) -> bool {
        params.is_equal() && ((self.alpha1 - self.alpha2) / 2.0).sin().abs() <= DEGENERACY_TOL
    }
}

/// Point of the cotangent bundle, ordered `(x1, x2, a1, a2, p1, p2, eta1, eta2)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PhaseState {
    pub q: ConfigPoint,
    pub p1: f64,
    pub p2: f64,
    pub eta1: f64,
    pub eta2: f64,
}

impl PhaseState {
    pub fn new(q: ConfigPoint, p1: f64, p2: f64, eta1: f64, eta2: f64) -> Self {
        Self { q, p1, p2, eta1, eta2 }
    }

    pub fn to_array(&self) -> [f64; 8] {
        [
            self.q.x1, self.q.x2, self.q.alpha1, self.q.alpha2, self.p1, self.p2, self.eta1,
            self.eta2,
        ]
    }

    pub fn from_slice(y: &[f64]) -> Self {
        Self::new(ConfigPoint::from_slice(y), y[4], y[5], y[6], y[7])
    }
}

/// Equal-length reduced coordinates: segment directions and the tangent angle of `x`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ReducedState {
    pub alpha1: f64,
    pub alpha2: f64,
    pub gamma: f64,
}

/// First integrals of the geodesic flow at a state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservedSet {
    pub h: f64,
    pub p1: f64,
    pub p2: f64,
    /// Only defined for unit equal lengths.
    pub g: Option<f64>,
    pub b: f64,
    pub a: f64,
}

/// Angular distance modulo 2π, in `[0, π]`.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}
