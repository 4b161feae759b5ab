//! Geodesic and singular-curve runs with the derived data of every track.

use crate::curves::{CurvatureSeries, PlanarCurve};
use crate::error::{Error, Result};
use crate::linkage::{
    angle_distance, conserved_set, curvature_jet_unchecked, eta_from_tangent, gamma, hamiltonian,
    singular_field, track_kinematics_at, tracks, ConfigPoint, ConservedSet, CurvatureJet, Params,
    PhaseState, Track, TrackKinematics, UNIT_ENERGY_TOL,
};
use crate::ode::{integrate, unit_speed_wrap, GeodesicField, IntegratorSpec, SingularField, TangentField, TrajectoryMeta};

/// Coordinates in which a geodesic is integrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formulation {
    /// The eight phase variables.
    Phase,
    /// `(x, a1, a2, gamma, kappa)`, unit equal lengths only.
    ///
    /// When `m1` and `m2` approach each other the angular momenta grow like
    /// `1 / sin((a1 - a2)/2)` and `kappa = eta1 + eta2` is lost to cancellation
    /// in phase variables. Here the momenta are only reconstructed for output.
    Tangent,
}

impl Formulation {
    /// `Tangent` for unit equal lengths, `Phase` otherwise.
    pub fn auto(params: &Params) -> Self {
        if params.is_unit() {
            Formulation::Tangent
        } else {
            Formulation::Phase
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Formulation::Phase => "phase",
            Formulation::Tangent => "tangent",
        }
    }
}

/// Sampled geodesic with its curvature jet at every sample.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicRun {
    pub params: Params,
    pub formulation: Formulation,
    pub times: Vec<f64>,
    pub states: Vec<PhaseState>,
    pub jets: Vec<CurvatureJet>,
    pub meta: TrajectoryMeta,
}

/// Integrates the geodesic through the unit-energy state `s0` over `[0, t_end]`.
pub fn simulate_geodesic(
    s0: &PhaseState,
    params: &Params,
    t_end: f64,
    spec: &IntegratorSpec,
    sample_dt: f64,
    formulation: Formulation,
) -> Result<GeodesicRun> {
    let h = hamiltonian(s0, params);
    if (h - 0.5).abs() > UNIT_ENERGY_TOL {
        return Err(Error::NotUnitEnergy { h });
    }
    if s0.q.is_degenerate_for(params) {
        return Err(Error::Degenerate("initial configuration has m1 = m2".into()));
    }
    match formulation {
        Formulation::Phase => {
            let tr = integrate(&GeodesicField { params: *params }, &s0.to_array(), (0.0, t_end), spec, sample_dt)?;
            let states: Vec<PhaseState> = tr.states.iter().map(|y| PhaseState::from_slice(y)).collect();
            let jets = states.iter().map(|s| curvature_jet_unchecked(s, params)).collect();
            Ok(GeodesicRun { params: *params, formulation, times: tr.times, states, jets, meta: tr.meta })
        }
        Formulation::Tangent => {
            if !params.is_unit() {
                return Err(Error::InvalidParams("the tangent formulation needs unit equal lengths".into()));
            }
            let (p1, p2) = (s0.p1, s0.p2);
            let y0 = [s0.q.x1, s0.q.x2, s0.q.alpha1, s0.q.alpha2, gamma(s0, params), s0.eta1 + s0.eta2];
            let tr = integrate(&TangentField { p1, p2 }, &y0, (0.0, t_end), spec, sample_dt)?;
            let mut states = Vec::with_capacity(tr.len());
            let mut jets = Vec::with_capacity(tr.len());
            for y in &tr.states {
                let q = ConfigPoint::new(y[0], y[1], y[2], y[3]);
                let (g, k) = (y[4], y[5]);
                let (sg, cg) = g.sin_cos();
                let (e1, e2) = eta_from_tangent(&q, p1, p2, g, k)?;
                states.push(PhaseState::new(q, p1, p2, e1, e2));
                jets.push(CurvatureJet { gamma: g, kappa: k, kappa_dot: p1 * sg - p2 * cg, kappa_ddot: k * (p1 * cg + p2 * sg) });
            }
            Ok(GeodesicRun { params: *params, formulation, times: tr.times, states, jets, meta: tr.meta })
        }
    }
}

/// Distance between the first and last sample of every track and the turn of the front heading.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosureGap {
    pub x: f64,
    pub m1: f64,
    pub m2: f64,
    pub y1: f64,
    pub y2: f64,
    /// Heading mismatch of `x` modulo 2π.
    pub heading: f64,
}

impl GeodesicRun {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn conserved(&self, i: usize) -> ConservedSet {
        conserved_set(&self.states[i], &self.params)
    }

    pub fn kinematics(&self, i: usize) -> TrackKinematics {
        let j = &self.jets[i];
        track_kinematics_at(&self.states[i].q, j.gamma, j.kappa, &self.params)
    }

    pub fn kappa_x(&self) -> Vec<f64> {
        self.jets.iter().map(|j| j.kappa).collect()
    }

    /// Positions of one track; `x`, `y1` and `y2` are unit speed, the rear wheels are not.
    pub fn track(&self, which: Track) -> Result<PlanarCurve> {
        let pts = self.states.iter().map(|s| tracks(&s.q, &self.params).get(which)).collect();
        let unit = !matches!(which, Track::M1 | Track::M2);
        PlanarCurve::new(pts, self.meta.sample_dt, unit)
    }

    /// Curvature of a unit-speed track with derivatives up to `upto`.
    ///
    /// For `x` the curvature and its first two derivatives come from the jet; for
    /// `y1`, `y2` the curvature is exact and every derivative is a finite difference.
    pub fn curvature_series(&self, which: Track, upto: usize) -> Result<CurvatureSeries> {
        self.check_uniform()?;
        let t = self.times.clone();
        match which {
            Track::X => {
                let n = (upto + 1).min(3);
                let all = [
                    self.jets.iter().map(|j| j.kappa).collect::<Vec<_>>(),
                    self.jets.iter().map(|j| j.kappa_dot).collect(),
                    self.jets.iter().map(|j| j.kappa_ddot).collect(),
                ];
                CurvatureSeries::from_columns(t, all.into_iter().take(n).collect())?.extend_fd(upto)
            }
            Track::Y1 | Track::Y2 => {
                let k = (0..self.len()).map(|i| self.kinematics(i).curvature(which)).collect();
                CurvatureSeries::from_kappa(t, k, upto)
            }
            Track::M1 | Track::M2 => Err(Error::Invalid("rear-wheel tracks are not parametrized by arc length".into())),
        }
    }

    pub fn closure_gap(&self) -> Option<ClosureGap> {
        let (first, last) = (self.states.first()?, self.states.last()?);
        let (a, b) = (tracks(&first.q, &self.params), tracks(&last.q, &self.params));
        let d = |t: Track| {
            let (u, v) = (a.get(t), b.get(t));
            (u[0] - v[0]).hypot(u[1] - v[1])
        };
        let heading = angle_distance(self.jets.first()?.gamma, self.jets.last()?.gamma);
        Some(ClosureGap { x: d(Track::X), m1: d(Track::M1), m2: d(Track::M2), y1: d(Track::Y1), y2: d(Track::Y2), heading })
    }

    // the final sample may be closer than sample_dt
    fn check_uniform(&self) -> Result<()> {
        let n = self.len();
        if n < 2 {
            return Err(Error::Invalid("need at least two samples".into()));
        }
        let dt = self.meta.sample_dt;
        let last = self.times[n - 1] - self.times[n - 2];
        if (last - dt).abs() > 1e-9 * dt {
            return Err(Error::Invalid(format!("time span is not a multiple of sample_dt = {dt}")));
        }
        Ok(())
    }
}

/// Sampled singular curve parametrized by the arc length of `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularRun {
    pub params: Params,
    pub times: Vec<f64>,
    pub configs: Vec<ConfigPoint>,
    pub meta: TrajectoryMeta,
}

/// Integrates the singular field from `q0`; unequal lengths are rescaled to unit front speed.
pub fn simulate_singular(q0: &ConfigPoint, params: &Params, t_end: f64, spec: &IntegratorSpec, sample_dt: f64) -> Result<SingularRun> {
    singular_field(q0, params)?;
    let field = SingularField { params: *params };
    let tr = if params.is_equal() {
        integrate(&field, &q0.to_array(), (0.0, t_end), spec, sample_dt)?
    } else {
        let p = *params;
        let speed = move |y: &[f64]| singular_field(&ConfigPoint::from_slice(y), &p).map(|v| v.speed).unwrap_or(0.0);
        integrate(&unit_speed_wrap(field, speed), &q0.to_array(), (0.0, t_end), spec, sample_dt)?
    };
    let configs = tr.states.iter().map(|y| ConfigPoint::from_slice(y)).collect();
    Ok(SingularRun { params: *params, times: tr.times, configs, meta: tr.meta })
}

impl SingularRun {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn track(&self, which: Track) -> Result<PlanarCurve> {
        let pts = self.configs.iter().map(|q| tracks(q, &self.params).get(which)).collect();
        PlanarCurve::new(pts, self.meta.sample_dt, which == Track::X)
    }
}
