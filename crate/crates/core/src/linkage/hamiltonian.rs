use super::{ConfigPoint, Params, PhaseState, UNIT_ENERGY_TOL};
use crate::error::{Error, Result};

/// Momentum functions `(L1, L2)` of the horizontal frame; `x' = (L1, L2)`.
pub fn momenta_l(s: &PhaseState, params: &Params) -> (f64, f64) {
    let (l1, l2) = (params.l1(), params.l2());
    let (s1, c1) = s.q.alpha1.sin_cos();
    let (s2, c2) = s.q.alpha2.sin_cos();
    (
        s.p1 - s.eta1 * s1 / l1 - s.eta2 * s2 / l2,
        s.p2 + s.eta1 * c1 / l1 + s.eta2 * c2 / l2,
    )
}

/// `H = (L1^2 + L2^2) / 2`.
pub fn hamiltonian(s: &PhaseState, params: &Params) -> f64 {
    let (a, b) = momenta_l(s, params);
    0.5 * (a * a + b * b)
}

/// Tangent angle of the front track, `atan2(L2, L1)`.
pub fn gamma(s: &PhaseState, params: &Params) -> f64 {
    let (a, b) = momenta_l(s, params);
    b.atan2(a)
}

/// Right-hand side of the geodesic equations, returned as a state of derivatives.
pub fn geodesic_field(s: &PhaseState, params: &Params) -> PhaseState {
    let (l1, l2) = (params.l1(), params.l2());
    let l12 = l1 * l2;
    let (s1, c1) = s.q.alpha1.sin_cos();
    let (s2, c2) = s.q.alpha2.sin_cos();
    let (p1, p2, e1, e2) = (s.p1, s.p2, s.eta1, s.eta2);
    let cos_diff = c1 * c2 + s1 * s2;
    let sin_diff = s1 * c2 - c1 * s2;
    PhaseState {
        q: ConfigPoint {
            x1: -s1 * e1 / l1 - s2 * e2 / l2 + p1,
            x2: e1 * c1 / l1 + e2 * c2 / l2 + p2,
            alpha1: (c1 * p2 - p1 * s1) / l1 + e2 * cos_diff / l12 + e1 / (l1 * l1),
            alpha2: (c2 * p2 - p1 * s2) / l2 + e1 * cos_diff / l12 + e2 / (l2 * l2),
        },
        p1: 0.0,
        p2: 0.0,
        eta1: e1 * (s1 * p2 + p1 * c1) / l1 + e1 * e2 * sin_diff / l12,
        eta2: e2 * (s2 * p2 + p1 * c2) / l2 - e1 * e2 * sin_diff / l12,
    }
}

/// Curvature of the front track and its first two arc-length derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureJet {
    pub gamma: f64,
    pub kappa: f64,
    pub kappa_dot: f64,
    pub kappa_ddot: f64,
}

/// Jet without the unit-energy check; `gamma` uses the normalized direction of `(L1, L2)`.
pub fn curvature_jet_unchecked(s: &PhaseState, params: &Params) -> CurvatureJet {
    let (l1, l2) = (params.l1(), params.l2());
    let g = gamma(s, params);
    let (e1, e2) = (s.eta1, s.eta2);
    let (d1, d2) = (g - s.q.alpha1, g - s.q.alpha2);
    let kappa = e1 / (l1 * l1) + e2 / (l2 * l2);
    let kappa_dot = e1 * d1.cos() / l1.powi(3) + e2 * d2.cos() / l2.powi(3);
    let kappa_ddot = e1 / l1.powi(4) + e2 / l2.powi(4)
        - kappa * (e1 * d1.sin() / l1.powi(3) + e2 * d2.sin() / l2.powi(3));
    CurvatureJet { gamma: g, kappa, kappa_dot, kappa_ddot }
}

/// `(kappa, kappa', kappa'')` at a unit-energy state.
pub fn curvature_jet(s: &PhaseState, params: &Params) -> Result<CurvatureJet> {
    let h = hamiltonian(s, params);
    if (h - 0.5).abs() > UNIT_ENERGY_TOL {
        return Err(Error::NotUnitEnergy { h });
    }
    Ok(curvature_jet_unchecked(s, params))
}

/// Unit-length solution of `L1 = cos(gamma)`, `L2 = sin(gamma)` for the two angular momenta.
pub fn eta_from_gamma(gamma: f64, alpha1: f64, alpha2: f64, p1: f64, p2: f64) -> Result<(f64, f64)> {
    let den = (alpha2 - alpha1).sin();
    if den.abs() < super::DEGENERACY_TOL {
        return Err(Error::Degenerate(format!("sin(a2 - a1) = {den:e}")));
    }
    let (s1, c1) = alpha1.sin_cos();
    let (s2, c2) = alpha2.sin_cos();
    let eta1 = ((gamma - alpha2).cos() - p1 * c2 - p2 * s2) / den;
    let eta2 = ((gamma - alpha1).cos() - p1 * c1 - p2 * s1) / -den;
    Ok((eta1, eta2))
}

/// Unit-length angular momenta from the heading `gamma` and the curvature `kappa` of `x`.
///
/// The sum `eta1 + eta2` is `kappa` itself, so only the difference divides by
/// `sin((a2 - a1)/2)`; this stays well posed when the segments are opposite.
pub fn eta_from_tangent(q: &ConfigPoint, p1: f64, p2: f64, gamma: f64, kappa: f64) -> Result<(f64, f64)> {
    let half = ((q.alpha2 - q.alpha1) / 2.0).sin();
    if half.abs() < super::DEGENERACY_TOL {
        return Err(Error::Degenerate(format!("sin((a2 - a1)/2) = {half:e}")));
    }
    let (sm, cm) = ((q.alpha1 + q.alpha2) / 2.0).sin_cos();
    let diff = ((gamma.cos() - p1) * cm + (gamma.sin() - p2) * sm) / half;
    Ok(((kappa + diff) / 2.0, (kappa - diff) / 2.0))
}

/// Same as [`eta_from_gamma`] for arbitrary lengths, by solving the 2x2 linear system.
pub fn eta_from_gamma_general(
    gamma: f64,
    alpha1: f64,
    alpha2: f64,
    p1: f64,
    p2: f64,
    params: &Params,
) -> Result<(f64, f64)> {
    let (l1, l2) = (params.l1(), params.l2());
    let (s1, c1) = alpha1.sin_cos();
    let (s2, c2) = alpha2.sin_cos();
    // [-s1/l1  -s2/l2] [eta1]   [cos g - p1]
    // [ c1/l1   c2/l2] [eta2] = [sin g - p2]
    let det = (c1 * s2 - s1 * c2) / (l1 * l2);
    if (det * l1 * l2).abs() < super::DEGENERACY_TOL {
        return Err(Error::Degenerate(format!("segment directions parallel (det = {det:e})")));
    }
    let (r1, r2) = (gamma.cos() - p1, gamma.sin() - p2);
    let eta1 = (r1 * c2 / l2 + s2 / l2 * r2) / det;
    let eta2 = (-s1 / l1 * r2 - c1 / l1 * r1) / det;
    Ok((eta1, eta2))
}

/// Unit-energy state with prescribed configuration, linear momenta and front heading.
pub fn unit_energy_state(q: ConfigPoint, p1: f64, p2: f64, gamma: f64, params: &Params) -> Result<PhaseState> {
    let (eta1, eta2) = eta_from_gamma_general(gamma, q.alpha1, q.alpha2, p1, p2, params)?;
    Ok(PhaseState::new(q, p1, p2, eta1, eta2))
}

/// Unit-energy state with `eta2 = 0`, the lift of a geodesic of the first link alone.
///
/// Solves `|L|^2 = 1` for `eta1` and returns the larger root; needs `|p| < 1` or
/// a configuration where the quadratic has real roots.
pub fn lifted_state(q: ConfigPoint, p1: f64, p2: f64, params: &Params) -> Result<PhaseState> {
    let l1 = params.l1();
    let (s1, c1) = q.alpha1.sin_cos();
    // eta1^2 / l1^2 + 2 eta1 w / l1 + |p|^2 - 1 = 0 with w = p2 c1 - p1 s1
    let w = p2 * c1 - p1 * s1;
    let disc = w * w - (p1 * p1 + p2 * p2 - 1.0);
    if disc < 0.0 {
        return Err(Error::Invalid(format!("no real eta1 puts this state on H = 1/2 (discriminant {disc:e})")));
    }
    Ok(PhaseState::new(q, p1, p2, l1 * (-w + disc.sqrt()), 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn state(a1: f64, a2: f64, p1: f64, p2: f64, e1: f64, e2: f64) -> PhaseState {
        PhaseState::new(ConfigPoint::new(0.0, 0.0, a1, a2), p1, p2, e1, e2)
    }

    #[test]
    fn lifted_state_has_unit_energy() {
        let p = Params::new(1.0, 2.0).unwrap();
        let s = lifted_state(ConfigPoint::new(0.0, 0.0, 0.7, -1.2), 0.3, 0.5, &p).unwrap();
        assert!((hamiltonian(&s, &p) - 0.5).abs() < 1e-15);
        assert_eq!(s.eta2, 0.0);
        assert!(lifted_state(ConfigPoint::default(), 2.0, 0.0, &p).is_err());
    }

    #[test]
    fn hamiltonian_examples() {
        let u = Params::unit();
        assert_eq!(hamiltonian(&state(0.4, 1.3, 1.0, 0.0, 0.0, 0.0), &u), 0.5);
        assert_eq!(hamiltonian(&state(0.0, 1.3, 0.0, 0.0, 1.0, 0.0), &u), 0.5);
        assert_eq!(hamiltonian(&state(0.4, 1.3, 0.0, 0.0, 0.0, 0.0), &u), 0.0);
    }

    #[test]
    fn geodesic_field_hand_value() {
        let d = geodesic_field(&state(0.0, FRAC_PI_2, 1.0, 0.0, 0.0, 0.0), &Params::unit());
        let got = d.to_array();
        let want = [1.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0];
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-15, "{got:?}");
        }
    }

    #[test]
    fn geodesic_field_matches_hamilton_equations() {
        let p = Params::new(1.3, 0.7).unwrap();
        let s = state(0.3, -1.1, 0.4, -0.2, 0.9, -0.35);
        let d = geodesic_field(&s, &p);
        let (l1, l2) = momenta_l(&s, &p);
        let (s1, c1) = s.q.alpha1.sin_cos();
        let (s2, c2) = s.q.alpha2.sin_cos();
        // a_i' = dH/d eta_i, eta_i' = -dH/d a_i
        let a1 = (-s1 * l1 + c1 * l2) / p.l1();
        let a2 = (-s2 * l1 + c2 * l2) / p.l2();
        let e1 = s.eta1 * (c1 * l1 + s1 * l2) / p.l1();
        let e2 = s.eta2 * (c2 * l1 + s2 * l2) / p.l2();
        for (g, w) in [(d.q.x1, l1), (d.q.x2, l2), (d.q.alpha1, a1), (d.q.alpha2, a2), (d.eta1, e1), (d.eta2, e2)] {
            assert!((g - w).abs() < 1e-14);
        }
    }

    #[test]
    fn jet_examples() {
        let p = Params::new(1.0, 2.0).unwrap();
        // choose momenta so that the state is on the unit-energy level
        let q = ConfigPoint::new(0.0, 0.0, 0.2, 1.4);
        let mut s = PhaseState::new(q, 0.0, 0.0, 1.0, 2.0);
        let (l1, l2) = momenta_l(&s, &p);
        s.p1 = 1.0 - l1;
        s.p2 = -l2;
        let j = curvature_jet(&s, &p).unwrap();
        assert!((j.kappa - 1.5).abs() < 1e-15);

        let zero = unit_energy_state(q, 1.0, 0.0, 0.0, &Params::unit()).unwrap();
        let j = curvature_jet(&zero, &Params::unit()).unwrap();
        assert!(j.kappa.abs() < 1e-15 && j.kappa_dot.abs() < 1e-15);
    }

    #[test]
    fn jet_rejects_off_level_state() {
        let s = state(0.1, 0.2, 2.0, 0.0, 0.0, 0.0);
        assert!(matches!(curvature_jet(&s, &Params::unit()), Err(Error::NotUnitEnergy { .. })));
    }

    #[test]
    fn eta_from_gamma_examples() {
        let (e1, e2) = eta_from_gamma(0.0, 0.0, FRAC_PI_2, 0.0, 0.0).unwrap();
        assert!(e1.abs() < 1e-15 && (e2 + 1.0).abs() < 1e-15);
        let s = state(0.0, FRAC_PI_2, 0.0, 0.0, e1, e2);
        let (l1, l2) = momenta_l(&s, &Params::unit());
        assert!((l1 - 1.0).abs() < 1e-15 && l2.abs() < 1e-15);

        let g = 0.7;
        let (e1, e2) = eta_from_gamma(g, g, g + 1.0, g.cos(), g.sin()).unwrap();
        let s = state(g, g + 1.0, g.cos(), g.sin(), e1, e2);
        assert!((hamiltonian(&s, &Params::unit()) - 0.5).abs() < 1e-14);

        assert!(matches!(eta_from_gamma(0.3, 0.5, 0.5, 0.0, 0.0), Err(Error::Degenerate(_))));
    }

    #[test]
    fn general_solve_agrees_with_unit_formula() {
        let (a, b) = eta_from_gamma(FRAC_PI_4, 0.3, 2.0, 0.2, -0.6).unwrap();
        let (c, d) = eta_from_gamma_general(FRAC_PI_4, 0.3, 2.0, 0.2, -0.6, &Params::unit()).unwrap();
        assert!((a - c).abs() < 1e-13 && (b - d).abs() < 1e-13);
    }

    #[test]
    fn tangent_recovery_round_trips() {
        let s = unit_energy_state(ConfigPoint::new(0.0, 0.0, 0.4, 2.3), 0.3, -0.5, 1.2, &Params::unit()).unwrap();
        let j = curvature_jet(&s, &Params::unit()).unwrap();
        let (e1, e2) = eta_from_tangent(&s.q, s.p1, s.p2, j.gamma, j.kappa).unwrap();
        assert!((e1 - s.eta1).abs() < 1e-13 && (e2 - s.eta2).abs() < 1e-13);
    }

    #[test]
    fn tangent_recovery_with_opposite_segments() {
        // the heading alone does not fix eta1 + eta2 here
        let q = ConfigPoint::new(0.0, 0.0, 0.5, 0.5 + std::f64::consts::PI);
        let s = PhaseState::new(q, 0.0, 0.0, 0.9, -0.1);
        let j = curvature_jet(&s, &Params::unit()).unwrap();
        let (e1, e2) = eta_from_tangent(&q, 0.0, 0.0, j.gamma, j.kappa).unwrap();
        assert!((e1 - 0.9).abs() < 1e-14 && (e2 + 0.1).abs() < 1e-14);
        assert!(matches!(eta_from_gamma(j.gamma, q.alpha1, q.alpha2, 0.0, 0.0), Err(Error::Degenerate(_))));
    }
}
