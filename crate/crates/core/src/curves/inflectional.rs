use crate::error::{Error, Result};
use crate::linkage::{curvature_jet, hamiltonian, unit_energy_state, ConfigPoint, Params, PhaseState};

const CHECK_TOL: f64 = 1e-9;

fn satisfies(s: &PhaseState, k: f64) -> bool {
    let p = Params::unit();
    if (hamiltonian(s, &p) - 0.5).abs() > CHECK_TOL {
        return false;
    }
    match curvature_jet(s, &p) {
        Ok(j) => (j.kappa - 2.0 * k).abs() <= CHECK_TOL && j.kappa_dot.abs() <= CHECK_TOL,
        Err(_) => false,
    }
}

/// Unit equal-length state whose front track has curvature `2k cn(t, k)`.
///
/// The second segment direction is the two-argument angle of
/// `(3k^2 - 3, 4k^2 - 10k + 4)`, turned by π when the resulting state misses
/// `H = 1/2`, `k(0) = 2k` or `k'(0) = 0`.
pub fn inflectional_ic(k: f64) -> Result<PhaseState> {
    if !(k > 0.0 && k < 1.0) {
        return Err(Error::Modulus(k));
    }
    let den = 5.0 * k - 4.0;
    if den.abs() < 1e-12 {
        return Err(Error::Invalid("k = 0.8 is a pole of the construction".into()));
    }
    let alpha1 = 4f64.atan2(3.0);
    let eta1 = 5.0 * (k * k - 1.0) / den;
    let eta2 = (5.0 * k * k - 8.0 * k + 5.0) / den;
    let alpha2 = (4.0 * k * k - 10.0 * k + 4.0).atan2(3.0 * k * k - 3.0);
    for a2 in [alpha2, alpha2 + std::f64::consts::PI] {
        let s = PhaseState::new(ConfigPoint::new(0.0, 0.0, alpha1, a2), 1.0, 0.0, eta1, eta2);
        if satisfies(&s, k) {
            return Ok(s);
        }
    }
    Err(Error::Branch(format!("no quadrant of a2 satisfies the initial conditions for k = {k}")))
}

/// Unit equal-length state whose front vertex runs around the unit circle centred at `m2`.
pub fn circle_ic() -> PhaseState {
    let q = ConfigPoint::new(0.0, 0.0, 0.0, -std::f64::consts::FRAC_PI_2);
    unit_energy_state(q, 0.0, 0.0, 0.0, &Params::unit()).expect("segments are perpendicular")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    NonInflectional,
    Inflectional,
    Borderline,
}

impl Shape {
    pub fn tag(self) -> &'static str {
        match self {
            Shape::NonInflectional => "non-inflectional",
            Shape::Inflectional => "inflectional",
            Shape::Borderline => "borderline",
        }
    }
}

/// `mu = B / A^2` and the elastica shape it encodes.
pub fn mu_classify(a: f64, b: f64) -> Result<(f64, Shape)> {
    if a == 0.0 || !a.is_finite() || !b.is_finite() {
        return Err(Error::Invalid(format!("mu needs finite nonzero A, got A = {a}")));
    }
    let mu = b / (a * a);
    let shape = if mu.abs() <= 1e-12 {
        Shape::Borderline
    } else if mu > 0.0 {
        Shape::NonInflectional
    } else {
        Shape::Inflectional
    };
    Ok((mu, shape))
}

/// The shape parameter computed three ways.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuReadings {
    /// `B / A^2`.
    pub direct: f64,
    /// `1 - |p|^2 / G`.
    pub over_g: f64,
    /// `1 - |p|^2 / G^2`, which equals `direct` when `A^2 - B = |p|^2`.
    pub over_g_squared: f64,
}

/// Compares `B / A^2` with the two closed forms in terms of `G = -A` and `|p|^2`.
pub fn mu_readings(a: f64, b: f64, p1: f64, p2: f64) -> Result<MuReadings> {
    let (direct, _) = mu_classify(a, b)?;
    let g = -a;
    let pp = p1 * p1 + p2 * p2;
    Ok(MuReadings { direct, over_g: 1.0 - pp / g, over_g_squared: 1.0 - pp / (g * g) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_modulus_state() {
        let s = inflectional_ic(0.5).unwrap();
        assert!((s.eta1 - 2.5).abs() < 1e-15 && (s.eta2 + 1.5).abs() < 1e-15);
        assert!((s.eta1 + s.eta2 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn curvature_starts_at_twice_modulus() {
        for k in [0.1, 0.3, 0.707, 0.854, 0.909, 0.95, 0.99] {
            let s = inflectional_ic(k).unwrap();
            assert!((s.eta1 + s.eta2 - 2.0 * k).abs() < 1e-12);
        }
    }

    #[test]
    fn pole_and_range_errors() {
        assert!(inflectional_ic(0.8).is_err());
        assert!(inflectional_ic(0.0).is_err());
        assert!(inflectional_ic(1.0).is_err());
    }

    #[test]
    fn circle_state_curves_at_unit_rate() {
        let s = circle_ic();
        let j = curvature_jet(&s, &Params::unit()).unwrap();
        assert!((j.kappa - 1.0).abs() < 1e-15);
    }

    #[test]
    fn mu_examples() {
        let c: f64 = 1.7;
        let (mu, shape) = mu_classify(-c * c / 2.0, c.powi(4) / 4.0).unwrap();
        assert!((mu - 1.0).abs() < 1e-15 && shape == Shape::NonInflectional);
        assert_eq!(mu_classify(2.0, 0.0).unwrap(), (0.0, Shape::Borderline));
        assert!(mu_classify(0.0, 1.0).is_err());
    }

    #[test]
    fn half_modulus_geodesic_is_inflectional() {
        let s = inflectional_ic(0.5).unwrap();
        let (a, b) = crate::linkage::elastica_constants(&s, &Params::unit()).unwrap();
        assert_eq!(mu_classify(a, b).unwrap().1, Shape::Inflectional);
        let r = mu_readings(a, b, s.p1, s.p2).unwrap();
        assert!((r.direct - r.over_g_squared).abs() < 1e-12);
    }
}
