use num_traits::Num;

use super::{curvature_jet, hamiltonian, ConservedSet, Params, PhaseState};
use crate::error::{Error, Result};

/// Momenta together with the cosines and sines of the segment directions.
///
/// Generic so that the integrals can be evaluated in exact arithmetic as well as in `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigState<T> {
    pub p1: T,
    pub p2: T,
    pub eta1: T,
    pub eta2: T,
    pub c1: T,
    pub s1: T,
    pub c2: T,
    pub s2: T,
}

impl TrigState<f64> {
    pub fn from_phase(s: &PhaseState) -> Self {
        let (s1, c1) = s.q.alpha1.sin_cos();
        let (s2, c2) = s.q.alpha2.sin_cos();
        Self { p1: s.p1, p2: s.p2, eta1: s.eta1, eta2: s.eta2, c1, s1, c2, s2 }
    }
}

fn half<T: Num + Clone>() -> T {
    T::one() / (T::one() + T::one())
}

/// The general-length integral `b`.
pub fn b_trig<T: Num + Clone>(t: &TrigState<T>, l1: T, l2: T) -> T {
    let h = half::<T>();
    let l1s = l1.clone() * l1.clone();
    let l2s = l2.clone() * l2.clone();
    let pp = t.p1.clone() * t.p1.clone() + t.p2.clone() * t.p2.clone();
    let inv = T::one() / l1s.clone() + T::one() / l2s.clone();
    let e = t.eta1.clone() + t.eta2.clone();
    let w1 = t.c1.clone() * t.p2.clone() - t.s1.clone() * t.p1.clone();
    let w2 = t.c2.clone() * t.p2.clone() - t.s2.clone() * t.p1.clone();
    h.clone() * pp * inv.clone()
        + t.eta1.clone() * w1 / (l1.clone() * l2s.clone())
        + t.eta2.clone() * w2 / (l1s.clone() * l2)
        + h.clone() * e.clone() * e / (l1s * l2s)
        + h * inv
}

/// The integral `a` as a quadratic function of `b` and `|p|^2`.
pub fn a_from_b<T: Num + Clone>(b: T, p1: T, p2: T, l1: T, l2: T) -> T {
    let h = half::<T>();
    let l1s = l1.clone() * l1;
    let l2s = l2.clone() * l2;
    let pp = p1.clone() * p1 + p2.clone() * p2;
    h.clone() * pp / (l1s.clone() * l2s.clone()) - h.clone() * b.clone() * b.clone()
        + b.clone() / l2s.clone()
        + b / l1s.clone()
        - h.clone() / (l2s.clone() * l2s.clone())
        - h.clone() / (l1s.clone() * l2s)
        - h / (l1s.clone() * l1s)
}

/// The unit equal-length integral `G = p.L + (eta1 + eta2)^2 / 2`.
pub fn g_trig<T: Num + Clone>(t: &TrigState<T>) -> T {
    let big_l1 = t.p1.clone() - t.eta1.clone() * t.s1.clone() - t.eta2.clone() * t.s2.clone();
    let big_l2 = t.p2.clone() + t.eta1.clone() * t.c1.clone() + t.eta2.clone() * t.c2.clone();
    let e = t.eta1.clone() + t.eta2.clone();
    t.p1.clone() * big_l1 + t.p2.clone() * big_l2 + half::<T>() * e.clone() * e
}

/// Evaluates every available first integral at `s`.
pub fn conserved_set(s: &PhaseState, params: &Params) -> ConservedSet {
    let t = TrigState::from_phase(s);
    let b = b_trig(&t, params.l1(), params.l2());
    ConservedSet {
        h: hamiltonian(s, params),
        p1: s.p1,
        p2: s.p2,
        g: params.is_unit().then(|| g_trig(&t)),
        b,
        a: a_from_b(b, s.p1, s.p2, params.l1(), params.l2()),
    }
}

/// Elastica constants `(A, B)` of a unit equal-length geodesic through `s`.
///
/// `A = -G` and `B = -(k'^2 + k^4/4 + A k^2)` from the analytic jet.
pub fn elastica_constants(s: &PhaseState, params: &Params) -> Result<(f64, f64)> {
    if !params.is_unit() {
        return Err(Error::InvalidParams("elastica constants need unit equal lengths".into()));
    }
    let j = curvature_jet(s, params)?;
    let a = -g_trig(&TrigState::from_phase(s));
    let k2 = j.kappa * j.kappa;
    Ok((a, -(j.kappa_dot * j.kappa_dot + 0.25 * k2 * k2 + a * k2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkage::{unit_energy_state, ConfigPoint};

    #[test]
    fn g_of_pure_rotation() {
        let s = PhaseState::new(ConfigPoint::new(0.0, 0.0, 0.3, 1.9), 0.0, 0.0, 1.0, 1.0);
        assert_eq!(conserved_set(&s, &Params::unit()).g, Some(2.0));
    }

    #[test]
    fn b_minus_g_is_one_at_unit_lengths() {
        let s = PhaseState::new(ConfigPoint::new(0.5, -2.0, 0.3, 1.9), 0.7, -0.4, 1.3, -0.8);
        let c = conserved_set(&s, &Params::unit());
        assert!((c.b - c.g.unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn g_absent_for_unequal_lengths() {
        let p = Params::new(1.0, 2.0).unwrap();
        assert!(conserved_set(&PhaseState::default(), &p).g.is_none());
    }

    #[test]
    fn lemma_identity_at_a_state() {
        let s = unit_energy_state(ConfigPoint::new(0.0, 0.0, 0.2, 2.1), 0.6, 0.3, 1.0, &Params::unit()).unwrap();
        let (a, b) = elastica_constants(&s, &Params::unit()).unwrap();
        assert!((a * a - b - 0.45).abs() < 1e-12);
    }
}
