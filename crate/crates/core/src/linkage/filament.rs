use super::conserved::{b_trig, g_trig, TrigState};
use super::{curvature_jet, momenta_l, Params, PhaseState};
use crate::error::Result;

/// Tangential and normal components of the momentum-plane gradient of the extra integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilamentProjection {
    pub u: f64,
    pub v: f64,
    pub tangent: [f64; 2],
    pub normal: [f64; 2],
    /// `(dG/dp1, dG/dp2)` at unit lengths, `(db/dp1, db/dp2)` otherwise.
    pub gradient: [f64; 2],
    /// `|gradient - (u T + v N)|`.
    pub mismatch: f64,
}

/// Gradient of `G` (unit lengths) or `b` (any lengths) with respect to `(p1, p2)`.
pub fn momentum_gradient(s: &PhaseState, params: &Params) -> [f64; 2] {
    if params.is_unit() {
        let (l1, l2) = momenta_l(s, params);
        return [s.p1 + l1, s.p2 + l2];
    }
    let (l1, l2) = (params.l1(), params.l2());
    let (s1, c1) = s.q.alpha1.sin_cos();
    let (s2, c2) = s.q.alpha2.sin_cos();
    let inv = 1.0 / (l1 * l1) + 1.0 / (l2 * l2);
    let (k1, k2) = (1.0 / (l1 * l2 * l2), 1.0 / (l1 * l1 * l2));
    [
        s.p1 * inv - s.eta1 * s1 * k1 - s.eta2 * s2 * k2,
        s.p2 * inv + s.eta1 * c1 * k1 + s.eta2 * c2 * k2,
    ]
}

/// Decomposes the gradient along the Frenet frame `T = (cos g, sin g)`, `N = (-sin g, cos g)`.
///
/// `u = 1 + G - k^2/2` at unit lengths and `u = b - k^2/2` otherwise; `v = -k'` in both cases.
pub fn filament_projection(s: &PhaseState, params: &Params) -> Result<FilamentProjection> {
    let j = curvature_jet(s, params)?;
    let t = TrigState::from_phase(s);
    let half_k2 = 0.5 * j.kappa * j.kappa;
    let u = if params.is_unit() { 1.0 + g_trig(&t) - half_k2 } else { b_trig(&t, params.l1(), params.l2()) - half_k2 };
    let v = -j.kappa_dot;
    let (sg, cg) = j.gamma.sin_cos();
    let tangent = [cg, sg];
    let normal = [-sg, cg];
    let gradient = momentum_gradient(s, params);
    let d0 = gradient[0] - (u * tangent[0] + v * normal[0]);
    let d1 = gradient[1] - (u * tangent[1] + v * normal[1]);
    Ok(FilamentProjection { u, v, tangent, normal, gradient, mismatch: d0.hypot(d1) })
}
