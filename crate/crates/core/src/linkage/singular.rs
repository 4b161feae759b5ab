use super::{ConfigPoint, Params, DEGENERACY_TOL};
use crate::error::{Error, Result};

/// Velocity of the singular (abnormal) curve through a configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularVelocity {
    pub dq: ConfigPoint,
    /// `|x'|` of the returned field.
    pub speed: f64,
}

/// Singular field at `q`.
///
/// For unequal lengths this is the raw field, whose front speed is
/// `sqrt(l1^2 + l2^2 - 2 l1 l2 cos(a1 - a2)) / (l1 l2)`. For equal lengths the
/// common factor `2 sin((a1 - a2)/2) / l` is removed, so the front moves at unit speed.
pub fn singular_field(q: &ConfigPoint, params: &Params) -> Result<SingularVelocity> {
    let (l1, l2) = (params.l1(), params.l2());
    let (a1, a2) = (q.alpha1, q.alpha2);
    if params.is_equal() {
        let half = ((a1 - a2) / 2.0).sin();
        if half.abs() <= DEGENERACY_TOL {
            return Err(Error::Degenerate("equal lengths with a1 = a2".into()));
        }
        let (sm, cm) = ((a1 + a2) / 2.0).sin_cos();
        let dq = ConfigPoint::new(cm, sm, -half / l1, half / l1);
        return Ok(SingularVelocity { dq, speed: 1.0 });
    }
    let (s1, c1) = a1.sin_cos();
    let (s2, c2) = a2.sin_cos();
    let cd = (a1 - a2).cos();
    let dq = ConfigPoint::new(
        s1 / l1 - s2 / l2,
        -(c1 / l1 - c2 / l2),
        -(1.0 / (l1 * l1) - cd / (l1 * l2)),
        1.0 / (l2 * l2) - cd / (l1 * l2),
    );
    let speed = ((l1 * l1 + l2 * l2 - 2.0 * l1 * l2 * cd) / (l1 * l1 * l2 * l2)).sqrt();
    Ok(SingularVelocity { dq, speed })
}

/// Closed-form curvature of the front track of a singular curve.
pub fn singular_curvature(q: &ConfigPoint, params: &Params) -> f64 {
    let (l1, l2) = (params.l1(), params.l2());
    let cd = (q.alpha1 - q.alpha2).cos();
    (l1 * l1 - l2 * l2) / (l1 * l2 * (l1 * l1 + l2 * l2 - 2.0 * l1 * l2 * cd).sqrt())
}

/// Elastica constant `A = -(l1^2 + l2^2) / (2 l1^2 l2^2)` of singular front tracks.
pub fn singular_elastica_a(params: &Params) -> f64 {
    let (l1, l2) = (params.l1(), params.l2());
    -(l1 * l1 + l2 * l2) / (2.0 * l1 * l1 * l2 * l2)
}
