use super::{curvature_jet_unchecked, ConfigPoint, Params, PhaseState};

/// The five marked points of the linkage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Track {
    X,
    M1,
    M2,
    Y1,
    Y2,
}

impl Track {
    pub const ALL: [Track; 5] = [Track::X, Track::M1, Track::M2, Track::Y1, Track::Y2];

    pub fn name(self) -> &'static str {
        match self {
            Track::X => "x",
            Track::M1 => "m1",
            Track::M2 => "m2",
            Track::Y1 => "y1",
            Track::Y2 => "y2",
        }
    }
}

/// One planar vector per track.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Tracks {
    pub x: [f64; 2],
    pub m1: [f64; 2],
    pub m2: [f64; 2],
    pub y1: [f64; 2],
    pub y2: [f64; 2],
}

impl Tracks {
    pub fn get(&self, t: Track) -> [f64; 2] {
        match t {
            Track::X => self.x,
            Track::M1 => self.m1,
            Track::M2 => self.m2,
            Track::Y1 => self.y1,
            Track::Y2 => self.y2,
        }
    }
}

/// Rear wheels `m_i = x - l_i e_i` and the doubled points `y_i = 2 m_i - x`.
pub fn tracks(q: &ConfigPoint, params: &Params) -> Tracks {
    let (s1, c1) = q.alpha1.sin_cos();
    let (s2, c2) = q.alpha2.sin_cos();
    let (l1, l2) = (params.l1(), params.l2());
    let x = [q.x1, q.x2];
    Tracks {
        x,
        m1: [x[0] - l1 * c1, x[1] - l1 * s1],
        m2: [x[0] - l2 * c2, x[1] - l2 * s2],
        y1: [x[0] - 2.0 * l1 * c1, x[1] - 2.0 * l1 * s1],
        y2: [x[0] - 2.0 * l2 * c2, x[1] - 2.0 * l2 * s2],
    }
}

/// Positions, velocities and accelerations of every track along a geodesic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackKinematics {
    pub pos: Tracks,
    pub vel: Tracks,
    pub acc: Tracks,
}

impl TrackKinematics {
    pub fn curvature(&self, t: Track) -> f64 {
        planar_curvature(self.vel.get(t), self.acc.get(t))
    }
}

/// Signed curvature `(v x a) / |v|^3`.
pub fn planar_curvature(v: [f64; 2], a: [f64; 2]) -> f64 {
    (v[0] * a[1] - v[1] * a[0]) / v[0].hypot(v[1]).powi(3)
}

/// Track derivatives at a state on (or numerically near) the unit-energy level.
///
/// Uses `x' = T`, `x'' = k N` and `l_i a_i' = sin(g - a_i)`.
pub fn track_kinematics(s: &PhaseState, params: &Params) -> TrackKinematics {
    let j = curvature_jet_unchecked(s, params);
    track_kinematics_at(&s.q, j.gamma, j.kappa, params)
}

/// Track derivatives from the configuration, the heading of `x` and its curvature.
pub fn track_kinematics_at(q: &ConfigPoint, gamma: f64, kappa: f64, params: &Params) -> TrackKinematics {
    let (sg, cg) = gamma.sin_cos();
    let t = [cg, sg];
    let n = [-sg, cg];
    let xa = [kappa * n[0], kappa * n[1]];
    let pos = tracks(q, params);
    let mut vel = Tracks { x: t, ..Default::default() };
    let mut acc = Tracks { x: xa, ..Default::default() };
    for (alpha, l, scale, slot_v, slot_a) in [
        (q.alpha1, params.l1(), 1.0, &mut vel.m1, &mut acc.m1),
        (q.alpha2, params.l2(), 1.0, &mut vel.m2, &mut acc.m2),
    ]
    .into_iter()
    .chain([
        (q.alpha1, params.l1(), 2.0, &mut vel.y1, &mut acc.y1),
        (q.alpha2, params.l2(), 2.0, &mut vel.y2, &mut acc.y2),
    ]) {
        let (sa, ca) = alpha.sin_cos();
        let d = gamma - alpha;
        let ad = d.sin() / l;
        let add = d.cos() * (kappa - ad) / l;
        let r = scale * l;
        // p = x - r e, e = (cos a, sin a), e' = a' e_perp, e_perp = (-sin a, cos a)
        *slot_v = [t[0] + r * ad * sa, t[1] - r * ad * ca];
        *slot_a = [
            xa[0] + r * add * sa + r * ad * ad * ca,
            xa[1] - r * add * ca + r * ad * ad * sa,
        ];
    }
    TrackKinematics { pos, vel, acc }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn positions_examples() {
        let t = tracks(&ConfigPoint::new(0.0, 0.0, 0.0, 0.0), &Params::unit());
        assert_eq!(t.m1, [-1.0, 0.0]);
        assert_eq!(t.y1, [-2.0, 0.0]);
        let t = tracks(&ConfigPoint::new(1.0, 1.0, 0.0, FRAC_PI_2), &Params::new(1.0, 2.0).unwrap());
        assert!((t.m2[0] - 1.0).abs() < 1e-15 && (t.m2[1] + 1.0).abs() < 1e-15);
        assert!((t.y2[0] - 1.0).abs() < 1e-15 && (t.y2[1] + 3.0).abs() < 1e-15);
    }

    #[test]
    fn doubled_points_are_unit_speed_and_rear_wheels_do_not_slip() {
        let p = Params::new(1.0, 2.0).unwrap();
        let s = crate::linkage::unit_energy_state(ConfigPoint::new(0.0, 0.0, 0.4, 2.0), 0.3, 0.5, 1.2, &p).unwrap();
        let k = track_kinematics(&s, &p);
        for tr in [Track::X, Track::Y1, Track::Y2] {
            let v = k.vel.get(tr);
            assert!((v[0].hypot(v[1]) - 1.0).abs() < 1e-14);
        }
        for (tr, a) in [(Track::M1, s.q.alpha1), (Track::M2, s.q.alpha2)] {
            let v = k.vel.get(tr);
            assert!((v[0] * a.sin() - v[1] * a.cos()).abs() < 1e-14);
        }
    }
}
