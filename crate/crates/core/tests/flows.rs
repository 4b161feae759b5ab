use tricycle_core::curves::{inflectional_ic, jacobi_cn};
use tricycle_core::linkage::*;
use tricycle_core::ode::IntegratorSpec;
use tricycle_core::sim::{simulate_geodesic, Formulation, GeodesicRun};

// Unit equal-length states (a1, a2, p1, p2, gamma) whose rear wheels stay apart over T = 50.
const UNIT_STATES: [[f64; 5]; 4] = [
    [0.0, 1.5, 0.2, 0.1, 2.5],
    [1.0, -1.0, 0.5, 0.5, 0.0],
    [0.2, 2.9, -0.3, 0.6, 1.4],
    [2.0, 0.1, 0.1, 0.1, 3.0],
];

fn run(params: Params, v: [f64; 5], t_end: f64, tol: f64) -> GeodesicRun {
    let s = unit_energy_state(ConfigPoint::new(0.0, 0.0, v[0], v[1]), v[2], v[3], v[4], &params).unwrap();
    simulate_geodesic(&s, &params, t_end, &IntegratorSpec::adaptive(tol), 0.01, Formulation::Phase).unwrap()
}

fn relative_drift(values: impl Iterator<Item = f64>) -> f64 {
    let v: Vec<f64> = values.collect();
    let scale = v[0].abs().max(1e-3);
    v.iter().map(|x| (x - v[0]).abs() / scale).fold(0.0, f64::max)
}

#[test]
fn unit_integrals_are_conserved() {
    for v in UNIT_STATES {
        let r = run(Params::unit(), v, 50.0, 1e-11);
        let c: Vec<_> = (0..r.len()).map(|i| r.conserved(i)).collect();
        for (name, d) in [
            ("H", relative_drift(c.iter().map(|c| c.h))),
            ("p1", relative_drift(c.iter().map(|c| c.p1))),
            ("p2", relative_drift(c.iter().map(|c| c.p2))),
            ("G", relative_drift(c.iter().map(|c| c.g.unwrap()))),
        ] {
            assert!(d <= 1e-8, "{v:?}: {name} drift {d:e}");
        }
    }
}

#[test]
fn unequal_integrals_are_conserved() {
    let p = Params::new(1.0, 2.0).unwrap();
    for v in [[0.3, 2.0, 0.4, -0.2, 0.5], [-0.4, 1.1, 0.3, 0.25, 1.0]] {
        let r = run(p, v, 50.0, 1e-11);
        let c: Vec<_> = (0..r.len()).map(|i| r.conserved(i)).collect();
        for (name, d) in [
            ("H", relative_drift(c.iter().map(|c| c.h))),
            ("b", relative_drift(c.iter().map(|c| c.b))),
            ("a", relative_drift(c.iter().map(|c| c.a))),
        ] {
            assert!(d <= 1e-8, "{v:?}: {name} drift {d:e}");
        }
        assert!(c.iter().all(|c| c.g.is_none() && c.p1 == v[2] && c.p2 == v[3]));
    }
}

#[test]
fn front_curvature_solves_the_elastica_equation() {
    for v in UNIT_STATES {
        let r = run(Params::unit(), v, 50.0, 1e-12);
        let (a, b) = elastica_constants(&r.states[0], &Params::unit()).unwrap();
        let pp = v[2] * v[2] + v[3] * v[3];
        assert!((a * a - b - pp).abs() <= 1e-9);
        for (st, j) in r.states.iter().zip(&r.jets) {
            let res = j.kappa_ddot + 0.5 * j.kappa.powi(3) + a * j.kappa;
            assert!(res.abs() <= 1e-8, "{v:?}: residual {res:e}");
            // A = -G and B from the first integral at the current sample
            let at = -g_trig(&TrigState::from_phase(st));
            let k2 = j.kappa * j.kappa;
            let bt = -(j.kappa_dot * j.kappa_dot + 0.25 * k2 * k2 + at * k2);
            assert!((at * at - bt - pp).abs() <= 1e-9, "{v:?}: momentum identity {:e}", at * at - bt - pp);
        }
    }
}

#[test]
fn lifted_geodesics_keep_one_link_idle() {
    for (params, q, p) in [
        (Params::new(1.0, 2.0).unwrap(), ConfigPoint::new(0.0, 0.0, 0.7, -1.2), (0.3, 0.5)),
        (Params::unit(), ConfigPoint::new(1.0, 0.0, 2.0, 0.5), (-0.6, 0.1)),
        (Params::new(1.5, 0.5).unwrap(), ConfigPoint::new(0.0, 0.0, -1.0, 1.0), (0.0, 0.8)),
    ] {
        let s = lifted_state(q, p.0, p.1, &params).unwrap();
        let r = simulate_geodesic(&s, &params, 50.0, &IntegratorSpec::default(), 0.01, Formulation::Phase).unwrap();
        let l1 = params.l1();
        for (st, j) in r.states.iter().zip(&r.jets) {
            assert!(st.eta2.abs() <= 1e-10);
            assert!((j.kappa - st.eta1 / (l1 * l1)).abs() <= 1e-12);
        }
    }
}

#[test]
fn inflectional_states_trace_cn_elasticae() {
    for k in [0.1, 0.707, 0.854, 0.95, 0.909] {
        let s = inflectional_ic(k).unwrap();
        let r = simulate_geodesic(&s, &Params::unit(), 20.0, &IntegratorSpec::default(), 0.01, Formulation::Tangent).unwrap();
        let err = r.times.iter().zip(r.kappa_x()).map(|(t, kx)| (kx - 2.0 * k * jacobi_cn(*t, k).unwrap()).abs()).fold(0.0, f64::max);
        assert!(err <= 1e-6, "k = {k}: {err:e}");
    }
}

#[test]
fn inflectional_elastica_constants() {
    // 2k cn(t, k) solves k'' + k^3/2 + (1 - 2k^2) k = 0 with B = -4k^2 (1 - k^2)
    for k in [0.3, 0.5, 0.707, 0.95] {
        let (a, b) = elastica_constants(&inflectional_ic(k).unwrap(), &Params::unit()).unwrap();
        assert!((a - (1.0 - 2.0 * k * k)).abs() < 1e-12, "{k}: A = {a}");
        assert!((b + 4.0 * k * k * (1.0 - k * k)).abs() < 1e-12, "{k}: B = {b}");
    }
}

#[test]
fn curvature_extrema_point_along_the_momentum() {
    let s = inflectional_ic(0.5).unwrap();
    let r = simulate_geodesic(&s, &Params::unit(), 20.0, &IntegratorSpec::adaptive(1e-12), 0.01, Formulation::Tangent).unwrap();
    let dir = s.p2.atan2(s.p1);
    let mut crossings = 0;
    for w in r.jets.windows(2) {
        let (a, b) = (w[0].kappa_dot, w[1].kappa_dot);
        if a * b < 0.0 {
            let g = w[0].gamma + (w[1].gamma - w[0].gamma) * a / (a - b);
            assert!((g - dir).sin().abs() < 1e-4, "heading {g} at a curvature extremum");
            crossings += 1;
        }
    }
    assert!(crossings >= 4);
}
