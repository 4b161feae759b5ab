use tricycle_core::curves::*;
use tricycle_core::linkage::*;
use tricycle_core::ode::{IntegratorSpec, Sampling};
use tricycle_core::sim::{simulate_geodesic, simulate_singular, Formulation, GeodesicRun};
use tricycle_core::Error;

fn fd_spec(tol: f64) -> IntegratorSpec {
    IntegratorSpec::adaptive(tol).with_sampling(Sampling::StepToSamples)
}

fn unequal_run() -> GeodesicRun {
    let p = Params::new(1.0, 2.0).unwrap();
    let s = unit_energy_state(ConfigPoint::new(0.0, 0.0, 0.3, 2.0), 0.4, -0.2, 0.5, &p).unwrap();
    simulate_geodesic(&s, &p, 20.0, &fd_spec(1e-12), 0.01, Formulation::Phase).unwrap()
}

#[test]
fn frenet_curvature_matches_the_jet() {
    let r = unequal_run();
    let f = frenet_fd(&r.track(Track::X).unwrap()).unwrap();
    for (i, (k, j)) in f.kappa.iter().zip(&r.jets).enumerate() {
        assert!((k - j.kappa).abs() < 1e-6, "sample {i}: {k} vs {}", j.kappa);
        let (sg, cg) = j.gamma.sin_cos();
        assert!((f.tangent[i][0] - cg).abs() < 1e-8 && (f.tangent[i][1] - sg).abs() < 1e-8);
        assert!((f.normal[i][0] + sg).abs() < 1e-8 && (f.normal[i][1] - cg).abs() < 1e-8);
    }
}

#[test]
fn y_track_curvature_matches_finite_differences() {
    let r = unequal_run();
    for t in [Track::Y1, Track::Y2] {
        let f = frenet_fd(&r.track(t).unwrap()).unwrap();
        let exact = r.curvature_series(t, 0).unwrap();
        let err = f.kappa.iter().zip(exact.kappa()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(err < 1e-6, "{}: {err:e}", t.name());
    }
}

#[test]
fn rear_wheels_roll_along_their_segments() {
    let r = unequal_run();
    for (t, alpha) in [(Track::M1, 0usize), (Track::M2, 1)] {
        let c = r.track(t).unwrap();
        assert!(!c.unit_speed);
        let xs: Vec<f64> = c.points.iter().map(|p| p[0]).collect();
        let ys: Vec<f64> = c.points.iter().map(|p| p[1]).collect();
        let (vx, vy) = (fd::derivative(&xs, c.dt, 1), fd::derivative(&ys, c.dt, 1));
        for (i, s) in r.states.iter().enumerate() {
            let a = if alpha == 0 { s.q.alpha1 } else { s.q.alpha2 };
            assert!((vx[i] * a.sin() - vy[i] * a.cos()).abs() < 1e-7, "{} slips at {i}", t.name());
        }
    }
    assert!(frenet_fd(&r.track(Track::M1).unwrap()).is_err());
}

#[test]
fn cn_curvature_is_an_elastica() {
    for k in [0.3, 0.707, 0.95] {
        let dt = 0.01;
        let t: Vec<f64> = (0..2001).map(|i| i as f64 * dt).collect();
        let kappa = t.iter().map(|&s| 2.0 * k * jacobi_cn(s, k).unwrap()).collect();
        let cs = CurvatureSeries::from_kappa(t, kappa, 2).unwrap();
        let r = elastica_residual(&cs, 1.0 - 2.0 * k * k).unwrap();
        // fourth-order differences of an exact curvature
        assert!(r.sup < 1e-6, "k = {k}: {:e}", r.sup);
        assert!((r.b + 4.0 * k * k * (1.0 - k * k)).abs() < 1e-7);
        assert!(elastica_residual(&cs, 1.0 - 2.0 * k * k + 0.1).unwrap().sup > 1e-2);
    }
}

#[test]
fn unequal_lengths_give_two_soliton_tracks() {
    let r = unequal_run();
    let c = r.conserved(0);
    let x = fit_soliton_ab(&r.curvature_series(Track::X, 4).unwrap()).unwrap();
    assert!((x.a - c.a).abs() < 1e-5 && (x.b - c.b).abs() < 1e-5, "x: {x:?} vs a = {}, b = {}", c.a, c.b);
    for t in [Track::Y1, Track::Y2] {
        let f = fit_soliton_ab(&r.curvature_series(t, 4).unwrap()).unwrap();
        assert!((f.a - c.a).abs() < 1e-4 && (f.b - c.b).abs() < 1e-4, "{}: {f:?}", t.name());
    }
}

#[test]
fn equal_length_front_track_is_unfittable() {
    let s = inflectional_ic(0.707).unwrap();
    let r = simulate_geodesic(&s, &Params::unit(), 20.0, &fd_spec(1e-12), 0.01, Formulation::Tangent).unwrap();
    assert_eq!(fit_soliton_ab(&r.curvature_series(Track::X, 4).unwrap()), Err(Error::Unfittable));
}

#[test]
fn unequal_singular_curves_are_elasticae() {
    for (l1, l2, a1, a2) in [(1.0, 2.0, 0.3, 1.7), (1.5, 0.5, -1.0, 2.0), (1.0, 3.0, 0.0, 2.5)] {
        let p = Params::new(l1, l2).unwrap();
        let run = simulate_singular(&ConfigPoint::new(0.0, 0.0, a1, a2), &p, 10.0, &fd_spec(1e-12), 0.01).unwrap();
        let x = run.track(Track::X).unwrap();
        assert!(x.speed_deviation() < 1e-9);
        let closed: Vec<f64> = run.configs.iter().map(|q| singular_curvature(q, &p)).collect();
        let f = frenet_fd(&x).unwrap();
        let err = f.kappa.iter().zip(&closed).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(err <= 1e-8, "({l1}, {l2}): curvature {err:e}");
        let cs = CurvatureSeries::from_columns(run.times.clone(), vec![closed]).unwrap().extend_fd_with(2, 6).unwrap();
        let res = elastica_residual(&cs, singular_elastica_a(&p)).unwrap();
        assert!(res.sup <= 1e-8, "({l1}, {l2}): residual {:e}", res.sup);
    }
}

#[test]
fn equal_length_singular_curves_are_lines() {
    for (l, a1, a2) in [(1.0, 0.3, 1.7), (0.6, -2.0, 2.5), (2.0, 1.0, -0.2)] {
        let p = Params::new(l, l).unwrap();
        let run = simulate_singular(&ConfigPoint::new(0.5, -0.5, a1, a2), &p, 10.0, &IntegratorSpec::default(), 0.01).unwrap();
        let q0 = run.configs[0];
        let sigma = (q0.alpha1 + q0.alpha2) / 2.0;
        let (s, c) = sigma.sin_cos();
        for q in &run.configs {
            // off-line distance, conserved angle sum and mirror-image rear wheels
            assert!(((q.x1 - q0.x1) * s - (q.x2 - q0.x2) * c).abs() <= 1e-10);
            assert!((q.alpha1 + q.alpha2 - q0.alpha1 - q0.alpha2).abs() <= 1e-10);
            let t = tracks(q, &p);
            let rel = [t.m1[0] - q.x1, t.m1[1] - q.x2];
            let along = rel[0] * c + rel[1] * s;
            let mirrored = [q.x1 + 2.0 * along * c - rel[0], q.x2 + 2.0 * along * s - rel[1]];
            assert!((mirrored[0] - t.m2[0]).hypot(mirrored[1] - t.m2[1]) <= 1e-8);
        }
    }
}

#[test]
fn closure_gap_of_a_circle_vanishes_after_a_full_turn() {
    let tau = std::f64::consts::TAU;
    let r = simulate_geodesic(&circle_ic(), &Params::unit(), tau, &IntegratorSpec::adaptive(1e-12), tau / 400.0, Formulation::Phase).unwrap();
    // x turns about the fixed wheel m2; the other wheel does not come back
    let g = r.closure_gap().unwrap();
    for d in [g.x, g.m2, g.y2, g.heading] {
        assert!(d < 1e-9, "{g:?}");
    }
    assert!(g.m1 > 0.1);
}
