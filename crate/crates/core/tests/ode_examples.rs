use tricycle_core::linkage::{hamiltonian, singular_field, unit_energy_state, ConfigPoint, Params, PhaseState};
use tricycle_core::ode::*;
use tricycle_core::Error;

// Endpoints at t = 5 from a 32-digit Taylor-series solve of Hamilton's equations
// derived symbolically from H (independent of the hand-written field).
const ORACLE: [((f64, f64), [f64; 8], [f64; 8]); 3] = [
    (
        (1.0, 1.0),
        [0.1, -0.2, 0.3, 2.0, 0.4, -0.2, 0.7, -0.5],
        [
            -1.372164716772382370486826,
            0.8176301222378337854975872,
            3.629119642908976468976415,
            3.688134195366297527192493,
            0.4,
            -0.2,
            15.22214989936546259619559,
            -14.90953079382480555609392,
        ],
    ),
    (
        (1.0, 2.0),
        [0.0, 0.0, -0.4, 1.1, 0.3, 0.25, 0.6, 0.9],
        [
            -1.449086474141037978972988,
            -0.6956859522158349942389815,
            4.632108042585173971196931,
            3.06420249747086669065293,
            0.3,
            0.25,
            0.7161199174486659168177436,
            0.9374459154218430796538091,
        ],
    ),
    (
        (1.5, 0.5),
        [1.0, 0.5, 2.5, -0.7, -0.1, 0.35, 0.2, -0.15],
        [
            -0.5794905359792364554486537,
            1.434346755229149371733728,
            2.533661191365307753854946,
            -3.523695781372419578080347,
            -0.1,
            0.35,
            0.6782374672748510781159653,
            -0.1688504552050332558823092,
        ],
    ),
];

#[test]
fn geodesic_endpoints_match_high_precision_oracle() {
    for ((l1, l2), y0, want) in ORACLE {
        let field = GeodesicField { params: Params::new(l1, l2).unwrap() };
        let tr = integrate(&field, &y0, (0.0, 5.0), &IntegratorSpec::adaptive(1e-12), 0.5).unwrap();
        for (g, w) in tr.last().iter().zip(want) {
            assert!((g - w).abs() < 1e-9 * w.abs().max(1.0), "({l1}, {l2}): {g} vs {w}");
        }
    }
}

#[test]
fn exponential_growth() {
    let f = fn_field("exp", 1, |_, y, dy| {
        dy[0] = y[0];
        Ok(())
    });
    let tr = integrate(&f, &[1.0], (0.0, 1.0), &IntegratorSpec::adaptive(1e-10), 0.1).unwrap();
    assert_eq!(tr.len(), 11);
    assert!((tr.last()[0] - std::f64::consts::E).abs() < 1e-9);
    for (t, y) in tr.times.iter().zip(&tr.states) {
        assert!((y[0] - t.exp()).abs() < 1e-9);
    }
}

#[test]
fn harmonic_oscillator_energy() {
    let f = fn_field("sho", 2, |_, y, dy| {
        dy[0] = y[1];
        dy[1] = -y[0];
        Ok(())
    });
    let tr = integrate(&f, &[1.0, 0.0], (0.0, 100.0), &IntegratorSpec::adaptive(1e-10), 0.01).unwrap();
    let drift = tr.states.iter().map(|y| (y[0] * y[0] + y[1] * y[1] - 1.0).abs()).fold(0.0, f64::max);
    assert!(drift < 1e-7, "{drift}");
}

#[test]
fn geodesic_energy_over_fifty() {
    let p = Params::unit();
    let s = unit_energy_state(ConfigPoint::new(0.0, 0.0, 0.0, 1.5), 0.2, 0.1, 2.5, &p).unwrap();
    let tr = integrate(&GeodesicField { params: p }, &s.to_array(), (0.0, 50.0), &IntegratorSpec::default(), 0.01).unwrap();
    let drift = tr.states.iter().map(|y| (hamiltonian(&PhaseState::from_slice(y), &p) - 0.5).abs()).fold(0.0, f64::max);
    assert!(drift < 1e-8, "{drift}");
}

#[test]
fn rk4_is_fourth_order_on_the_geodesic_field() {
    let p = Params::new(1.0, 2.0).unwrap();
    let y0 = [0.0, 0.0, -0.4, 1.1, 0.3, 0.25, 0.6, 0.9];
    let reference = integrate(&GeodesicField { params: p }, &y0, (0.0, 5.0), &IntegratorSpec::adaptive(1e-13), 5.0).unwrap();
    let err = |h: f64| {
        let tr = integrate(&GeodesicField { params: p }, &y0, (0.0, 5.0), &IntegratorSpec::rk4(h), 5.0).unwrap();
        tr.last().iter().zip(reference.last()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    };
    let (e1, e2) = (err(0.05), err(0.025));
    let ratio = e1 / e2;
    assert!((13.0..19.0).contains(&ratio), "ratio {ratio} ({e1:e} / {e2:e})");
}

#[test]
fn integration_is_bitwise_deterministic() {
    let p = Params::new(1.5, 0.5).unwrap();
    let y0 = ORACLE[2].1;
    for spec in [IntegratorSpec::default(), IntegratorSpec::rk4(0.01), IntegratorSpec::default().with_sampling(Sampling::StepToSamples)] {
        let a = integrate(&GeodesicField { params: p }, &y0, (0.0, 3.0), &spec, 0.01).unwrap();
        let b = integrate(&GeodesicField { params: p }, &y0, (0.0, 3.0), &spec, 0.01).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn sampling_modes_agree() {
    let p = Params::unit();
    let y0 = ORACLE[0].1;
    let spec = IntegratorSpec::adaptive(1e-12);
    let a = integrate(&GeodesicField { params: p }, &y0, (0.0, 2.0), &spec, 0.01).unwrap();
    let b = integrate(&GeodesicField { params: p }, &y0, (0.0, 2.0), &spec.with_sampling(Sampling::StepToSamples), 0.01).unwrap();
    assert_eq!(a.times, b.times);
    for (u, v) in a.states.iter().zip(&b.states) {
        for (x, y) in u.iter().zip(v) {
            assert!((x - y).abs() < 1e-9);
        }
    }
}

#[test]
fn trajectory_metadata() {
    let p = Params::new(1.0, 2.0).unwrap();
    let tr = integrate(&GeodesicField { params: p }, &ORACLE[1].1, (0.0, 1.05), &IntegratorSpec::default(), 0.1).unwrap();
    assert_eq!(tr.meta.field, "geodesic");
    assert_eq!(tr.meta.params, Some(p));
    assert_eq!(tr.meta.sample_dt, 0.1);
    assert!(tr.meta.accepted_steps > 0);
    assert_eq!(tr.len(), 12);
    assert!((tr.times[11] - 1.05).abs() < 1e-15);
    assert!(tr.times.windows(2).all(|w| w[1] > w[0]));
    assert!(tr.states.iter().all(|s| s.len() == 8));
    assert_eq!(tr.component(4), vec![0.3; 12]);
}

#[test]
fn invalid_requests_are_rejected() {
    let f = GeodesicField { params: Params::unit() };
    let y0 = ORACLE[0].1;
    let spec = IntegratorSpec::default();
    assert!(matches!(integrate(&f, &y0, (1.0, 1.0), &spec, 0.1), Err(Error::Invalid(_))));
    assert!(matches!(integrate(&f, &y0[..4], (0.0, 1.0), &spec, 0.1), Err(Error::Invalid(_))));
    assert!(matches!(integrate(&f, &y0, (0.0, 1.0), &spec, 0.0), Err(Error::Invalid(_))));
    assert!(matches!(integrate(&f, &y0, (0.0, 1.0), &IntegratorSpec::rk4(-1.0), 0.1), Err(Error::Invalid(_))));
    assert!(matches!(integrate(&f, &y0, (0.0, 10.0), &spec.with_max_steps(5), 0.1), Err(Error::MaxSteps(5))));
}

#[test]
fn field_errors_propagate() {
    // the equal-length singular field is undefined once a1 = a2
    let f = SingularField { params: Params::unit() };
    let r = integrate(&f, &[0.0, 0.0, 0.4, 0.4], (0.0, 1.0), &IntegratorSpec::default(), 0.1);
    assert!(matches!(r, Err(Error::Degenerate(_))));
}

#[test]
fn unit_speed_wrap_examples() {
    let f = fn_field("const", 3, |_, _, dy| {
        dy.copy_from_slice(&[1.0, 0.0, 0.0]);
        Ok(())
    });
    let w = unit_speed_wrap(f, |_| 2.0);
    let mut dy = [0.0; 3];
    w.eval(0.0, &[0.0; 3], &mut dy).unwrap();
    assert_eq!(dy, [0.5, 0.0, 0.0]);
    assert_eq!(w.name(), "const (unit speed)");

    let stalled = unit_speed_wrap(fn_field("z", 1, |_, _, dy| { dy[0] = 0.0; Ok(()) }), |_| 1e-13);
    assert!(matches!(stalled.eval(0.0, &[0.0], &mut [0.0]), Err(Error::Degenerate(_))));
}

#[test]
fn wrapped_singular_field_has_unit_front_speed() {
    let p = Params::new(1.0, 2.0).unwrap();
    let speed = move |y: &[f64]| singular_field(&ConfigPoint::from_slice(y), &p).unwrap().speed;
    let w = unit_speed_wrap(SingularField { params: p }, speed);
    // finite differences need samples on step boundaries, not interpolated ones
    let spec = IntegratorSpec::default().with_sampling(Sampling::StepToSamples);
    let tr = integrate(&w, &[0.0, 0.0, 0.3, 1.7], (0.0, 10.0), &spec, 0.01).unwrap();
    let mut dy = [0.0; 4];
    for (t, y) in tr.times.iter().zip(&tr.states) {
        w.eval(*t, y, &mut dy).unwrap();
        assert!((dy[0].hypot(dy[1]) - 1.0).abs() < 1e-10);
    }
    let x: Vec<f64> = tr.component(0);
    let y: Vec<f64> = tr.component(1);
    let c = tricycle_core::curves::PlanarCurve::new(x.into_iter().zip(y).map(|(a, b)| [a, b]).collect(), 0.01, true).unwrap();
    assert!(c.speed_deviation() < 1e-10, "{}", c.speed_deviation());
}

#[test]
fn equal_length_singular_field_needs_no_wrapping() {
    let p = Params::unit();
    let v = singular_field(&ConfigPoint::new(0.0, 0.0, 1.2, -0.4), &p).unwrap();
    assert_eq!(v.speed, 1.0);
    assert!((v.dq.x1.hypot(v.dq.x2) - 1.0).abs() < 1e-15);
}
