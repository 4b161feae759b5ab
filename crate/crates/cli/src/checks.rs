//! Acceptance criteria, each a self-contained numerical or symbolic experiment
//! returning its measured values against fixed bounds.

use std::f64::consts::PI;
use std::time::Instant;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use tricycle_algebra::proofs::{default_params, prove_all};
use tricycle_core::backlund::{backlund_transform, soliton_constants_from_elastica, BetaSign};
use tricycle_core::curves::{
    elastica_residual, fit_soliton_ab, frenet_fd, inflectional_ic, jacobi_cn, soliton2_residual, CurvatureSeries,
};
use tricycle_core::linkage::*;
use tricycle_core::ode::{IntegratorSpec, Sampling};
use tricycle_core::sim::{simulate_geodesic, simulate_singular, Formulation, GeodesicRun};

/// One measured quantity and its bound; informational rows have no bound.
#[derive(Debug, Clone, Serialize)]
pub struct Measurement {
    pub label: String,
    pub value: f64,
    pub bound: Option<f64>,
}

impl Measurement {
    /// Fraction of the bound used; zero bounds count only nonzero values.
    fn load(&self) -> f64 {
        match self.bound {
            Some(b) if b > 0.0 => self.value / b,
            Some(_) if self.value == 0.0 => 0.0,
            Some(_) => f64::INFINITY,
            None => 0.0,
        }
    }

    pub fn ok(&self) -> bool {
        self.bound.is_none_or(|b| self.value <= b)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub elapsed: f64,
    pub measurements: Vec<Measurement>,
    pub errors: Vec<String>,
}

impl Criterion {
    /// `C<n> PASS|FAIL name: worst measurement`.
    pub fn line(&self) -> String {
        let worst = self
            .measurements
            .iter()
            .filter(|m| m.bound.is_some())
            .max_by(|a, b| a.load().total_cmp(&b.load()));
        let detail = match (worst, self.errors.first()) {
            (_, Some(e)) => format!("error: {e}"),
            (Some(m), None) => format!("worst {} = {:.3e} (bound {:e})", m.label, m.value, m.bound.unwrap()),
            (None, None) => "no bounded measurements".into(),
        };
        format!(
            "C{:<2} {} {}: {} [{:.1} s]",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            detail,
            self.elapsed
        )
    }
}

/// Collects measurements while a criterion runs.
struct Recorder {
    id: u8,
    name: &'static str,
    start: Instant,
    measurements: Vec<Measurement>,
    errors: Vec<String>,
}

impl Recorder {
    fn new(id: u8, name: &'static str) -> Self {
        Self { id, name, start: Instant::now(), measurements: Vec::new(), errors: Vec::new() }
    }

    fn bound(&mut self, label: impl Into<String>, value: f64, bound: f64) {
        // NaN must fail
        let value = if value.is_nan() { f64::INFINITY } else { value };
        self.measurements.push(Measurement { label: label.into(), value, bound: Some(bound) });
    }

    fn info(&mut self, label: impl Into<String>, value: f64) {
        self.measurements.push(Measurement { label: label.into(), value, bound: None });
    }

    fn error(&mut self, context: &str, e: impl std::fmt::Display) {
        self.errors.push(format!("{context}: {e}"));
    }

    fn finish(self) -> Criterion {
        let passed = self.errors.is_empty() && self.measurements.iter().all(Measurement::ok);
        Criterion {
            id: self.id,
            name: self.name,
            passed,
            elapsed: self.start.elapsed().as_secs_f64(),
            measurements: self.measurements,
            errors: self.errors,
        }
    }
}

type Run = std::result::Result<(), String>;

fn run(id: u8, name: &'static str, body: impl FnOnce(&mut Recorder) -> Run) -> Criterion {
    let mut r = Recorder::new(id, name);
    if let Err(e) = body(&mut r) {
        r.error("aborted", e);
    }
    r.finish()
}

fn sup(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, |m, x| if x.is_nan() { f64::INFINITY } else { m.max(x.abs()) })
}

fn relative_drift(v: &[f64]) -> f64 {
    let scale = v[0].abs().max(1e-3);
    sup(v.iter().map(|x| (x - v[0]) / scale))
}

fn fd_spec(tol: f64) -> IntegratorSpec {
    IntegratorSpec::adaptive(tol).with_sampling(Sampling::StepToSamples)
}

fn state(params: &Params, v: [f64; 5]) -> std::result::Result<PhaseState, String> {
    unit_energy_state(ConfigPoint::new(0.0, 0.0, v[0], v[1]), v[2], v[3], v[4], params).map_err(|e| e.to_string())
}

/// Unit equal-length states `(a1, a2, p1, p2, gamma)` whose rear wheels stay apart over T = 50.
pub const UNIT_STATES: [[f64; 5]; 4] = [
    [0.0, 1.5, 0.2, 0.1, 2.5],
    [1.0, -1.0, 0.5, 0.5, 0.0],
    [0.2, 2.9, -0.3, 0.6, 1.4],
    [2.0, 0.1, 0.1, 0.1, 3.0],
];

/// States for the lengths (1, 2).
pub const UNEQUAL_STATES: [[f64; 5]; 2] = [[0.3, 2.0, 0.4, -0.2, 0.5], [-0.4, 1.1, 0.3, 0.25, 1.0]];

pub const MODULI: [f64; 5] = [0.1, 0.707, 0.854, 0.95, 0.909];

/// Random unit-energy state with the segments at least `asin(0.1)` from parallel.
pub fn random_state(rng: &mut ChaCha8Rng, params: &Params) -> PhaseState {
    loop {
        let (a1, a2) = (rng.gen_range(-PI..PI), rng.gen_range(-PI..PI));
        if (a2 - a1).sin().abs() <= 0.1 {
            continue;
        }
        let (p1, p2, g) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-PI..PI));
        let (x1, x2) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        if let Ok(s) = unit_energy_state(ConfigPoint::new(x1, x2, a1, a2), p1, p2, g, params) {
            return s;
        }
    }
}

const SEED: u64 = 0x5eed_2024;

pub fn c1_elastica() -> Criterion {
    run(1, "elastica reproduction", |r| {
        for k in MODULI {
            let s = inflectional_ic(k).map_err(|e| e.to_string())?;
            let start = Instant::now();
            let run = simulate_geodesic(&s, &Params::unit(), 20.0, &IntegratorSpec::adaptive(1e-10), 0.01, Formulation::Tangent)
                .map_err(|e| e.to_string())?;
            let secs = start.elapsed().as_secs_f64();
            let err = cn_error(&run, k)?;
            r.bound(format!("k={k} max|kappa - 2k cn|"), err, 1e-6);
            r.bound(format!("k={k} seconds"), secs, 5.0);
            // phase variables lose kappa to cancellation as m1 and m2 approach
            match simulate_geodesic(&s, &Params::unit(), 20.0, &IntegratorSpec::adaptive(1e-10), 0.01, Formulation::Phase) {
                Ok(p) => r.info(format!("k={k} phase-variable error"), cn_error(&p, k)?),
                Err(e) => r.info(format!("k={k} phase-variable run failed ({e})"), f64::NAN),
            }
        }
        Ok(())
    })
}

fn cn_error(run: &GeodesicRun, k: f64) -> std::result::Result<f64, String> {
    let mut m: f64 = 0.0;
    for (t, j) in run.times.iter().zip(&run.jets) {
        m = m.max((j.kappa - 2.0 * k * jacobi_cn(*t, k).map_err(|e| e.to_string())?).abs());
    }
    Ok(m)
}

pub fn c2_conservation() -> Criterion {
    run(2, "conservation", |r| {
        let spec = IntegratorSpec::adaptive(1e-11);
        for (i, v) in UNIT_STATES.iter().enumerate() {
            let p = Params::unit();
            let run = simulate_geodesic(&state(&p, *v)?, &p, 50.0, &spec, 0.01, Formulation::Phase).map_err(|e| e.to_string())?;
            let c: Vec<ConservedSet> = (0..run.len()).map(|i| run.conserved(i)).collect();
            r.bound(format!("unit#{i} H"), relative_drift(&c.iter().map(|c| c.h).collect::<Vec<_>>()), 1e-8);
            r.bound(format!("unit#{i} p1"), relative_drift(&c.iter().map(|c| c.p1).collect::<Vec<_>>()), 1e-8);
            r.bound(format!("unit#{i} p2"), relative_drift(&c.iter().map(|c| c.p2).collect::<Vec<_>>()), 1e-8);
            let g: Option<Vec<f64>> = c.iter().map(|c| c.g).collect();
            r.bound(format!("unit#{i} G"), g.map_or(f64::INFINITY, |g| relative_drift(&g)), 1e-8);
        }
        let p = Params::new(1.0, 2.0).map_err(|e| e.to_string())?;
        for (i, v) in UNEQUAL_STATES.iter().enumerate() {
            let run = simulate_geodesic(&state(&p, *v)?, &p, 50.0, &spec, 0.01, Formulation::Phase).map_err(|e| e.to_string())?;
            let c: Vec<ConservedSet> = (0..run.len()).map(|i| run.conserved(i)).collect();
            r.bound(format!("(1,2)#{i} H"), relative_drift(&c.iter().map(|c| c.h).collect::<Vec<_>>()), 1e-8);
            r.bound(format!("(1,2)#{i} b"), relative_drift(&c.iter().map(|c| c.b).collect::<Vec<_>>()), 1e-8);
            r.bound(format!("(1,2)#{i} a"), relative_drift(&c.iter().map(|c| c.a).collect::<Vec<_>>()), 1e-8);
        }
        Ok(())
    })
}

pub fn c3_elastica_residual() -> Criterion {
    run(3, "elastica ODE residual", |r| {
        let p = Params::unit();
        for (i, v) in UNIT_STATES.iter().enumerate() {
            let run = simulate_geodesic(&state(&p, *v)?, &p, 50.0, &IntegratorSpec::adaptive(1e-12), 0.01, Formulation::Phase)
                .map_err(|e| e.to_string())?;
            let pp = v[2] * v[2] + v[3] * v[3];
            let (mut res, mut ident): (f64, f64) = (0.0, 0.0);
            for (st, j) in run.states.iter().zip(&run.jets) {
                let a = -g_trig(&TrigState::from_phase(st));
                let k2 = j.kappa * j.kappa;
                let b = -(j.kappa_dot * j.kappa_dot + 0.25 * k2 * k2 + a * k2);
                res = res.max((j.kappa_ddot + 0.5 * k2 * j.kappa + a * j.kappa).abs());
                ident = ident.max((a * a - b - pp).abs());
            }
            r.bound(format!("#{i} |k'' + k^3/2 + A k|"), res, 1e-8);
            r.bound(format!("#{i} |A^2 - B - p^2|"), ident, 1e-9);
        }
        Ok(())
    })
}

pub fn c4_two_soliton() -> Criterion {
    run(4, "2-soliton tracks", |r| {
        let p = Params::new(1.0, 2.0).map_err(|e| e.to_string())?;
        let run = simulate_geodesic(&state(&p, UNEQUAL_STATES[0])?, &p, 20.0, &fd_spec(1e-12), 0.01, Formulation::Phase)
            .map_err(|e| e.to_string())?;
        let c = run.conserved(0);
        for (t, bound) in [(Track::X, 1e-5), (Track::Y1, 1e-4), (Track::Y2, 1e-4)] {
            let cs = run.curvature_series(t, 4).map_err(|e| e.to_string())?;
            let f = fit_soliton_ab(&cs).map_err(|e| e.to_string())?;
            r.bound(format!("{} |a - a*|", t.name()), (f.a - c.a).abs(), bound);
            r.bound(format!("{} |b - b*|", t.name()), (f.b - c.b).abs(), bound);
        }
        Ok(())
    })
}

pub fn c5_singular() -> Criterion {
    run(5, "singular curves", |r| {
        for (l1, l2, a1, a2) in [(1.0, 2.0, 0.3, 1.7), (1.5, 0.5, -1.0, 2.0), (1.0, 3.0, 0.0, 2.5)] {
            let p = Params::new(l1, l2).map_err(|e| e.to_string())?;
            let run = simulate_singular(&ConfigPoint::new(0.0, 0.0, a1, a2), &p, 10.0, &fd_spec(1e-12), 0.01)
                .map_err(|e| e.to_string())?;
            let x = run.track(Track::X).map_err(|e| e.to_string())?;
            let closed: Vec<f64> = run.configs.iter().map(|q| singular_curvature(q, &p)).collect();
            let f = frenet_fd(&x).map_err(|e| e.to_string())?;
            r.info(format!("({l1},{l2}) speed deviation"), x.speed_deviation());
            r.bound(format!("({l1},{l2}) FD vs closed-form curvature"), sup(f.kappa.iter().zip(&closed).map(|(a, b)| a - b)), 1e-8);
            let cs = CurvatureSeries::from_columns(run.times.clone(), vec![closed])
                .and_then(|c| c.extend_fd_with(2, 6))
                .map_err(|e| e.to_string())?;
            let res = elastica_residual(&cs, singular_elastica_a(&p)).map_err(|e| e.to_string())?;
            r.bound(format!("({l1},{l2}) elastica residual"), res.sup, 1e-8);
        }
        for (l, a1, a2) in [(1.0, 0.3, 1.7), (0.6, -2.0, 2.5), (2.0, 1.0, -0.2)] {
            let p = Params::new(l, l).map_err(|e| e.to_string())?;
            let run = simulate_singular(&ConfigPoint::new(0.5, -0.5, a1, a2), &p, 10.0, &IntegratorSpec::default(), 0.01)
                .map_err(|e| e.to_string())?;
            let e = equal_singular_deviations(&run.configs, &p);
            r.bound(format!("l={l} collinearity"), e[0], 1e-10);
            r.bound(format!("l={l} angle-sum drift"), e[1], 1e-10);
            r.bound(format!("l={l} mirror symmetry"), e[2], 1e-8);
        }
        Ok(())
    })
}

/// Off-line distance of `x`, drift of `a1 + a2` and mirror mismatch of the rear wheels.
pub fn equal_singular_deviations(configs: &[ConfigPoint], p: &Params) -> [f64; 3] {
    let q0 = configs[0];
    let sigma = (q0.alpha1 + q0.alpha2) / 2.0;
    let (s, c) = sigma.sin_cos();
    let mut d = [0.0f64; 3];
    for q in configs {
        d[0] = d[0].max(((q.x1 - q0.x1) * s - (q.x2 - q0.x2) * c).abs());
        d[1] = d[1].max((q.alpha1 + q.alpha2 - q0.alpha1 - q0.alpha2).abs());
        let t = tracks(q, p);
        let rel = [t.m1[0] - q.x1, t.m1[1] - q.x2];
        let along = rel[0] * c + rel[1] * s;
        let mirrored = [q.x1 + 2.0 * along * c - rel[0], q.x2 + 2.0 * along * s - rel[1]];
        d[2] = d[2].max((mirrored[0] - t.m2[0]).hypot(mirrored[1] - t.m2[1]));
    }
    d
}

pub fn c6_backlund() -> Criterion {
    run(6, "bicycle transformation", |r| {
        let e = |e: tricycle_core::Error| e.to_string();
        let spec = fd_spec(1e-12);
        let s = inflectional_ic(0.707).map_err(e)?;
        let run = simulate_geodesic(&s, &Params::unit(), 20.0, &spec, 0.01, Formulation::Tangent).map_err(e)?;
        let x = run.track(Track::X).map_err(e)?;
        let cs = run.curvature_series(Track::X, 4).map_err(e)?;
        let (a, b) = elastica_constants(&run.states[0], &Params::unit()).map_err(e)?;
        let l = 2.0;
        let (c1, c2) = soliton_constants_from_elastica(a, b, l);
        r.info("c1", c1);
        r.info("c2", c2);
        let (q0, g0) = (run.states[0].q, run.jets[0].gamma);
        for beta0 in [1.0, 2.0, q0.alpha1 + PI - g0] {
            let t = backlund_transform(&x, &cs, l, beta0, None, &spec).map_err(e)?;
            r.bound(format!("beta0={beta0:.4} speed deviation"), t.speed_deviation, 1e-8);
            let res = soliton2_residual(&t.kappa_out, c1, c2).map_err(e)?;
            r.bound(format!("beta0={beta0:.4} 2-soliton residual"), res.sup, 1e-4);
        }
        let cs2 = run.curvature_series(Track::X, 2).map_err(e)?;
        for (track, alpha0) in [(Track::Y1, q0.alpha1), (Track::Y2, q0.alpha2)] {
            let t = backlund_transform(&x, &cs2, l, alpha0 + PI - g0, Some(BetaSign::Plus), &spec).map_err(e)?;
            let y = run.track(track).map_err(e)?;
            let err = sup(y.points.iter().zip(&t.curve_out.points).map(|(a, b)| (a[0] - b[0]).hypot(a[1] - b[1])));
            r.bound(format!("{} reconstruction", track.name()), err, 1e-8);
        }
        Ok(())
    })
}

/// Lie brackets by central differences of the horizontal frame, then ranks of the growing spans.
pub fn brute_force_growth(q: &ConfigPoint, p: &Params) -> (usize, usize, usize) {
    let h = 1e-5;
    let y = q.to_array();
    let cp = |y: &[f64; 4]| ConfigPoint::new(y[0], y[1], y[2], y[3]);
    let x1 = |y: &[f64; 4]| horizontal_frame(&cp(y), p).0;
    let x2 = |y: &[f64; 4]| horizontal_frame(&cp(y), p).1;
    // directional derivative of f along v at y
    let along = |f: &dyn Fn(&[f64; 4]) -> [f64; 4], v: [f64; 4], y: &[f64; 4]| {
        let plus: [f64; 4] = std::array::from_fn(|k| y[k] + h * v[k]);
        let minus: [f64; 4] = std::array::from_fn(|k| y[k] - h * v[k]);
        let (a, b) = (f(&plus), f(&minus));
        std::array::from_fn::<f64, 4, _>(|k| (a[k] - b[k]) / (2.0 * h))
    };
    let bracket = |f: &dyn Fn(&[f64; 4]) -> [f64; 4], g: &dyn Fn(&[f64; 4]) -> [f64; 4], y: &[f64; 4]| {
        let (dg, df) = (along(g, f(y), y), along(f, g(y), y));
        std::array::from_fn::<f64, 4, _>(|k| dg[k] - df[k])
    };
    let x3 = |y: &[f64; 4]| bracket(&x1, &x2, y);
    let v = [x1(&y), x2(&y), x3(&y), bracket(&x1, &x3, &y), bracket(&x2, &x3, &y)];
    let rank = |cols: &[[f64; 4]]| {
        let m = DMatrix::from_fn(4, cols.len(), |i, j| cols[j][i]);
        let sv = m.singular_values();
        let top = sv.max();
        sv.iter().filter(|&&s| s > 1e-6 * top).count()
    };
    (rank(&v[..2]), rank(&v[..3]), rank(&v))
}

pub fn c7_growth_vector() -> Criterion {
    run(7, "growth vector", |r| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for (label, p) in [("equal", Params::unit()), ("unequal", Params::new(1.0, 2.0).map_err(|e| e.to_string())?)] {
            let (mut wrong, mut oracle_wrong, mut n) = (0, 0, 0);
            while n < 100 {
                let q = ConfigPoint::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-PI..PI), rng.gen_range(-PI..PI));
                // generic points only: away from a1 = a2 for equal lengths
                if p.is_equal() && ((q.alpha1 - q.alpha2) / 2.0).sin().abs() < 1e-2 {
                    continue;
                }
                n += 1;
                wrong += usize::from(growth_vector(&q, &p, 1e-9) != (2, 3, 4));
                oracle_wrong += usize::from(brute_force_growth(&q, &p) != (2, 3, 4));
            }
            r.bound(format!("{label}: points not (2,3,4)"), wrong as f64, 0.0);
            r.bound(format!("{label}: brute-force points not (2,3,4)"), oracle_wrong as f64, 0.0);
        }
        let mut wrong = 0;
        for a in [-2.0, -0.7, 0.0, 0.4, 1.3, 3.0] {
            for l in [1.0, 0.7, 2.0] {
                let q = ConfigPoint::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), a, a);
                let p = Params::new(l, l).map_err(|e| e.to_string())?;
                wrong += usize::from(growth_vector(&q, &p, 1e-9) != (2, 3, 3));
                wrong += usize::from(brute_force_growth(&q, &p) != (2, 3, 3));
            }
        }
        r.bound("degenerate locus a1 = a2: mismatches with (2,3,3)", wrong as f64, 0.0);
        Ok(())
    })
}

pub fn c8_poisson() -> Criterion {
    run(8, "Poisson commutation", |r| {
        let p = Params::unit();
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
        let h = |s: &PhaseState| hamiltonian(s, &p);
        let g = |s: &PhaseState| g_trig(&TrigState::from_phase(s));
        let (p1, p2) = (|s: &PhaseState| s.p1, |s: &PhaseState| s.p2);
        let mut worst = [0.0f64; 5];
        for _ in 0..100 {
            let s = random_state(&mut rng, &p);
            let b = [
                poisson_bracket(h, g, &s, DEFAULT_FD_STEP),
                poisson_bracket(h, p1, &s, DEFAULT_FD_STEP),
                poisson_bracket(h, p2, &s, DEFAULT_FD_STEP),
                poisson_bracket(g, p1, &s, DEFAULT_FD_STEP),
                poisson_bracket(g, p2, &s, DEFAULT_FD_STEP),
            ];
            for (w, x) in worst.iter_mut().zip(b) {
                *w = w.max(x.abs());
            }
        }
        for (name, w) in ["{H,G}", "{H,p1}", "{H,p2}", "{G,p1}", "{G,p2}"].iter().zip(worst) {
            r.bound(*name, w, 1e-6);
        }
        Ok(())
    })
}

pub fn c9_groebner() -> Criterion {
    run(9, "Groebner proofs", |r| {
        let suites = prove_all(&default_params());
        for suite in suites {
            let suite = suite.map_err(|e| e.to_string())?;
            let pair = format!("({},{})", suite.parameters.l1, suite.parameters.l2);
            let equal = suite.parameters.l1 == suite.parameters.l2;
            let unit = equal && suite.parameters.l1 == "1";
            let mut wanted = vec!["unit_speed", "kappa_x"];
            if unit {
                wanted.push("A_constant");
            }
            if equal {
                wanted.push("kappa_y1");
            } else {
                wanted.extend(["b_constant", "a_quadratic"]);
            }
            for claim in wanted {
                let Some(rep) = suite.report(claim) else {
                    r.error(&pair, format!("claim {claim} missing"));
                    continue;
                };
                r.bound(format!("{pair} {claim} remainder terms"), rep.remainder_terms.len() as f64, 0.0);
                r.bound(format!("{pair} {claim} seconds"), rep.elapsed, 180.0);
                r.bound(format!("{pair} {claim} nonzero samples"), rep.samples_nonzero as f64, 0.0);
                r.bound(format!("{pair} {claim} missing samples"), 50.0 - rep.samples_checked.min(50) as f64, 0.0);
                if !rep.proved() {
                    r.error(&pair, format!("{claim} failed"));
                }
            }
            let others = suite.reports.iter().filter(|x| !x.proved() && !x.claim.ends_with("as_printed")).count();
            r.bound(format!("{pair} other failed claims"), others as f64, 0.0);
        }
        Ok(())
    })
}

pub fn c10_lifting() -> Criterion {
    run(10, "lifted geodesics", |r| {
        for (l1, l2, q, p) in [
            (1.0, 2.0, ConfigPoint::new(0.0, 0.0, 0.7, -1.2), (0.3, 0.5)),
            (1.0, 1.0, ConfigPoint::new(1.0, 0.0, 2.0, 0.5), (-0.6, 0.1)),
            (1.5, 0.5, ConfigPoint::new(0.0, 0.0, -1.0, 1.0), (0.0, 0.8)),
        ] {
            let params = Params::new(l1, l2).map_err(|e| e.to_string())?;
            let s = lifted_state(q, p.0, p.1, &params).map_err(|e| e.to_string())?;
            let run = simulate_geodesic(&s, &params, 50.0, &IntegratorSpec::default(), 0.01, Formulation::Phase)
                .map_err(|e| e.to_string())?;
            r.bound(format!("({l1},{l2}) max|eta2|"), sup(run.states.iter().map(|s| s.eta2)), 1e-10);
            let k = sup(run.states.iter().zip(&run.jets).map(|(s, j)| j.kappa - s.eta1 / (l1 * l1)));
            r.bound(format!("({l1},{l2}) |kappa - eta1/l1^2|"), k, 1e-12);
        }
        Ok(())
    })
}

pub fn c11_filament() -> Criterion {
    run(11, "filament interpretation", |r| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 11);
        for p in [Params::unit(), Params::new(1.0, 2.0).map_err(|e| e.to_string())?, Params::new(0.7, 1.6).map_err(|e| e.to_string())?] {
            let mut worst: f64 = 0.0;
            for _ in 0..100 {
                let s = random_state(&mut rng, &p);
                worst = worst.max(filament_projection(&s, &p).map_err(|e| e.to_string())?.mismatch);
            }
            r.bound(format!("({},{}) |grad - (uT + vN)|", p.l1(), p.l2()), worst, 1e-8);
        }
        Ok(())
    })
}

/// All criteria in order; independent criteria run on separate threads.
pub fn run_all() -> Vec<Criterion> {
    let checks: [fn() -> Criterion; 11] = [
        c1_elastica,
        c2_conservation,
        c3_elastica_residual,
        c4_two_soliton,
        c5_singular,
        c6_backlund,
        c7_growth_vector,
        c8_poisson,
        c9_groebner,
        c10_lifting,
        c11_filament,
    ];
    std::thread::scope(|s| {
        let handles: Vec<_> = checks.iter().map(|f| s.spawn(f)).collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread panicked")).collect()
    })
}
