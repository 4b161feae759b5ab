//! The five commands. Each returns a JSON report and whether every check passed.

use std::path::PathBuf;

use serde_json::{json, Value};
use tricycle_algebra::proofs::{default_params, prove_all};
use tricycle_algebra::ExactParams;
use tricycle_core::backlund::{backlund_transform, soliton_constants_from_elastica, BacklundResult};
use tricycle_core::curves::{
    elastica_residual, fit_soliton_ab, frenet_fd, inflectional_ic, soliton2_residual, CurvatureSeries, PlanarCurve,
    UNIT_SPEED_TOL,
};
use tricycle_core::linkage::*;
use tricycle_core::sim::{simulate_geodesic, simulate_singular, Formulation, GeodesicRun, SingularRun};

use crate::checks;
use crate::config::{parse_length_pairs, RunConfig};
use crate::error::{CliError, Result};
use crate::svg::{render, Series, PALETTE};
use crate::table::{write_atomic, Table};

/// Machine-readable outcome of a command.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub passed: bool,
}

impl Report {
    fn new(json: Value, passed: bool) -> Self {
        Self { json, passed }
    }
}

pub const TRAJECTORY_COLUMNS: [&str; 13] =
    ["t", "x1", "x2", "alpha1", "alpha2", "p1", "p2", "eta1", "eta2", "kappa_x", "H", "G_or_b", "a"];

pub const SINGULAR_COLUMNS: [&str; 7] = ["t", "x1", "x2", "alpha1", "alpha2", "kappa_x", "A"];

pub const BACKLUND_COLUMNS: [&str; 6] = ["t", "x", "y", "beta", "kappa", "kappa_fd"];

const TRACKS: [Track; 5] = [Track::X, Track::M1, Track::M2, Track::Y1, Track::Y2];

fn integrator(e: tricycle_core::Error) -> CliError {
    CliError::Integrator(e)
}

/// Rejects initial states the geodesic integrator cannot start from.
fn check_start(s: &PhaseState, params: &Params) -> Result<()> {
    let h = hamiltonian(s, params);
    if (h - 0.5).abs() > UNIT_ENERGY_TOL {
        return Err(CliError::Config(format!("initial state has H = {h}, not 1/2")));
    }
    if s.q.is_degenerate_for(params) {
        return Err(CliError::Config("initial configuration has m1 = m2".into()));
    }
    Ok(())
}

fn geodesic(cfg: &RunConfig) -> Result<GeodesicRun> {
    let params = cfg.params()?;
    let s = cfg.initial_state()?;
    check_start(&s, &params)?;
    simulate_geodesic(&s, &params, cfg.t_max, &cfg.spec(), cfg.integrator.dt, Formulation::auto(&params)).map_err(integrator)
}

/// One row per sample with the state, the front curvature and the first integrals.
pub fn trajectory_table(run: &GeodesicRun) -> Table {
    let mut t = Table::new(&TRAJECTORY_COLUMNS);
    for (i, (time, s)) in run.times.iter().zip(&run.states).enumerate() {
        let c = run.conserved(i);
        let g_or_b = if run.params.is_unit() { c.g.unwrap_or(f64::NAN) } else { c.b };
        let mut row = vec![*time];
        row.extend(s.to_array());
        row.extend([run.jets[i].kappa, c.h, g_or_b, c.a]);
        t.push(row);
    }
    t
}

fn track_series<F: Fn(Track) -> Option<Vec<[f64; 2]>>>(points: F) -> Vec<Series> {
    TRACKS
        .iter()
        .zip(PALETTE)
        .filter_map(|(t, c)| points(*t).map(|p| Series::new(t.name(), c, p)))
        .collect()
}

fn write_outputs(cfg: &RunConfig, table: &Table, title: &str, series: &[Series]) -> Result<Vec<String>> {
    let mut files = Vec::new();
    if cfg.outputs.csv {
        let p = cfg.csv_path();
        table.write(&p)?;
        files.push(p.display().to_string());
    }
    if cfg.outputs.svg {
        let p = cfg.svg_path();
        write_atomic(&p, render(title, series).as_bytes())?;
        files.push(p.display().to_string());
    }
    Ok(files)
}

fn lengths_json(p: &Params) -> Value {
    json!({ "l1": p.l1(), "l2": p.l2() })
}

fn closure_json(run: &GeodesicRun) -> Value {
    match run.closure_gap() {
        Some(g) => json!({ "x": g.x, "m1": g.m1, "m2": g.m2, "y1": g.y1, "y2": g.y2, "heading": g.heading }),
        None => Value::Null,
    }
}

pub fn simulate(cfg: &RunConfig) -> Result<Report> {
    let run = geodesic(cfg)?;
    let table = trajectory_table(&run);
    let series = track_series(|t| run.track(t).ok().map(|c| c.points));
    let files = write_outputs(cfg, &table, "tricycle geodesic", &series)?;
    Ok(Report::new(
        json!({
            "command": "simulate",
            "lengths": lengths_json(&run.params),
            "formulation": run.formulation.name(),
            "samples": run.len(),
            "accepted_steps": run.meta.accepted_steps,
            "rejected_steps": run.meta.rejected_steps,
            "closure_gap": closure_json(&run),
            "files": files,
        }),
        true,
    ))
}

pub fn singular_table(run: &SingularRun) -> Table {
    let a = singular_elastica_a(&run.params);
    let mut t = Table::new(&SINGULAR_COLUMNS);
    for (time, q) in run.times.iter().zip(&run.configs) {
        t.push(vec![*time, q.x1, q.x2, q.alpha1, q.alpha2, singular_curvature(q, &run.params), a]);
    }
    t
}

pub fn singular(cfg: &RunConfig) -> Result<Report> {
    let params = cfg.params()?;
    let q0 = cfg.initial_state()?.q;
    if q0.is_degenerate_for(&params) {
        return Err(CliError::Config("initial configuration has m1 = m2".into()));
    }
    // equal-length singular flows bring the rear wheels together exponentially,
    // so a long enough run ends on the excluded locus
    let run = simulate_singular(&q0, &params, cfg.t_max, &cfg.spec(), cfg.integrator.dt).map_err(integrator)?;
    let table = singular_table(&run);
    let series = track_series(|t| match t {
        Track::X | Track::M1 | Track::M2 => run.track(t).ok().map(|c| c.points),
        _ => None,
    });
    let files = write_outputs(cfg, &table, "singular curve", &series)?;
    let a = singular_elastica_a(&params);
    let mut out = json!({
        "command": "singular",
        "lengths": lengths_json(&params),
        "A": a,
        "samples": run.len(),
        "files": files,
    });
    if params.is_equal() {
        let [line, angle, mirror] = checks::equal_singular_deviations(&run.configs, &params);
        out["collinear"] = json!(line <= 1e-10);
        out["collinearity_deviation"] = json!(line);
        out["angle_sum_drift"] = json!(angle);
        out["mirror_deviation"] = json!(mirror);
    } else {
        let x = run.track(Track::X)?;
        let closed = table.column("kappa_x").expect("column exists");
        let fd = frenet_fd(&x)?;
        let cs = CurvatureSeries::from_columns(run.times.clone(), vec![closed.clone()])?.extend_fd_with(2, 6)?;
        out["collinear"] = json!(false);
        out["speed_deviation"] = json!(x.speed_deviation());
        out["curvature_fd_deviation"] = json!(max_abs_diff(&fd.kappa, &closed));
        out["elastica_residual"] = json!(elastica_residual(&cs, a)?.sup);
    }
    Ok(Report::new(out, true))
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

/// Source curve for the bicycle transformation.
#[derive(Debug, Clone, PartialEq)]
pub enum BacklundInput {
    /// CSV with columns `t` and `x`, `y` (or `x1`, `x2`), uniformly spaced in `t`.
    Csv(PathBuf),
    /// Front track of the inflectional elastica of modulus `k`.
    Elastica { k: f64 },
    Line,
    Circle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BacklundArgs {
    pub input: BacklundInput,
    pub l: f64,
    /// Initial steering angle; each input has its own default.
    pub beta0: Option<f64>,
    pub t_max: f64,
    pub dt: f64,
    pub tol: f64,
    pub prefix: String,
}

struct Source {
    curve: PlanarCurve,
    cs: CurvatureSeries,
    /// Elastica constants `(A, B)` when known.
    elastica: Option<(f64, f64)>,
}

fn grid(n: usize, dt: f64) -> Vec<f64> {
    (0..n).map(|i| i as f64 * dt).collect()
}

fn load_source(args: &BacklundArgs) -> Result<Source> {
    let n = (args.t_max / args.dt).round() as usize + 1;
    match &args.input {
        BacklundInput::Csv(path) => {
            let t = Table::read(path)?;
            let col = |a: &str, b: &str| t.column(a).or_else(|| t.column(b));
            let (Some(time), Some(x), Some(y)) = (t.column("t"), col("x", "x1"), col("y", "x2")) else {
                return Err(CliError::Config(format!("{} needs columns t, x, y", path.display())));
            };
            if time.len() < 10 {
                return Err(CliError::Config("input curve has fewer than 10 samples".into()));
            }
            let dt = time[1] - time[0];
            if !(dt > 0.0) || time.windows(2).any(|w| ((w[1] - w[0]) - dt).abs() > 1e-9 * dt.max(1.0)) {
                return Err(CliError::Config("input samples must be uniformly spaced in t".into()));
            }
            let curve = PlanarCurve::new(x.iter().zip(&y).map(|(a, b)| [*a, *b]).collect(), dt, true)?;
            let dev = curve.speed_deviation();
            if dev > UNIT_SPEED_TOL {
                return Err(CliError::UnitSpeed(format!("input curve speed deviates from 1 by {dev:e}")));
            }
            let kappa = frenet_fd(&curve)?.kappa;
            let t0 = time[0];
            let cs = CurvatureSeries::from_kappa(time.iter().map(|s| s - t0).collect(), kappa, 4)?;
            Ok(Source { curve, cs, elastica: None })
        }
        BacklundInput::Elastica { k } => {
            let s = inflectional_ic(*k)?;
            let spec = tricycle_core::ode::IntegratorSpec::adaptive(args.tol)
                .with_sampling(tricycle_core::ode::Sampling::StepToSamples);
            let run = simulate_geodesic(&s, &Params::unit(), args.t_max, &spec, args.dt, Formulation::Tangent).map_err(integrator)?;
            let curve = run.track(Track::X)?;
            let cs = run.curvature_series(Track::X, 4)?;
            let ab = elastica_constants(&run.states[0], &Params::unit())?;
            Ok(Source { curve, cs, elastica: Some(ab) })
        }
        BacklundInput::Line => {
            let t = grid(n, args.dt);
            let half = 0.5 * args.t_max;
            let curve = PlanarCurve::new(t.iter().map(|s| [s - half, 0.0]).collect(), args.dt, true)?;
            let cs = CurvatureSeries::from_columns(t, vec![vec![0.0; n]; 5])?;
            // the line is the elastica with A = B = 0
            Ok(Source { curve, cs, elastica: Some((0.0, 0.0)) })
        }
        BacklundInput::Circle => {
            let t = grid(n, args.dt);
            let curve = PlanarCurve::new(t.iter().map(|s| [s.sin(), 1.0 - s.cos()]).collect(), args.dt, true)?;
            let mut cols = vec![vec![0.0; n]; 5];
            cols[0] = vec![1.0; n];
            Ok(Source { curve, cs: CurvatureSeries::from_columns(t, cols)?, elastica: None })
        }
    }
}

fn default_beta0(input: &BacklundInput, l: f64) -> f64 {
    match input {
        // the rest point sin(beta) = L/2 keeps the circle a circle
        BacklundInput::Circle if l <= 2.0 => (0.5 * l).asin(),
        BacklundInput::Line => 0.3,
        _ => 1.0,
    }
}

pub fn backlund_table(src_t: &[f64], r: &BacklundResult) -> Table {
    let mut t = Table::new(&BACKLUND_COLUMNS);
    for i in 0..src_t.len() {
        let p = r.curve_out.points[i];
        t.push(vec![src_t[i], p[0], p[1], r.beta[i], r.kappa_out.kappa()[i], r.kappa_out_fd[i]]);
    }
    t
}

pub fn backlund(args: &BacklundArgs) -> Result<Report> {
    if !(args.l > 0.0 && args.l.is_finite()) {
        return Err(CliError::Config(format!("L must be positive, got {}", args.l)));
    }
    if !(args.dt > 0.0 && args.t_max > args.dt && args.tol > 0.0) {
        return Err(CliError::Config("need 0 < dt < t_max and tol > 0".into()));
    }
    let src = load_source(args)?;
    let beta0 = args.beta0.unwrap_or_else(|| default_beta0(&args.input, args.l));
    let spec = tricycle_core::ode::IntegratorSpec::adaptive(args.tol);
    let r = backlund_transform(&src.curve, &src.cs, args.l, beta0, None, &spec).map_err(|e| match e {
        tricycle_core::Error::MaxSteps(_) | tricycle_core::Error::StepUnderflow(_) => integrator(e),
        e => CliError::from(e),
    })?;
    let table = backlund_table(&src.cs.t, &r);
    let csv = PathBuf::from(format!("{}.csv", args.prefix));
    let svg = PathBuf::from(format!("{}.svg", args.prefix));
    table.write(&csv)?;
    let series =
        [Series::new("input", PALETTE[0], src.curve.points.clone()), Series::new("transformed", PALETTE[1], r.curve_out.points.clone())];
    write_atomic(&svg, render("bicycle transformation", &series).as_bytes())?;

    let kappa = r.kappa_out.kappa();
    let mut out = json!({
        "command": "backlund",
        "L": args.l,
        "beta0": beta0,
        "sign": r.sign.value(),
        "samples": kappa.len(),
        "speed_deviation": r.speed_deviation,
        "kappa_agreement": r.kappa_agreement,
        "kappa_range": [kappa.iter().cloned().fold(f64::INFINITY, f64::min), kappa.iter().cloned().fold(f64::NEG_INFINITY, f64::max)],
        "files": [csv.display().to_string(), svg.display().to_string()],
    });
    match src.elastica {
        Some((a, b)) => {
            let (c1, c2) = soliton_constants_from_elastica(a, b, args.l);
            out["elastica"] = json!({ "A": a, "B": b });
            out["soliton"] = json!({ "c1": c1, "c2": c2, "residual": soliton2_residual(&r.kappa_out, c1, c2)?.sup });
        }
        None => {
            out["soliton_fit"] = match fit_soliton_ab(&r.kappa_out) {
                Ok(f) => json!({ "a": f.a, "b": f.b, "residual": f.sup }),
                Err(e) => json!({ "error": e.to_string() }),
            };
        }
    }
    match args.input {
        BacklundInput::Line => {
            // Euler soliton: kappa = (4/L) sech(2t/L + ln tan(beta0/2)) about the line's start
            let shift = (0.5 * beta0).tan().abs().ln();
            let dev = src
                .cs
                .t
                .iter()
                .zip(kappa)
                .map(|(t, k)| (k.abs() - 4.0 / args.l / (2.0 * t / args.l + shift).cosh()).abs())
                .fold(0.0, f64::max);
            out["euler_soliton_deviation"] = json!(dev);
        }
        BacklundInput::Circle => {
            let dev = kappa.iter().map(|k| (k.abs() - 1.0).abs()).fold(0.0, f64::max);
            out["circle_curvature_deviation"] = json!(dev);
        }
        _ => {}
    }
    Ok(Report::new(out, true))
}

/// One named invariant of a trajectory.
fn check(name: &str, value: f64, bound: f64) -> Value {
    let value_ok = value <= bound;
    json!({ "name": name, "value": if value.is_finite() { json!(value) } else { json!(value.to_string()) }, "bound": bound, "passed": value_ok })
}

fn drift(v: &[f64]) -> f64 {
    let scale = v[0].abs().max(1e-3);
    v.iter().map(|x| (x - v[0]).abs() / scale).fold(0.0, |m, x| if x.is_nan() { f64::INFINITY } else { m.max(x) })
}

/// Bound on relative drift of the first integrals, proportional to the tolerance.
fn drift_bound(tol: f64) -> f64 {
    (1e3 * tol).max(1e-9)
}

pub fn verify(cfg: &RunConfig, acceptance: bool) -> Result<Report> {
    let params = cfg.params()?;
    let s0 = cfg.initial_state()?;
    let h0 = hamiltonian(&s0, &params);
    let mut results = vec![check("unit_energy", (h0 - 0.5).abs(), UNIT_ENERGY_TOL)];
    let mut out = json!({ "command": "verify", "lengths": lengths_json(&params) });
    if results[0]["passed"] == json!(true) {
        if s0.q.is_degenerate_for(&params) {
            return Err(CliError::Config("initial configuration has m1 = m2".into()));
        }
        let run = simulate_geodesic(&s0, &params, cfg.t_max, &cfg.spec(), cfg.integrator.dt, Formulation::auto(&params))
            .map_err(integrator)?;
        results.extend(trajectory_checks(&run, cfg.integrator.tol)?);
        out["formulation"] = json!(run.formulation.name());
        out["samples"] = json!(run.len());
        out["closure_gap"] = closure_json(&run);
        if !params.is_equal() {
            out["soliton_fit"] = soliton_fit(&run)?;
        }
    }
    let mut passed = results.iter().all(|c| c["passed"] == json!(true));
    out["checks"] = Value::Array(results);
    if acceptance {
        let crit = checks::run_all();
        passed &= crit.iter().all(|c| c.passed);
        out["acceptance"] = serde_json::to_value(&crit).expect("criteria serialize");
    }
    out["passed"] = json!(passed);
    Ok(Report::new(out, passed))
}

fn trajectory_checks(run: &GeodesicRun, tol: f64) -> Result<Vec<Value>> {
    let p = run.params;
    let c: Vec<ConservedSet> = (0..run.len()).map(|i| run.conserved(i)).collect();
    let col = |f: fn(&ConservedSet) -> f64| c.iter().map(f).collect::<Vec<f64>>();
    let bound = drift_bound(tol);
    let mut out = vec![
        check("H_drift", drift(&col(|c| c.h)), bound),
        check("p1_drift", drift(&col(|c| c.p1)), bound),
        check("p2_drift", drift(&col(|c| c.p2)), bound),
    ];
    if p.is_unit() {
        out.push(check("G_drift", drift(&col(|c| c.g.unwrap_or(f64::NAN))), bound));
    } else {
        out.push(check("b_drift", drift(&col(|c| c.b)), bound));
        out.push(check("a_drift", drift(&col(|c| c.a)), bound));
    }
    for t in [Track::X, Track::Y1, Track::Y2] {
        out.push(check(&format!("{}_unit_speed", t.name()), run.track(t)?.speed_deviation(), UNIT_SPEED_TOL));
    }
    let filament = run
        .states
        .iter()
        .step_by(10)
        .map(|s| filament_projection(s, &p).map(|f| f.mismatch))
        .collect::<std::result::Result<Vec<f64>, _>>()?;
    out.push(check("filament_identity", filament.iter().cloned().fold(0.0, f64::max), 1e-8));
    if p.is_unit() {
        let (a, _) = elastica_constants(&run.states[0], &p)?;
        let res = run.jets.iter().map(|j| (j.kappa_ddot + 0.5 * j.kappa.powi(3) + a * j.kappa).abs()).fold(0.0, f64::max);
        out.push(check("elastica_residual", res, drift_bound(tol)));
    }
    Ok(out)
}

fn soliton_fit(run: &GeodesicRun) -> Result<Value> {
    let c = run.conserved(0);
    let mut tracks = serde_json::Map::new();
    for t in [Track::X, Track::Y1, Track::Y2] {
        let v = match run.curvature_series(t, 4).and_then(|cs| fit_soliton_ab(&cs)) {
            Ok(f) => json!({ "a": f.a, "b": f.b, "a_error": (f.a - c.a).abs(), "b_error": (f.b - c.b).abs(), "residual": f.sup }),
            Err(e) => json!({ "error": e.to_string() }),
        };
        tracks.insert(t.name().to_string(), v);
    }
    Ok(json!({ "conserved": { "a": c.a, "b": c.b }, "tracks": tracks }))
}

pub fn prove(lengths: Option<&str>) -> Result<Report> {
    let params = match lengths {
        None => default_params(),
        Some(s) => parse_length_pairs(s)?
            .into_iter()
            .map(|(a, b)| ExactParams::new(a, b).map_err(|e| CliError::Config(e.to_string())))
            .collect::<Result<Vec<_>>>()?,
    };
    let mut suites = Vec::new();
    let mut passed = true;
    for (p, r) in params.iter().zip(prove_all(&params)) {
        match r {
            Ok(s) => {
                passed &= s.all_proved();
                suites.push(serde_json::to_value(&s).expect("suites serialize"));
            }
            Err(e) => {
                passed = false;
                suites.push(json!({ "parameters": { "l1": p.l1.to_string(), "l2": p.l2.to_string() }, "error": e.to_string() }));
            }
        }
    }
    Ok(Report::new(json!({ "command": "prove", "suites": suites, "all_proved": passed }), passed))
}
