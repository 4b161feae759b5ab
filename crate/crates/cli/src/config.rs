//! JSON run configuration and command-line overrides.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use num::{BigInt, BigRational, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use tricycle_core::curves::{circle_ic, inflectional_ic};
use tricycle_core::linkage::{unit_energy_state, ConfigPoint, Params, PhaseState};
use tricycle_core::ode::{IntegratorSpec, Sampling};

use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_K: f64 = 0.707;

/// A complete run description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema: u32,
    #[serde(default)]
    pub lengths: Lengths,
    #[serde(default)]
    pub initial: Initial,
    #[serde(default = "default_t_max")]
    pub t_max: f64,
    #[serde(default)]
    pub integrator: IntegratorConfig,
    #[serde(default)]
    pub outputs: Outputs,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
// missing keys fall back to the defaults
#[serde(default, deny_unknown_fields)]
pub struct Lengths {
    pub l1: f64,
    pub l2: f64,
}

impl Default for Lengths {
    fn default() -> Self {
        Self { l1: 1.0, l2: 1.0 }
    }
}

/// Initial phase state of a geodesic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Initial {
    /// All eight phase variables; nothing is normalized.
    State { x1: f64, x2: f64, alpha1: f64, alpha2: f64, p1: f64, p2: f64, eta1: f64, eta2: f64 },
    /// Configuration, linear momenta and front heading; the angular momenta are solved for `H = 1/2`.
    UnitEnergy {
        #[serde(default)]
        x1: f64,
        #[serde(default)]
        x2: f64,
        alpha1: f64,
        alpha2: f64,
        p1: f64,
        p2: f64,
        gamma: f64,
    },
    // a struct variant so that stray keys are rejected
    Circle {},
    Inflectional { k: f64 },
}

impl Default for Initial {
    fn default() -> Self {
        Initial::Inflectional { k: DEFAULT_K }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IntegratorConfig {
    /// Absolute and relative tolerance of the adaptive integrator.
    pub tol: f64,
    /// Output sample spacing.
    pub dt: f64,
    pub max_steps: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self { tol: 1e-10, dt: 0.01, max_steps: 50_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Outputs {
    /// Path prefix; files are `<prefix>.csv` and `<prefix>.svg`.
    pub prefix: String,
    pub csv: bool,
    pub svg: bool,
}

impl Default for Outputs {
    fn default() -> Self {
        Self { prefix: "run".into(), csv: true, svg: true }
    }
}

fn default_t_max() -> f64 {
    20.0
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            schema: SCHEMA_VERSION,
            lengths: Lengths::default(),
            initial: Initial::default(),
            t_max: default_t_max(),
            integrator: IntegratorConfig::default(),
            outputs: Outputs::default(),
        }
    }
}

/// Values given on the command line; each one replaces the configured value.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub example: Option<String>,
    pub k: Option<f64>,
    pub l1: Option<f64>,
    pub l2: Option<f64>,
    pub t_max: Option<f64>,
    pub dt: Option<f64>,
    pub tol: Option<f64>,
    pub out: Option<String>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    /// Loads `path` if given, otherwise starts from the defaults, then applies `o`.
    pub fn resolve(path: Option<&PathBuf>, o: &Overrides) -> Result<Self> {
        let mut cfg = match path {
            Some(p) => Self::load(p)?,
            None => Self::default(),
        };
        cfg.apply(o)?;
        Ok(cfg)
    }

    pub fn apply(&mut self, o: &Overrides) -> Result<()> {
        match o.example.as_deref() {
            None => {}
            Some("circle") => self.initial = Initial::Circle {},
            Some("inflectional") => self.initial = Initial::Inflectional { k: DEFAULT_K },
            Some(other) => return Err(CliError::Config(format!("unknown example {other:?}; expected circle or inflectional"))),
        }
        if let Some(k) = o.k {
            match (&mut self.initial, o.example.is_none()) {
                (Initial::Inflectional { k: kk }, _) => *kk = k,
                (_, true) => self.initial = Initial::Inflectional { k },
                _ => return Err(CliError::Config("--k only applies to the inflectional example".into())),
            }
        }
        if let Some(v) = o.l1 {
            self.lengths.l1 = v;
        }
        if let Some(v) = o.l2 {
            self.lengths.l2 = v;
        }
        let example = matches!(self.initial, Initial::Circle {} | Initial::Inflectional { .. });
        let unit = self.lengths.l1 == 1.0 && self.lengths.l2 == 1.0;
        if example && !unit && o.example.is_none() && o.k.is_none() {
            // the examples live on unit lengths; other lengths start from a generic state
            self.initial = Initial::UnitEnergy { x1: 0.0, x2: 0.0, alpha1: 0.3, alpha2: 2.0, p1: 0.4, p2: -0.2, gamma: 0.5 };
        }
        if let Some(v) = o.t_max {
            self.t_max = v;
        }
        if let Some(v) = o.dt {
            self.integrator.dt = v;
        }
        if let Some(v) = o.tol {
            self.integrator.tol = v;
        }
        if let Some(v) = &o.out {
            self.outputs.prefix = v.clone();
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(CliError::Config(m));
        if self.schema != SCHEMA_VERSION {
            return bad(format!("unsupported schema {} (expected {SCHEMA_VERSION})", self.schema));
        }
        for (name, v) in self.numbers() {
            if !v.is_finite() {
                return bad(format!("{name} must be finite, got {v}"));
            }
        }
        let Lengths { l1, l2 } = self.lengths;
        if l1 <= 0.0 || l2 <= 0.0 {
            return bad(format!("lengths must be positive, got ({l1}, {l2})"));
        }
        if self.t_max <= 0.0 {
            return bad(format!("t_max must be positive, got {}", self.t_max));
        }
        let IntegratorConfig { tol, dt, max_steps } = self.integrator;
        if tol <= 0.0 || dt <= 0.0 || max_steps == 0 {
            return bad("integrator tol, dt and max_steps must be positive".into());
        }
        if dt > self.t_max {
            return bad(format!("dt = {dt} exceeds t_max = {}", self.t_max));
        }
        if let Initial::Inflectional { k } = self.initial {
            if !(k > 0.0 && k < 1.0) {
                return bad(format!("modulus k must lie in (0, 1), got {k}"));
            }
        }
        if matches!(self.initial, Initial::Circle {} | Initial::Inflectional { .. }) && (l1 != 1.0 || l2 != 1.0) {
            return bad("the circle and inflectional examples need unit lengths".into());
        }
        if self.outputs.prefix.is_empty() {
            return bad("output prefix is empty".into());
        }
        Ok(())
    }

    fn numbers(&self) -> Vec<(&'static str, f64)> {
        let mut v = vec![
            ("lengths.l1", self.lengths.l1),
            ("lengths.l2", self.lengths.l2),
            ("t_max", self.t_max),
            ("integrator.tol", self.integrator.tol),
            ("integrator.dt", self.integrator.dt),
        ];
        match self.initial {
            Initial::State { x1, x2, alpha1, alpha2, p1, p2, eta1, eta2 } => v.extend([
                ("initial.x1", x1),
                ("initial.x2", x2),
                ("initial.alpha1", alpha1),
                ("initial.alpha2", alpha2),
                ("initial.p1", p1),
                ("initial.p2", p2),
                ("initial.eta1", eta1),
                ("initial.eta2", eta2),
            ]),
            Initial::UnitEnergy { x1, x2, alpha1, alpha2, p1, p2, gamma } => v.extend([
                ("initial.x1", x1),
                ("initial.x2", x2),
                ("initial.alpha1", alpha1),
                ("initial.alpha2", alpha2),
                ("initial.p1", p1),
                ("initial.p2", p2),
                ("initial.gamma", gamma),
            ]),
            Initial::Circle {} => {}
            Initial::Inflectional { k } => v.push(("initial.k", k)),
        }
        v
    }

    pub fn params(&self) -> Result<Params> {
        Params::new(self.lengths.l1, self.lengths.l2).map_err(|e| CliError::Config(e.to_string()))
    }

    /// The initial state; it is not checked to lie on `H = 1/2`.
    pub fn initial_state(&self) -> Result<PhaseState> {
        let params = self.params()?;
        let s = match self.initial {
            Initial::State { x1, x2, alpha1, alpha2, p1, p2, eta1, eta2 } => {
                PhaseState::new(ConfigPoint::new(x1, x2, alpha1, alpha2), p1, p2, eta1, eta2)
            }
            Initial::UnitEnergy { x1, x2, alpha1, alpha2, p1, p2, gamma } => {
                unit_energy_state(ConfigPoint::new(x1, x2, alpha1, alpha2), p1, p2, gamma, &params)?
            }
            Initial::Circle {} => circle_ic(),
            Initial::Inflectional { k } => inflectional_ic(k)?,
        };
        Ok(s)
    }

    /// Adaptive integrator stepping onto the sample grid, as finite differences need.
    pub fn spec(&self) -> IntegratorSpec {
        IntegratorSpec::adaptive(self.integrator.tol)
            .with_sampling(Sampling::StepToSamples)
            .with_max_steps(self.integrator.max_steps)
    }

    pub fn csv_path(&self) -> PathBuf {
        PathBuf::from(format!("{}.csv", self.outputs.prefix))
    }

    pub fn svg_path(&self) -> PathBuf {
        PathBuf::from(format!("{}.svg", self.outputs.prefix))
    }
}

/// Exact rational from `7`, `-3/4` or `1.25`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let err = || CliError::Config(format!("malformed rational {s:?}"));
    let int = |t: &str| -> Result<BigInt> {
        let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        BigInt::from_str(t.strip_prefix('+').unwrap_or(t)).map_err(|_| err())
    };
    if let Some((n, d)) = s.split_once('/') {
        let d = int(d)?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(int(n)?, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = whole.starts_with('-');
        let whole = if whole.is_empty() || whole == "-" || whole == "+" { BigInt::zero() } else { int(whole)? };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac = BigInt::from_str(frac).map_err(|_| err())?;
        let mag = BigRational::new(whole.magnitude().clone().into(), BigInt::from(1)) + BigRational::new(frac, scale);
        return Ok(if negative { -mag } else { mag });
    }
    Ok(BigRational::from_integer(int(s)?))
}

/// A length given as a rational (`1/2`) or a decimal (`0.5`, `5e-1`).
pub fn parse_length(s: &str) -> Result<f64> {
    let v = match parse_rational(s) {
        Ok(q) => q.to_f64().ok_or_else(|| CliError::Config(format!("length {s:?} is out of range")))?,
        Err(_) => s.trim().parse::<f64>().map_err(|_| CliError::Config(format!("malformed length {s:?}")))?,
    };
    if !(v.is_finite() && v > 0.0) {
        return Err(CliError::Config(format!("length must be positive and finite, got {s:?}")));
    }
    Ok(v)
}

/// Length pairs for the prover.
///
/// Items are separated by commas. `a/b` is the pair `(a, b)` of integers;
/// `x:y` pairs two rationals, so `1/2:3` is `(1/2, 3)`.
pub fn parse_length_pairs(s: &str) -> Result<Vec<(BigRational, BigRational)>> {
    let mut out = Vec::new();
    for item in s.split(',') {
        let item = item.trim();
        let pair = if let Some((a, b)) = item.split_once(':') {
            (parse_rational(a)?, parse_rational(b)?)
        } else if let Some((a, b)) = item.split_once('/') {
            let q = |t: &str| -> Result<BigRational> {
                let t = t.trim();
                if t.contains(['.', '/']) {
                    return Err(CliError::Config(format!("malformed length pair {item:?}")));
                }
                parse_rational(t)
            };
            (q(a)?, q(b)?)
        } else {
            return Err(CliError::Config(format!("malformed length pair {item:?}; expected a/b or x:y")));
        };
        if pair.0 <= BigRational::zero() || pair.1 <= BigRational::zero() {
            return Err(CliError::Config(format!("lengths must be positive in {item:?}")));
        }
        out.push(pair);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        let cfg = RunConfig::default();
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(RunConfig::from_json(&text).unwrap(), cfg);
        assert_eq!(RunConfig::from_json(r#"{"schema": 1}"#).unwrap(), cfg);
        let partial = RunConfig::from_json(r#"{"schema": 1, "integrator": {"tol": 1e-8}, "outputs": {"svg": false}}"#).unwrap();
        assert_eq!(partial.integrator.dt, cfg.integrator.dt);
        assert_eq!(partial.outputs.prefix, "run");
    }

    #[test]
    fn rejects_unknown_keys_and_versions() {
        assert!(RunConfig::from_json(r#"{"schema": 1, "colour": "red"}"#).is_err());
        assert!(RunConfig::from_json(r#"{"schema": 1, "initial": {"kind": "circle", "r": 2}}"#).is_err());
        assert!(RunConfig::from_json(r#"{"schema": 2}"#).is_err());
        assert!(RunConfig::from_json(r#"{"lengths": {"l1": 1, "l2": 1}}"#).is_err());
        assert!(RunConfig::from_json(r#"{"schema": 1, "t_max": 1e400}"#).is_err());
        assert!(RunConfig::from_json(r#"{"schema": 1, "lengths": {"l1": 1, "l2": 2}}"#).is_err());
    }

    #[test]
    fn explicit_states_parse() {
        let cfg = RunConfig::from_json(
            r#"{"schema": 1, "lengths": {"l1": 1, "l2": 2},
                "initial": {"kind": "unit_energy", "alpha1": 0.3, "alpha2": 2.0, "p1": 0.4, "p2": -0.2, "gamma": 0.5}}"#,
        )
        .unwrap();
        let s = cfg.initial_state().unwrap();
        let h = tricycle_core::linkage::hamiltonian(&s, &cfg.params().unwrap());
        assert!((h - 0.5).abs() < 1e-12);
    }

    #[test]
    fn overrides_replace_values() {
        let mut cfg = RunConfig::default();
        let o = Overrides { example: Some("circle".into()), t_max: Some(3.0), out: Some("x/y".into()), ..Default::default() };
        cfg.apply(&o).unwrap();
        assert_eq!(cfg.initial, Initial::Circle {});
        assert_eq!(cfg.svg_path(), PathBuf::from("x/y.svg"));
        let o = Overrides { k: Some(0.3), ..Default::default() };
        cfg.apply(&o).unwrap();
        assert_eq!(cfg.initial, Initial::Inflectional { k: 0.3 });
        assert!(cfg.apply(&Overrides { example: Some("spiral".into()), ..Default::default() }).is_err());
        // unequal lengths leave the unit-length examples behind
        cfg.apply(&Overrides { l2: Some(2.0), ..Default::default() }).unwrap();
        assert!(matches!(cfg.initial, Initial::UnitEnergy { .. }));
        let mut cfg = RunConfig::default();
        assert!(cfg.apply(&Overrides { l2: Some(2.0), example: Some("circle".into()), ..Default::default() }).is_err());
    }

    #[test]
    fn rationals() {
        let q = |s: &str| parse_rational(s).unwrap();
        assert_eq!(q("3"), BigRational::from_integer(3.into()));
        assert_eq!(q("-3/4"), BigRational::new((-3).into(), 4.into()));
        assert_eq!(q("1.25"), BigRational::new(5.into(), 4.into()));
        assert_eq!(q("-0.5"), BigRational::new((-1).into(), 2.into()));
        for bad in ["", "1/0", "a", "1/2/3", "1.", "1.x", "--1"] {
            assert!(parse_rational(bad).is_err(), "{bad:?}");
        }
        assert_eq!(parse_length("1/2").unwrap(), 0.5);
        assert_eq!(parse_length("2.5e-1").unwrap(), 0.25);
        assert!(parse_length("-1").is_err() && parse_length("0").is_err());
    }

    #[test]
    fn length_pairs() {
        let p = parse_length_pairs("1/1, 1/2,1/2:3").unwrap();
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(p, vec![(r(1, 1), r(1, 1)), (r(1, 1), r(2, 1)), (r(1, 2), r(3, 1))]);
        for bad in ["1", "1/x", "0/1", "1/2/3", "", "1.5/2"] {
            assert!(parse_length_pairs(bad).is_err(), "{bad:?}");
        }
    }
}
