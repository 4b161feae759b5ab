//! The bicycle (Bäcklund) correspondence between unit-speed plane curves.
//!
//! A segment of length `L` is attached to the curve at angle `beta` from its
//! tangent; the free end traces `c + L (cos(beta) T + sin(beta) N)`, with `N`
//! the left normal. The free end moves at unit speed exactly when
//! `beta' = -k + s 2 sin(beta) / L` for the right sign `s`, and then its
//! curvature is `-k + s 4 sin(beta) / L`.

use crate::curves::{frenet_fd, CurvatureSeries, PlanarCurve};
use crate::error::{Error, Result};
use crate::ode::{integrate, IntegratorSpec, Sampling, VectorField};

/// Agreement required between the closed-form and finite-difference output curvature.
pub const KAPPA_AGREEMENT_TOL: f64 = 1e-6;
/// Largest speed deviation accepted before the other sign is tried.
pub const SIGN_SPEED_TOL: f64 = 1e-6;

/// Sign in front of `2 sin(beta) / L` in the steering equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BetaSign {
    Plus,
    Minus,
}

impl BetaSign {
    pub fn value(self) -> f64 {
        match self {
            BetaSign::Plus => 1.0,
            BetaSign::Minus => -1.0,
        }
    }

    pub fn other(self) -> Self {
        match self {
            BetaSign::Plus => BetaSign::Minus,
            BetaSign::Minus => BetaSign::Plus,
        }
    }
}

/// `beta' = -k + s 2 sin(beta) / L`.
pub fn beta_rate(kappa: f64, beta: f64, l: f64, sign: BetaSign) -> f64 {
    -kappa + sign.value() * 2.0 * beta.sin() / l
}

/// Steering equation driven by a curvature function of time.
pub struct BetaField<K> {
    pub kappa: K,
    pub l: f64,
    pub sign: BetaSign,
}

/// Builds the steering field; `l` must be positive.
pub fn beta_field<K: Fn(f64) -> f64>(kappa: K, l: f64, sign: BetaSign) -> Result<BetaField<K>> {
    if !(l > 0.0 && l.is_finite()) {
        return Err(Error::Invalid(format!("segment length must be positive, got {l}")));
    }
    Ok(BetaField { kappa, l, sign })
}

impl<K: Fn(f64) -> f64> VectorField for BetaField<K> {
    fn dim(&self) -> usize {
        1
    }

    fn name(&self) -> &str {
        "steering"
    }

    fn eval(&self, t: f64, y: &[f64], dy: &mut [f64]) -> Result<()> {
        dy[0] = beta_rate((self.kappa)(t), y[0], self.l, self.sign);
        Ok(())
    }
}

/// Constants `(c1, c2)` of the 2-soliton equation satisfied by the transform of an elastica `(A, B)`.
pub fn soliton_constants_from_elastica(a: f64, b: f64, l: f64) -> (f64, f64) {
    let l2 = l * l;
    (-b / 2.0 - 4.0 * a / l2, -a + 4.0 / l2)
}

/// Output of [`backlund_transform`].
#[derive(Debug, Clone, PartialEq)]
pub struct BacklundResult {
    pub beta: Vec<f64>,
    pub curve_out: PlanarCurve,
    /// Closed-form curvature of the output with as many derivatives as the input series.
    pub kappa_out: CurvatureSeries,
    /// Curvature of the output by finite differences of its points.
    pub kappa_out_fd: Vec<f64>,
    pub l: f64,
    pub sign: BetaSign,
    pub speed_deviation: f64,
    /// `max |closed form - finite differences|` of the output curvature.
    pub kappa_agreement: f64,
}

/// Cubic Hermite interpolant of uniformly sampled values and slopes.
struct Hermite<'a> {
    t0: f64,
    dt: f64,
    y: &'a [f64],
    dy: Vec<f64>,
}

impl Hermite<'_> {
    fn eval(&self, t: f64) -> f64 {
        let n = self.y.len();
        let u = (t - self.t0) / self.dt;
        let i = (u.floor().max(0.0) as usize).min(n - 2);
        let s = u - i as f64;
        let (h00, h10, h01, h11) = (
            (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s),
            s * (1.0 - s) * (1.0 - s),
            s * s * (3.0 - 2.0 * s),
            s * s * (s - 1.0),
        );
        h00 * self.y[i] + h10 * self.dt * self.dy[i] + h01 * self.y[i + 1] + h11 * self.dt * self.dy[i + 1]
    }
}

/// Derivatives of `sin(u)` from the derivatives of `u` (Leibniz recursion).
fn sin_jet(u: &[f64]) -> Vec<f64> {
    let n = u.len();
    let (mut s, mut c) = (vec![0.0; n], vec![0.0; n]);
    (s[0], c[0]) = u[0].sin_cos();
    for m in 0..n - 1 {
        let (mut ds, mut dc) = (0.0, 0.0);
        let mut binom = 1.0;
        for j in 0..=m {
            ds += binom * c[j] * u[m + 1 - j];
            dc -= binom * s[j] * u[m + 1 - j];
            binom = binom * (m - j) as f64 / (j + 1) as f64;
        }
        s[m + 1] = ds;
        c[m + 1] = dc;
    }
    s
}

/// Applies the bicycle correspondence with segment `l` and initial angle `beta0` to a unit-speed curve.
///
/// `cs` must share the sample grid of `curve`. With `sign = None` the plus sign
/// is tried first and the minus sign if the output is not unit speed.
pub fn backlund_transform(
    curve: &PlanarCurve,
    cs: &CurvatureSeries,
    l: f64,
    beta0: f64,
    sign: Option<BetaSign>,
    spec: &IntegratorSpec,
) -> Result<BacklundResult> {
    if !(l > 0.0 && l.is_finite()) {
        return Err(Error::Invalid(format!("segment length must be positive, got {l}")));
    }
    if cs.t.len() != curve.len() || (cs.dt() - curve.dt).abs() > 1e-12 * curve.dt {
        return Err(Error::Invalid("curvature series and curve have different grids".into()));
    }
    let frame = frenet_fd(curve)?;
    match sign {
        Some(s) => transform_with(curve, cs, &frame.tangent, l, beta0, s, spec),
        None => match transform_with(curve, cs, &frame.tangent, l, beta0, BetaSign::Plus, spec) {
            Err(Error::NotUnitSpeed(_)) => transform_with(curve, cs, &frame.tangent, l, beta0, BetaSign::Minus, spec),
            r => r,
        },
    }
}

fn transform_with(
    curve: &PlanarCurve,
    cs: &CurvatureSeries,
    tangent: &[[f64; 2]],
    l: f64,
    beta0: f64,
    sign: BetaSign,
    spec: &IntegratorSpec,
) -> Result<BacklundResult> {
    let k = cs.kappa();
    let dk = match cs.d(1) {
        Some(d) => d.to_vec(),
        None => crate::curves::fd::derivative(k, cs.dt(), 1),
    };
    let interp = Hermite { t0: cs.t[0], dt: cs.dt(), y: k, dy: dk };
    let field = beta_field(|t| interp.eval(t), l, sign)?;
    let (t0, t1) = (cs.t[0], *cs.t.last().expect("series is not empty"));
    let spec = spec.with_sampling(Sampling::StepToSamples);
    let beta: Vec<f64> = integrate(&field, &[beta0], (t0, t1), &spec, cs.dt())?.component(0);

    let points = curve
        .points
        .iter()
        .zip(tangent)
        .zip(&beta)
        .map(|((p, t), b)| {
            let (sb, cb) = b.sin_cos();
            [p[0] + l * (cb * t[0] - sb * t[1]), p[1] + l * (cb * t[1] + sb * t[0])]
        })
        .collect();
    let curve_out = PlanarCurve::new(points, curve.dt, true)?;
    let speed_deviation = curve_out.speed_deviation();
    if speed_deviation > SIGN_SPEED_TOL {
        return Err(Error::NotUnitSpeed(speed_deviation));
    }

    let s = sign.value();
    let order = cs.cols.len();
    let mut cols = vec![Vec::with_capacity(k.len()); order];
    for i in 0..k.len() {
        // beta^(m+1) = -k^(m) + (2s/L) sin(beta)^(m)
        let mut bj = vec![beta[i]];
        for m in 0..order - 1 {
            let sj = sin_jet(&bj);
            bj.push(-cs.cols[m][i] + 2.0 * s / l * sj[m]);
        }
        let sj = sin_jet(&bj);
        for m in 0..order {
            cols[m].push(-cs.cols[m][i] + 4.0 * s / l * sj[m]);
        }
    }
    let kappa_out = CurvatureSeries::from_columns(cs.t.clone(), cols)?;
    let kappa_out_fd = frenet_fd(&curve_out)?.kappa;
    let kappa_agreement = kappa_out.kappa().iter().zip(&kappa_out_fd).fold(0.0, |m: f64, (a, b)| m.max((a - b).abs()));
    if kappa_agreement > KAPPA_AGREEMENT_TOL {
        return Err(Error::Invalid(format!("closed-form and finite-difference curvature differ by {kappa_agreement:e}")));
    }
    Ok(BacklundResult { beta, curve_out, kappa_out, kappa_out_fd, l, sign, speed_deviation, kappa_agreement })
}
