use super::{check_finite, IntegratorSpec, RunOutput, Sampling, VectorField};
use crate::error::{Error, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
// continuous extension
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

const SAFETY: f64 = 0.9;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;

struct Work {
    k: [Vec<f64>; 7],
    tmp: Vec<f64>,
    y_new: Vec<f64>,
    err: Vec<f64>,
}

fn scale(y0: f64, y1: f64, rtol: f64, atol: f64) -> f64 {
    atol + rtol * y0.abs().max(y1.abs())
}

fn initial_step<F: VectorField + ?Sized>(f: &F, t: f64, y: &[f64], f0: &[f64], rtol: f64, atol: f64, span: f64) -> Result<f64> {
    let n = y.len() as f64;
    let mut d0 = 0.0;
    let mut d1 = 0.0;
    for i in 0..y.len() {
        let sc = atol + rtol * y[i].abs();
        d0 += (y[i] / sc).powi(2);
        d1 += (f0[i] / sc).powi(2);
    }
    let (d0, d1) = ((d0 / n).sqrt(), (d1 / n).sqrt());
    let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    let h0 = h0.min(span);
    let y1: Vec<f64> = y.iter().zip(f0).map(|(a, b)| a + h0 * b).collect();
    let mut f1 = vec![0.0; y.len()];
    f.eval(t + h0, &y1, &mut f1)?;
    let mut d2 = 0.0;
    for i in 0..y.len() {
        let sc = atol + rtol * y[i].abs();
        d2 += ((f1[i] - f0[i]) / sc).powi(2);
    }
    let d2 = (d2 / n).sqrt() / h0;
    let h1 = if d1.max(d2) <= 1e-15 { (h0 * 1e-3).max(1e-6) } else { (0.01 / d1.max(d2)).powf(0.2) };
    Ok((100.0 * h0).min(h1).min(span))
}

/// One Dormand–Prince step from `(t, y)` with `k[0] = f(t, y)`; fills `w.y_new`, `w.k[6]` and `w.err`.
fn step<F: VectorField + ?Sized>(f: &F, t: f64, y: &[f64], h: f64, w: &mut Work) -> Result<()> {
    let n = y.len();
    let Work { k, tmp, y_new, err } = w;
    let [k1, k2, k3, k4, k5, k6, k7] = k;
    for i in 0..n {
        tmp[i] = y[i] + h * A21 * k1[i];
    }
    f.eval(t + C2 * h, tmp, k2)?;
    for i in 0..n {
        tmp[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
    }
    f.eval(t + C3 * h, tmp, k3)?;
    for i in 0..n {
        tmp[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
    }
    f.eval(t + C4 * h, tmp, k4)?;
    for i in 0..n {
        tmp[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
    }
    f.eval(t + C5 * h, tmp, k5)?;
    for i in 0..n {
        tmp[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
    }
    f.eval(t + h, tmp, k6)?;
    for i in 0..n {
        y_new[i] = y[i] + h * (A71 * k1[i] + A73 * k3[i] + A74 * k4[i] + A75 * k5[i] + A76 * k6[i]);
    }
    f.eval(t + h, y_new, k7)?;
    for i in 0..n {
        err[i] = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
    }
    Ok(())
}

/// Dense output at `theta` in `[0, 1]` of the last accepted step.
fn dense(y0: &[f64], y1: &[f64], k: &[Vec<f64>; 7], h: f64, theta: f64, out: &mut [f64]) {
    let th1 = 1.0 - theta;
    for i in 0..y0.len() {
        let ydiff = y1[i] - y0[i];
        let bspl = h * k[0][i] - ydiff;
        let r4 = ydiff - h * k[6][i] - bspl;
        let r5 = h * (D1 * k[0][i] + D3 * k[2][i] + D4 * k[3][i] + D5 * k[4][i] + D6 * k[5][i] + D7 * k[6][i]);
        out[i] = y0[i] + theta * (ydiff + th1 * (bspl + theta * (r4 + th1 * r5)));
    }
}

pub(super) fn run<F: VectorField + ?Sized>(
    f: &F,
    y0: &[f64],
    samples: &[f64],
    rtol: f64,
    atol: f64,
    spec: &IntegratorSpec,
) -> Result<RunOutput> {
    let n = y0.len();
    let t_end = *samples.last().expect("sample grid is never empty");
    let mut t = samples[0];
    let mut y = y0.to_vec();
    let mut w = Work {
        k: std::array::from_fn(|_| vec![0.0; n]),
        tmp: vec![0.0; n],
        y_new: vec![0.0; n],
        err: vec![0.0; n],
    };
    f.eval(t, &y, &mut w.k[0])?;
    let mut h = initial_step(f, t, &y, &w.k[0].clone(), rtol, atol, t_end - t)?;
    let mut states = Vec::with_capacity(samples.len());
    states.push(y.clone());
    let mut next = 1usize;
    let (mut accepted, mut rejected) = (0usize, 0usize);
    let mut last_rejected = false;
    let mut out = vec![0.0; n];

    while next < samples.len() {
        if accepted + rejected >= spec.max_steps {
            return Err(Error::MaxSteps(spec.max_steps));
        }
        let limit = match spec.sampling {
            Sampling::StepToSamples => samples[next],
            Sampling::Interpolate => t_end,
        };
        let mut h_try = h;
        let clipped = t + h_try >= limit - 1e-12 * limit.abs().max(1.0);
        if clipped {
            h_try = limit - t;
        }
        if h_try <= 1e-14 * t.abs().max(1.0) {
            return Err(Error::StepUnderflow(t));
        }
        step(f, t, &y, h_try, &mut w)?;
        let mut e = 0.0;
        for i in 0..n {
            e += (w.err[i] / scale(y[i], w.y_new[i], rtol, atol)).powi(2);
        }
        let e = (e / n as f64).sqrt();
        if !e.is_finite() {
            rejected += 1;
            h = h_try * FAC_MIN;
            last_rejected = true;
            continue;
        }
        let fac_max = if last_rejected { 1.0 } else { FAC_MAX };
        let fac = if e == 0.0 { fac_max } else { (SAFETY * e.powf(-0.2)).clamp(FAC_MIN, fac_max) };
        if e <= 1.0 {
            accepted += 1;
            let t_new = if clipped { limit } else { t + h_try };
            check_finite(t_new, &w.y_new)?;
            // emit samples inside (t, t_new]
            while next < samples.len() && samples[next] <= t_new {
                if samples[next] == t_new {
                    states.push(w.y_new.clone());
                } else {
                    let theta = (samples[next] - t) / h_try;
                    dense(&y, &w.y_new, &w.k, h_try, theta, &mut out);
                    states.push(out.clone());
                }
                next += 1;
            }
            t = t_new;
            std::mem::swap(&mut y, &mut w.y_new);
            w.k.swap(0, 6);
            // a clipped step keeps the proposed size for the next one
            h = if clipped { h.max(h_try * fac) } else { h_try * fac };
            last_rejected = false;
        } else {
            rejected += 1;
            h = h_try * fac;
            last_rejected = true;
        }
    }
    Ok(RunOutput { states, accepted, rejected })
}
