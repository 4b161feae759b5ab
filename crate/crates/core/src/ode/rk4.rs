use super::{check_finite, IntegratorSpec, RunOutput, Sampling, VectorField};
use crate::error::{Error, Result};

fn rk4_step<F: VectorField + ?Sized>(f: &F, t: f64, y: &[f64], k1: &[f64], h: f64, out: &mut [f64]) -> Result<()> {
    let n = y.len();
    let mut tmp = vec![0.0; n];
    let (mut k2, mut k3, mut k4) = (vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    for i in 0..n {
        tmp[i] = y[i] + 0.5 * h * k1[i];
    }
    f.eval(t + 0.5 * h, &tmp, &mut k2)?;
    for i in 0..n {
        tmp[i] = y[i] + 0.5 * h * k2[i];
    }
    f.eval(t + 0.5 * h, &tmp, &mut k3)?;
    for i in 0..n {
        tmp[i] = y[i] + h * k3[i];
    }
    f.eval(t + h, &tmp, &mut k4)?;
    for i in 0..n {
        out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    Ok(())
}

/// Cubic Hermite interpolation on `[t, t + h]` at fraction `s`.
fn hermite(y0: &[f64], f0: &[f64], y1: &[f64], f1: &[f64], h: f64, s: f64, out: &mut [f64]) {
    let s2 = s * s;
    let s3 = s2 * s;
    let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    let h10 = s3 - 2.0 * s2 + s;
    let h01 = -2.0 * s3 + 3.0 * s2;
    let h11 = s3 - s2;
    for i in 0..y0.len() {
        out[i] = h00 * y0[i] + h10 * h * f0[i] + h01 * y1[i] + h11 * h * f1[i];
    }
}

pub(super) fn run<F: VectorField + ?Sized>(
    f: &F,
    y0: &[f64],
    samples: &[f64],
    step: f64,
    spec: &IntegratorSpec,
) -> Result<RunOutput> {
    let n = y0.len();
    let t0 = samples[0];
    let t_end = *samples.last().expect("sample grid is never empty");
    let mut t = t0;
    let mut y = y0.to_vec();
    let mut f0 = vec![0.0; n];
    f.eval(t, &y, &mut f0)?;
    let mut y1 = vec![0.0; n];
    let mut f1 = vec![0.0; n];
    let mut out = vec![0.0; n];
    let mut states = vec![y.clone()];
    let mut next = 1usize;
    let mut steps = 0usize;
    // grid of nominal step boundaries t0 + j*step, computed without accumulation
    let mut j = 0usize;
    while next < samples.len() {
        if steps >= spec.max_steps {
            return Err(Error::MaxSteps(spec.max_steps));
        }
        let mut t_new = t0 + (j + 1) as f64 * step;
        let mut advance_grid = true;
        let limit = match spec.sampling {
            Sampling::StepToSamples => samples[next],
            Sampling::Interpolate => t_end,
        };
        if t_new >= limit - 1e-12 * limit.abs().max(1.0) {
            advance_grid = t_new <= limit + 1e-12 * limit.abs().max(1.0);
            t_new = limit;
        }
        let h = t_new - t;
        rk4_step(f, t, &y, &f0, h, &mut y1)?;
        check_finite(t_new, &y1)?;
        f.eval(t_new, &y1, &mut f1)?;
        steps += 1;
        while next < samples.len() && samples[next] <= t_new {
            if samples[next] == t_new {
                states.push(y1.clone());
            } else {
                hermite(&y, &f0, &y1, &f1, h, (samples[next] - t) / h, &mut out);
                states.push(out.clone());
            }
            next += 1;
        }
        if advance_grid {
            j += 1;
        }
        t = t_new;
        std::mem::swap(&mut y, &mut y1);
        std::mem::swap(&mut f0, &mut f1);
    }
    Ok(RunOutput { states, accepted: steps, rejected: 0 })
}
