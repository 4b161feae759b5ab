use nalgebra::{DMatrix, DVector};

use super::CurvatureSeries;
use crate::error::{Error, Result};

/// Pointwise residual of `k'' + k^3/2 + A k` and the first-integral constant.
#[derive(Debug, Clone, PartialEq)]
pub struct ElasticaResidual {
    pub residual: Vec<f64>,
    pub sup: f64,
    /// Mean of `-(k'^2 + k^4/4 + A k^2)`, the best constant `B`.
    pub b: f64,
    /// Largest deviation of the pointwise `B` from its mean.
    pub b_variation: f64,
}

fn col(cs: &CurvatureSeries, i: usize) -> Result<&[f64]> {
    cs.d(i).ok_or_else(|| Error::Invalid(format!("curvature series lacks derivative {i}")))
}

fn sup(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Elastica residual `k'' + k^3/2 + A k` for the given `A`.
pub fn elastica_residual(cs: &CurvatureSeries, a: f64) -> Result<ElasticaResidual> {
    let (k, k1, k2) = (col(cs, 0)?, col(cs, 1)?, col(cs, 2)?);
    let residual: Vec<f64> = k.iter().zip(k2).map(|(k, k2)| k2 + 0.5 * k * k * k + a * k).collect();
    let bs: Vec<f64> = k.iter().zip(k1).map(|(k, k1)| { let k2 = k * k; -(k1 * k1 + 0.25 * k2 * k2 + a * k2) }).collect();
    let b = bs.iter().sum::<f64>() / bs.len().max(1) as f64;
    let b_variation = bs.iter().fold(0.0, |m: f64, x| m.max((x - b).abs()));
    Ok(ElasticaResidual { sup: sup(&residual), residual, b, b_variation })
}

/// Pointwise residual of the fourth-order 2-soliton equation.
#[derive(Debug, Clone, PartialEq)]
pub struct SolitonResidual {
    pub residual: Vec<f64>,
    pub sup: f64,
}

/// `E4 = (5/2) k^2 k'' + (5/2) k k'^2 + (3/8) k^5 + k''''`.
fn e4(k: f64, k1: f64, k2: f64, k4: f64) -> f64 {
    2.5 * k * k * k2 + 2.5 * k * k1 * k1 + 0.375 * k.powi(5) + k4
}

/// `a k + b (-k'' - k^3/2) + E4`.
pub fn soliton2_residual(cs: &CurvatureSeries, a: f64, b: f64) -> Result<SolitonResidual> {
    let (k, k1, k2, k4) = (col(cs, 0)?, col(cs, 1)?, col(cs, 2)?, col(cs, 4)?);
    let residual: Vec<f64> = (0..k.len())
        .map(|i| a * k[i] + b * (-k2[i] - 0.5 * k[i].powi(3)) + e4(k[i], k1[i], k2[i], k4[i]))
        .collect();
    Ok(SolitonResidual { sup: sup(&residual), residual })
}

/// Least-squares constants of the 2-soliton equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolitonFit {
    pub a: f64,
    pub b: f64,
    /// Sup norm of the residual at the fitted constants.
    pub sup: f64,
    pub rms: f64,
}

/// Fits `(a, b)` so that the 2-soliton residual is smallest in the least-squares sense.
pub fn fit_soliton_ab(cs: &CurvatureSeries) -> Result<SolitonFit> {
    let (k, k1, k2, k4) = (col(cs, 0)?, col(cs, 1)?, col(cs, 2)?, col(cs, 4)?);
    let n = k.len();
    if n < 10 {
        return Err(Error::Invalid("need at least ten samples to fit".into()));
    }
    let m = DMatrix::from_fn(n, 2, |i, j| if j == 0 { k[i] } else { -k2[i] - 0.5 * k[i].powi(3) });
    let rhs = DVector::from_fn(n, |i, _| -e4(k[i], k1[i], k2[i], k4[i]));
    let svd = m.svd(true, true);
    let (smax, smin) = (svd.singular_values.max(), svd.singular_values.min());
    if !(smax > 0.0) || smin <= 1e-10 * smax {
        return Err(Error::Unfittable);
    }
    let x = svd.solve(&rhs, 0.0).map_err(|_| Error::Unfittable)?;
    let (a, b) = (x[0], x[1]);
    let r = soliton2_residual(cs, a, b)?;
    let rms = (r.residual.iter().map(|v| v * v).sum::<f64>() / n as f64).sqrt();
    Ok(SolitonFit { a, b, sup: r.sup, rms })
}
