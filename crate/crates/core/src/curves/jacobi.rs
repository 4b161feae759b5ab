use crate::error::{Error, Result};

const MAX_AGM: usize = 12;

/// Jacobi `cn(t, k)` for modulus `k` in `[0, 1]` by the descending Landen (AGM) scheme.
pub fn jacobi_cn(t: f64, k: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&k) {
        return Err(Error::Modulus(k));
    }
    if k == 0.0 {
        return Ok(t.cos());
    }
    if k == 1.0 {
        return Ok(1.0 / t.cosh());
    }
    let m = k * k;
    let mut a = [0.0; MAX_AGM + 1];
    let mut c = [0.0; MAX_AGM + 1];
    a[0] = 1.0;
    let mut b = (1.0 - m).sqrt();
    c[0] = k;
    let mut n = 0;
    while n < MAX_AGM && c[n].abs() > f64::EPSILON * a[n] {
        let (an, bn) = (a[n], b);
        a[n + 1] = 0.5 * (an + bn);
        b = (an * bn).sqrt();
        c[n + 1] = 0.5 * (an - bn);
        n += 1;
    }
    let mut phi = 2f64.powi(n as i32) * a[n] * t;
    for j in (1..=n).rev() {
        phi = 0.5 * (phi + (c[j] * phi.sin() / a[j]).asin());
    }
    Ok(phi.cos())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_at_zero() {
        for k in [0.0, 0.3, 0.707, 0.99, 1.0] {
            assert_eq!(jacobi_cn(0.0, k).unwrap(), 1.0);
        }
    }

    #[test]
    fn degenerate_moduli() {
        for t in [-3.0, 0.5, 7.0] {
            assert_eq!(jacobi_cn(t, 0.0).unwrap(), t.cos());
            assert_eq!(jacobi_cn(t, 1.0).unwrap(), 1.0 / t.cosh());
        }
    }

    #[test]
    fn rejects_bad_modulus() {
        assert!(jacobi_cn(1.0, 1.5).is_err());
        assert!(jacobi_cn(1.0, -0.1).is_err());
    }
}
