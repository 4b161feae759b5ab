//! Finite-difference derivatives on uniform grids.

/// Fornberg weights for derivatives `0..=m` at `x0` from nodes `xs`.
///
/// Returns `w[d][j]`, the weight of node `j` for the `d`-th derivative.
pub fn fornberg_weights(x0: f64, xs: &[f64], m: usize) -> Vec<Vec<f64>> {
    let n = xs.len();
    let mut c = vec![vec![0.0; n]; m + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = xs[0] - x0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// Default accuracy order of [`derivative`].
pub const DEFAULT_ACCURACY: usize = 4;

fn central_width(order: usize, accuracy: usize) -> usize {
    // centred stencils gain one order for even derivatives
    2 * order.div_ceil(2) - 1 + accuracy
}

/// Stencil `(start, weights)` for derivative `order` at index `i` of an `n`-point grid with unit spacing.
fn stencil(i: usize, n: usize, order: usize, accuracy: usize) -> (usize, Vec<f64>) {
    let cw = central_width(order, accuracy);
    let half = cw / 2;
    let (start, width) = if i >= half && i + half < n { (i - half, cw) } else {
        let w = (order + accuracy).min(n);
        let s = i.saturating_sub(w / 2).min(n - w);
        (s, w)
    };
    let xs: Vec<f64> = (start..start + width).map(|j| j as f64 - i as f64).collect();
    let w = fornberg_weights(0.0, &xs, order);
    (start, w[order].clone())
}

/// Derivative of order 1..=4 of uniformly sampled data with spacing `dt`, fourth-order accurate.
pub fn derivative(y: &[f64], dt: f64, order: usize) -> Vec<f64> {
    derivative_with(y, dt, order, DEFAULT_ACCURACY)
}

/// Derivative of order 1..=4 with truncation error `O(dt^accuracy)`; `accuracy` must be even.
///
/// Interior points use centred stencils; the first and last few points use
/// one-sided stencils of `order + accuracy` nodes.
pub fn derivative_with(y: &[f64], dt: f64, order: usize, accuracy: usize) -> Vec<f64> {
    assert!((1..=4).contains(&order), "derivative order must be 1..=4");
    assert!(accuracy >= 2 && accuracy.is_multiple_of(2), "accuracy must be even and positive");
    let n = y.len();
    assert!(n >= central_width(order, accuracy).max(order + accuracy), "too few samples for the stencil");
    let scale = dt.powi(order as i32);
    let (_, central) = stencil(n / 2, n, order, accuracy);
    let half = central_width(order, accuracy) / 2;
    (0..n)
        .map(|i| {
            let (start, w) = if i >= half && i + half < n { (i - half, central.clone()) } else { stencil(i, n, order, accuracy) };
            // weights sum to zero; differencing against y[i] keeps the terms small
            w.iter().enumerate().map(|(j, wj)| wj * (y[start + j] - y[i])).sum::<f64>() / scale
        })
        .collect()
}

/// Smallest sample count accepted by [`derivative_with`].
pub fn min_samples(order: usize, accuracy: usize) -> usize {
    central_width(order, accuracy).max(order + accuracy)
}
