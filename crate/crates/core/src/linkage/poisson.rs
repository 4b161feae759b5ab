use super::PhaseState;

/// Default central-difference step for [`poisson_bracket`].
pub const DEFAULT_FD_STEP: f64 = 1e-5;

// (coordinate, conjugate momentum) index pairs in `PhaseState::to_array` order
const PAIRS: [(usize, usize); 4] = [(0, 4), (1, 5), (2, 6), (3, 7)];

fn partial<F: Fn(&PhaseState) -> f64>(f: &F, y: &[f64; 8], i: usize, h: f64) -> f64 {
    let mut plus = *y;
    let mut minus = *y;
    plus[i] += h;
    minus[i] -= h;
    (f(&PhaseState::from_slice(&plus)) - f(&PhaseState::from_slice(&minus))) / (2.0 * h)
}

/// Canonical bracket `{f, g}` with partial derivatives by central differences of step `h`.
pub fn poisson_bracket<F, G>(f: F, g: G, s: &PhaseState, h: f64) -> f64
where
    F: Fn(&PhaseState) -> f64,
    G: Fn(&PhaseState) -> f64,
{
    let y = s.to_array();
    PAIRS
        .iter()
        .map(|&(q, p)| partial(&f, &y, q, h) * partial(&g, &y, p, h) - partial(&f, &y, p, h) * partial(&g, &y, q, h))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkage::{hamiltonian, ConfigPoint, Params};

    fn sample() -> PhaseState {
        PhaseState::new(ConfigPoint::new(0.2, -0.3, 0.5, 1.7), 0.4, -0.1, 0.8, -0.6)
    }

    #[test]
    fn canonical_pair() {
        let b = poisson_bracket(|s| s.q.x1, |s| s.p1, &sample(), DEFAULT_FD_STEP);
        assert!((b - 1.0).abs() < 1e-9);
    }

    #[test]
    fn hamiltonian_commutes_with_linear_momentum() {
        let p = Params::unit();
        let b = poisson_bracket(|s| hamiltonian(s, &p), |s| s.p1, &sample(), DEFAULT_FD_STEP);
        assert!(b.abs() < 1e-9);
    }
}
