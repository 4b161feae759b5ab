use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{rat, Q};
use crate::tricycle::Tricycle;

/// Default number of exact evaluation points per claim.
pub const SAMPLE_COUNT: usize = 50;

/// `(cos, sin)` of the angle whose half-angle tangent is `t`.
pub fn pythagorean(t: &Q) -> (Q, Q) {
    let one = Q::one();
    let d = &one + t * t;
    ((&one - t * t) / &d, (t * rat(2, 1)) / &d)
}

/// Deterministic rational points on the unit-energy variety, in ring order
/// `(eta1, eta2, p1, p2, c1, c2, s1, s2, lambda)` with `lambda = b`.
///
/// Angles come from Pythagorean half-angle slopes, so every cosine and sine is
/// rational. The heading of `x'` is chosen the same way and the momentum is
/// solved from `x' = p - w(eta, alpha)`, which puts the point at `H = 1/2`.
pub fn variety_samples(t: &Tricycle, n: usize, seed: u64) -> Vec<Vec<Q>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut small = |lo: i64, hi: i64, den: i64| rat(rng.gen_range(lo..=hi), rng.gen_range(1..=den));
    let (l1, l2) = (&t.params.l1, &t.params.l2);
    let bpoly = t.bpoly();
    (0..n)
        .map(|_| {
            let (c1, s1) = pythagorean(&small(-7, 7, 5));
            let (c2, s2) = pythagorean(&small(-7, 7, 5));
            let (cg, sg) = pythagorean(&small(-7, 7, 5));
            let eta1 = small(-9, 9, 4);
            let eta2 = small(-9, 9, 4);
            let w1 = -(&eta1 * &s1 / l1) - &eta2 * &s2 / l2;
            let w2 = &eta1 * &c1 / l1 + &eta2 * &c2 / l2;
            let p1 = cg - w1;
            let p2 = sg - w2;
            let mut x = vec![eta1, eta2, p1, p2, c1, c2, s1, s2, Q::zero()];
            x[8] = bpoly.eval(&x);
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tricycle::ExactParams;

    #[test]
    fn samples_lie_on_the_variety() {
        let t = Tricycle::new(ExactParams::integers(2, 3).unwrap()).unwrap();
        let pts = variety_samples(&t, 20, 7);
        assert_eq!(pts, variety_samples(&t, 20, 7));
        for x in &pts {
            for g in t.generators() {
                assert!(g.eval(x).is_zero());
            }
        }
    }
}
