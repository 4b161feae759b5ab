use nalgebra::DMatrix;

use super::{ConfigPoint, Params};

/// Horizontal frame `(v1, v2)` in coordinates `(x1, x2, a1, a2)`.
pub fn horizontal_frame(q: &ConfigPoint, params: &Params) -> ([f64; 4], [f64; 4]) {
    let (l1, l2) = (params.l1(), params.l2());
    let (s1, c1) = q.alpha1.sin_cos();
    let (s2, c2) = q.alpha2.sin_cos();
    ([1.0, 0.0, -s1 / l1, -s2 / l2], [0.0, 1.0, c1 / l1, c2 / l2])
}

/// `v1, v2, [v1,v2], [[v1,v2],v1], [[v1,v2],v2]` from their closed forms.
pub fn bracket_frame(q: &ConfigPoint, params: &Params) -> [[f64; 4]; 5] {
    let (l1, l2) = (params.l1(), params.l2());
    let (s1, c1) = q.alpha1.sin_cos();
    let (s2, c2) = q.alpha2.sin_cos();
    let (v1, v2) = horizontal_frame(q, params);
    [
        v1,
        v2,
        [0.0, 0.0, 1.0 / (l1 * l1), 1.0 / (l2 * l2)],
        [0.0, 0.0, -c1 / l1.powi(3), -c2 / l2.powi(3)],
        [0.0, 0.0, -s1 / l1.powi(3), -s2 / l2.powi(3)],
    ]
}

fn numerical_rank(cols: &[[f64; 4]], tol: f64) -> usize {
    let m = DMatrix::from_fn(4, cols.len(), |i, j| cols[j][i]);
    let sv = m.singular_values();
    let smax = sv.max();
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * smax).count()
}

/// Ranks of the first, second and third steps of the bracket flag.
///
/// Singular values below `tol` times the largest one count as zero.
pub fn growth_vector(q: &ConfigPoint, params: &Params, tol: f64) -> (usize, usize, usize) {
    let f = bracket_frame(q, params);
    (numerical_rank(&f[..2], tol), numerical_rank(&f[..3], tol), numerical_rank(&f, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn close(a: &[f64; 4], b: &[f64; 4]) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-15)
    }

    #[test]
    fn frame_at_right_angle_unequal() {
        let p = Params::new(1.0, 2.0).unwrap();
        let (v1, v2) = horizontal_frame(&ConfigPoint::new(0.0, 0.0, 0.0, FRAC_PI_2), &p);
        assert!(close(&v1, &[1.0, 0.0, 0.0, -0.5]));
        assert!(close(&v2, &[0.0, 1.0, 1.0, 0.0]));
    }

    #[test]
    fn frame_at_parallel_unit() {
        let (v1, v2) = horizontal_frame(&ConfigPoint::default(), &Params::unit());
        assert!(close(&v1, &[1.0, 0.0, 0.0, 0.0]));
        assert!(close(&v2, &[0.0, 1.0, 1.0, 1.0]));
    }

    #[test]
    fn frame_at_reversed_first_link() {
        let p = Params::new(2.0, 1.0).unwrap();
        let (v1, v2) = horizontal_frame(&ConfigPoint::new(0.0, 0.0, PI, FRAC_PI_2), &p);
        assert!(close(&v1, &[1.0, 0.0, 0.0, -1.0]));
        assert!(close(&v2, &[0.0, 1.0, -0.5, 0.0]));
    }

    #[test]
    fn growth_vector_cases() {
        let tol = 1e-9;
        let unequal = Params::new(1.0, 2.0).unwrap();
        assert_eq!(growth_vector(&ConfigPoint::new(0.0, 0.0, 0.3, 0.3), &unequal, tol), (2, 3, 4));
        let q = ConfigPoint::new(0.0, 0.0, 0.0, FRAC_PI_2);
        assert_eq!(growth_vector(&q, &Params::unit(), tol), (2, 3, 4));
        assert_eq!(growth_vector(&ConfigPoint::default(), &Params::unit(), tol), (2, 3, 3));
    }
}
