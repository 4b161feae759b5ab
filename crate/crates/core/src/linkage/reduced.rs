use super::ReducedState;
use crate::error::{Error, Result};

/// Unit equal-length flow in the reduced variables `(a1, a2, gamma)`.
pub fn reduced_field(r: &ReducedState, p1: f64, p2: f64) -> Result<ReducedState> {
    let den = ((r.alpha2 - r.alpha1) / 2.0).cos();
    if den.abs() < super::DEGENERACY_TOL {
        return Err(Error::Degenerate(format!("cos((a2 - a1)/2) = {den:e}")));
    }
    let mid = (r.alpha1 + r.alpha2) / 2.0;
    let (sm, cm) = mid.sin_cos();
    Ok(ReducedState {
        alpha1: (r.gamma - r.alpha1).sin(),
        alpha2: (r.gamma - r.alpha2).sin(),
        gamma: ((r.gamma - mid).sin() + p1 * sm - p2 * cm) / den,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    #[test]
    fn substitution_example() {
        let d = reduced_field(&ReducedState { alpha1: 0.0, alpha2: FRAC_PI_2, gamma: FRAC_PI_4 }, 0.0, 0.0).unwrap();
        let h = FRAC_PI_4.sin();
        assert!((d.alpha1 - h).abs() < 1e-15 && (d.alpha2 + h).abs() < 1e-15 && d.gamma.abs() < 1e-15);
    }

    #[test]
    fn circle_branch_turns_at_unit_rate() {
        for a1 in [-1.0, 0.2, 2.5] {
            let g = 0.7;
            let d = reduced_field(&ReducedState { alpha1: a1, alpha2: g - FRAC_PI_2, gamma: g }, 0.0, 0.0).unwrap();
            assert!((d.alpha2 - 1.0).abs() < 1e-14 && (d.gamma - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn aligned_configuration() {
        let g = 1.1;
        let d = reduced_field(&ReducedState { alpha1: g, alpha2: g, gamma: g }, 0.3, -0.4).unwrap();
        assert_eq!((d.alpha1, d.alpha2), (0.0, 0.0));
        assert!((d.gamma - (0.3 * g.sin() + 0.4 * g.cos())).abs() < 1e-15);
    }

    #[test]
    fn opposite_segments_are_singular() {
        let r = ReducedState { alpha1: 0.0, alpha2: PI, gamma: 0.0 };
        assert!(matches!(reduced_field(&r, 0.0, 0.0), Err(Error::Degenerate(_))));
    }
}
