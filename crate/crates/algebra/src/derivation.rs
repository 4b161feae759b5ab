use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::groebner::GroebnerBasis;
use crate::poly::MultiPoly;
use crate::ring::Ring;

/// A derivation of the polynomial ring, fixed by the image of each variable.
#[derive(Debug, Clone)]
pub struct Derivation {
    ring: Arc<Ring>,
    images: Vec<MultiPoly>,
}

impl Derivation {
    pub fn new(ring: &Arc<Ring>, images: Vec<MultiPoly>) -> Result<Self> {
        if images.len() != ring.nvars() {
            return Err(AlgebraError::Ring(format!("{} images for {} variables", images.len(), ring.nvars())));
        }
        if let Some(bad) = images.iter().find(|p| p.ring() != ring) {
            return Err(AlgebraError::RingMismatch(ring.to_string(), bad.ring().to_string()));
        }
        Ok(Self { ring: ring.clone(), images })
    }

    pub fn image(&self, var: usize) -> &MultiPoly {
        &self.images[var]
    }

    /// `D(f) = sum_i (df/dv_i) D(v_i)`.
    pub fn apply(&self, f: &MultiPoly) -> MultiPoly {
        assert!(f.ring() == &self.ring, "derivation applied across rings");
        let mut out = MultiPoly::zero(&self.ring);
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let d = f.partial(i);
            if !d.is_zero() {
                out = out + d * img;
            }
        }
        out
    }
}

/// `D(p)` as a polynomial.
pub fn derive(p: &MultiPoly, d: &Derivation) -> MultiPoly {
    d.apply(p)
}

/// Whether `p` is a first integral: `D(p)` lies in the ideal of `gb`.
pub fn verify_constant(p: &MultiPoly, gb: &GroebnerBasis, d: &Derivation) -> bool {
    gb.contains(&d.apply(p))
}
