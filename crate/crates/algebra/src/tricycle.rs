//! The tricycle ring: momenta, cosines and sines of the link angles, and the
//! polynomial forms of the Hamiltonian, its flow and its first integrals.

use std::sync::Arc;

use num::{One, Signed};

use crate::derivation::Derivation;
use crate::error::{AlgebraError, Result};
use crate::groebner::{buchberger, GroebnerBasis};
use crate::poly::{rat, MultiPoly, Q};
use crate::ring::{MonomialOrder, Ring};

/// Variable order of the ring; `Lambda` stands for the value of `b` and is
/// used only by the ideal `I2 = I + (bpoly - lambda)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    Eta1 = 0,
    Eta2,
    P1,
    P2,
    C1,
    C2,
    S1,
    S2,
    Lambda,
}

pub const VAR_NAMES: [&str; 9] = ["eta1", "eta2", "p1", "p2", "c1", "c2", "s1", "s2", "lambda"];

/// Swaps the two links: `(c1, s1, eta1) <-> (c2, s2, eta2)`.
pub const LINK_SWAP: [usize; 9] = [1, 0, 2, 3, 5, 4, 7, 6, 8];

/// Segment lengths as exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactParams {
    pub l1: Q,
    pub l2: Q,
}

impl ExactParams {
    pub fn new(l1: Q, l2: Q) -> Result<Self> {
        if !l1.is_positive() || !l2.is_positive() {
            return Err(AlgebraError::Params(format!("lengths must be positive, got ({l1}, {l2})")));
        }
        Ok(Self { l1, l2 })
    }

    pub fn from_ratios(l1: (i64, i64), l2: (i64, i64)) -> Result<Self> {
        if l1.1 == 0 || l2.1 == 0 {
            return Err(AlgebraError::Params("zero denominator".into()));
        }
        Self::new(rat(l1.0, l1.1), rat(l2.0, l2.1))
    }

    pub fn integers(l1: i64, l2: i64) -> Result<Self> {
        Self::from_ratios((l1, 1), (l2, 1))
    }

    pub fn is_equal(&self) -> bool {
        self.l1 == self.l2
    }

    pub fn swapped(&self) -> Self {
        Self { l1: self.l2.clone(), l2: self.l1.clone() }
    }
}

impl std::fmt::Display for ExactParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.l1, self.l2)
    }
}

/// Polynomial model of the linkage at fixed lengths.
#[derive(Debug, Clone)]
pub struct Tricycle {
    pub params: ExactParams,
    ring: Arc<Ring>,
    derivation: Derivation,
    gb: GroebnerBasis,
}

impl Tricycle {
    /// Builds the ring, the flow and the Gröbner basis of
    /// `PB = {H - 1/2, c1^2 + s1^2 - 1, c2^2 + s2^2 - 1}`.
    pub fn new(params: ExactParams) -> Result<Self> {
        let ring = Arc::new(Ring::new(&VAR_NAMES, MonomialOrder::GrevLex)?);
        let mut t = Self {
            derivation: Derivation::new(&ring, vec![MultiPoly::zero(&ring); VAR_NAMES.len()])?,
            gb: GroebnerBasis::empty(&ring),
            params,
            ring,
        };
        t.derivation = t.flow()?;
        t.gb = buchberger(&t.generators())?;
        Ok(t)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn derivation(&self) -> &Derivation {
        &self.derivation
    }

    pub fn basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn v(&self, v: Var) -> MultiPoly {
        MultiPoly::var(&self.ring, v as usize)
    }

    pub fn c(&self, q: Q) -> MultiPoly {
        MultiPoly::constant(&self.ring, q)
    }

    pub fn int(&self, n: i64) -> MultiPoly {
        self.c(rat(n, 1))
    }

    fn inv_l1(&self) -> Q {
        self.params.l1.recip()
    }

    fn inv_l2(&self) -> Q {
        self.params.l2.recip()
    }

    pub fn reduce(&self, p: &MultiPoly) -> MultiPoly {
        self.gb.reduce(p)
    }

    pub fn derive(&self, p: &MultiPoly) -> MultiPoly {
        self.derivation.apply(p)
    }

    /// Generators of the ideal `I` of the unit-energy variety.
    pub fn generators(&self) -> Vec<MultiPoly> {
        use Var::*;
        let one = self.int(1);
        vec![
            self.hpoly() - self.c(rat(1, 2)),
            self.v(C1).pow(2) + self.v(S1).pow(2) - one.clone(),
            self.v(C2).pow(2) + self.v(S2).pow(2) - one,
        ]
    }

    /// Velocity of the front point, `(L1, L2)`.
    pub fn x_dot(&self) -> [MultiPoly; 2] {
        use Var::*;
        let (a, b) = (self.inv_l1(), self.inv_l2());
        let l1 = self.v(P1) - (self.v(Eta1) * self.v(S1)).scale(&a) - (self.v(Eta2) * self.v(S2)).scale(&b);
        let l2 = self.v(P2) + (self.v(Eta1) * self.v(C1)).scale(&a) + (self.v(Eta2) * self.v(C2)).scale(&b);
        [l1, l2]
    }

    pub fn hpoly(&self) -> MultiPoly {
        let [l1, l2] = self.x_dot();
        (l1.pow(2) + l2.pow(2)).scale(&rat(1, 2))
    }

    /// Angular velocities of the links, with `c^2 + s^2 = 1` already used.
    pub fn alpha_dot(&self) -> [MultiPoly; 2] {
        use Var::*;
        let (a, b) = (self.inv_l1(), self.inv_l2());
        let cos_diff = self.v(C1) * self.v(C2) + self.v(S1) * self.v(S2);
        let d1 = (self.v(C1) * self.v(P2) - self.v(P1) * self.v(S1)).scale(&a)
            + (self.v(Eta2) * &cos_diff).scale(&(&a * &b))
            + self.v(Eta1).scale(&(&a * &a));
        let d2 = (self.v(C2) * self.v(P2) - self.v(P1) * self.v(S2)).scale(&b)
            + (self.v(Eta1) * &cos_diff).scale(&(&a * &b))
            + self.v(Eta2).scale(&(&b * &b));
        [d1, d2]
    }

    fn flow(&self) -> Result<Derivation> {
        use Var::*;
        let (a, b) = (self.inv_l1(), self.inv_l2());
        let [ad1, ad2] = self.alpha_dot();
        let sin_diff = self.v(S1) * self.v(C2) - self.v(C1) * self.v(S2);
        let e12 = (self.v(Eta1) * self.v(Eta2) * &sin_diff).scale(&(&a * &b));
        let eta1 = (self.v(Eta1) * (self.v(S1) * self.v(P2) + self.v(P1) * self.v(C1))).scale(&a) + &e12;
        let eta2 = (self.v(Eta2) * (self.v(S2) * self.v(P2) + self.v(P1) * self.v(C2))).scale(&b) - &e12;
        let zero = MultiPoly::zero(&self.ring);
        let images = vec![
            eta1,
            eta2,
            zero.clone(),
            zero.clone(),
            -(self.v(S1) * &ad1),
            -(self.v(S2) * &ad2),
            self.v(C1) * &ad1,
            self.v(C2) * &ad2,
            zero,
        ];
        Derivation::new(&self.ring, images)
    }

    /// Acceleration of the front point.
    pub fn x_ddot(&self) -> [MultiPoly; 2] {
        let [a, b] = self.x_dot();
        [self.derive(&a), self.derive(&b)]
    }

    /// Curvature of the front track as `x' ^ x''` (the track has unit speed on the variety).
    pub fn kappa_x_numerator(&self) -> MultiPoly {
        let ([v1, v2], [a1, a2]) = (self.x_dot(), self.x_ddot());
        v1 * a2 - a1 * v2
    }

    /// `eta1/l1^2 + eta2/l2^2`.
    pub fn kappa_x(&self) -> MultiPoly {
        let (a, b) = (self.inv_l1(), self.inv_l2());
        self.v(Var::Eta1).scale(&(&a * &a)) + self.v(Var::Eta2).scale(&(&b * &b))
    }

    /// The printed curvature display, whose second term carries `l1^2` too.
    pub fn kappa_x_as_printed(&self) -> MultiPoly {
        let a = self.inv_l1();
        (self.v(Var::Eta1) + self.v(Var::Eta2)).scale(&(&a * &a))
    }

    /// `kappa_0 ..= kappa_n`, each derivative reduced modulo the ideal.
    pub fn kappa_chain(&self, n: usize) -> Vec<MultiPoly> {
        let mut out = vec![self.reduce(&self.kappa_x())];
        for i in 0..n {
            let next = self.reduce(&self.derive(&out[i]));
            out.push(next);
        }
        out
    }

    /// Velocity of the rear point `y_i = x - 2 l_i (c_i, s_i)`.
    pub fn y_dot(&self, link: usize) -> [MultiPoly; 2] {
        use Var::*;
        let (c, s, l) = match link {
            1 => (self.v(C1), self.v(S1), &self.params.l1),
            2 => (self.v(C2), self.v(S2), &self.params.l2),
            _ => panic!("link must be 1 or 2"),
        };
        let two_l = l * rat(2, 1);
        let [v1, v2] = self.x_dot();
        [v1 - self.derive(&c).scale(&two_l), v2 - self.derive(&s).scale(&two_l)]
    }

    pub fn kappa_y_numerator(&self, link: usize) -> MultiPoly {
        let [v1, v2] = self.y_dot(link);
        let (a1, a2) = (self.derive(&v1), self.derive(&v2));
        v1 * a2 - a1 * v2
    }

    /// Rear-track curvature `2 alpha1' - kappa` in expanded form.
    pub fn kappa_y1(&self) -> MultiPoly {
        self.alpha_dot()[0].scale(&rat(2, 1)) - self.kappa_x()
    }

    /// The printed rear-track display for equal lengths `l = l1`.
    pub fn kappa_y1_as_printed(&self) -> MultiPoly {
        use Var::*;
        let a = self.inv_l1();
        let a2 = &a * &a;
        let two = rat(2, 1);
        (self.v(C1) * self.v(C2) * self.v(Eta1)).scale(&(&two * &a2)) + (self.v(C1) * self.v(P2)).scale(&(&two * &a))
            + (self.v(Eta1) * self.v(S1) * self.v(S2)).scale(&(&two * &a2))
            - (self.v(P1) * self.v(S1)).scale(&(&two * &a))
            - self.v(Eta1).scale(&a2)
            + self.v(Eta2).scale(&a2)
    }

    /// Equal-length integral `G = (p . x')/l^2 + kappa^2/2`.
    pub fn gpoly(&self) -> Result<MultiPoly> {
        self.require_equal("Gpoly")?;
        use Var::*;
        let [v1, v2] = self.x_dot();
        let a = self.inv_l1();
        let k = self.kappa_x();
        Ok((self.v(P1) * v1 + self.v(P2) * v2).scale(&(&a * &a)) + (&k * &k).scale(&rat(1, 2)))
    }

    /// Equal-length elastica constant as printed; `A = -G`.
    pub fn apoly(&self) -> Result<MultiPoly> {
        self.require_equal("Apoly")?;
        use Var::*;
        let a = self.inv_l1();
        let (a2, a3) = (&a * &a, &a * &a * &a);
        let a4 = &a2 * &a2;
        let (e1, e2, p1, p2) = (self.v(Eta1), self.v(Eta2), self.v(P1), self.v(P2));
        Ok(-(self.v(C1) * &p2 * &e1).scale(&a3) - (self.v(C2) * &e2 * &p2).scale(&a3)
            + (&e2 * &p1 * self.v(S2)).scale(&a3)
            - (&p1 * &p1).scale(&a2)
            - (&p2 * &p2).scale(&a2)
            + (&p1 * self.v(S1) * &e1).scale(&a3)
            - (&e2 * &e2).scale(&(&a4 / rat(2, 1)))
            - (&e1 * &e2).scale(&a4)
            - (&e1 * &e1).scale(&(&a4 / rat(2, 1))))
    }

    /// The integral `b` as printed, valid for all lengths.
    pub fn bpoly(&self) -> MultiPoly {
        use Var::*;
        let (l1, l2) = (&self.params.l1, &self.params.l2);
        let (sq1, sq2) = (l1 * l1, l2 * l2);
        let one = Q::one();
        let half = rat(1, 2);
        let (e1, e2, p1, p2) = (self.v(Eta1), self.v(Eta2), self.v(P1), self.v(P2));
        let pp = &p1 * &p1 + &p2 * &p2;
        (self.v(C1) * &p2 * &e1).scale(&(&one / (l1 * &sq2))) + (self.v(C2) * &e2 * &p2).scale(&(&one / (&sq1 * l2)))
            - (&e2 * &p1 * self.v(S2)).scale(&(&one / (&sq1 * l2)))
            + pp.scale(&(&half / &sq2))
            - (&p1 * self.v(S1) * &e1).scale(&(&one / (l1 * &sq2)))
            + pp.scale(&(&half / &sq1))
            + (&e2 * &e2).scale(&(&half / (&sq1 * &sq2)))
            + (&e1 * &e2).scale(&(&one / (&sq1 * &sq2)))
            + self.c(&half / &sq2)
            + self.c(&half / &sq1)
            + (&e1 * &e1).scale(&(&half / (&sq1 * &sq2)))
    }

    /// `a` as a quadratic in `lambda = b`, as printed.
    pub fn apoly_in_lambda(&self) -> MultiPoly {
        use Var::*;
        let (l1, l2) = (&self.params.l1, &self.params.l2);
        let (sq1, sq2) = (l1 * l1, l2 * l2);
        let half = rat(1, 2);
        let lam = self.v(Lambda);
        (self.v(P1).pow(2) + self.v(P2).pow(2)).scale(&(&half / (&sq1 * &sq2))) - (&lam * &lam).scale(&half)
            + lam.scale(&sq2.recip())
            + lam.scale(&sq1.recip())
            - self.c(&half / (&sq2 * &sq2))
            - self.c(&half / (&sq1 * &sq2))
            - self.c(&half / (&sq1 * &sq1))
    }

    /// Fourth-order part of the 2-soliton equation
    /// `a k + b (-k'' - k^3/2) + k'''' + 5/2 k^2 k'' + 5/2 k k'^2 + 3/8 k^5 = 0`.
    pub fn e4(k: &[MultiPoly]) -> MultiPoly {
        &k[4] + (&k[0] * &k[0] * &k[2]).scale(&rat(5, 2)) + (&k[0] * &k[1] * &k[1]).scale(&rat(5, 2))
            + k[0].pow(5).scale(&rat(3, 8))
    }

    fn require_equal(&self, what: &str) -> Result<()> {
        if self.params.is_equal() {
            Ok(())
        } else {
            Err(AlgebraError::Params(format!("{what} needs equal lengths, got {}", self.params)))
        }
    }

    /// The ideal `I2 = I + (bpoly - lambda)`.
    pub fn basis_with_lambda(&self) -> Result<GroebnerBasis> {
        let mut gens = self.gb.polys().to_vec();
        gens.push(self.bpoly() - self.v(Var::Lambda));
        buchberger(&gens)
    }

    /// Whether `p` is zero modulo the ideal.
    pub fn vanishes(&self, p: &MultiPoly) -> bool {
        self.gb.contains(p)
    }
}
