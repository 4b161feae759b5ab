//! Ideal-membership claims about the tricycle flow, each reported with its
//! remainder and an independent exact evaluation at rational sample points.

use std::time::Instant;

use num::{One, Zero};
use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::groebner::GroebnerBasis;
use crate::linsolve::solve_combination;
use crate::poly::{rat, MultiPoly, Q};
use crate::ring::{Exponents, MAX_VARS};
use crate::samples::{variety_samples, SAMPLE_COUNT};
use crate::tricycle::{ExactParams, Tricycle, Var, LINK_SWAP};

/// Remainder terms listed in a report before truncation.
const MAX_REMAINDER_TERMS: usize = 40;

/// Degree bound of the ansatz for `b`.
const B_ANSATZ_DEGREE: u16 = 3;

const SAMPLE_SEED: u64 = 0x7121_c1e5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Proved,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParamsReport {
    pub l1: String,
    pub l2: String,
}

impl From<&ExactParams> for ParamsReport {
    fn from(p: &ExactParams) -> Self {
        Self { l1: p.l1.to_string(), l2: p.l2.to_string() }
    }
}

/// Outcome of one claim.
#[derive(Debug, Clone, Serialize)]
pub struct ProofReport {
    pub claim: String,
    pub parameters: ParamsReport,
    pub status: Status,
    /// Terms of the normal form that should have vanished.
    pub remainder_terms: Vec<String>,
    /// Seconds.
    pub elapsed: f64,
    pub samples_checked: usize,
    pub samples_nonzero: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ProofReport {
    pub fn proved(&self) -> bool {
        self.status == Status::Proved
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    fn failed(mut self, note: impl Into<String>) -> Self {
        self.status = Status::Failed;
        self.with_note(note)
    }
}

/// All claims for one pair of lengths.
#[derive(Debug, Clone, Serialize)]
pub struct ProofSuite {
    pub parameters: ParamsReport,
    pub basis_elements: usize,
    pub basis_elapsed: f64,
    pub reports: Vec<ProofReport>,
}

impl ProofSuite {
    pub fn all_proved(&self) -> bool {
        self.reports.iter().all(|r| r.proved() || r.claim.ends_with("as_printed"))
    }

    pub fn report(&self, claim: &str) -> Option<&ProofReport> {
        self.reports.iter().find(|r| r.claim == claim)
    }
}

/// Claim checker bound to a model, a basis and a set of sample points.
pub struct Prover<'a> {
    pub model: &'a Tricycle,
    pub samples: Vec<Vec<Q>>,
}

impl<'a> Prover<'a> {
    pub fn new(model: &'a Tricycle) -> Self {
        Self { model, samples: variety_samples(model, SAMPLE_COUNT, SAMPLE_SEED) }
    }

    /// Claims `expr` lies in the ideal of `gb`; samples must lie on its variety.
    pub fn in_ideal(&self, claim: &str, expr: &MultiPoly, gb: &GroebnerBasis, start: Instant) -> ProofReport {
        let r = gb.reduce(expr);
        let nonzero = self.samples.iter().filter(|x| !expr.eval(x).is_zero()).count();
        let mut terms = r.term_strings();
        if terms.len() > MAX_REMAINDER_TERMS {
            let extra = terms.len() - MAX_REMAINDER_TERMS;
            terms.truncate(MAX_REMAINDER_TERMS);
            terms.push(format!("... {extra} more"));
        }
        ProofReport {
            claim: claim.into(),
            parameters: (&self.model.params).into(),
            status: if r.is_zero() && nonzero == 0 { Status::Proved } else { Status::Failed },
            remainder_terms: terms,
            elapsed: start.elapsed().as_secs_f64(),
            samples_checked: self.samples.len(),
            samples_nonzero: nonzero,
            note: None,
        }
    }

    fn check(&self, claim: &str, build: impl FnOnce() -> MultiPoly) -> ProofReport {
        let start = Instant::now();
        let expr = build();
        self.in_ideal(claim, &expr, self.model.basis(), start)
    }

    /// Claims that hold for every pair of lengths.
    pub fn common_claims(&self) -> Vec<ProofReport> {
        let t = self.model;
        let one = t.int(1);
        vec![
            self.check("unit_speed", || {
                let [a, b] = t.x_dot();
                &a * &a + &b * &b - &one
            }),
            self.check("kappa_x", || t.kappa_x_numerator() - t.kappa_x()),
            self.check("kappa_x_as_printed", || t.kappa_x_numerator() - t.kappa_x_as_printed()),
            self.check("H_constant", || t.derive(&t.hpoly())),
            self.check("p1_constant", || t.derive(&t.v(Var::P1))),
            self.check("p2_constant", || t.derive(&t.v(Var::P2))),
            self.check("y1_unit_speed", || {
                let [a, b] = t.y_dot(1);
                &a * &a + &b * &b - &one
            }),
            self.check("kappa_y1", || t.kappa_y_numerator(1) - t.kappa_y1()),
            self.check("kappa_y2", || {
                t.kappa_y_numerator(2) - (t.alpha_dot()[1].scale(&rat(2, 1)) - t.kappa_x())
            }),
        ]
    }

    /// Equal lengths: `G`, the elastica constant `A` and the printed rear-track display.
    pub fn equal_length_claims(&self) -> Result<Vec<ProofReport>> {
        let t = self.model;
        let (g, a) = (t.gpoly()?, t.apoly()?);
        let inv_sq = (&t.params.l1 * &t.params.l1).recip();
        let mut out = vec![
            self.check("G_constant", || t.derive(&g)),
            self.check("A_equals_minus_G", || &a + &g),
            self.check("b_minus_G", || t.bpoly() - &g - t.c(inv_sq)),
        ];
        let start = Instant::now();
        let k = t.kappa_chain(2);
        let elastica = &k[2] + k[0].pow(3).scale(&rat(1, 2)) + &a * &k[0];
        out.push(self.in_ideal("A_elastica", &elastica, t.basis(), start));
        out.push(self.check("A_constant", || t.derive(&a)));
        out.push(self.a_from_ansatz(&k)?);
        out.push(self.check("kappa_y1_as_printed", || t.kappa_y_numerator(1) - t.kappa_y1_as_printed()).with_note(
            "the printed display has eta1 and eta2 exchanged; the remainder is 2 (eta1 - eta2) (1 - c1 c2 - s1 s2)/l^2",
        ));
        out.push(self.check("kappa_y2_swap", || t.kappa_y_numerator(2) - t.kappa_y1().permute(&LINK_SWAP)));
        Ok(out)
    }

    /// Recovers `A` from `kappa'' + kappa^3/2 + A kappa` by a degree-3 ansatz
    /// and compares it with the printed form.
    fn a_from_ansatz(&self, k: &[MultiPoly]) -> Result<ProofReport> {
        let t = self.model;
        let start = Instant::now();
        let target = -(&k[2] + k[0].pow(3).scale(&rat(1, 2)));
        let monos = t.basis().standard_monomials(3, &without_lambda());
        let Some((a, nullity)) = solve_ansatz(t.basis(), &k[0], &target, &monos) else {
            let r = self.in_ideal("A_recovered", &target, t.basis(), start);
            return Ok(r.failed("no polynomial of degree <= 3 solves the elastica equation"));
        };
        let r = self.in_ideal("A_recovered", &(a - t.apoly()?), t.basis(), start);
        Ok(r.with_note(format!("{} ansatz monomials, solution space dimension {nullity}", monos.len())))
    }

    /// Unequal lengths: the 2-soliton constants `a` and `b`.
    pub fn soliton_claims(&self) -> Result<Vec<ProofReport>> {
        let s = derive_soliton_constants(self.model)?;
        let t = self.model;
        let mut out = Vec::new();
        let start = Instant::now();
        let r = self.in_ideal("b_recovered", &(&s.b - t.bpoly()), t.basis(), start);
        out.push(r.with_note(format!(
            "det has {} terms modulo I; {} ansatz monomials, solution space dimension {}",
            s.det.len(),
            s.b_ansatz_size,
            s.b_nullity
        )));
        out.push(self.check("b_constant", || t.derive(&t.bpoly())));
        let start = Instant::now();
        let quad = self.in_ideal("a_quadratic", &(&s.a - t.apoly_in_lambda()), &s.basis2, start);
        out.push(quad.with_note(format!(
            "I2 basis has {} elements ({:.2} s); solution space dimension {}",
            s.basis2.len(),
            s.basis2_elapsed,
            s.a_nullity
        )));
        let a = t.apoly_in_lambda();
        let lam = t.v(Var::Lambda);
        let start = Instant::now();
        out.push(self.in_ideal("soliton_equation", &(&s.p * &a + &lam * &s.q + &s.r), &s.basis2, start));
        let start = Instant::now();
        out.push(self.in_ideal("soliton_equation_derivative", &(&s.dp * &a + &lam * &s.dq + &s.dr), &s.basis2, start));
        let a_full = s.a_in_b(t);
        out.push(self.check("a_times_det", || &a_full * &s.det - &s.a_num));
        out.push(self.check("a_constant", || t.derive(&a_full)));
        Ok(out)
    }

    /// Every claim applicable to the model's lengths.
    pub fn run(&self) -> Result<Vec<ProofReport>> {
        let mut out = self.common_claims();
        if self.model.params.is_equal() {
            let start = Instant::now();
            let sys = SolitonSystem::new(self.model);
            let r = self.in_ideal("soliton_determinant_vanishes", &sys.det, self.model.basis(), start);
            out.push(r.with_note("the 2-soliton system is degenerate; the elastica constant A takes its place"));
            out.extend(self.equal_length_claims()?);
        } else {
            out.extend(self.soliton_claims()?);
        }
        Ok(out)
    }
}

fn without_lambda() -> Vec<bool> {
    let mut v = vec![true; crate::tricycle::VAR_NAMES.len()];
    v[Var::Lambda as usize] = false;
    v
}

/// Solves `multiplier * x = target` modulo the ideal of `gb` for `x` in the span of `monomials`.
pub fn solve_ansatz(
    gb: &GroebnerBasis,
    multiplier: &MultiPoly,
    target: &MultiPoly,
    monomials: &[Exponents],
) -> Option<(MultiPoly, usize)> {
    let ring = multiplier.ring();
    let cols: Vec<MultiPoly> = monomials
        .iter()
        .map(|e| gb.reduce(&(multiplier * MultiPoly::monomial(ring, e, Q::one()))))
        .collect();
    let sol = solve_combination(&cols, &gb.reduce(target))?;
    let x = MultiPoly::from_terms(ring, monomials.iter().copied().zip(sol.values));
    Some((x, sol.nullity))
}

/// The 2-soliton equation `P a + Q b + R = 0` and its derivative, reduced modulo the ideal.
#[derive(Debug, Clone)]
pub struct SolitonSystem {
    pub p: MultiPoly,
    pub q: MultiPoly,
    pub r: MultiPoly,
    pub dp: MultiPoly,
    pub dq: MultiPoly,
    pub dr: MultiPoly,
    /// `P Q' - P' Q`.
    pub det: MultiPoly,
}

impl SolitonSystem {
    pub fn new(t: &Tricycle) -> Self {
        let k = t.kappa_chain(5);
        let red = |p: MultiPoly| t.reduce(&p);
        let p = k[0].clone();
        let q = red(-(&k[2] + k[0].pow(3).scale(&rat(1, 2))));
        let r = red(Tricycle::e4(&k[..5]));
        let dp = k[1].clone();
        let dq = red(t.derive(&q));
        let dr = red(t.derive(&r));
        let det = red(&p * &dq - &dp * &q);
        Self { p, q, r, dp, dq, dr, det }
    }
}

/// Output of [`derive_soliton_constants`].
#[derive(Debug, Clone)]
pub struct SolitonConstants {
    /// `b` in reduced form.
    pub b: MultiPoly,
    /// `a` as a polynomial in `p1`, `p2` and `lambda = b`.
    pub a: MultiPoly,
    /// The 2-soliton equation reads `P a + Q b + R = 0`; its derivative `P' a + Q' b + R' = 0`.
    pub p: MultiPoly,
    pub q: MultiPoly,
    pub r: MultiPoly,
    pub dp: MultiPoly,
    pub dq: MultiPoly,
    pub dr: MultiPoly,
    /// `P Q' - P' Q` modulo the ideal.
    pub det: MultiPoly,
    /// `Q R' - R Q'`, so that `a det = a_num` on the variety.
    pub a_num: MultiPoly,
    pub b_nullity: usize,
    pub b_ansatz_size: usize,
    pub a_nullity: usize,
    pub basis2: GroebnerBasis,
    pub basis2_elapsed: f64,
}

impl SolitonConstants {
    /// `a` with `lambda` replaced by the recovered `b`.
    pub fn a_in_b(&self, t: &Tricycle) -> MultiPoly {
        t.reduce(&self.a.substitute(Var::Lambda as usize, &self.b))
    }
}

/// Finds the constants of the 2-soliton equation
/// `a k + b (-k'' - k^3/2) + k'''' + 5/2 k^2 k'' + 5/2 k k'^2 + 3/8 k^5 = 0`
/// satisfied by the front-track curvature.
///
/// The equation and its derivative are linear in `(a, b)`. Their determinant
/// is reduced modulo the ideal: zero means the system is degenerate (equal
/// lengths), a nonzero constant allows direct division, and otherwise `b` is
/// the unique element of a standard-monomial ansatz with `det b = b_num`.
/// `a` is then solved as a quadratic in `lambda` with momentum coefficients
/// modulo `I2 = I + (bpoly - lambda)`.
pub fn derive_soliton_constants(t: &Tricycle) -> Result<SolitonConstants> {
    let SolitonSystem { p, q, r, dp, dq, dr, det } = SolitonSystem::new(t);
    let red = |p: MultiPoly| t.reduce(&p);
    if det.is_zero() {
        return Err(AlgebraError::Degenerate(format!(
            "the determinant of the linear system for (a, b) vanishes modulo I at lengths {}",
            t.params
        )));
    }
    let b_num = red(&dp * &r - &p * &dr);
    let a_num = red(&q * &dr - &r * &dq);
    let monos = t.basis().standard_monomials(B_ANSATZ_DEGREE, &without_lambda());
    let (b, b_nullity) = match det.as_constant() {
        Some(c) => (b_num.scale(&c.recip()), 0),
        None => solve_ansatz(t.basis(), &det, &b_num, &monos)
            .ok_or_else(|| AlgebraError::Degenerate(format!("no b of degree <= {B_ANSATZ_DEGREE} solves det b = b_num")))?,
    };
    let start = Instant::now();
    let mut gens = t.basis().polys().to_vec();
    gens.push(&b - t.v(Var::Lambda));
    let basis2 = crate::groebner::buchberger(&gens)?;
    let basis2_elapsed = start.elapsed().as_secs_f64();
    let lam = t.v(Var::Lambda);
    let target = -(&lam * &q + &r);
    let (a, a_nullity) = solve_ansatz(&basis2, &p, &target, &quadratic_ansatz())
        .ok_or_else(|| AlgebraError::Degenerate("a is not quadratic in lambda modulo I2".into()))?;
    Ok(SolitonConstants {
        b,
        a: basis2.reduce(&a),
        p,
        q,
        r,
        dp,
        dq,
        dr,
        det,
        a_num,
        b_nullity,
        b_ansatz_size: monos.len(),
        a_nullity,
        basis2,
        basis2_elapsed,
    })
}

/// `lambda^i p1^j p2^k` with `i <= 2`, `j + k <= 2`.
fn quadratic_ansatz() -> Vec<Exponents> {
    let mut out = Vec::new();
    for i in 0..=2u16 {
        for j in 0..=2u16 {
            for k in 0..=(2 - j) {
                let mut e = [0u16; MAX_VARS];
                e[Var::Lambda as usize] = i;
                e[Var::P1 as usize] = j;
                e[Var::P2 as usize] = k;
                out.push(e);
            }
        }
    }
    out
}

/// Checks the printed rear-track curvature at equal lengths; `Ok(false)` when
/// first principles disagree with it.
pub fn verify_y1_curvature(params: &ExactParams) -> Result<bool> {
    if !params.is_equal() {
        return Err(AlgebraError::Params(format!("the printed display assumes equal lengths, got {params}")));
    }
    let t = Tricycle::new(params.clone())?;
    Ok(t.vanishes(&(t.kappa_y_numerator(1) - t.kappa_y1_as_printed())))
}

/// Builds the model and runs every claim for one pair of lengths.
pub fn prove(params: &ExactParams) -> Result<ProofSuite> {
    let start = Instant::now();
    let t = Tricycle::new(params.clone())?;
    let basis_elapsed = start.elapsed().as_secs_f64();
    let reports = Prover::new(&t).run()?;
    Ok(ProofSuite { parameters: params.into(), basis_elements: t.basis().len(), basis_elapsed, reports })
}

/// Runs [`prove`] for each pair of lengths on its own thread.
pub fn prove_all(params: &[ExactParams]) -> Vec<Result<ProofSuite>> {
    std::thread::scope(|s| {
        let handles: Vec<_> = params.iter().map(|p| s.spawn(move || prove(p))).collect();
        handles.into_iter().map(|h| h.join().expect("proof thread panicked")).collect()
    })
}

/// The default length pairs.
pub fn default_params() -> Vec<ExactParams> {
    [(1, 1), (1, 2), (2, 3), (1, 3)].iter().map(|&(a, b)| ExactParams::integers(a, b).expect("positive lengths")).collect()
}
