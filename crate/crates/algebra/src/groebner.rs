use std::collections::HashSet;
use std::sync::Arc;

use num::Zero;

use crate::error::{AlgebraError, Result};
use crate::poly::{MultiPoly, Q};
use crate::ring::{Exponents, Key, Ring, MAX_VARS};

/// Remainder of `f` on full division by `basis`.
///
/// Every term of the result is irreducible by the leading terms of `basis`.
/// The remainder is unique when `basis` is a Gröbner basis.
pub fn normal_form(f: &MultiPoly, basis: &[MultiPoly]) -> MultiPoly {
    let ring = f.ring();
    let leads: Vec<(Key, Q)> = basis
        .iter()
        .filter_map(|g| g.leading().map(|(k, c)| (k, c.clone())))
        .collect();
    let divisors: Vec<&MultiPoly> = basis.iter().filter(|g| !g.is_zero()).collect();
    let mut p = f.clone();
    let mut r = MultiPoly::zero(ring);
    while let Some((k, c)) = p.leading().map(|(k, c)| (k, c.clone())) {
        match leads.iter().position(|(lk, _)| ring.divides(lk, &k)) {
            Some(j) => {
                let (lk, lc) = &leads[j];
                p.add_scaled_shifted(divisors[j], &(-(&c / lc)), k - *lk);
            }
            None => {
                p.add_term(k, -c.clone());
                r.add_term(k, c);
            }
        }
    }
    r
}

/// `lcm/lt(f) * f - lcm/lt(g) * g` with monic leading terms.
pub fn s_polynomial(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let ring = f.ring();
    let ((kf, cf), (kg, cg)) = match (f.leading(), g.leading()) {
        (Some(a), Some(b)) => (a, b),
        _ => return MultiPoly::zero(ring),
    };
    let l = ring.lcm(&kf, &kg);
    let mut s = MultiPoly::zero(ring);
    s.add_scaled_shifted(f, &cf.recip(), l - kf);
    s.add_scaled_shifted(g, &(-cg.recip()), l - kg);
    s
}

/// Counters from a Buchberger run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct BuchbergerStats {
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub skipped_product: usize,
    pub skipped_chain: usize,
}

/// Reduced Gröbner basis: monic, with no term of any element divisible by
/// another element's leading term. Elements are sorted by leading monomial.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    polys: Vec<MultiPoly>,
    stats: BuchbergerStats,
}

impl GroebnerBasis {
    /// Basis of the zero ideal.
    pub fn empty(ring: &Arc<Ring>) -> Self {
        Self { ring: ring.clone(), polys: Vec::new(), stats: BuchbergerStats::default() }
    }

    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn stats(&self) -> BuchbergerStats {
        self.stats
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn reduce(&self, f: &MultiPoly) -> MultiPoly {
        normal_form(f, &self.polys)
    }

    /// Ideal membership.
    pub fn contains(&self, f: &MultiPoly) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.polys.iter().any(|g| g.as_constant().is_some_and(|c| !c.is_zero()))
    }

    /// Standard monomials of total degree at most `max_degree` using only
    /// the variables flagged in `allowed`, in increasing monomial order.
    pub fn standard_monomials(&self, max_degree: u16, allowed: &[bool]) -> Vec<Exponents> {
        let n = self.ring.nvars();
        assert_eq!(allowed.len(), n);
        let leads: Vec<Key> = self.polys.iter().filter_map(|g| g.leading().map(|(k, _)| k)).collect();
        let mut out = Vec::new();
        let mut e = [0u16; MAX_VARS];
        enumerate(&mut e, 0, n, max_degree, allowed, &mut |e| {
            let k = self.ring.key(e);
            if !leads.iter().any(|l| self.ring.divides(l, &k)) {
                out.push(*e);
            }
        });
        out.sort_by_key(|e| self.ring.key(e));
        out
    }
}

fn enumerate(e: &mut Exponents, i: usize, n: usize, left: u16, allowed: &[bool], f: &mut impl FnMut(&Exponents)) {
    if i == n {
        f(e);
        return;
    }
    let top = if allowed[i] { left } else { 0 };
    for d in 0..=top {
        e[i] = d;
        enumerate(e, i + 1, n, left - d, allowed, f);
    }
    e[i] = 0;
}

/// Buchberger's algorithm with the product and chain criteria, followed by
/// inter-reduction to the reduced basis.
pub fn buchberger(generators: &[MultiPoly]) -> Result<GroebnerBasis> {
    let ring = match generators.first() {
        Some(g) => g.ring().clone(),
        None => return Err(AlgebraError::Ring("no generators".into())),
    };
    for g in generators {
        if g.ring() != &ring {
            return Err(AlgebraError::RingMismatch(ring.to_string(), g.ring().to_string()));
        }
    }
    let mut stats = BuchbergerStats::default();
    let mut g: Vec<MultiPoly> = Vec::new();
    for f in generators {
        let r = normal_form(f, &g);
        if !r.is_zero() {
            g.push(r.monic());
        }
    }
    let lead = |p: &MultiPoly| p.leading().map(|(k, _)| k).expect("basis elements are nonzero");
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..g.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }
    while !pending.is_empty() {
        // normal selection strategy: smallest lcm first
        let &(i, j) = pending
            .iter()
            .min_by_key(|&&(i, j)| (ring.lcm(&lead(&g[i]), &lead(&g[j])), i, j))
            .unwrap();
        pending.remove(&(i, j));
        let (li, lj) = (lead(&g[i]), lead(&g[j]));
        if ring.coprime(&li, &lj) {
            stats.skipped_product += 1;
            continue;
        }
        let l = ring.lcm(&li, &lj);
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chained = (0..g.len()).any(|k| {
            k != i
                && k != j
                && ring.divides(&lead(&g[k]), &l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chained {
            stats.skipped_chain += 1;
            continue;
        }
        stats.pairs_reduced += 1;
        let h = normal_form(&s_polynomial(&g[i], &g[j]), &g);
        if h.is_zero() {
            stats.zero_reductions += 1;
            continue;
        }
        let n = g.len();
        g.push(h.monic());
        for k in 0..n {
            pending.insert((k, n));
        }
    }
    Ok(GroebnerBasis { polys: interreduce(g), ring, stats })
}

fn interreduce(mut g: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let Some(ring) = g.first().map(|p| p.ring().clone()) else {
        return g;
    };
    g.sort_by_key(|p| p.leading().map(|(k, _)| k));
    let mut minimal: Vec<MultiPoly> = Vec::new();
    for p in g {
        let k = p.leading().unwrap().0;
        if !minimal.iter().any(|q| ring.divides(&q.leading().unwrap().0, &k)) {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let (k, c) = minimal[i].leading().map(|(k, c)| (k, c.clone())).unwrap();
        let mut tail = minimal[i].clone();
        tail.add_term(k, -c.clone());
        let others: Vec<MultiPoly> =
            minimal.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()).collect();
        let mut r = normal_form(&tail, &others);
        r.add_term(k, c);
        out.push(r.monic());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use crate::ring::MonomialOrder;

    fn ring(order: MonomialOrder) -> (Arc<Ring>, MultiPoly, MultiPoly) {
        let r = Arc::new(Ring::new(&["x", "y"], order).unwrap());
        (r.clone(), MultiPoly::var(&r, 0), MultiPoly::var(&r, 1))
    }

    #[test]
    fn line_meets_circle() {
        let (r, x, y) = ring(MonomialOrder::Lex);
        let one = MultiPoly::one(&r);
        let gb = buchberger(&[&x - &y, &x * &x + &y * &y - one.clone()]).unwrap();
        let half = MultiPoly::constant(&r, rat(1, 2));
        assert_eq!(gb.polys(), &[&y * &y - half, &x - &y]);
    }

    #[test]
    fn single_variable_ideal() {
        let (_, x, _) = ring(MonomialOrder::GrevLex);
        let gb = buchberger(std::slice::from_ref(&x)).unwrap();
        assert_eq!(gb.polys(), &[x]);
    }

    #[test]
    fn unit_ideal_collapses_to_one() {
        let (r, x, y) = ring(MonomialOrder::GrevLex);
        let gb = buchberger(&[&x * &y - MultiPoly::one(&r), x.clone(), y]).unwrap();
        assert!(gb.is_unit_ideal());
        assert_eq!(gb.polys(), &[MultiPoly::one(&r)]);
    }

    #[test]
    fn twisted_cubic() {
        let r = Arc::new(Ring::new(&["x", "y", "z"], MonomialOrder::GrevLex).unwrap());
        let (x, y, z) = (MultiPoly::var(&r, 0), MultiPoly::var(&r, 1), MultiPoly::var(&r, 2));
        let gb = buchberger(&[&y - &x * &x, &z - &x * &x * &x]).unwrap();
        // the grevlex basis of the twisted cubic has three quadrics
        let want = [&y * &y - &x * &z, &x * &y - &z, &x * &x - &y];
        assert_eq!(gb.len(), 3);
        for w in &want {
            assert!(gb.polys().contains(w), "missing {w}: {:?}", gb.polys());
        }
        assert!(gb.contains(&(&z * &z - y.pow(3))));
        assert!(!gb.contains(&z));
    }

    #[test]
    fn normal_form_is_a_remainder() {
        let (r, x, y) = ring(MonomialOrder::GrevLex);
        let f = x.pow(3) + &x * &y + MultiPoly::one(&r);
        let g = [&x * &x - &y];
        let nf = normal_form(&f, &g);
        assert_eq!(nf, &x * &y * rat(2, 1) + MultiPoly::one(&r));
    }

    #[test]
    fn standard_monomials_avoid_leading_terms() {
        let (_, x, y) = ring(MonomialOrder::GrevLex);
        let gb = buchberger(&[&x * &x - &y, &y * &y]).unwrap();
        let std = gb.standard_monomials(3, &[true, true]);
        let mut got: Vec<[u16; 2]> = std.iter().map(|e| [e[0], e[1]]).collect();
        got.sort();
        assert_eq!(got, vec![[0, 0], [0, 1], [1, 0], [1, 1]]);
    }
}
