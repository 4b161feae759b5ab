use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{AlgebraError, Result};
use crate::ring::{Exponents, Key, Ring};

/// Exact rational coefficient.
pub type Q = BigRational;

/// `n / d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Sparse polynomial with rational coefficients over a shared [`Ring`].
///
/// Terms are kept sorted by the ring's monomial order and zero coefficients
/// are never stored, so structural equality is polynomial equality.
#[derive(Clone)]
pub struct MultiPoly {
    ring: Arc<Ring>,
    terms: BTreeMap<Key, Q>,
}

fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl MultiPoly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Self { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: Q) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(ring.one(), c);
        }
        p
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, Q::one())
    }

    /// The `i`-th variable. Panics if `i` is out of range.
    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index {i} out of range");
        let mut p = Self::zero(ring);
        p.terms.insert(ring.var_key(i), Q::one());
        p
    }

    pub fn var_named(ring: &Arc<Ring>, name: &str) -> Result<Self> {
        ring.index_of(name)
            .map(|i| Self::var(ring, i))
            .ok_or_else(|| AlgebraError::Ring(format!("no variable named {name:?} in {ring}")))
    }

    pub fn monomial(ring: &Arc<Ring>, e: &Exponents, c: Q) -> Self {
        Self::from_terms(ring, [(*e, c)])
    }

    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Exponents, Q)>) -> Self {
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            p.add_term(ring.key(&e), c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value of a constant polynomial, `None` otherwise.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&self.ring.one()).cloned(),
            _ => None,
        }
    }

    /// Terms from the leading one down.
    pub fn terms(&self) -> impl Iterator<Item = (Exponents, &Q)> + '_ {
        self.terms.iter().rev().map(|(k, c)| (self.ring.exponents(k), c))
    }

    pub(crate) fn keyed_terms(&self) -> &BTreeMap<Key, Q> {
        &self.terms
    }

    pub fn leading(&self) -> Option<(Key, &Q)> {
        self.terms.last_key_value().map(|(k, c)| (*k, c))
    }

    pub fn leading_exponents(&self) -> Option<Exponents> {
        self.leading().map(|(k, _)| self.ring.exponents(&k))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| self.ring.degree(k)).max()
    }

    pub(crate) fn add_term(&mut self, k: Key, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * m * other` for a monomial key `m`.
    pub(crate) fn add_scaled_shifted(&mut self, other: &MultiPoly, c: &Q, m: Key) {
        for (k, v) in &other.terms {
            self.add_term(*k + m, c * v);
        }
    }

    fn check_ring(&self, other: &MultiPoly) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch(self.ring.to_string(), other.ring.to_string()))
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(other)?;
        let mut out = MultiPoly::zero(&self.ring);
        for (k, c) in &self.terms {
            out.add_scaled_shifted(other, c, *k);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut out = MultiPoly::one(&self.ring);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> MultiPoly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Partial derivative in the `i`-th variable.
    pub fn partial(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.ring);
        for (k, c) in &self.terms {
            let mut e = self.ring.exponents(k);
            if e[i] > 0 {
                let n = e[i];
                e[i] -= 1;
                out.add_term(self.ring.key(&e), c * Q::from_integer(n.into()));
            }
        }
        out
    }

    /// Replaces the `i`-th variable by `value`.
    pub fn substitute(&self, i: usize, value: &MultiPoly) -> MultiPoly {
        let mut powers = vec![MultiPoly::one(&self.ring)];
        let mut out = MultiPoly::zero(&self.ring);
        for (k, c) in &self.terms {
            let mut e = self.ring.exponents(k);
            let n = e[i] as usize;
            e[i] = 0;
            while powers.len() <= n {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            out.add_scaled_shifted(&powers[n], c, self.ring.key(&e));
        }
        out
    }

    /// Renames variable `i` to `perm[i]`; `perm` must be a permutation.
    pub fn permute(&self, perm: &[usize]) -> MultiPoly {
        let n = self.ring.nvars();
        assert_eq!(perm.len(), n, "permutation has the wrong length");
        let mut out = MultiPoly::zero(&self.ring);
        for (k, c) in &self.terms {
            let e = self.ring.exponents(k);
            let mut f = [0u16; crate::ring::MAX_VARS];
            for i in 0..n {
                f[perm[i]] = e[i];
            }
            out.add_term(self.ring.key(&f), c.clone());
        }
        out
    }

    /// Exact value at a point given in variable order.
    pub fn eval(&self, x: &[Q]) -> Q {
        assert_eq!(x.len(), self.ring.nvars(), "point has the wrong dimension");
        let mut acc = Q::zero();
        for (k, c) in &self.terms {
            let e = self.ring.exponents(k);
            let mut t = c.clone();
            for (xi, &ei) in x.iter().zip(&e) {
                if ei > 0 {
                    t *= num::pow(xi.clone(), ei as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.ring.nvars(), "point has the wrong dimension");
        self.terms
            .iter()
            .map(|(k, c)| {
                let e = self.ring.exponents(k);
                let m: f64 = x.iter().zip(&e).map(|(xi, &ei)| xi.powi(ei as i32)).product();
                c.to_f64().unwrap_or(f64::NAN) * m
            })
            .sum()
    }

    /// Each term rendered on its own, leading term first.
    pub fn term_strings(&self) -> Vec<String> {
        self.terms.iter().rev().map(|(k, c)| format_term(&self.ring, k, c, true)).collect()
    }
}

fn format_term(ring: &Ring, k: &Key, c: &Q, first: bool) -> String {
    let mono = ring.format_monomial(k);
    let sign = match (c.is_negative(), first) {
        (true, true) => "-",
        (true, false) => " - ",
        (false, true) => "",
        (false, false) => " + ",
    };
    let a = c.abs();
    if mono == "1" {
        format!("{sign}{a}")
    } else if a.is_one() {
        format!("{sign}{mono}")
    } else {
        format!("{sign}{a}*{mono}")
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            write!(f, "{}", format_term(&self.ring, k, c, i == 0))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            /// Panics if the operands live in different rings.
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Mul<Q> for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, c: Q) -> MultiPoly {
        self.scale(&c)
    }
}

impl Mul<Q> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, c: Q) -> MultiPoly {
        self.scale(&c)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Q::one())
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}
