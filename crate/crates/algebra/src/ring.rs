use std::fmt;
use std::ops::{Add, Sub};

use crate::error::{AlgebraError, Result};

/// Largest number of variables a ring may carry.
pub const MAX_VARS: usize = 10;

/// Exponent vector padded with zeros past the ring's variable count.
pub type Exponents = [u16; MAX_VARS];

/// Monomial order of a ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum MonomialOrder {
    /// Lexicographic with the first variable largest.
    Lex,
    /// Graded reverse lexicographic with the first variable largest.
    GrevLex,
}

/// Sort key of a monomial: comparing keys compares monomials in the ring order.
///
/// Lex keys are the exponents themselves. Grevlex keys are
/// `(deg, -e_n, ..., -e_1)`. Both encodings are additive, so the key of a
/// product is the sum of the keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Key(pub(crate) [i32; MAX_VARS + 1]);

impl Add for Key {
    type Output = Key;
    fn add(self, o: Key) -> Key {
        Key(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for Key {
    type Output = Key;
    fn sub(self, o: Key) -> Key {
        Key(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

/// Ordered variable names and a monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    order: MonomialOrder,
}

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S], order: MonomialOrder) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        if vars.is_empty() || vars.len() > MAX_VARS {
            return Err(AlgebraError::Ring(format!("need 1..={MAX_VARS} variables, got {}", vars.len())));
        }
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || vars[..i].contains(v) {
                return Err(AlgebraError::Ring(format!("variable names must be distinct and nonempty: {v:?}")));
            }
        }
        Ok(Self { vars, order })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn key(&self, e: &Exponents) -> Key {
        let n = self.nvars();
        let mut k = [0i32; MAX_VARS + 1];
        match self.order {
            MonomialOrder::Lex => {
                for i in 0..n {
                    k[i] = e[i] as i32;
                }
            }
            MonomialOrder::GrevLex => {
                k[0] = e[..n].iter().map(|&x| x as i32).sum();
                for i in 0..n {
                    k[1 + i] = -(e[n - 1 - i] as i32);
                }
            }
        }
        Key(k)
    }

    pub fn exponents(&self, k: &Key) -> Exponents {
        let n = self.nvars();
        let mut e = [0u16; MAX_VARS];
        for i in 0..n {
            e[i] = match self.order {
                MonomialOrder::Lex => k.0[i],
                MonomialOrder::GrevLex => -k.0[n - i],
            } as u16;
        }
        e
    }

    pub fn degree(&self, k: &Key) -> u32 {
        match self.order {
            MonomialOrder::Lex => k.0.iter().map(|&x| x as u32).sum(),
            MonomialOrder::GrevLex => k.0[0] as u32,
        }
    }

    /// Whether the monomial `a` divides `b`.
    pub fn divides(&self, a: &Key, b: &Key) -> bool {
        let n = self.nvars();
        match self.order {
            MonomialOrder::Lex => (0..n).all(|i| a.0[i] <= b.0[i]),
            MonomialOrder::GrevLex => (1..=n).all(|i| a.0[i] >= b.0[i]),
        }
    }

    pub fn lcm(&self, a: &Key, b: &Key) -> Key {
        let n = self.nvars();
        let mut k = [0i32; MAX_VARS + 1];
        match self.order {
            MonomialOrder::Lex => {
                for i in 0..n {
                    k[i] = a.0[i].max(b.0[i]);
                }
            }
            MonomialOrder::GrevLex => {
                for i in 1..=n {
                    k[i] = a.0[i].min(b.0[i]);
                }
                k[0] = -k[1..=n].iter().sum::<i32>();
            }
        }
        Key(k)
    }

    /// Whether two monomials share no variable.
    pub fn coprime(&self, a: &Key, b: &Key) -> bool {
        let (ea, eb) = (self.exponents(a), self.exponents(b));
        (0..self.nvars()).all(|i| ea[i] == 0 || eb[i] == 0)
    }

    pub fn one(&self) -> Key {
        Key([0; MAX_VARS + 1])
    }

    pub fn var_key(&self, i: usize) -> Key {
        let mut e = [0u16; MAX_VARS];
        e[i] = 1;
        self.key(&e)
    }

    /// `x1^e1 * ... ` rendering of a monomial, `1` for the unit.
    pub fn format_monomial(&self, k: &Key) -> String {
        let e = self.exponents(k);
        let parts: Vec<String> = (0..self.nvars())
            .filter(|&i| e[i] > 0)
            .map(|i| if e[i] == 1 { self.vars[i].clone() } else { format!("{}^{}", self.vars[i], e[i]) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}] ({:?})", self.vars.join(", "), self.order)
    }
}
