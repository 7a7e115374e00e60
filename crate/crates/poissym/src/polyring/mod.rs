//! Sparse multivariate polynomials over the rationals.
//!
//! Everything downstream (Gröbner bases, Poisson brackets, certificates) is
//! built on [`Poly`]: a map from exponent vectors to exact `BigRational`
//! coefficients, tied to a named [`VarRing`]. No floating point appears
//! anywhere; a certificate is an exact identity or it is nothing.

mod parse;
mod poly;

pub use parse::parse_poly;
pub use poly::Poly;

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A polynomial ring given by an ordered list of variable names, each with a
/// positive integer weight (weight 1 unless declared otherwise).
///
/// Weights feed degree bookkeeping in reports; they never influence any
/// computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarRing {
    vars: Vec<String>,
    weights: Vec<u64>,
}

impl VarRing {
    /// Ring with the given variables, all of weight 1.
    pub fn new<S: Into<String>>(vars: Vec<S>) -> Result<Arc<Self>> {
        let names: Vec<String> = vars.into_iter().map(Into::into).collect();
        let weights = vec![1; names.len()];
        Self::with_weights(names, weights)
    }

    /// Ring with declared per-variable weights.
    pub fn with_weights<S: Into<String>>(vars: Vec<S>, weights: Vec<u64>) -> Result<Arc<Self>> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        if vars.is_empty() {
            return Err(Error::Invalid("a ring needs at least one variable".into()));
        }
        if vars.len() != weights.len() {
            return Err(Error::Invalid(format!(
                "{} variables but {} weights",
                vars.len(),
                weights.len()
            )));
        }
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::Invalid("empty variable name".into()));
            }
            if vars[..i].contains(v) {
                return Err(Error::Invalid(format!("duplicate variable `{v}`")));
            }
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::Invalid("variable weights must be >= 1".into()));
        }
        Ok(Arc::new(VarRing { vars, weights }))
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }
}

/// Exponent vector of a monomial; the length always equals the ring arity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial {
            exps: vec![0; arity],
        }
    }

    pub fn var(arity: usize, index: usize) -> Self {
        let mut exps = vec![0; arity];
        exps[index] = 1;
        Monomial { exps }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn weighted_degree(&self, ring: &VarRing) -> u64 {
        self.exps
            .iter()
            .zip(ring.weights())
            .map(|(&e, &w)| e as u64 * w)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Exact quotient, or `None` when some exponent of `other` exceeds ours.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial { exps })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Term orders. All are multiplicative well-orders, so division terminates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Lexicographic with the ring's declared variable order.
    Lex,
    /// Graded reverse lexicographic; the default everywhere.
    GrevLex,
    /// Block order eliminating the first `block` variables: grevlex on the
    /// block, ties broken by grevlex on the remaining variables.
    Elimination { block: usize },
}

fn grevlex_slice(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    // Equal total degree: the last nonzero difference decides, reversed.
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.arity(), b.arity());
        match self {
            MonomialOrder::Lex => {
                for (x, y) in a.exps.iter().zip(&b.exps) {
                    match x.cmp(y) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::GrevLex => grevlex_slice(&a.exps, &b.exps),
            MonomialOrder::Elimination { block } => {
                let k = (*block).min(a.exps.len());
                match grevlex_slice(&a.exps[..k], &b.exps[..k]) {
                    Ordering::Equal => grevlex_slice(&a.exps[k..], &b.exps[k..]),
                    ord => ord,
                }
            }
        }
    }

    pub fn max<'m>(&self, a: &'m Monomial, b: &'m Monomial) -> &'m Monomial {
        if self.cmp(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }
}
