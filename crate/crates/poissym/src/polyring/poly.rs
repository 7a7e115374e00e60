use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::{Monomial, MonomialOrder, VarRing};

/// Sparse polynomial with exact rational coefficients.
///
/// Terms are stored in a canonical map keyed by exponent vector; no zero
/// coefficient is ever stored. Iteration under a specific [`MonomialOrder`]
/// happens at the point of use (leading terms, printing, division), so values
/// stay immutable and shareable.
#[derive(Debug, Clone)]
pub struct Poly {
    ring: Arc<VarRing>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(ring: &Arc<VarRing>) -> Self {
        Poly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<VarRing>, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(ring.arity()), c);
        }
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn int(ring: &Arc<VarRing>, n: i64) -> Self {
        Self::constant(ring, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn var(ring: &Arc<VarRing>, index: usize) -> Self {
        assert!(index < ring.arity(), "variable index out of range");
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(ring.arity(), index), BigRational::one());
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn from_terms<I>(ring: &Arc<VarRing>, iter: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Poly::zero(ring);
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, mon: Monomial, coef: BigRational) {
        debug_assert_eq!(mon.arity(), self.ring.arity());
        if coef.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mon) {
            Entry::Vacant(e) => {
                e.insert(coef);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &coef;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn ring(&self) -> &Arc<VarRing> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mon: &Monomial) -> BigRational {
        self.terms.get(mon).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// Total degree; zero polynomial reports 0.
    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn weighted_degree(&self) -> u64 {
        self.terms
            .keys()
            .map(|m| m.weighted_degree(&self.ring))
            .max()
            .unwrap_or(0)
    }

    fn assert_same_ring(&self, other: &Poly) {
        assert!(
            *self.ring == *other.ring,
            "polynomials from different rings"
        );
    }

    pub fn add_ref(&self, other: &Poly) -> Poly {
        self.assert_same_ring(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub_ref(&self, other: &Poly) -> Poly {
        self.assert_same_ring(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg_ref(&self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul_ref(&self, other: &Poly) -> Poly {
        self.assert_same_ring(other);
        let mut out = Poly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Multiply by a single term `coef * x^mon`.
    pub fn mul_term(&self, mon: &Monomial, coef: &BigRational) -> Poly {
        if coef.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mon), c * coef))
                .collect(),
        }
    }

    pub fn scale(&self, coef: &BigRational) -> Poly {
        if coef.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * coef))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut result = Poly::constant(&self.ring, BigRational::one());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        result
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial_derivative(&self, i: usize) -> Poly {
        assert!(i < self.ring.arity(), "variable index out of range");
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[i] -= 1;
            out.add_term(
                Monomial::from_exps(exps),
                c * BigRational::from_integer(BigInt::from(e)),
            );
        }
        out
    }

    /// Maximal term under `ord`; `Err` on the zero polynomial.
    pub fn leading_term(&self, ord: MonomialOrder) -> Result<(Monomial, BigRational)> {
        self.leading_term_opt(ord).ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_term_opt(&self, ord: MonomialOrder) -> Option<(Monomial, BigRational)> {
        let mut best: Option<&Monomial> = None;
        for m in self.terms.keys() {
            best = Some(match best {
                None => m,
                Some(b) => ord.max(b, m),
            });
        }
        best.map(|m| (m.clone(), self.terms[m].clone()))
    }

    /// Substitute `images[i]` for variable `i`. Images must share one ring
    /// (which becomes the result ring) and there must be one per variable.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(
            images.len(),
            self.ring.arity(),
            "one image per variable required"
        );
        let target = images
            .first()
            .map(|p| p.ring().clone())
            .expect("nonempty ring");
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|p| vec![Poly::constant(&target, BigRational::one()), p.clone()])
            .collect();
        let mut out = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut prod = Poly::constant(&target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().mul_ref(&images[i]);
                    cache.push(next);
                }
                prod = prod.mul_ref(&cache[e as usize]);
            }
            out = out.add_ref(&prod);
        }
        out
    }

    /// Transplant into `target`, sending variable `i` to variable `offset + i`.
    pub fn embed(&self, target: &Arc<VarRing>, offset: usize) -> Poly {
        let n = target.arity();
        assert!(offset + self.ring.arity() <= n);
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; n];
            exps[offset..offset + m.arity()].copy_from_slice(m.exps());
            out.add_term(Monomial::from_exps(exps), c.clone());
        }
        out
    }

    /// Keep only the variable window `[offset, offset + target.arity())`,
    /// returning `None` when any term uses a variable outside it.
    pub fn restrict(&self, target: &Arc<VarRing>, offset: usize) -> Option<Poly> {
        let k = target.arity();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let exps = m.exps();
            for (i, &e) in exps.iter().enumerate() {
                if e != 0 && (i < offset || i >= offset + k) {
                    return None;
                }
            }
            out.add_term(
                Monomial::from_exps(exps[offset..offset + k].to_vec()),
                c.clone(),
            );
        }
        Some(out)
    }

    /// Divide by the leading coefficient under `ord`; zero stays zero.
    pub fn monic(&self, ord: MonomialOrder) -> Poly {
        match self.leading_term_opt(ord) {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Scale to coprime integer coefficients with a positive leading
    /// coefficient under grevlex. Used to prettify generators; never applied
    /// where the exact scale matters.
    pub fn normalized(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut denom_lcm = BigInt::one();
        let mut numer_gcd = BigInt::zero();
        for c in self.terms.values() {
            denom_lcm = denom_lcm.lcm(c.denom());
            numer_gcd = numer_gcd.gcd(c.numer());
        }
        let scale = BigRational::new(denom_lcm, numer_gcd);
        let mut out = self.scale(&scale);
        let (_, lead) = out.leading_term_opt(MonomialOrder::GrevLex).unwrap();
        if lead.is_negative() {
            out = out.neg_ref();
        }
        out
    }

    /// Deterministic rendering with terms in decreasing order under `ord`.
    /// `parse_poly` of the result reproduces the polynomial exactly.
    pub fn canonical_string(&self, ord: MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut mons: Vec<&Monomial> = self.terms.keys().collect();
        mons.sort_by(|a, b| ord.cmp(b, a));
        let mut out = String::new();
        for (idx, m) in mons.iter().enumerate() {
            let c = &self.terms[*m];
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&term_body(&self.ring, m, &c.abs()));
        }
        out
    }
}

fn term_body(ring: &VarRing, mon: &Monomial, coef: &BigRational) -> String {
    let mut parts: Vec<String> = Vec::new();
    if !coef.is_one() || mon.is_one() {
        parts.push(coef.to_string());
    }
    for (i, &e) in mon.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.var_name(i).to_string()),
            _ => parts.push(format!("{}^{}", ring.var_name(i), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string(MonomialOrder::GrevLex))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.add_ref(rhs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.sub_ref(rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.mul_ref(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    fn ring3() -> Arc<VarRing> {
        VarRing::new(vec!["x1", "x2", "x3"]).unwrap()
    }

    #[test]
    fn partial_derivatives_of_the_cone_equation() {
        let r = ring3();
        let f = parse_poly("x1*x2 - x3^2", &r).unwrap();
        assert_eq!(f.partial_derivative(2), parse_poly("-2*x3", &r).unwrap());
        assert_eq!(f.partial_derivative(0), parse_poly("x2", &r).unwrap());
        assert_eq!(Poly::int(&r, 5).partial_derivative(0), Poly::zero(&r));
    }

    #[test]
    fn leading_terms_under_both_orders() {
        let r = ring3();
        let f = parse_poly("x1*x2 - x3^2", &r).unwrap();
        let (m, c) = f.leading_term(MonomialOrder::GrevLex).unwrap();
        assert_eq!(m, Monomial::from_exps(vec![1, 1, 0]));
        assert!(c.is_one());
        let g = parse_poly("x3^2 - x1*x2", &r).unwrap();
        let (m, c) = g.leading_term(MonomialOrder::Lex).unwrap();
        assert_eq!(m, Monomial::from_exps(vec![1, 1, 0]));
        assert_eq!(c, BigRational::from_integer((-1).into()));
        let seven = Poly::int(&r, 7);
        let (m, c) = seven.leading_term(MonomialOrder::GrevLex).unwrap();
        assert!(m.is_one());
        assert_eq!(c, BigRational::from_integer(7.into()));
        assert!(Poly::zero(&r).leading_term(MonomialOrder::GrevLex).is_err());
    }

    #[test]
    fn canonical_strings_match_fixed_forms() {
        let r = ring3();
        let f = parse_poly("x1*x2 - x3^2", &r).unwrap();
        assert_eq!(f.canonical_string(MonomialOrder::GrevLex), "x1*x2 - x3^2");
        assert_eq!(Poly::zero(&r).canonical_string(MonomialOrder::GrevLex), "0");
        let g = parse_poly("-2*x3", &r).unwrap();
        assert_eq!(g.canonical_string(MonomialOrder::GrevLex), "-2*x3");
    }

    #[test]
    fn substitution_evaluates_graph_images() {
        let small = VarRing::new(vec!["q", "p"]).unwrap();
        let r = ring3();
        let f = parse_poly("x3^2 - x1*x2", &r).unwrap();
        let images = vec![
            parse_poly("q^2", &small).unwrap(),
            parse_poly("p^2", &small).unwrap(),
            parse_poly("q*p", &small).unwrap(),
        ];
        assert!(f.substitute(&images).is_zero());
    }

    #[test]
    fn normalization_clears_content_and_sign() {
        let r = ring3();
        let f = parse_poly("-2*x3", &r).unwrap();
        assert_eq!(f.normalized(), parse_poly("x3", &r).unwrap());
        let g = parse_poly("2/3*x1 - 4*x2", &r).unwrap();
        assert_eq!(g.normalized(), parse_poly("x1 - 6*x2", &r).unwrap());
    }
}
