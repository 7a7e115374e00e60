//! Internal Buchberger machinery over free modules.
//!
//! Everything here works on [`VecPoly`]: a module element stored as a vector
//! of `(position, monomial, coefficient)` terms sorted strictly descending
//! under a position-over-term order. The ring case is rank 1. Pair pruning
//! follows the Gebauer–Möller update; the coprimality shortcut is applied
//! only at rank 1, where it is valid.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::polyring::{Monomial, MonomialOrder};

/// A module monomial: basis position plus ring monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct MTerm {
    pub pos: usize,
    pub mon: Monomial,
}

/// Position-over-term order: lower positions dominate, ties go to the base
/// term order. This is an elimination order for any leading block of
/// positions, which is what the syzygy extraction relies on.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ModOrd {
    pub base: MonomialOrder,
}

impl ModOrd {
    pub fn cmp(&self, a: &MTerm, b: &MTerm) -> Ordering {
        match a.pos.cmp(&b.pos) {
            Ordering::Less => Ordering::Greater,
            Ordering::Greater => Ordering::Less,
            Ordering::Equal => self.base.cmp(&a.mon, &b.mon),
        }
    }
}

/// Module element with terms sorted strictly descending under a [`ModOrd`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct VecPoly {
    pub terms: Vec<(MTerm, BigRational)>,
}

impl VecPoly {
    pub fn zero() -> Self {
        VecPoly { terms: Vec::new() }
    }

    pub fn unit(pos: usize, arity: usize) -> Self {
        VecPoly {
            terms: vec![(
                MTerm {
                    pos,
                    mon: Monomial::one(arity),
                },
                BigRational::one(),
            )],
        }
    }

    pub fn from_terms(mut terms: Vec<(MTerm, BigRational)>, ord: &ModOrd) -> Self {
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_by(|(a, _), (b, _)| ord.cmp(b, a));
        // Collapse duplicates (callers may pass unmerged term lists).
        let mut merged: Vec<(MTerm, BigRational)> = Vec::with_capacity(terms.len());
        for (t, c) in terms {
            match merged.last_mut() {
                Some((last, lc)) if *last == t => {
                    *lc += c;
                    if lc.is_zero() {
                        merged.pop();
                    }
                }
                _ => merged.push((t, c)),
            }
        }
        VecPoly { terms: merged }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lt(&self) -> Option<&(MTerm, BigRational)> {
        self.terms.first()
    }

    pub fn scale(&self, c: &BigRational) -> VecPoly {
        if c.is_zero() {
            return VecPoly::zero();
        }
        VecPoly {
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.clone(), a * c))
                .collect(),
        }
    }

    /// `self + coef * x^mon * other`, merged in order.
    pub fn add_scaled(
        &self,
        other: &VecPoly,
        mon: &Monomial,
        coef: &BigRational,
        ord: &ModOrd,
    ) -> VecPoly {
        if coef.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.terms.len() && j < other.terms.len() {
            let (ta, ca) = &self.terms[i];
            let (tb_raw, cb_raw) = &other.terms[j];
            let tb = MTerm {
                pos: tb_raw.pos,
                mon: tb_raw.mon.mul(mon),
            };
            match ord.cmp(ta, &tb) {
                Ordering::Greater => {
                    out.push((ta.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((tb, cb_raw * coef));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca + &(cb_raw * coef);
                    if !c.is_zero() {
                        out.push((tb, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        while i < self.terms.len() {
            out.push(self.terms[i].clone());
            i += 1;
        }
        while j < other.terms.len() {
            let (tb_raw, cb_raw) = &other.terms[j];
            out.push((
                MTerm {
                    pos: tb_raw.pos,
                    mon: tb_raw.mon.mul(mon),
                },
                cb_raw * coef,
            ));
            j += 1;
        }
        VecPoly { terms: out }
    }
}

/// One recorded division step: which reducer, scaled by which term.
pub(crate) type QuotientTerm = (usize, Monomial, BigRational);

/// Full division: returns the remainder (no term divisible by any reducer
/// leading term) and the quotient terms in the order they were applied.
/// Reducers are scanned in slice order, which keeps lifts deterministic.
pub(crate) fn reduce_full(
    target: &VecPoly,
    reducers: &[&VecPoly],
    ord: &ModOrd,
) -> (VecPoly, Vec<QuotientTerm>) {
    let mut work = target.clone();
    let mut rem: Vec<(MTerm, BigRational)> = Vec::new();
    let mut quotients = Vec::new();
    'outer: while let Some((head, hc)) = work.lt().cloned() {
        for (ri, r) in reducers.iter().enumerate() {
            let Some((rlt, rc)) = r.lt() else { continue };
            if rlt.pos == head.pos {
                if let Some(q) = head.mon.try_div(&rlt.mon) {
                    let qc = &hc / rc;
                    work = work.add_scaled(r, &q, &-qc.clone(), ord);
                    quotients.push((ri, q, qc));
                    continue 'outer;
                }
            }
        }
        // No reducer applies: the head moves to the remainder. Heads strictly
        // decrease, so the remainder comes out already sorted.
        rem.push((head, hc));
        work.terms.remove(0);
    }
    (VecPoly { terms: rem }, quotients)
}

struct Elem {
    v: VecPoly,
    /// Cofactor over the input list (positions index the inputs).
    cof: VecPoly,
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: MTerm,
}

/// Result of a Buchberger run: the unique reduced (monic) basis, sorted by
/// ascending leading term, with optional cofactors over the inputs.
pub(crate) struct GbRun {
    pub basis: Vec<VecPoly>,
    pub cofactors: Option<Vec<VecPoly>>,
}

fn pair_lcm(a: &MTerm, b: &MTerm) -> Option<MTerm> {
    if a.pos != b.pos {
        return None;
    }
    Some(MTerm {
        pos: a.pos,
        mon: a.mon.lcm(&b.mon),
    })
}

/// Gebauer–Möller pair update on arrival of basis element `t`.
fn update_pairs(basis: &[Elem], pairs: &mut Vec<Pair>, t: usize, rank: usize) {
    let lt_t = &basis[t].v.lt().expect("nonzero basis element").0;
    let mut candidates: Vec<(usize, MTerm, bool)> = Vec::new();
    for (i, e) in basis.iter().enumerate().take(t) {
        let lt_i = &e.v.lt().expect("nonzero basis element").0;
        if let Some(l) = pair_lcm(lt_i, lt_t) {
            let coprime = rank == 1 && lt_i.mon.is_coprime(&lt_t.mon);
            candidates.push((i, l, coprime));
        }
    }
    // Criteria M and F: drop a candidate whose lcm is divisible by the lcm of
    // another candidate that is still pending or already kept.
    let mut kept: Vec<(usize, MTerm, bool)> = Vec::new();
    for (idx, (i, l, coprime)) in candidates.iter().enumerate() {
        let dominated = |other: &MTerm| other.pos == l.pos && other.mon.divides(&l.mon);
        let pending = candidates
            .iter()
            .skip(idx + 1)
            .any(|(_, l2, _)| dominated(l2));
        let already = kept.iter().any(|(_, l2, _)| dominated(l2));
        if *coprime || !(pending || already) {
            kept.push((*i, l.clone(), *coprime));
        }
    }
    // Criterion B on the old pairs.
    pairs.retain(|p| {
        let l = &p.lcm;
        if !(lt_t.pos == l.pos && lt_t.mon.divides(&l.mon)) {
            return true;
        }
        let li = pair_lcm(basis[p.i].v.lt().map(|(t, _)| t).unwrap(), lt_t);
        let lj = pair_lcm(basis[p.j].v.lt().map(|(t, _)| t).unwrap(), lt_t);
        li.as_ref() == Some(l) || lj.as_ref() == Some(l)
    });
    // The coprimality (product) criterion discards the pair entirely.
    for (i, l, coprime) in kept {
        if !coprime {
            pairs.push(Pair { i, j: t, lcm: l });
        }
    }
}

/// Reduced Gröbner basis of the submodule generated by `inputs`.
///
/// The reduced monic basis is unique for a given order, so the output does
/// not depend on the input order; the cofactor lift does (deterministically).
pub(crate) fn buchberger_run(
    inputs: &[VecPoly],
    ord: &ModOrd,
    rank: usize,
    track: bool,
) -> GbRun {
    let mut basis: Vec<Elem> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let insert = |basis: &mut Vec<Elem>, pairs: &mut Vec<Pair>, v: VecPoly, cof: VecPoly| {
        let lc = v.lt().expect("nonzero").1.clone();
        let inv = lc.recip();
        basis.push(Elem {
            v: v.scale(&inv),
            cof: cof.scale(&inv),
        });
        update_pairs(basis, pairs, basis.len() - 1, rank);
    };

    for (idx, input) in inputs.iter().enumerate() {
        if input.is_zero() {
            continue;
        }
        let cof = if track {
            VecPoly::unit(idx, input.terms[0].0.mon.arity())
        } else {
            VecPoly::zero()
        };
        insert(&mut basis, &mut pairs, input.clone(), cof);
    }

    while !pairs.is_empty() {
        // Normal selection: smallest lcm, ties by index pair.
        let mut best = 0;
        for k in 1..pairs.len() {
            let by_lcm = ord.cmp(&pairs[k].lcm, &pairs[best].lcm);
            if by_lcm == Ordering::Less
                || (by_lcm == Ordering::Equal
                    && (pairs[k].i, pairs[k].j) < (pairs[best].i, pairs[best].j))
            {
                best = k;
            }
        }
        let pair = pairs.swap_remove(best);
        let (fi, fj) = (&basis[pair.i], &basis[pair.j]);
        let lt_i = fi.v.lt().unwrap().0.clone();
        let lt_j = fj.v.lt().unwrap().0.clone();
        let mi = pair.lcm.mon.try_div(&lt_i.mon).unwrap();
        let mj = pair.lcm.mon.try_div(&lt_j.mon).unwrap();
        // Both elements are monic, so the S-vector is a plain difference.
        let one = BigRational::one();
        let s = VecPoly::zero()
            .add_scaled(&fi.v, &mi, &one, ord)
            .add_scaled(&fj.v, &mj, &-one.clone(), ord);
        let s_cof = if track {
            VecPoly::zero()
                .add_scaled(&fi.cof, &mi, &one, ord)
                .add_scaled(&fj.cof, &mj, &-one.clone(), ord)
        } else {
            VecPoly::zero()
        };
        let reducers: Vec<&VecPoly> = basis.iter().map(|e| &e.v).collect();
        let (rem, quots) = reduce_full(&s, &reducers, ord);
        if rem.is_zero() {
            continue;
        }
        let cof = if track {
            let mut c = s_cof;
            for (ri, q, qc) in &quots {
                c = c.add_scaled(&basis[*ri].cof, q, &-qc.clone(), ord);
            }
            c
        } else {
            VecPoly::zero()
        };
        insert(&mut basis, &mut pairs, rem, cof);
    }

    // Minimal heads: sweep ascending and keep elements whose leading term is
    // not divisible by an already-kept one.
    let mut order_idx: Vec<usize> = (0..basis.len()).collect();
    order_idx.sort_by(|&a, &b| ord.cmp(&basis[a].v.lt().unwrap().0, &basis[b].v.lt().unwrap().0));
    let mut kept: Vec<usize> = Vec::new();
    for idx in order_idx {
        let lt = &basis[idx].v.lt().unwrap().0;
        let covered = kept.iter().any(|&k| {
            let klt = &basis[k].v.lt().unwrap().0;
            klt.pos == lt.pos && klt.mon.divides(&lt.mon)
        });
        if !covered {
            kept.push(idx);
        }
    }

    // Tail-reduce each kept element against the other kept ones; minimality
    // of the heads means only tails can change, giving the reduced basis.
    let mut out: Vec<VecPoly> = Vec::with_capacity(kept.len());
    let mut out_cof: Vec<VecPoly> = Vec::with_capacity(kept.len());
    for &idx in &kept {
        let others: Vec<&VecPoly> = kept
            .iter()
            .filter(|&&k| k != idx)
            .map(|&k| &basis[k].v)
            .collect();
        let other_idx: Vec<usize> = kept.iter().filter(|&&k| k != idx).copied().collect();
        let (rem, quots) = reduce_full(&basis[idx].v, &others, ord);
        debug_assert!(!rem.is_zero());
        let mut cof = basis[idx].cof.clone();
        if track {
            for (ri, q, qc) in &quots {
                cof = cof.add_scaled(&basis[other_idx[*ri]].cof, q, &-qc.clone(), ord);
            }
        }
        out.push(rem);
        out_cof.push(cof);
    }

    GbRun {
        basis: out,
        cofactors: if track { Some(out_cof) } else { None },
    }
}
