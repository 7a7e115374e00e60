//! Gröbner bases, normal forms, syzygies, elimination and module kernels.
//!
//! All certificate machinery reduces to a handful of primitives here:
//! reduced Gröbner bases (ring and module level, with optional cofactor
//! tracking), full division with deterministic lifts, syzygy modules via
//! position elimination, and the derived operations (ideal intersection,
//! kernels of ring maps, kernels of matrices over quotients, module equality
//! and membership with witnesses).

mod engine;


use std::sync::Arc;
use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polyring::{Monomial, MonomialOrder, Poly, VarRing};

use engine::{buchberger_run, reduce_full, MTerm, ModOrd, VecPoly};

/// Element of a free module `P^m`; carries vector fields and syzygies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModVec {
    entries: Vec<Poly>,
}

impl ModVec {
    pub fn new(entries: Vec<Poly>) -> Self {
        assert!(!entries.is_empty(), "module vectors need positive rank");
        let ring = entries[0].ring().clone();
        for e in &entries {
            assert!(**e.ring() == *ring, "entries from different rings");
        }
        ModVec { entries }
    }

    pub fn zero(ring: &Arc<VarRing>, rank: usize) -> Self {
        ModVec {
            entries: (0..rank).map(|_| Poly::zero(ring)).collect(),
        }
    }

    pub fn unit(ring: &Arc<VarRing>, rank: usize, pos: usize) -> Self {
        let mut v = Self::zero(ring, rank);
        v.entries[pos] = Poly::constant(ring, num_traits::One::one());
        v
    }

    pub fn ring(&self) -> &Arc<VarRing> {
        self.entries[0].ring()
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &Poly {
        &self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn add_ref(&self, other: &ModVec) -> ModVec {
        assert_eq!(self.rank(), other.rank());
        ModVec {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        }
    }

    pub fn sub_ref(&self, other: &ModVec) -> ModVec {
        assert_eq!(self.rank(), other.rank());
        ModVec {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.sub_ref(b))
                .collect(),
        }
    }

    pub fn neg_ref(&self) -> ModVec {
        ModVec {
            entries: self.entries.iter().map(Poly::neg_ref).collect(),
        }
    }

    pub fn scale_poly(&self, f: &Poly) -> ModVec {
        ModVec {
            entries: self.entries.iter().map(|e| e.mul_ref(f)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> ModVec {
        ModVec {
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
        }
    }

    /// Largest total degree over the entries (0 for the zero vector).
    pub fn total_degree(&self) -> u64 {
        self.entries.iter().map(Poly::total_degree).max().unwrap_or(0)
    }

    /// Clear denominators and content across all entries and flip the sign so
    /// the first nonzero entry has a positive leading coefficient.
    pub fn normalized(&self) -> ModVec {
        if self.is_zero() {
            return self.clone();
        }
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_traits::One;
        let mut denom_lcm = BigInt::one();
        let mut numer_gcd = BigInt::zero();
        for e in &self.entries {
            for (_, c) in e.terms() {
                denom_lcm = denom_lcm.lcm(c.denom());
                numer_gcd = numer_gcd.gcd(c.numer());
            }
        }
        let scale = BigRational::new(denom_lcm, numer_gcd);
        let mut out = self.scale(&scale);
        let lead_sign_negative = out
            .entries
            .iter()
            .find(|e| !e.is_zero())
            .and_then(|e| e.leading_term_opt(MonomialOrder::GrevLex))
            .map(|(_, c)| num_traits::Signed::is_negative(&c))
            .unwrap_or(false);
        if lead_sign_negative {
            out = out.neg_ref();
        }
        out
    }

    /// Deterministic rendering `(e_1, e_2, …)`.
    pub fn canonical_string(&self, ord: MonomialOrder) -> String {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|e| e.canonical_string(ord))
            .collect();
        format!("({})", parts.join(", "))
    }
}

/// Finite generator list with a cached reduced Gröbner basis (grevlex).
#[derive(Debug, Clone)]
pub struct Ideal {
    ring: Arc<VarRing>,
    gens: Vec<Poly>,
    gb: OnceLock<Vec<Poly>>,
}

impl Ideal {
    pub fn new(ring: &Arc<VarRing>, gens: Vec<Poly>) -> Self {
        for g in &gens {
            assert!(**g.ring() == **ring, "generator from a different ring");
        }
        Ideal {
            ring: ring.clone(),
            gens,
            gb: OnceLock::new(),
        }
    }

    pub fn zero(ring: &Arc<VarRing>) -> Self {
        Self::new(ring, Vec::new())
    }

    pub fn ring(&self) -> &Arc<VarRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(Poly::is_zero)
    }

    /// Reduced grevlex Gröbner basis, computed once and cached.
    pub fn gb(&self) -> &[Poly] {
        self.gb
            .get_or_init(|| buchberger(&self.gens, MonomialOrder::GrevLex))
    }

    pub fn gb_under(&self, ord: MonomialOrder) -> Vec<Poly> {
        if ord == MonomialOrder::GrevLex {
            self.gb().to_vec()
        } else {
            buchberger(&self.gens, ord)
        }
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        normal_form(f, self.gb(), MonomialOrder::GrevLex)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Membership with a witness over the original generators: on success the
    /// returned coefficients `c` satisfy `f = Σ c_i · gens_i` exactly. The
    /// lift is the deterministic one produced by division order; callers must
    /// not rely on any particular lift being returned.
    pub fn membership(&self, f: &Poly) -> Option<Vec<Poly>> {
        let gens: Vec<ModVec> = self
            .gens
            .iter()
            .map(|g| ModVec::new(vec![g.clone()]))
            .collect();
        let ctx = ModuleMembership::new(&gens, None).ok()?;
        ctx.express(&ModVec::new(vec![f.clone()]))
    }
}

/// Submodule of `P^rank` with a cached module Gröbner basis (POT/grevlex).
#[derive(Debug, Clone)]
pub struct SubModule {
    ring: Arc<VarRing>,
    rank: usize,
    gens: Vec<ModVec>,
    gb: OnceLock<Vec<ModVec>>,
}

impl SubModule {
    pub fn new(ring: &Arc<VarRing>, rank: usize, gens: Vec<ModVec>) -> Result<Self> {
        for g in &gens {
            if g.rank() != rank {
                return Err(Error::RankMismatch(format!(
                    "generator of rank {} in a module of rank {}",
                    g.rank(),
                    rank
                )));
            }
        }
        Ok(SubModule {
            ring: ring.clone(),
            rank,
            gens,
            gb: OnceLock::new(),
        })
    }

    pub fn ring(&self) -> &Arc<VarRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[ModVec] {
        &self.gens
    }

    pub fn is_zero_module(&self) -> bool {
        self.gens.iter().all(ModVec::is_zero)
    }

    pub fn gb(&self) -> &[ModVec] {
        self.gb
            .get_or_init(|| module_buchberger(&self.gens, MonomialOrder::GrevLex))
    }

    pub fn normal_form(&self, v: &ModVec) -> ModVec {
        module_normal_form(v, self.gb(), MonomialOrder::GrevLex)
    }

    pub fn contains(&self, v: &ModVec) -> bool {
        self.normal_form(v).is_zero()
    }
}

/// Transformation matrix expressing derived elements over input generators.
#[derive(Debug, Clone)]
pub struct Cofactors {
    rows: Vec<Vec<Poly>>,
}

impl Cofactors {
    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.rows
    }

    /// Check `outputs[i] = Σ_j rows[i][j] · inputs[j]` exactly.
    pub fn verify(&self, inputs: &[Poly], outputs: &[Poly]) -> bool {
        if self.rows.len() != outputs.len() {
            return false;
        }
        self.rows.iter().zip(outputs).all(|(row, out)| {
            let mut acc = Poly::zero(out.ring());
            for (c, g) in row.iter().zip(inputs) {
                acc = acc.add_ref(&c.mul_ref(g));
            }
            acc == *out
        })
    }
}

fn poly_to_vecpoly(f: &Poly, ord: &ModOrd) -> VecPoly {
    VecPoly::from_terms(
        f.terms()
            .map(|(m, c)| (MTerm { pos: 0, mon: m.clone() }, c.clone()))
            .collect(),
        ord,
    )
}

fn vecpoly_to_poly(v: &VecPoly, ring: &Arc<VarRing>) -> Poly {
    Poly::from_terms(
        ring,
        v.terms
            .iter()
            .map(|(t, c)| (t.mon.clone(), c.clone())),
    )
}

fn modvec_to_vecpoly(v: &ModVec, ord: &ModOrd) -> VecPoly {
    let mut terms = Vec::new();
    for (pos, e) in v.entries().iter().enumerate() {
        for (m, c) in e.terms() {
            terms.push((MTerm { pos, mon: m.clone() }, c.clone()));
        }
    }
    VecPoly::from_terms(terms, ord)
}

fn vecpoly_to_modvec(v: &VecPoly, ring: &Arc<VarRing>, rank: usize) -> ModVec {
    let mut entries: Vec<Vec<(Monomial, BigRational)>> = vec![Vec::new(); rank];
    for (t, c) in &v.terms {
        entries[t.pos].push((t.mon.clone(), c.clone()));
    }
    ModVec::new(
        entries
            .into_iter()
            .map(|ts| Poly::from_terms(ring, ts))
            .collect(),
    )
}

/// Reduced Gröbner basis of the ideal generated by `gens`, monic, sorted by
/// ascending leading term. The result is independent of generator order.
pub fn buchberger(gens: &[Poly], ord: MonomialOrder) -> Vec<Poly> {
    let Some(ring) = gens.first().map(|g| g.ring().clone()) else {
        return Vec::new();
    };
    let mord = ModOrd { base: ord };
    let inputs: Vec<VecPoly> = gens.iter().map(|g| poly_to_vecpoly(g, &mord)).collect();
    let run = buchberger_run(&inputs, &mord, 1, false);
    run.basis
        .iter()
        .map(|v| vecpoly_to_poly(v, &ring))
        .collect()
}

/// Reduced Gröbner basis together with the exact transformation matrix:
/// `gb[i] = Σ_j cofactors.rows[i][j] · gens[j]`.
pub fn gb_with_cofactors(gens: &[Poly], ord: MonomialOrder) -> (Vec<Poly>, Cofactors) {
    let Some(ring) = gens.first().map(|g| g.ring().clone()) else {
        return (Vec::new(), Cofactors { rows: Vec::new() });
    };
    let mord = ModOrd { base: ord };
    let inputs: Vec<VecPoly> = gens.iter().map(|g| poly_to_vecpoly(g, &mord)).collect();
    let run = buchberger_run(&inputs, &mord, 1, true);
    let basis: Vec<Poly> = run
        .basis
        .iter()
        .map(|v| vecpoly_to_poly(v, &ring))
        .collect();
    let rows = run
        .cofactors
        .unwrap()
        .iter()
        .map(|c| vecpoly_to_modvec(c, &ring, gens.len()).entries().to_vec())
        .collect();
    (basis, Cofactors { rows })
}

/// Remainder of `f` under full division by `gb`: no term of the result is
/// divisible by any leading term of `gb`, and `f - result` lies in the span.
pub fn normal_form(f: &Poly, gb: &[Poly], ord: MonomialOrder) -> Poly {
    let mord = ModOrd { base: ord };
    let target = poly_to_vecpoly(f, &mord);
    let reducers: Vec<VecPoly> = gb.iter().map(|g| poly_to_vecpoly(g, &mord)).collect();
    let refs: Vec<&VecPoly> = reducers.iter().collect();
    let (rem, _) = reduce_full(&target, &refs, &mord);
    vecpoly_to_poly(&rem, f.ring())
}

/// Reduced module Gröbner basis under POT over `ord`.
pub fn module_buchberger(gens: &[ModVec], ord: MonomialOrder) -> Vec<ModVec> {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let (ring, rank) = (first.ring().clone(), first.rank());
    let mord = ModOrd { base: ord };
    let inputs: Vec<VecPoly> = gens.iter().map(|g| modvec_to_vecpoly(g, &mord)).collect();
    let run = buchberger_run(&inputs, &mord, rank, false);
    run.basis
        .iter()
        .map(|v| vecpoly_to_modvec(v, &ring, rank))
        .collect()
}

/// Module normal form under POT over `ord`.
pub fn module_normal_form(v: &ModVec, gb: &[ModVec], ord: MonomialOrder) -> ModVec {
    let mord = ModOrd { base: ord };
    let target = modvec_to_vecpoly(v, &mord);
    let reducers: Vec<VecPoly> = gb.iter().map(|g| modvec_to_vecpoly(g, &mord)).collect();
    let refs: Vec<&VecPoly> = reducers.iter().collect();
    let (rem, _) = reduce_full(&target, &refs, &mord);
    vecpoly_to_modvec(&rem, v.ring(), v.rank())
}

/// Membership and witness extraction for a fixed generator list, optionally
/// working modulo `ideal · P^rank`. Builds one tracked module basis up front
/// so repeated queries stay cheap.
pub struct ModuleMembership {
    ring: Arc<VarRing>,
    rank: usize,
    n_gens: usize,
    all_gens: Vec<ModVec>,
    gb: Vec<VecPoly>,
    cof: Vec<VecPoly>,
    mord: ModOrd,
}

impl ModuleMembership {
    pub fn new(gens: &[ModVec], ideal: Option<&Ideal>) -> Result<Self> {
        let (ring, rank) = match (gens.first(), ideal) {
            (Some(g), _) => (g.ring().clone(), g.rank()),
            (None, Some(i)) => (i.ring().clone(), 1),
            (None, None) => {
                return Err(Error::Invalid(
                    "membership context needs generators or an ideal".into(),
                ))
            }
        };
        for g in gens {
            if g.rank() != rank {
                return Err(Error::RankMismatch("mixed ranks in generator list".into()));
            }
        }
        let mut all_gens: Vec<ModVec> = gens.to_vec();
        if let Some(ideal) = ideal {
            for f in ideal.generators() {
                if f.is_zero() {
                    continue;
                }
                for pos in 0..rank {
                    all_gens.push(ModVec::unit(&ring, rank, pos).scale_poly(f));
                }
            }
        }
        let mord = ModOrd {
            base: MonomialOrder::GrevLex,
        };
        let inputs: Vec<VecPoly> = all_gens
            .iter()
            .map(|g| modvec_to_vecpoly(g, &mord))
            .collect();
        let run = buchberger_run(&inputs, &mord, rank, true);
        Ok(ModuleMembership {
            ring,
            rank,
            n_gens: gens.len(),
            all_gens,
            gb: run.basis,
            cof: run.cofactors.unwrap(),
            mord,
        })
    }

    pub fn reduce(&self, v: &ModVec) -> ModVec {
        let target = modvec_to_vecpoly(v, &self.mord);
        let refs: Vec<&VecPoly> = self.gb.iter().collect();
        let (rem, _) = reduce_full(&target, &refs, &self.mord);
        vecpoly_to_modvec(&rem, &self.ring, self.rank)
    }

    pub fn contains(&self, v: &ModVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coefficients over the original generators with
    /// `v ≡ Σ cᵢ · gensᵢ` modulo the ideal block, or `None` if `v` is not in
    /// the span. The lift is deterministic but not unique.
    pub fn express(&self, v: &ModVec) -> Option<Vec<Poly>> {
        let target = modvec_to_vecpoly(v, &self.mord);
        let refs: Vec<&VecPoly> = self.gb.iter().collect();
        let (rem, quots) = reduce_full(&target, &refs, &self.mord);
        if !rem.is_zero() {
            return None;
        }
        // Compose division quotients with the basis cofactors.
        let mut total = VecPoly::zero();
        for (ri, q, qc) in &quots {
            total = total.add_scaled(&self.cof[*ri], q, qc, &self.mord);
        }
        let over_all = vecpoly_to_modvec(&total, &self.ring, self.all_gens.len().max(1));
        Some(over_all.entries()[..self.n_gens].to_vec())
    }
}

/// `true` iff `f` reduces to zero; the witness row expresses `f` over the
/// ideal's generators when it does.
pub fn ideal_membership(f: &Poly, ideal: &Ideal) -> (bool, Option<Vec<Poly>>) {
    let witness = ideal.membership(f);
    (witness.is_some(), witness)
}

fn fresh_name(base: &str, taken: &[String]) -> String {
    let mut name = base.to_string();
    while taken.iter().any(|t| t == &name) {
        name.push('_');
    }
    name
}

/// Intersection `I ∩ J` via a single auxiliary variable `t` with an
/// elimination order (`t` dominates): `(t·I + (1−t)·J) ∩ P`.
pub fn ideal_intersection(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    if **a.ring() != **b.ring() {
        return Err(Error::RingMismatch(
            "ideal intersection needs a common ring".into(),
        ));
    }
    let ring = a.ring();
    let mut vars: Vec<String> = vec![fresh_name("t", ring.var_names())];
    vars.extend(ring.var_names().iter().cloned());
    let ext = VarRing::new(vars)?;
    let t = Poly::var(&ext, 0);
    let one = Poly::int(&ext, 1);
    let one_minus_t = one.sub_ref(&t);
    let mut gens = Vec::new();
    for f in a.generators() {
        gens.push(t.mul_ref(&f.embed(&ext, 1)));
    }
    for g in b.generators() {
        gens.push(one_minus_t.mul_ref(&g.embed(&ext, 1)));
    }
    let gb = buchberger(&gens, MonomialOrder::Elimination { block: 1 });
    let mut kept = Vec::new();
    for e in gb {
        if let Some(down) = e.restrict(ring, 1) {
            kept.push(down);
        }
    }
    Ok(Ideal::new(ring, kept))
}

/// Kernel of the ring map `domain → R`, `xᵢ ↦ images[i]`, via the graph
/// ideal: eliminate the `R` variables from `(xᵢ − images[i])`.
pub fn ring_map_kernel(images: &[Poly], domain: &Arc<VarRing>) -> Result<Ideal> {
    if images.is_empty() {
        return Err(Error::Invalid("ring map needs at least one image".into()));
    }
    if images.len() != domain.arity() {
        return Err(Error::Invalid(format!(
            "{} images for a domain of arity {}",
            images.len(),
            domain.arity()
        )));
    }
    let source = images[0].ring().clone();
    for f in images {
        if **f.ring() != *source {
            return Err(Error::RingMismatch("images from different rings".into()));
        }
    }
    for v in domain.var_names() {
        if source.var_index(v).is_some() {
            return Err(Error::Invalid(format!(
                "variable `{v}` appears in both domain and codomain"
            )));
        }
    }
    let m = source.arity();
    let mut vars: Vec<String> = source.var_names().to_vec();
    vars.extend(domain.var_names().iter().cloned());
    let ext = VarRing::new(vars)?;
    let gens: Vec<Poly> = images
        .iter()
        .enumerate()
        .map(|(i, u)| Poly::var(&ext, m + i).sub_ref(&u.embed(&ext, 0)))
        .collect();
    let gb = buchberger(&gens, MonomialOrder::Elimination { block: m });
    let mut kept = Vec::new();
    for e in gb {
        if let Some(down) = e.restrict(domain, m) {
            kept.push(down);
        }
    }
    Ok(Ideal::new(domain, kept))
}

/// Generators of the full syzygy module `{(c₁,…,c_s) : Σ cᵢ·vᵢ = 0}`.
///
/// Computed from a module basis of the vectors augmented with unit tails;
/// POT makes the leading block an elimination block, so basis elements with
/// zero head part generate (indeed form a basis of) the syzygies.
pub fn syzygies(vectors: &[ModVec]) -> Result<SubModule> {
    let Some(first) = vectors.first() else {
        return Err(Error::Invalid("syzygies of an empty list".into()));
    };
    let ring = first.ring().clone();
    let m = first.rank();
    let s = vectors.len();
    for v in vectors {
        if v.rank() != m {
            return Err(Error::RankMismatch("mixed ranks in syzygy input".into()));
        }
    }
    let mut augmented = Vec::with_capacity(s);
    for (i, v) in vectors.iter().enumerate() {
        let mut entries = v.entries().to_vec();
        for j in 0..s {
            entries.push(if j == i {
                Poly::constant(&ring, num_traits::One::one())
            } else {
                Poly::zero(&ring)
            });
        }
        augmented.push(ModVec::new(entries));
    }
    let gb = module_buchberger(&augmented, MonomialOrder::GrevLex);
    let mut syz = Vec::new();
    for e in gb {
        if e.entries()[..m].iter().all(Poly::is_zero) {
            syz.push(ModVec::new(e.entries()[m..].to_vec()));
        }
    }
    SubModule::new(&ring, s, syz)
}

/// Kernel `{v ∈ P^q : M·v = 0}` of a `p×q` matrix, i.e. the syzygies of its
/// columns.
pub fn matrix_kernel(rows: &[Vec<Poly>]) -> Result<SubModule> {
    let p = rows.len();
    if p == 0 {
        return Err(Error::Invalid("matrix kernel of an empty matrix".into()));
    }
    let q = rows[0].len();
    if q == 0 || rows.iter().any(|r| r.len() != q) {
        return Err(Error::Invalid("ragged or empty matrix".into()));
    }
    let columns: Vec<ModVec> = (0..q)
        .map(|j| ModVec::new(rows.iter().map(|r| r[j].clone()).collect()))
        .collect();
    syzygies(&columns)
}

/// Kernel of `M` read modulo `ideal`: syzygies of the columns of `M`
/// augmented with `f·eᵢ` for every ideal generator `f`, projected back onto
/// the column coordinates.
pub fn kernel_over_quotient(rows: &[Vec<Poly>], ideal: &Ideal) -> Result<SubModule> {
    let p = rows.len();
    if p == 0 {
        return Err(Error::Invalid("matrix kernel of an empty matrix".into()));
    }
    let q = rows[0].len();
    if q == 0 || rows.iter().any(|r| r.len() != q) {
        return Err(Error::Invalid("ragged or empty matrix".into()));
    }
    let ring = rows[0][0].ring().clone();
    let mut columns: Vec<ModVec> = (0..q)
        .map(|j| ModVec::new(rows.iter().map(|r| r[j].clone()).collect()))
        .collect();
    for f in ideal.generators() {
        if f.is_zero() {
            continue;
        }
        for pos in 0..p {
            columns.push(ModVec::unit(&ring, p, pos).scale_poly(f));
        }
    }
    let syz = syzygies(&columns)?;
    let mut projected = Vec::new();
    for s in syz.generators() {
        let head = ModVec::new(s.entries()[..q].to_vec());
        if !head.is_zero() {
            projected.push(head);
        }
    }
    SubModule::new(&ring, q, projected)
}

/// Mutual containment of two submodules modulo `ideal · P^rank`.
pub fn module_equal(u: &SubModule, v: &SubModule, ideal: &Ideal) -> Result<bool> {
    if u.rank() != v.rank() {
        return Err(Error::RankMismatch(format!(
            "cannot compare modules of rank {} and {}",
            u.rank(),
            v.rank()
        )));
    }
    module_equal_gens(u.generators(), v.generators(), u.rank(), ideal)
}

pub fn module_equal_gens(
    u: &[ModVec],
    v: &[ModVec],
    rank: usize,
    ideal: &Ideal,
) -> Result<bool> {
    let ring = ideal.ring();
    let pad = |gens: &[ModVec]| -> Vec<ModVec> {
        if gens.is_empty() {
            vec![ModVec::zero(ring, rank)]
        } else {
            gens.to_vec()
        }
    };
    let into_v = ModuleMembership::new(&pad(v), Some(ideal))?;
    if !u.iter().all(|g| into_v.contains(g)) {
        return Ok(false);
    }
    let into_u = ModuleMembership::new(&pad(u), Some(ideal))?;
    Ok(v.iter().all(|g| into_u.contains(g)))
}

/// Coefficients `c` with `v ≡ Σ c_k · gens_k` modulo `ideal · P^rank`, or
/// `None` when `v` is not in the span. Absence is a value, not an error.
pub fn express_in_generators(
    v: &ModVec,
    gens: &[ModVec],
    ideal: &Ideal,
) -> Result<Option<Vec<Poly>>> {
    let ctx = ModuleMembership::new(gens, Some(ideal))?;
    Ok(ctx.express(v))
}

/// Deterministic sort key used for generator lists: ascending total degree,
/// then the canonical string. Keeps golden outputs stable.
pub fn sort_modvecs(list: &mut [ModVec]) {
    list.sort_by(|a, b| {
        let da = a.total_degree();
        let db = b.total_degree();
        da.cmp(&db).then_with(|| {
            a.canonical_string(MonomialOrder::GrevLex)
                .cmp(&b.canonical_string(MonomialOrder::GrevLex))
        })
    });
}

/// Greedy minimalization: keep each vector not lying in the exact span of
/// the already-kept ones (optionally modulo `ideal · P^rank`).
pub fn prune_redundant(
    list: &[ModVec],
    rank: usize,
    ring: &Arc<VarRing>,
    ideal: Option<&Ideal>,
) -> Vec<ModVec> {
    let mut kept: Vec<ModVec> = Vec::new();
    for v in list {
        if v.is_zero() {
            continue;
        }
        let redundant = if kept.is_empty() {
            match ideal {
                Some(i) => ModuleMembership::new(&[ModVec::zero(ring, rank)], Some(i))
                    .map(|ctx| ctx.contains(v))
                    .unwrap_or(false),
                None => false,
            }
        } else {
            ModuleMembership::new(&kept, ideal)
                .map(|ctx| ctx.contains(v))
                .unwrap_or(false)
        };
        if !redundant {
            kept.push(v.clone());
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    fn ring3() -> Arc<VarRing> {
        VarRing::new(vec!["x1", "x2", "x3"]).unwrap()
    }

    fn p(s: &str, r: &Arc<VarRing>) -> Poly {
        parse_poly(s, r).unwrap()
    }

    #[test]
    fn principal_ideal_is_its_own_basis() {
        let r = ring3();
        let f = p("x1*x2 - x3^2", &r);
        let gb = buchberger(&[f.clone()], MonomialOrder::GrevLex);
        assert_eq!(gb, vec![f]);
    }

    #[test]
    fn linear_ideal_reduces_to_coordinates() {
        let r = ring3();
        let gb = buchberger(
            &[p("x1", &r), p("x1 + x2", &r)],
            MonomialOrder::GrevLex,
        );
        assert_eq!(gb, vec![p("x2", &r), p("x1", &r)]);
    }

    #[test]
    fn normal_forms_against_the_cone() {
        let r = ring3();
        let i = Ideal::new(&r, vec![p("x1*x2 - x3^2", &r)]);
        assert!(i.normal_form(&p("x1*x2 - x3^2", &r)).is_zero());
        assert_eq!(i.normal_form(&p("x1*x2", &r)), p("x3^2", &r));
        assert_eq!(i.normal_form(&p("x1", &r)), p("x1", &r));
    }

    #[test]
    fn membership_with_witness() {
        let r = ring3();
        let f = p("x1*x2 - x3^2", &r);
        let i = Ideal::new(&r, vec![f.clone()]);
        let g = f.mul_ref(&p("x3", &r));
        let (inside, witness) = ideal_membership(&g, &i);
        assert!(inside);
        let w = witness.unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].mul_ref(&f), g);
        let (outside, none) = ideal_membership(&p("x3", &r), &i);
        assert!(!outside);
        assert!(none.is_none());
    }

    #[test]
    fn cofactors_reproduce_the_basis() {
        let r = ring3();
        let gens = vec![p("x1", &r), p("x1 + x2", &r)];
        let (gb, cof) = gb_with_cofactors(&gens, MonomialOrder::GrevLex);
        assert!(cof.verify(&gens, &gb));
        assert_eq!(gb, vec![p("x2", &r), p("x1", &r)]);
    }

    #[test]
    fn intersection_of_coprime_principal_ideals() {
        let r = ring3();
        let a = Ideal::new(&r, vec![p("x1", &r)]);
        let b = Ideal::new(&r, vec![p("x2", &r)]);
        let meet = ideal_intersection(&a, &b).unwrap();
        let expected = Ideal::new(&r, vec![p("x1*x2", &r)]);
        assert_eq!(meet.gb(), expected.gb());
    }

    #[test]
    fn self_intersection_is_identity_on_bases() {
        let r = ring3();
        let a = Ideal::new(&r, vec![p("x1*x2 - x3^2", &r), p("x1^2", &r)]);
        let meet = ideal_intersection(&a, &a).unwrap();
        assert_eq!(meet.gb(), a.gb());
    }

    #[test]
    fn kernel_of_the_squaring_map() {
        let qp = VarRing::new(vec!["q", "p"]).unwrap();
        let dom = ring3();
        let images = vec![p("q^2", &qp), p("p^2", &qp), p("q*p", &qp)];
        let ker = ring_map_kernel(&images, &dom).unwrap();
        let expected = Ideal::new(&dom, vec![p("x3^2 - x1*x2", &dom)]);
        assert_eq!(ker.gb(), expected.gb());
    }

    #[test]
    fn kernel_of_a_coordinate_map_is_zero() {
        let qp = VarRing::new(vec!["q", "p"]).unwrap();
        let dom = VarRing::new(vec!["x1", "x2"]).unwrap();
        let images = vec![p("q", &qp), p("p", &qp)];
        let ker = ring_map_kernel(&images, &dom).unwrap();
        assert!(ker.gb().is_empty());
    }

    #[test]
    fn kernel_of_the_cusp_parametrization() {
        let t = VarRing::new(vec!["q"]).unwrap();
        let dom = VarRing::new(vec!["x1", "x2"]).unwrap();
        let images = vec![p("q^2", &t), p("q^3", &t)];
        let ker = ring_map_kernel(&images, &dom).unwrap();
        // Oracle: both inclusions via membership after elimination.
        let expected = Ideal::new(&dom, vec![p("x2^2 - x1^3", &dom)]);
        for g in ker.generators() {
            assert!(expected.contains(g));
        }
        for g in expected.generators() {
            assert!(ker.contains(g));
        }
        // And the defining property: generators vanish under substitution.
        for g in ker.generators() {
            assert!(g.substitute(&images).is_zero());
        }
    }

    #[test]
    fn syzygies_of_the_cone_gradient() {
        let r = ring3();
        let grads = vec![
            ModVec::new(vec![p("x2", &r)]),
            ModVec::new(vec![p("x1", &r)]),
            ModVec::new(vec![p("-2*x3", &r)]),
        ];
        let syz = syzygies(&grads).unwrap();
        assert!(!syz.generators().is_empty());
        for s in syz.generators() {
            let mut acc = Poly::zero(&r);
            for (c, v) in s.entries().iter().zip(&grads) {
                acc = acc.add_ref(&c.mul_ref(v.entry(0)));
            }
            assert!(acc.is_zero(), "syzygy fails to annihilate");
        }
        // (x1, -x2, 0)-type Koszul syzygy is in the module.
        let koszul = ModVec::new(vec![p("x1", &r), p("-x2", &r), p("0", &r)]);
        assert!(syz.contains(&koszul));
    }

    #[test]
    fn syzygies_of_a_nonzerodivisor_vanish() {
        let r = ring3();
        let syz = syzygies(&[ModVec::new(vec![p("x1*x2 - x3^2", &r)])]).unwrap();
        assert!(syz.is_zero_module());
    }

    #[test]
    fn repeated_vector_gives_the_obvious_syzygy() {
        let r = ring3();
        let v = ModVec::new(vec![p("x1", &r), p("x3", &r)]);
        let syz = syzygies(&[v.clone(), v]).unwrap();
        let expected = ModVec::new(vec![p("1", &r), p("-1", &r)]);
        assert!(syz.contains(&expected));
    }

    #[test]
    fn kernel_of_identity_matrix_is_zero() {
        let r = ring3();
        let one = p("1", &r);
        let zero = Poly::zero(&r);
        let rows = vec![
            vec![one.clone(), zero.clone()],
            vec![zero.clone(), one.clone()],
        ];
        let ker = matrix_kernel(&rows).unwrap();
        assert!(ker.is_zero_module());
    }

    #[test]
    fn kernel_of_a_row_vector_is_the_koszul_syzygy() {
        let r = ring3();
        let rows = vec![vec![p("x1", &r), p("x2", &r)]];
        let ker = matrix_kernel(&rows).unwrap();
        let expected = ModVec::new(vec![p("x2", &r), p("-x1", &r)]);
        assert!(ker.contains(&expected));
        for g in ker.generators() {
            let acc = g.entry(0).mul_ref(&p("x1", &r)).add_ref(&g.entry(1).mul_ref(&p("x2", &r)));
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn quotient_kernel_of_zero_ideal_matches_free_kernel() {
        let r = ring3();
        let rows = vec![vec![p("x1", &r), p("x2", &r)]];
        let free = matrix_kernel(&rows).unwrap();
        let quot = kernel_over_quotient(&rows, &Ideal::zero(&r)).unwrap();
        let i0 = Ideal::zero(&r);
        assert!(module_equal(&free, &quot, &i0).unwrap());
    }

    #[test]
    fn quotient_kernel_of_the_generator_itself_is_everything() {
        let r = ring3();
        let f = p("x1*x2 - x3^2", &r);
        let i = Ideal::new(&r, vec![f.clone()]);
        let ker = kernel_over_quotient(&[vec![f]], &i).unwrap();
        let full = SubModule::new(&r, 1, vec![ModVec::new(vec![p("1", &r)])]).unwrap();
        assert!(module_equal(&ker, &full, &i).unwrap());
    }

    #[test]
    fn module_equality_distinguishes_scalar_rows() {
        let r = ring3();
        let i0 = Ideal::zero(&r);
        let u = SubModule::new(&r, 2, vec![ModVec::new(vec![p("x1", &r), p("0", &r)])]).unwrap();
        let v = SubModule::new(&r, 2, vec![ModVec::new(vec![p("x2", &r), p("0", &r)])]).unwrap();
        assert!(!module_equal(&u, &v, &i0).unwrap());
        assert!(module_equal(&u, &u, &i0).unwrap());
        let w = SubModule::new(&r, 3, vec![]).unwrap();
        assert!(module_equal(&u, &w, &i0).is_err());
    }

    #[test]
    fn express_membership_of_a_generator() {
        let r = ring3();
        let i = Ideal::new(&r, vec![p("x1*x2 - x3^2", &r)]);
        let gens = vec![
            ModVec::new(vec![p("x1", &r), p("0", &r)]),
            ModVec::new(vec![p("0", &r), p("x2", &r)]),
        ];
        let c = express_in_generators(&gens[0], &gens, &i).unwrap().unwrap();
        // Re-multiplication reproduces the vector modulo the ideal.
        let mut acc = ModVec::zero(&r, 2);
        for (ck, g) in c.iter().zip(&gens) {
            acc = acc.add_ref(&g.scale_poly(ck));
        }
        let diff = gens[0].sub_ref(&acc);
        assert!(diff.entries().iter().all(|e| i.contains(e)));
    }
}
