//! Poisson structures on a polynomial ring: bracket evaluation, the Jacobi
//! identity, Poisson ideals with their witness symbols, hamiltonian vector
//! fields and commutators of fields.
//!
//! The sign convention is fixed once: `hamiltonian_field(a)` is the vector
//! field `{a, ·}`, so applying it to `b` gives `bracket(a, b)`.

use std::sync::Arc;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::gbengine::{Ideal, ModVec, ModuleMembership};
use crate::polyring::{Poly, VarRing};

/// Antisymmetric matrix of brackets of coordinates, `pi[i][j] = {x^i, x^j}`.
#[derive(Debug, Clone)]
pub struct PoissonStructure {
    ring: Arc<VarRing>,
    pi: Vec<Vec<Poly>>,
    jacobi: OnceLock<std::result::Result<(), (usize, usize, usize)>>,
}

impl PoissonStructure {
    /// Build from the strict upper triangle; antisymmetry is filled in.
    pub fn from_upper<I>(ring: &Arc<VarRing>, upper: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), Poly)>,
    {
        let n = ring.arity();
        let mut pi = vec![vec![Poly::zero(ring); n]; n];
        for ((i, j), f) in upper {
            if i >= j || j >= n {
                return Err(Error::Invalid(format!(
                    "bracket entry ({i}, {j}) is not strictly upper triangular"
                )));
            }
            if **f.ring() != **ring {
                return Err(Error::RingMismatch("bracket entry from another ring".into()));
            }
            pi[j][i] = f.neg_ref();
            pi[i][j] = f;
        }
        Ok(PoissonStructure {
            ring: ring.clone(),
            pi,
            jacobi: OnceLock::new(),
        })
    }

    /// The canonical structure on `k[q¹..q^m, p¹..p^m]`: `{qᵢ, pᵢ} = 1`.
    pub fn canonical(ring: &Arc<VarRing>) -> Result<Self> {
        let n = ring.arity();
        if n % 2 != 0 {
            return Err(Error::Invalid(
                "canonical structure needs an even number of variables".into(),
            ));
        }
        let m = n / 2;
        let one = Poly::int(ring, 1);
        Self::from_upper(ring, (0..m).map(|i| ((i, m + i), one.clone())))
    }

    pub fn ring(&self) -> &Arc<VarRing> {
        &self.ring
    }

    pub fn matrix(&self) -> &[Vec<Poly>] {
        &self.pi
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.pi[i][j]
    }

    /// `{a, b} = Σ_{i,j} Π^{ij} ∂a/∂x^i ∂b/∂x^j`.
    pub fn bracket(&self, a: &Poly, b: &Poly) -> Poly {
        assert!(**a.ring() == *self.ring && **b.ring() == *self.ring);
        let n = self.ring.arity();
        let da: Vec<Poly> = (0..n).map(|i| a.partial_derivative(i)).collect();
        let db: Vec<Poly> = (0..n).map(|j| b.partial_derivative(j)).collect();
        let mut acc = Poly::zero(&self.ring);
        for i in 0..n {
            if da[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if i == j || self.pi[i][j].is_zero() || db[j].is_zero() {
                    continue;
                }
                acc = acc.add_ref(&self.pi[i][j].mul_ref(&da[i]).mul_ref(&db[j]));
            }
        }
        acc
    }

    /// Cyclic sum `{x^i,{x^j,x^k}} + {x^j,{x^k,x^i}} + {x^k,{x^i,x^j}}`.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> Poly {
        let xi = Poly::var(&self.ring, i);
        let xj = Poly::var(&self.ring, j);
        let xk = Poly::var(&self.ring, k);
        self.bracket(&xi, &self.bracket(&xj, &xk))
            .add_ref(&self.bracket(&xj, &self.bracket(&xk, &xi)))
            .add_ref(&self.bracket(&xk, &self.bracket(&xi, &xj)))
    }

    /// Checks the Jacobi identity on all coordinate triples (which settles it
    /// for the whole bracket). Returns the first failing triple.
    pub fn jacobi_check(&self) -> std::result::Result<(), (usize, usize, usize)> {
        *self.jacobi.get_or_init(|| {
            let n = self.ring.arity();
            for i in 0..n {
                for j in (i + 1)..n {
                    for k in (j + 1)..n {
                        if !self.jacobiator(i, j, k).is_zero() {
                            return Err((i, j, k));
                        }
                    }
                }
            }
            Ok(())
        })
    }

    /// Hamiltonian field of `a`: the vector with j-th entry `{a, x^j}`.
    pub fn hamiltonian_field(&self, a: &Poly) -> ModVec {
        let n = self.ring.arity();
        ModVec::new(
            (0..n)
                .map(|j| self.bracket(a, &Poly::var(&self.ring, j)))
                .collect(),
        )
    }

    /// The fields `{x^1, ·}, …, {x^n, ·}` generating the hamiltonian span.
    pub fn coordinate_hamiltonians(&self) -> Vec<ModVec> {
        (0..self.ring.arity())
            .map(|i| self.hamiltonian_field(&Poly::var(&self.ring, i)))
            .collect()
    }
}

/// Witness symbols `Z` with `{x^i, f_μ} = Σ_ν Z^{iν}_μ f_ν` exactly.
///
/// The symbols come from the deterministic membership lift and are in
/// general not unique.
#[derive(Debug, Clone)]
pub struct PoissoffelWitness {
    /// `symbols[i][mu]` is the coefficient row over the ideal generators.
    pub symbols: Vec<Vec<Vec<Poly>>>,
}

impl PoissoffelWitness {
    pub fn all_zero(&self) -> bool {
        self.symbols.iter().flatten().flatten().all(Poly::is_zero)
    }

    /// Replay the defining identity `{x^i, f_μ} = Σ_ν Z^{iν}_μ f_ν`.
    pub fn verify(&self, ideal: &Ideal, pi: &PoissonStructure) -> bool {
        let ring = ideal.ring();
        for (i, per_gen) in self.symbols.iter().enumerate() {
            let xi = Poly::var(ring, i);
            for (mu, row) in per_gen.iter().enumerate() {
                let lhs = pi.bracket(&xi, &ideal.generators()[mu]);
                let mut rhs = Poly::zero(ring);
                for (z, f) in row.iter().zip(ideal.generators()) {
                    rhs = rhs.add_ref(&z.mul_ref(f));
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

/// Outcome of the Poisson-ideal test `{I, P} ⊆ I`.
#[derive(Debug, Clone)]
pub struct PoissonIdealCheck {
    pub passed: bool,
    pub witness: Option<PoissoffelWitness>,
    /// First failing pair `(variable, generator)` with its residual bracket.
    pub failure: Option<(usize, usize, Poly)>,
}

/// Check `{x^i, f_μ} ∈ I` for every coordinate and generator, extracting the
/// witness symbols from membership cofactors.
pub fn poisson_ideal_check(ideal: &Ideal, pi: &PoissonStructure) -> PoissonIdealCheck {
    let ring = ideal.ring();
    let gens = ideal.generators();
    let rank1: Vec<ModVec> = gens.iter().map(|g| ModVec::new(vec![g.clone()])).collect();
    let ctx = if rank1.is_empty() {
        None
    } else {
        Some(ModuleMembership::new(&rank1, None).expect("rank-1 context"))
    };
    let mut symbols = Vec::new();
    for i in 0..ring.arity() {
        let xi = Poly::var(ring, i);
        let mut per_gen = Vec::new();
        for (mu, f) in gens.iter().enumerate() {
            let b = pi.bracket(&xi, f);
            let expressed = match &ctx {
                None => {
                    if b.is_zero() {
                        Some(Vec::new())
                    } else {
                        None
                    }
                }
                Some(ctx) => ctx.express(&ModVec::new(vec![b.clone()])),
            };
            match expressed {
                Some(row) => per_gen.push(row),
                None => {
                    return PoissonIdealCheck {
                        passed: false,
                        witness: None,
                        failure: Some((i, mu, b)),
                    }
                }
            }
        }
        symbols.push(per_gen);
    }
    PoissonIdealCheck {
        passed: true,
        witness: Some(PoissoffelWitness { symbols }),
        failure: None,
    }
}

/// `X(a) = Σ_j X^j ∂a/∂x^j`.
pub fn apply_field(field: &ModVec, a: &Poly) -> Poly {
    let ring = a.ring();
    assert_eq!(field.rank(), ring.arity(), "field rank must match arity");
    let mut acc = Poly::zero(ring);
    for (j, coef) in field.entries().iter().enumerate() {
        if coef.is_zero() {
            continue;
        }
        acc = acc.add_ref(&coef.mul_ref(&a.partial_derivative(j)));
    }
    acc
}

/// Commutator of vector fields, `[X, Y]^j = X(Y^j) − Y(X^j)`.
pub fn lie_bracket(x: &ModVec, y: &ModVec) -> ModVec {
    assert_eq!(x.rank(), y.rank());
    ModVec::new(
        (0..x.rank())
            .map(|j| apply_field(x, y.entry(j)).sub_ref(&apply_field(y, x.entry(j))))
            .collect(),
    )
}

/// The double-cone structure on `k[x1, x2, x3]`:
/// `{x1,x2} = 4x3`, `{x1,x3} = 2x1`, `{x2,x3} = -2x2`.
pub fn double_cone(ring: &Arc<VarRing>) -> Result<PoissonStructure> {
    if ring.arity() != 3 {
        return Err(Error::Invalid(
            "double-cone structure needs 3 variables".into(),
        ));
    }
    use num_rational::BigRational;
    let x1 = Poly::var(ring, 0);
    let x2 = Poly::var(ring, 1);
    let x3 = Poly::var(ring, 2);
    PoissonStructure::from_upper(
        ring,
        vec![
            ((0, 1), x3.scale(&BigRational::from_integer(4.into()))),
            ((0, 2), x1.scale(&BigRational::from_integer(2.into()))),
            ((1, 2), x2.scale(&BigRational::from_integer((-2).into()))),
        ],
    )
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
    fn double_cone_bracket_table() {
        let r = ring3();
        let pi = double_cone(&r).unwrap();
        let x = |i| Poly::var(&r, i);
        assert_eq!(pi.bracket(&x(0), &x(1)), p("4*x3", &r));
        assert_eq!(pi.bracket(&x(0), &x(2)), p("2*x1", &r));
        assert_eq!(pi.bracket(&x(1), &x(2)), p("-2*x2", &r));
        assert_eq!(pi.bracket(&x(1), &x(0)), p("-4*x3", &r));
        assert!(pi.jacobi_check().is_ok());
    }

    #[test]
    fn cone_equation_is_a_casimir() {
        let r = ring3();
        let pi = double_cone(&r).unwrap();
        let f = p("x1*x2 - x3^2", &r);
        for i in 0..3 {
            assert!(pi.bracket(&Poly::var(&r, i), &f).is_zero());
        }
    }

    #[test]
    fn canonical_structure_on_the_plane() {
        let qp = VarRing::new(vec!["q", "p"]).unwrap();
        let pi = PoissonStructure::canonical(&qp).unwrap();
        let q = Poly::var(&qp, 0);
        let p_ = Poly::var(&qp, 1);
        assert_eq!(pi.bracket(&q, &p_), Poly::int(&qp, 1));
        assert!(pi.jacobi_check().is_ok());
    }

    #[test]
    fn jacobi_failures_are_reported_with_a_triple() {
        let r = ring3();
        // Π12 = x1, Π13 = x2, Π23 = 0. Hand expansion of the cyclic sum:
        // {x1,{x2,x3}} = 0; {x2,{x3,x1}} = {x2,-x2} = 0; {x3,{x1,x2}} =
        // {x3,x1} = -x2. Total -x2 ≠ 0.
        let bad = PoissonStructure::from_upper(
            &r,
            vec![((0, 1), p("x1", &r)), ((0, 2), p("x2", &r))],
        )
        .unwrap();
        assert_eq!(bad.jacobiator(0, 1, 2), p("-1*x2", &r));
        assert_eq!(bad.jacobi_check(), Err((0, 1, 2)));
    }

    #[test]
    fn poissoffel_symbols_vanish_on_the_double_cone() {
        let r = ring3();
        let pi = double_cone(&r).unwrap();
        let ideal = Ideal::new(&r, vec![p("x1*x2 - x3^2", &r)]);
        let check = poisson_ideal_check(&ideal, &pi);
        assert!(check.passed);
        let w = check.witness.unwrap();
        assert!(w.all_zero());
        assert!(w.verify(&ideal, &pi));
    }

    #[test]
    fn a_non_poisson_ideal_is_rejected_with_residual() {
        let r = ring3();
        let pi = double_cone(&r).unwrap();
        let ideal = Ideal::new(&r, vec![p("x1", &r)]);
        let check = poisson_ideal_check(&ideal, &pi);
        assert!(!check.passed);
        let (_, _, residual) = check.failure.unwrap();
        assert!(!residual.is_zero());
    }

    #[test]
    fn zero_ideal_is_trivially_poisson() {
        let r = ring3();
        let pi = double_cone(&r).unwrap();
        let check = poisson_ideal_check(&Ideal::zero(&r), &pi);
        assert!(check.passed);
        assert!(check.witness.unwrap().symbols.iter().all(Vec::is_empty));
    }

    #[test]
    fn hamiltonian_fields_match_the_bracket() {
        let r = ring3();
        let pi = double_cone(&r).unwrap();
        let h1 = pi.hamiltonian_field(&p("x1", &r));
        assert_eq!(
            h1,
            ModVec::new(vec![Poly::zero(&r), p("4*x3", &r), p("2*x1", &r)])
        );
        let h2 = pi.hamiltonian_field(&p("x2", &r));
        assert_eq!(
            h2,
            ModVec::new(vec![p("-4*x3", &r), Poly::zero(&r), p("-2*x2", &r)])
        );
        assert!(pi.hamiltonian_field(&Poly::int(&r, 7)).is_zero());
        for a in ["x1", "x2*x3", "x1^2 - x3"] {
            for b in ["x3", "x1*x2", "x2 + 1"] {
                let pa = p(a, &r);
                let pb = p(b, &r);
                assert_eq!(
                    apply_field(&pi.hamiltonian_field(&pa), &pb),
                    pi.bracket(&pa, &pb)
                );
            }
        }
    }

    #[test]
    fn euler_type_field_acts_as_reported() {
        let r = ring3();
        let x4 = ModVec::new(vec![p("2*x1", &r), Poly::zero(&r), p("x3", &r)]);
        assert_eq!(apply_field(&x4, &p("x1", &r)), p("2*x1", &r));
        assert!(apply_field(&x4, &p("x2", &r)).is_zero());
        assert!(apply_field(&x4, &Poly::int(&r, 3)).is_zero());
    }

    #[test]
    fn commutators_from_the_auxiliary_table() {
        let r = ring3();
        let pi = double_cone(&r).unwrap();
        let h1 = pi.hamiltonian_field(&p("x1", &r));
        let h2 = pi.hamiltonian_field(&p("x2", &r));
        let h3 = pi.hamiltonian_field(&p("x3", &r));
        let x4 = ModVec::new(vec![p("2*x1", &r), Poly::zero(&r), p("x3", &r)]);
        assert_eq!(lie_bracket(&h1, &x4), h1.neg_ref());
        assert_eq!(lie_bracket(&h2, &x4), h2.clone());
        assert!(lie_bracket(&h3, &x4).is_zero());
        assert!(lie_bracket(&x4, &x4).is_zero());
    }

    #[test]
    fn hamiltonian_assignment_is_a_morphism() {
        // [H_a, H_b] = H_{{a,b}} once Jacobi holds; exact on the double cone
        // and on the canonical plane.
        let r = ring3();
        let pi = double_cone(&r).unwrap();
        for (a, b) in [("x1", "x2"), ("x1*x3", "x2"), ("x3^2", "x1 + x2")] {
            let pa = p(a, &r);
            let pb = p(b, &r);
            let lhs = lie_bracket(&pi.hamiltonian_field(&pa), &pi.hamiltonian_field(&pb));
            let rhs = pi.hamiltonian_field(&pi.bracket(&pa, &pb));
            assert_eq!(lhs, rhs);
        }
        let qp = VarRing::new(vec!["q", "p"]).unwrap();
        let can = PoissonStructure::canonical(&qp).unwrap();
        let a = parse_poly("q^2*p", &qp).unwrap();
        let b = parse_poly("q + p^3", &qp).unwrap();
        let lhs = lie_bracket(&can.hamiltonian_field(&a), &can.hamiltonian_field(&b));
        let rhs = can.hamiltonian_field(&can.bracket(&a, &b));
        assert_eq!(lhs, rhs);
    }
}
