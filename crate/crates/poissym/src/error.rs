//! Crate-wide error type.

/// Errors produced anywhere in the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("rank mismatch: {0}")]
    RankMismatch(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("not a Poisson ideal: {{x^{var}, f_{gen}}} does not lie in the ideal")]
    NotPoissonIdeal { var: usize, gen: usize },
    #[error("Jacobi identity fails on the coordinate triple ({i}, {j}, {k})")]
    JacobiFails { i: usize, j: usize, k: usize },
    #[error("presentation has no hamiltonian-labelled generators")]
    NoHamiltonianLabels,
    #[error("bracket of generators {i} and {j} is not expressible in the generators")]
    InexpressibleBracket { i: usize, j: usize },
    #[error("group closure exceeds the cap of {cap} elements")]
    GroupClosureCap { cap: usize },
    #[error("group generator {index} is not invertible")]
    SingularGenerator { index: usize },
    #[error("rewrite into the invariant subalgebra failed: {0}")]
    RewriteFailed(String),
    #[error("problem file: {0}")]
    Problem(String),
    #[error("report: {0}")]
    Report(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
