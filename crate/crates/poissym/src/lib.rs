//! Exact computer algebra for symplectic structures on singular affine
//! Poisson varieties.
//!
//! The library builds candidate symplectic forms on quotients `A = P/I` of a
//! polynomial ring by a Poisson ideal and emits machine-checkable
//! certificates that the form is well defined on the derivation module,
//! closed in the naive de Rham complex, and non-degenerate. Every value is an
//! exact rational identity; there is no floating point.
//!
//! Layering, bottom up:
//!
//! - [`polyring`] — sparse multivariate polynomials with exact rational
//!   coefficients, pluggable term orders, a parser and a canonical printer;
//! - [`gbengine`] — reduced Gröbner bases (ring and module level, with
//!   cofactor tracking), normal forms, syzygies, elimination, kernels;
//! - [`poissoncore`] — Poisson structures, bracket evaluation, Poisson-ideal
//!   verification, hamiltonian vector fields;
//! - [`tangentfields`] — derivations of the quotient via syzygy kernels and
//!   presentations of the derivation module on labelled generators;
//! - [`naivederham`] — the candidate 2-form, its certificates (descent,
//!   closedness, non-degeneracy), cup products and determinants;
//! - [`finitequotients`] — constructive invariant theory for finite matrix
//!   groups and the transfer of the ambient symplectic data to the quotient;
//! - [`problem`], [`report`], [`cli`] — the file format, report rendering and
//!   the subcommand driver behind the `poissym` binary.

pub mod cli;
pub mod error;
pub mod finitequotients;
pub mod gbengine;
pub mod naivederham;
pub mod poissoncore;
pub mod polyring;
pub mod problem;
pub mod report;
pub mod tangentfields;

pub use error::{Error, Result};
pub use gbengine::{Ideal, ModVec, SubModule};
pub use polyring::{parse_poly, Monomial, MonomialOrder, Poly, VarRing};
