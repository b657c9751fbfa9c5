//! Exact calculators for characteristic numbers of model manifolds.
//!
//! The crate provides:
//!
//! - [`combinatorics`]: partitions as exponent vectors, dyadic digit counts,
//!   exact binomial arithmetic;
//! - [`ringcalc`]: truncated multivariate polynomial rings over the integers,
//!   the rationals, or the field with two elements, with graded-unit inversion;
//! - [`manifolds`]: a catalog of generator manifolds (projective spaces,
//!   Milnor hypersurfaces, real projective spaces, Dold manifolds) with exact
//!   Chern, Stiefel-Whitney and Segre numbers;
//! - [`lattices`]: integer-lattice algebra via Hermite normal form and mod-2
//!   linear algebra;
//! - [`cobordism`]: desk-scale models of the complex and unoriented cobordism
//!   groups as lattices of characteristic-number vectors;
//! - [`divisibility`]: 2-adic divisibility certificates for the top Segre
//!   number and parity-witness polynomials;
//! - [`obstructions`]: abelian Gram matrices, the double-point congruence
//!   evaluator, and applicability predicates;
//! - [`suite`]: the batch invariant suite backing the `sweep` command.
//!
//! Everything is immutable after construction and uses exact arithmetic
//! throughout; no floating point appears anywhere.

pub mod cobordism;
pub mod combinatorics;
pub mod divisibility;
pub mod lattices;
pub mod manifolds;
pub mod obstructions;
pub mod ringcalc;
pub mod suite;

pub use combinatorics::{alpha, binomial, factorial, partitions, Partition};
pub use ringcalc::{Domain, Element, PolyRing, Scalar, VarSpec, F2};
