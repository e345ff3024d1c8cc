//! Exact computations for polynomial identities of nonassociative algebras.
//!
//! * [`magma`]: multilinear polynomials on binary trees.
//! * [`identities`]: named identities, implication certificates.
//! * [`operad`]: consequence spaces, component dimensions, normal forms,
//!   Koszul duals and the generating-series test.
//! * [`models`]: concrete algebras on a `ℤ`-indexed basis with window checks.

pub mod error;
pub mod identities;
pub mod linalg;
pub mod magma;
pub mod models;
pub mod operad;
pub mod rational;

pub use error::{Error, Result};
pub use identities::{builtin, equiv3, implies3, Builtin, Certificate, Implication};
pub use linalg::{express, member, rref, subspace_equal, SparseRow, Subspace};
pub use magma::{enumerate_monomials, MLPoly, MagmaTree, MonomialIndex};
pub use models::{check_axioms, check_identity, AxiomSet, BiAlgebra, SpanAlgebra, SpanElement, Verdict, Witness};
pub use operad::{
    compose_series, consequence_space, gen_series, koszul_dual, koszulity_residual, normal_form, operad_dims,
    PowerSeries, RelationSet, Rewriter, TensorPoly,
};
pub use rational::{format_rational, parse_rational, Rational};
