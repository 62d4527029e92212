//! Symbolic verification engine for quantum automorphism groups of
//! finite-dimensional C*-algebras.
//!
//! The engine constructs the universal Hopf *-algebras coacting on finite
//! spaces, full matrix algebras, and multimatrix algebras as explicit
//! generators-and-relations presentations, then mechanically verifies their
//! structural claims: well-definedness of coproduct, counit and antipode,
//! coaction axioms, invariant functionals, unitarity of the fundamental
//! matrix, classical points, quantum subgroup embeddings, and
//! noncommutativity witnesses.
//!
//! Layering (each layer only depends on earlier ones):
//!
//! 1. [`scalar`] — exact Gaussian-rational coefficients (and the scalar trait
//!    the symbolic layers are generic over).
//! 2. [`ncalg`] — free *-algebra: generators, words, polynomials.
//! 3. [`rewrite`] — degree-bounded completion and ideal membership.
//! 4. [`presentations`] — the concrete relation families.
//! 5. [`hopf`], [`coaction`] — axiom checks run through the rewrite engine.
//! 6. [`models`] — exact characters and floating-point matrix models used as
//!    independent cross-checks.
//!
//! All symbolic computation is exact; floating point enters only in
//! [`models`].

pub mod coaction;
pub mod error;
pub mod hopf;
pub mod models;
pub mod ncalg;
pub mod presentations;
pub mod report;
pub mod rewrite;
pub mod scalar;

pub use error::Error;

/// The engine's working coefficient field: exact Gaussian rationals ℚ(i).
pub type Coef = scalar::GaussQ;

/// Polynomials over the working coefficient field.
pub type Poly = ncalg::NCPoly<Coef>;

/// Rewrite systems over the working coefficient field.
pub type System = rewrite::RewriteSystem<Coef>;
