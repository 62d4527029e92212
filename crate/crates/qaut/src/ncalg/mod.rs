//! Noncommutative *-algebra over exact scalars.
//!
//! Data model: [`GenId`] names a generator structurally; an [`Algebra`]
//! interns the generators of one presentation into dense [`Letter`]s; a
//! [`Word`] is a product of letters (deglex-ordered, the empty word is the
//! unit); an [`NCPoly`] is a canonical finite sum of words with nonzero
//! coefficients.  [`substitute`] and [`eval_scalar`] extend generator
//! assignments to *-compatible morphisms.

mod gen;
mod poly;
mod word;

pub use gen::{Algebra, GenFamily, GenId, GeneratorScheme, Letter, MAX_COPIES};
pub use poly::{eval_scalar, substitute, NCPoly};
pub use word::Word;
