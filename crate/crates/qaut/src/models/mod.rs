//! Concrete realizations of the presented quantum groups: exact characters
//! (classical points), floating-point matrix representations, and the
//! numeric oracles the symbolic layers are cross-checked against.
//!
//! Characters stay in exact arithmetic end to end; the numeric side works
//! over `Complex64` matrices with operator-norm residuals, and every verdict
//! carries its residual so tolerances are auditable.

mod appendix;
mod character;
mod numeric;

pub use appendix::{
    appendix_p_inverse, appendix_q_checks, appendix_v_equivalence, op_norm_r, p_pair_residuals,
    seeded_orthogonal, seeded_positive_q, sqrt_pair, twisted_u_from_orthogonal,
    v_equivalence_residuals, RMat, VEquivalenceResiduals,
};
pub use character::{
    characters_magic_q, check_character, classical_point_discrepancy, enumerate_characters_magic,
    permutations, Character, DiscrepancyReport, CHARACTER_CAP,
};
pub use numeric::{
    au_model_rep, commutator_norm, complexify, max_rule_residual, numeric_verify, op_norm,
    two_projection_rep, CMat, FamilyResidual, NumericRep, NumericVerifyReport,
};
