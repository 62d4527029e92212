//! Numeric checks for the Q-twisted orthogonality picture.
//!
//! For a positive matrix Q, a scalar matrix u with real entries satisfies the
//! twisted relations `uᵗQuQ⁻¹ = I = QuQ⁻¹uᵗ` exactly when `v = Q^{1/2}uQ^{−1/2}`
//! is unitary.  The two residual pairs are conjugate by `Q^{±1/2}`, so each is
//! bounded by the condition number of Q times the other; the equivalence
//! check verifies that quantitative biconditional rather than a bare boolean.
//!
//! The second check validates the invertibility device used for the
//! fundamental matrix's transpose: reindex Q by swapping the row pair to get
//! P, and pair Q⁻¹ with the same swap on the column side to get P̃; then
//! P·P̃ = I because the swap is an involution.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::report::{CheckReport, StructureReport, Verdict};

pub type RMat = DMatrix<f64>;

/// Operator norm (largest singular value) for real matrices.
pub fn op_norm_r(m: &RMat) -> f64 {
    if m.iter().all(|x| *x == 0.0) {
        return 0.0;
    }
    m.clone().svd(false, false).singular_values.max()
}

/// Deterministic random positive definite matrix: `MᵀM + I/2` for M with
/// entries uniform in [−1, 1].  The shift keeps the spectrum away from zero
/// so square roots and inverses stay well conditioned.
pub fn seeded_positive_q(dim: usize, seed: u64) -> RMat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = RMat::from_fn(dim, dim, |_, _| rng.gen_range(-1.0..1.0));
    m.transpose() * &m + RMat::identity(dim, dim) * 0.5
}

/// Deterministic random orthogonal matrix via the QR factor.
pub fn seeded_orthogonal(dim: usize, seed: u64) -> RMat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = RMat::from_fn(dim, dim, |_, _| rng.gen_range(-1.0..1.0));
    m.qr().q()
}

/// `(Q^{1/2}, Q^{−1/2})` by symmetrized eigendecomposition.
pub fn sqrt_pair(q: &RMat) -> Result<(RMat, RMat), Error> {
    if q.nrows() != q.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "{}×{} matrix is not square",
            q.nrows(),
            q.ncols()
        )));
    }
    let sym = (q + q.transpose()) * 0.5;
    let asym = op_norm_r(&(q - q.transpose()));
    if asym > 1e-9 {
        return Err(Error::NotPositive(format!(
            "matrix is not symmetric: ‖Q − Qᵗ‖ = {asym:.3e}"
        )));
    }
    let eig = sym.symmetric_eigen();
    if let Some(min) = eig
        .eigenvalues
        .iter()
        .cloned()
        .min_by(|a, b| a.partial_cmp(b).unwrap())
    {
        if min <= 1e-12 {
            return Err(Error::NotPositive(format!("minimal eigenvalue {min:.3e}")));
        }
    }
    let v = &eig.eigenvectors;
    let root = RMat::from_diagonal(&eig.eigenvalues.map(|x| x.sqrt()));
    let inv_root = RMat::from_diagonal(&eig.eigenvalues.map(|x| 1.0 / x.sqrt()));
    Ok((v * root * v.transpose(), v * inv_root * v.transpose()))
}

/// Smallest/largest-eigenvalue ratio as a bound factor for the equivalence.
fn condition_number(q: &RMat) -> Result<f64, Error> {
    let eig = ((q + q.transpose()) * 0.5).symmetric_eigen();
    let mut min = f64::INFINITY;
    let mut max = 0.0f64;
    for x in eig.eigenvalues.iter() {
        min = min.min(*x);
        max = max.max(*x);
    }
    if min <= 1e-12 {
        return Err(Error::NotPositive(format!("minimal eigenvalue {min:.3e}")));
    }
    Ok(max / min)
}

/// A `u` that satisfies the twisted relations by construction:
/// `u = Q^{−1/2}·O·Q^{1/2}` for orthogonal `O` inverts `v = Q^{1/2}uQ^{−1/2}`.
pub fn twisted_u_from_orthogonal(q: &RMat, o: &RMat) -> Result<RMat, Error> {
    let (root, inv_root) = sqrt_pair(q)?;
    Ok(inv_root * o * root)
}

/// Residuals of both sides of the equivalence for one numeric `u`.
#[derive(Clone, Debug)]
pub struct VEquivalenceResiduals {
    /// max(‖uᵗQuQ⁻¹ − I‖, ‖QuQ⁻¹uᵗ − I‖)
    pub twisted: f64,
    /// max(‖vᵗv − I‖, ‖vvᵗ − I‖) for v = Q^{1/2}uQ^{−1/2}
    pub unitarity: f64,
    /// Condition number of Q — the factor relating the two sides.
    pub bound_factor: f64,
}

pub fn v_equivalence_residuals(q: &RMat, u: &RMat) -> Result<VEquivalenceResiduals, Error> {
    let dim = q.nrows();
    if u.nrows() != dim || u.ncols() != dim {
        return Err(Error::DimensionMismatch(format!(
            "u is {}×{}, Q is {dim}×{dim}",
            u.nrows(),
            u.ncols()
        )));
    }
    let (root, inv_root) = sqrt_pair(q)?;
    let q_inv = q
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::NotPositive("Q is numerically singular".into()))?;
    let id = RMat::identity(dim, dim);
    let twisted_left = u.transpose() * q * u * &q_inv - &id;
    let twisted_right = q * u * &q_inv * u.transpose() - &id;
    let v = &root * u * &inv_root;
    let unit_left = v.transpose() * &v - &id;
    let unit_right = &v * v.transpose() - &id;
    Ok(VEquivalenceResiduals {
        twisted: op_norm_r(&twisted_left).max(op_norm_r(&twisted_right)),
        unitarity: op_norm_r(&unit_left).max(op_norm_r(&unit_right)),
        bound_factor: condition_number(q)?,
    })
}

/// Verifies the biconditional quantitatively: each side's residual must be
/// bounded by the condition factor times the other side's, up to `tol`.
/// A `u` that satisfied one set of relations while violating the other would
/// break the bound and Fail.
pub fn appendix_v_equivalence(q: &RMat, u: &RMat, tol: f64) -> Result<CheckReport, Error> {
    let r = v_equivalence_residuals(q, u)?;
    let forward = r.unitarity <= r.bound_factor * r.twisted + tol;
    let backward = r.twisted <= r.bound_factor * r.unitarity + tol;
    let verdict = if forward && backward {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let mut report = CheckReport::new("appendix.v_equivalence", verdict);
    if verdict == Verdict::Fail {
        report = report.with_witness(format!(
            "twisted residual {:.3e} vs unitarity residual {:.3e} (bound factor {:.3e})",
            r.twisted, r.unitarity, r.bound_factor
        ));
    }
    Ok(report)
}

/// The pair-swap involution on indices of dimension n²; for dimensions that
/// are not perfect squares the index-reversal involution is used instead —
/// the identity P·P̃ = S·Q·Q⁻¹·S = I only needs S² = I.
fn swap_involution(dim: usize) -> RMat {
    let n = (1..=dim).find(|n| n * n == dim);
    let sigma: Vec<usize> = match n {
        Some(n) => (0..dim).map(|a| (a % n) * n + a / n).collect(),
        None => (0..dim).rev().collect(),
    };
    let mut s = RMat::zeros(dim, dim);
    for (a, &b) in sigma.iter().enumerate() {
        s[(a, b)] = 1.0;
    }
    s
}

/// Builds `P = S·Q` (row pairs swapped) and `P̃ = Q⁻¹·S` (column pairs
/// swapped on the inverse) and returns both residuals of P·P̃ = I = P̃·P.
pub fn p_pair_residuals(q: &RMat) -> Result<(f64, f64), Error> {
    condition_number(q)?;
    let dim = q.nrows();
    let s = swap_involution(dim);
    let q_inv = q
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::NotPositive("Q is numerically singular".into()))?;
    let p = &s * q;
    let p_tilde = &q_inv * &s;
    let id = RMat::identity(dim, dim);
    Ok((
        op_norm_r(&(&p * &p_tilde - &id)),
        op_norm_r(&(&p_tilde * &p - &id)),
    ))
}

pub fn appendix_p_inverse(q: &RMat, tol: f64) -> Result<CheckReport, Error> {
    let (left, right) = p_pair_residuals(q)?;
    let verdict = if left <= tol && right <= tol {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let mut report = CheckReport::new("appendix.p_inverse", verdict);
    if verdict == Verdict::Fail {
        report = report.with_witness(format!(
            "‖P·P̃ − I‖ = {left:.3e}, ‖P̃·P − I‖ = {right:.3e}"
        ));
    }
    Ok(report)
}

/// Bundles both checks for one Q and one candidate u.
pub fn appendix_q_checks(q: &RMat, u: &RMat, tol: f64) -> Result<StructureReport, Error> {
    let checks = vec![
        appendix_v_equivalence(q, u, tol)?,
        appendix_p_inverse(q, tol)?,
    ];
    Ok(StructureReport::new(
        format!("appendix(dim={}, tol={tol:.1e})", q.nrows()),
        checks,
    ))
}
