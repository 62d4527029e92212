//! Floating-point matrix representations and operator-norm residuals.
//!
//! A [`NumericRep`] assigns a complex matrix to every unstarred generator;
//! starred letters evaluate to the conjugate transpose by construction, so
//! stars are never approximated.  Residuals are operator norms (largest
//! singular values), which is what makes the soundness bridge meaningful:
//! anything the rewrite layer certifies to lie in the *-ideal must vanish in
//! every representation, up to rounding.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num::complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::error::Error;
use crate::ncalg::{Algebra, GenId, NCPoly};
use crate::presentations::{aut_mn_presentation, magic_presentation, Presentation};
use crate::report::Verdict;
use crate::rewrite::RewriteSystem;
use crate::scalar::GaussQ;

pub type CMat = DMatrix<Complex64>;

/// Lifts a real matrix into the complex matrix type.
pub fn complexify(m: &DMatrix<f64>) -> CMat {
    CMat::from_fn(m.nrows(), m.ncols(), |r, c| Complex64::new(m[(r, c)], 0.0))
}

/// Operator norm = largest singular value.
pub fn op_norm(m: &CMat) -> f64 {
    if m.iter().all(|z| z.norm() == 0.0) {
        return 0.0;
    }
    m.clone().svd(false, false).singular_values.max()
}

/// A finite-dimensional *-representation given by generator images.
#[derive(Clone, Debug)]
pub struct NumericRep {
    pub dim: usize,
    pub images: BTreeMap<GenId, CMat>,
    pub tolerance: f64,
}

impl NumericRep {
    pub fn new(dim: usize, tolerance: f64) -> Self {
        NumericRep {
            dim,
            images: BTreeMap::new(),
            tolerance,
        }
    }

    pub fn insert(&mut self, g: GenId, m: CMat) {
        assert_eq!(m.nrows(), self.dim);
        assert_eq!(m.ncols(), self.dim);
        self.images.insert(g, m);
    }

    pub fn image(&self, g: &GenId) -> Option<&CMat> {
        self.images.get(g)
    }

    /// Evaluates a polynomial: words become products of generator images,
    /// starred letters the conjugate transpose of the base image.
    pub fn eval(&self, alg: &Algebra, p: &NCPoly<GaussQ>) -> Result<CMat, Error> {
        let mut out = CMat::zeros(self.dim, self.dim);
        for (w, c) in p.iter() {
            let mut acc = CMat::identity(self.dim, self.dim);
            for &l in w.letters() {
                let starred = l & 1 == 1;
                let base = alg.gen_of(l & !1);
                let img = self
                    .images
                    .get(&base)
                    .ok_or_else(|| Error::MissingImage(base.to_string()))?;
                acc = if starred { acc * img.adjoint() } else { acc * img };
            }
            out += acc * c.to_c64();
        }
        Ok(out)
    }

    /// Documented JSON form: dimension, tolerance, and each generator's
    /// image as a row-major list of `[re, im]` pairs.
    pub fn to_json(&self) -> serde_json::Value {
        let mut images = serde_json::Map::new();
        for (g, m) in &self.images {
            let entries: Vec<serde_json::Value> = (0..self.dim)
                .flat_map(|r| (0..self.dim).map(move |c| (r, c)))
                .map(|(r, c)| json!([m[(r, c)].re, m[(r, c)].im]))
                .collect();
            images.insert(g.to_string(), serde_json::Value::Array(entries));
        }
        json!({
            "dim": self.dim,
            "tolerance": self.tolerance,
            "images": images,
        })
    }
}

/// Per-family and overall operator-norm residuals of a representation.
#[derive(Clone, Debug, Serialize)]
pub struct NumericVerifyReport {
    pub subject: String,
    pub families: Vec<FamilyResidual>,
    pub max_residual: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyResidual {
    pub family: String,
    pub max_residual: f64,
}

/// Evaluates every relation of the presentation in the representation and
/// reports the largest operator-norm residual per family.
pub fn numeric_verify(pres: &Presentation, rep: &NumericRep) -> Result<NumericVerifyReport, Error> {
    let mut families = Vec::new();
    let mut max_residual = 0.0f64;
    for fam in &pres.families {
        let mut fam_max = 0.0f64;
        for r in &fam.relations {
            let m = rep.eval(&pres.algebra, r)?;
            fam_max = fam_max.max(op_norm(&m));
        }
        max_residual = max_residual.max(fam_max);
        families.push(FamilyResidual {
            family: fam.name.to_string(),
            max_residual: fam_max,
        });
    }
    let verdict = if max_residual <= rep.tolerance {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(NumericVerifyReport {
        subject: format!("numeric({})", pres.name),
        families,
        max_residual,
        tolerance: rep.tolerance,
        verdict,
    })
}

/// ‖ρ(g)ρ(h) − ρ(h)ρ(g)‖ for two generators.
pub fn commutator_norm(rep: &NumericRep, g: &GenId, h: &GenId) -> Result<f64, Error> {
    let a = rep
        .image(g)
        .ok_or_else(|| Error::MissingImage(g.to_string()))?;
    let b = rep
        .image(h)
        .ok_or_else(|| Error::MissingImage(h.to_string()))?;
    Ok(op_norm(&(a * b - b * a)))
}

/// Largest residual of the defining relations of a rewrite system's rules in
/// a representation — the soundness bridge between the symbolic and numeric
/// layers: every rule relation is an ideal member, so must evaluate to ≈ 0.
pub fn max_rule_residual(
    sys: &RewriteSystem<GaussQ>,
    alg: &Algebra,
    rep: &NumericRep,
) -> Result<f64, Error> {
    let mut worst = 0.0f64;
    for rule in sys.rules() {
        let m = rep.eval(alg, &rule.relation())?;
        worst = worst.max(op_norm(&m));
    }
    Ok(worst)
}

/// The two-projection representation of the 4-point presentation:
/// `u = [[p, 1−p, 0, 0], [1−p, p, 0, 0], [0, 0, q, 1−q], [0, 0, 1−q, q]]`
/// with p the coordinate projection and q its rotation by `theta`.  Rows and
/// columns sum to 1 blockwise, all entries are real projections, and
/// `[ρ(a₁₁), ρ(a₃₃)] = [p, q]` has norm `|sin θ cos θ|` — nonzero for
/// θ ∈ (0, π/2), which is the noncommutativity witness for four points.
pub fn two_projection_rep(theta: f64) -> NumericRep {
    let pres = magic_presentation(4);
    let alg = &pres.algebra;
    let c = theta.cos();
    let s = theta.sin();
    let re = |x: f64| Complex64::new(x, 0.0);
    let p = CMat::from_row_slice(2, 2, &[re(1.0), re(0.0), re(0.0), re(0.0)]);
    let q = CMat::from_row_slice(2, 2, &[re(c * c), re(s * c), re(s * c), re(s * s)]);
    let one = CMat::identity(2, 2);
    let zero = CMat::zeros(2, 2);
    let block = |i: u16, j: u16| -> CMat {
        match (i, j) {
            (1, 1) | (2, 2) => p.clone(),
            (1, 2) | (2, 1) => &one - &p,
            (3, 3) | (4, 4) => q.clone(),
            (3, 4) | (4, 3) => &one - &q,
            _ => zero.clone(),
        }
    };
    let mut rep = NumericRep::new(2, 1e-12);
    for i in 1..=4u16 {
        for j in 1..=4u16 {
            rep.insert(alg.a_x(i, j), block(i, j));
        }
    }
    rep
}

/// The scalar specialization of the universal-unitary model of the matrix
/// presentation: `a^{kl}_{ij} ↦ w_{ki}·conj(w_{lj})` as a one-dimensional
/// representation, for a numerically unitary `w`.
pub fn au_model_rep(n: u16, w: &CMat) -> Result<NumericRep, Error> {
    if w.nrows() != n as usize || w.ncols() != n as usize {
        return Err(Error::DimensionMismatch(format!(
            "w is {}×{}, expected {n}×{n}",
            w.nrows(),
            w.ncols()
        )));
    }
    let unitarity = op_norm(&(w.adjoint() * w - CMat::identity(n as usize, n as usize)));
    if unitarity > 1e-9 {
        return Err(Error::NotUnitary(format!(
            "‖w*w − I‖ = {unitarity:.3e} exceeds 1e-9"
        )));
    }
    let pres = aut_mn_presentation(n);
    let alg = &pres.algebra;
    let mut rep = NumericRep::new(1, 1e-9);
    for k in 1..=n {
        for l in 1..=n {
            for i in 1..=n {
                for j in 1..=n {
                    let v = w[((k - 1) as usize, (i - 1) as usize)]
                        * w[((l - 1) as usize, (j - 1) as usize)].conj();
                    rep.insert(alg.a_m(k, l, i, j), CMat::from_element(1, 1, v));
                }
            }
        }
    }
    Ok(rep)
}
