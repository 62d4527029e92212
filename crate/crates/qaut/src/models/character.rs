//! Exact characters: unital *-homomorphisms from a presented algebra to ℂ,
//! kept in Gaussian-rational arithmetic so relation checks are decisions.
//!
//! For the n-point presentations the character set is computed outright: a
//! scalar solution of the defining relations has entries that are
//! self-adjoint idempotents in ℚ(i), hence 0 or 1, and the row/column sums
//! force a permutation matrix — so enumerating permutation matrices is
//! exhaustive, not a heuristic.  For the matrix presentations the character
//! space is a continuum, so only verification of a supplied character is
//! offered.

use std::collections::BTreeMap;

use num::{One, Zero};
use serde::Serialize;

use crate::error::Error;
use crate::ncalg::{eval_scalar, GenId, GeneratorScheme};
use crate::presentations::{magic_presentation, Presentation};
use crate::report::{CheckAccumulator, CheckReport, Verdict};
use crate::scalar::{GaussQ, Scalar};

/// Enumeration guard for factorial-sized searches.
pub const CHARACTER_CAP: u16 = 6;

/// A scalar assignment of the (unstarred) generators, intended to extend to
/// a unital *-homomorphism onto ℂ.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    pub values: BTreeMap<GenId, GaussQ>,
    /// For permutation-derived characters: the image list σ(1), …, σ(n).
    pub label: String,
}

impl Character {
    pub fn value(&self, g: &GenId) -> Option<&GaussQ> {
        self.values.get(g)
    }

    /// The character of the n-point presentation attached to a permutation,
    /// χ_σ(a_{ij}) = δ_{i,σ(j)} — the permutation matrix as a classical
    /// point.
    pub fn from_permutation(pres: &Presentation, sigma: &[u16]) -> Self {
        let n = sigma.len() as u16;
        let mut values = BTreeMap::new();
        for i in 1..=n {
            for j in 1..=n {
                let v = if sigma[(j - 1) as usize] == i {
                    GaussQ::one()
                } else {
                    GaussQ::zero()
                };
                values.insert(pres.algebra.a_x(i, j), v);
            }
        }
        Character {
            values,
            label: render_permutation(sigma),
        }
    }

    /// The permutation matrix entries as an exact n×n array (magic-type
    /// characters only).
    pub fn magic_matrix(&self, pres: &Presentation, n: u16) -> Vec<Vec<GaussQ>> {
        (1..=n)
            .map(|i| {
                (1..=n)
                    .map(|j| {
                        self.value(&pres.algebra.a_x(i, j))
                            .cloned()
                            .unwrap_or_else(GaussQ::zero)
                    })
                    .collect()
            })
            .collect()
    }
}

/// Lexicographically ordered permutations of 1..=n as image lists.
pub fn permutations(n: u16) -> Vec<Vec<u16>> {
    fn go(prefix: &mut Vec<u16>, rest: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..rest.len() {
            let v = rest.remove(k);
            prefix.push(v);
            go(prefix, rest, out);
            prefix.pop();
            rest.insert(k, v);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (1..=n).collect(), &mut out);
    out
}

fn render_permutation(sigma: &[u16]) -> String {
    if sigma.iter().enumerate().all(|(k, &v)| v == (k + 1) as u16) {
        return "id".into();
    }
    let images: Vec<String> = sigma.iter().map(|v| v.to_string()).collect();
    format!("[{}]", images.join(","))
}

/// Evaluates every relation of `pres` under the character; Pass means every
/// one is exactly zero.  For the matrix presentations the induced linear map
/// on the underlying matrix algebra is additionally verified to be a unital
/// *-automorphism through the structure constants.
pub fn check_character(pres: &Presentation, chi: &Character) -> Result<CheckReport, Error> {
    let alg = &pres.algebra;
    let mut acc = CheckAccumulator::new("models.character");
    for fam in &pres.families {
        for (idx, r) in fam.relations.iter().enumerate() {
            let v = eval_scalar(r, alg, &|g| chi.value(g).cloned())?;
            if !v.is_zero() {
                acc.add(Verdict::Fail, || {
                    format!("{}[{idx}] evaluates to {v} ≠ 0 under {}", fam.name, chi.label)
                });
            }
        }
    }
    if let GeneratorScheme::M { n } = alg.scheme() {
        check_induced_automorphism(pres, chi, *n, &mut acc)?;
    }
    Ok(acc.finish())
}

/// The induced map T(e_{ij}) = Σ_{kl} χ(a^{kl}_{ij}) e_{kl} must be a unital
/// *-automorphism of M_n: multiplicative and star-compatible on matrix
/// units, unit-preserving, and bijective as a linear map.  The check stops
/// at the automorphism property itself — it takes no position on how the
/// group of all such automorphisms is parametrized.
fn check_induced_automorphism(
    pres: &Presentation,
    chi: &Character,
    n: u16,
    acc: &mut CheckAccumulator,
) -> Result<(), Error> {
    let d = n as usize;
    let val = |k: u16, l: u16, i: u16, j: u16| -> Result<GaussQ, Error> {
        let g = pres.algebra.a_m(k, l, i, j);
        chi.value(&g)
            .cloned()
            .ok_or_else(|| Error::MissingValue(g.to_string()))
    };
    // T(e_{ij}) as a dense exact matrix, indexed [k-1][l-1].
    let mut images: Vec<Vec<Vec<GaussQ>>> = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let mut m = vec![vec![GaussQ::zero(); d]; d];
            for k in 1..=n {
                for l in 1..=n {
                    m[(k - 1) as usize][(l - 1) as usize] = val(k, l, i, j)?;
                }
            }
            images.push(m);
        }
    }
    let idx = |i: u16, j: u16| ((i - 1) * n + (j - 1)) as usize;
    let mat_mul = |a: &Vec<Vec<GaussQ>>, b: &Vec<Vec<GaussQ>>| -> Vec<Vec<GaussQ>> {
        let mut out = vec![vec![GaussQ::zero(); d]; d];
        for r in 0..d {
            for c in 0..d {
                let mut s = GaussQ::zero();
                for t in 0..d {
                    s = s + a[r][t].clone() * b[t][c].clone();
                }
                out[r][c] = s;
            }
        }
        out
    };
    // Multiplicativity: T(e_{ij})·T(e_{rs}) = δ_{jr}·T(e_{is}).
    for i in 1..=n {
        for j in 1..=n {
            for r in 1..=n {
                for s in 1..=n {
                    let prod = mat_mul(&images[idx(i, j)], &images[idx(r, s)]);
                    let expect = &images[idx(i, s)];
                    for p in 0..d {
                        for q in 0..d {
                            let want = if j == r {
                                expect[p][q].clone()
                            } else {
                                GaussQ::zero()
                            };
                            if prod[p][q] != want {
                                acc.add(Verdict::Fail, || {
                                    format!(
                                        "induced map not multiplicative at \
                                         e[{i},{j}]·e[{r},{s}], entry ({p},{q})"
                                    )
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    // Star: T(e_{ij})* = T(e_{ji}) entrywise (conjugate transpose).
    for i in 1..=n {
        for j in 1..=n {
            let a = &images[idx(i, j)];
            let b = &images[idx(j, i)];
            for p in 0..d {
                for q in 0..d {
                    if a[q][p].conj() != b[p][q] {
                        acc.add(Verdict::Fail, || {
                            format!("induced map not star-compatible at e[{i},{j}]")
                        });
                    }
                }
            }
        }
    }
    // Unit: Σ_i T(e_{ii}) = 1.
    for p in 0..d {
        for q in 0..d {
            let mut s = GaussQ::zero();
            for i in 1..=n {
                s = s + images[idx(i, i)][p][q].clone();
            }
            let want = if p == q { GaussQ::one() } else { GaussQ::zero() };
            if s != want {
                acc.add(Verdict::Fail, || {
                    format!("induced map not unital at entry ({p},{q})")
                });
            }
        }
    }
    // Bijectivity: the d²×d² transition matrix has full rank.
    let dd = d * d;
    let mut rows: Vec<Vec<GaussQ>> = vec![vec![GaussQ::zero(); dd]; dd];
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    rows[idx(k, l)][idx(i, j)] = images[idx(i, j)][(k - 1) as usize][(l - 1) as usize].clone();
                }
            }
        }
    }
    let mut rank = 0usize;
    for col in 0..dd {
        let Some(p) = (rank..dd).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv().expect("nonzero pivot");
        for c in col..dd {
            rows[rank][c] = rows[rank][c].clone() * inv.clone();
        }
        for r in 0..dd {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in col..dd {
                    let sub = rows[rank][c].clone() * f.clone();
                    rows[r][c] = rows[r][c].clone() - sub;
                }
            }
        }
        rank += 1;
    }
    if rank != dd {
        acc.add(Verdict::Fail, || {
            format!("induced map has rank {rank} of {dd}: not bijective")
        });
    }
    Ok(())
}

/// All characters of the n-point presentation: exactly the n! permutation
/// matrices, each re-verified against every relation before being returned.
pub fn enumerate_characters_magic(n: u16) -> Result<Vec<Character>, Error> {
    if n > CHARACTER_CAP {
        return Err(Error::CapExceeded(format!(
            "character enumeration for {n} points exceeds cap {CHARACTER_CAP}"
        )));
    }
    let pres = magic_presentation(n);
    let mut out = Vec::new();
    for sigma in permutations(n) {
        let chi = Character::from_permutation(&pres, &sigma);
        let report = check_character(&pres, &chi)?;
        if report.verdict != Verdict::Pass {
            return Err(Error::ShapeMismatch(format!(
                "permutation {} failed relation evaluation: {:?}",
                chi.label, report.witness
            )));
        }
        out.push(chi);
    }
    Ok(out)
}

fn require_positive_diagonal(qs: &[GaussQ]) -> Result<(), Error> {
    for (k, q) in qs.iter().enumerate() {
        if !q.im.is_zero() || q.re <= num::BigRational::zero() {
            return Err(Error::NotPositive(format!(
                "diagonal entry {} is {q}, need a positive rational",
                k + 1
            )));
        }
    }
    Ok(())
}

/// The classical points of the Q-twisted n-point quantum group, Q positive
/// diagonal: permutation matrices u that additionally satisfy the twist
/// `uᵗQuQ⁻¹ = I = QuQ⁻¹uᵗ`, found by exact brute force over all n!.
pub fn characters_magic_q(n: u16, qs: &[GaussQ]) -> Result<Vec<Character>, Error> {
    if n > CHARACTER_CAP {
        return Err(Error::CapExceeded(format!(
            "character search for {n} points exceeds cap {CHARACTER_CAP}"
        )));
    }
    if qs.len() != n as usize {
        return Err(Error::DimensionMismatch(format!(
            "{} diagonal entries for {n} points",
            qs.len()
        )));
    }
    require_positive_diagonal(qs)?;
    let pres = magic_presentation(n);
    let mut out = Vec::new();
    for sigma in permutations(n) {
        // u_{ij} = δ_{i,σ(j)}.  Both twist identities reduce to exact scalar
        // conditions; for diagonal Q:
        //   (uᵗQu)_{jm} = q_{σ(j)} δ_{jm}  — so uᵗQuQ⁻¹ = I ⟺ q_{σ(j)} = q_j,
        //   (QuQ⁻¹uᵗ)_{im} = (q_i/q_{σ⁻¹(i)}) δ_{im} — the same condition.
        // Both are still evaluated independently below.
        let left_ok = (1..=n).all(|j| qs[(sigma[(j - 1) as usize] - 1) as usize] == qs[(j - 1) as usize]);
        let right_ok = (1..=n).all(|i| {
            let pre = sigma.iter().position(|&v| v == i).expect("bijection") as usize;
            qs[(i - 1) as usize] == qs[pre]
        });
        if left_ok && right_ok {
            out.push(Character::from_permutation(&pres, &sigma));
        }
    }
    Ok(out)
}

/// The classical-point comparison behind the nonexistence mechanism: the
/// twisted point sets for two diagonal matrices, with a `distinct` flag.
#[derive(Clone, Debug, Serialize)]
pub struct DiscrepancyReport {
    pub subject: String,
    pub points_q1: Vec<String>,
    pub points_q2: Vec<String>,
    pub distinct: bool,
}

pub fn classical_point_discrepancy(
    n: u16,
    q1: &[GaussQ],
    q2: &[GaussQ],
) -> Result<DiscrepancyReport, Error> {
    let p1: Vec<String> = characters_magic_q(n, q1)?
        .into_iter()
        .map(|c| c.label)
        .collect();
    let p2: Vec<String> = characters_magic_q(n, q2)?
        .into_iter()
        .map(|c| c.label)
        .collect();
    let distinct = p1 != p2;
    Ok(DiscrepancyReport {
        subject: format!("classical_points(X_{n})"),
        points_q1: p1,
        points_q2: p2,
        distinct,
    })
}
