//! The concrete finite space B = ⊕ₖ M_{n_k} as structure constants.
//!
//! Elements of B are handled basis-wise: the matrix units `e[k,l;i]` (row k,
//! column l inside block i) multiply by `e[k,l;i]·e[r,s;j] = δ_ij δ_lr e[k,s;i]`,
//! star swaps row and column, and the canonical trace functional ψ weights the
//! diagonal units by 1.

use crate::scalar::{GaussQ, Scalar};

/// Index of one matrix unit `e[row,col; block]`.  All components are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BasisIdx {
    pub block: u16,
    pub row: u16,
    pub col: u16,
}

impl std::fmt::Display for BasisIdx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "e[{},{};{}]", self.row, self.col, self.block)
    }
}

/// A finite-dimensional C*-algebra ⊕ₖ M_{n_k} with its matrix-unit basis and
/// trace functional.
#[derive(Clone, Debug)]
pub struct FiniteSpace {
    blocks: Vec<u16>,
    basis: Vec<BasisIdx>,
}

/// Builds the finite space with the given block sizes.
pub fn finite_space(blocks: &[u16]) -> FiniteSpace {
    assert!(
        !blocks.is_empty() && blocks.iter().all(|&n| n >= 1),
        "block sizes must be positive"
    );
    let mut basis = Vec::new();
    for (b, &n) in blocks.iter().enumerate() {
        for row in 1..=n {
            for col in 1..=n {
                basis.push(BasisIdx {
                    block: (b + 1) as u16,
                    row,
                    col,
                });
            }
        }
    }
    FiniteSpace {
        blocks: blocks.to_vec(),
        basis,
    }
}

impl FiniteSpace {
    pub fn blocks(&self) -> &[u16] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Vector-space dimension Σ n_k².
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Matrix units in canonical order (block, then row, then column).
    pub fn basis(&self) -> &[BasisIdx] {
        &self.basis
    }

    /// Position of a matrix unit in the canonical basis order.
    pub fn index_of(&self, e: &BasisIdx) -> usize {
        let mut offset = 0usize;
        for &n in &self.blocks[..(e.block - 1) as usize] {
            offset += (n as usize) * (n as usize);
        }
        let n = self.blocks[(e.block - 1) as usize] as usize;
        offset + (e.row as usize - 1) * n + (e.col as usize - 1)
    }

    /// Structure constants: `e·f` is either zero or a single matrix unit.
    pub fn mul(&self, e: &BasisIdx, f: &BasisIdx) -> Option<BasisIdx> {
        if e.block == f.block && e.col == f.row {
            Some(BasisIdx {
                block: e.block,
                row: e.row,
                col: f.col,
            })
        } else {
            None
        }
    }

    /// The adjoint `e[k,l;i]* = e[l,k;i]`.
    pub fn star(&self, e: &BasisIdx) -> BasisIdx {
        BasisIdx {
            block: e.block,
            row: e.col,
            col: e.row,
        }
    }

    /// The unit 1 = Σ e[p,p;q] as the list of diagonal units.
    pub fn unit(&self) -> Vec<BasisIdx> {
        self.basis
            .iter()
            .filter(|e| e.row == e.col)
            .copied()
            .collect()
    }

    /// The trace functional: ψ(e[k,l;i]) = δ_{kl}.
    pub fn psi(&self, e: &BasisIdx) -> GaussQ {
        if e.row == e.col {
            GaussQ::from_int(1)
        } else {
            GaussQ::from_int(0)
        }
    }

    /// ψ(1) = Σ n_k.
    pub fn psi_of_unit(&self) -> GaussQ {
        GaussQ::from_int(self.blocks.iter().map(|&n| n as i64).sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Zero;

    #[test]
    fn matrix_unit_products() {
        let b = finite_space(&[2]);
        let e11 = BasisIdx { block: 1, row: 1, col: 1 };
        let e12 = BasisIdx { block: 1, row: 1, col: 2 };
        assert_eq!(b.mul(&e11, &e12), Some(e12));
        assert_eq!(b.mul(&e12, &e11), None);
        assert_eq!(b.star(&e12), BasisIdx { block: 1, row: 2, col: 1 });
    }

    #[test]
    fn structure_constants_are_associative_and_star_compatible() {
        for blocks in [vec![2], vec![1, 2], vec![2, 2], vec![1, 1, 1]] {
            let b = finite_space(&blocks);
            for e in b.basis() {
                for f in b.basis() {
                    // (e·f)* = f*·e*
                    let lhs = b.mul(e, f).map(|p| b.star(&p));
                    let rhs = b.mul(&b.star(f), &b.star(e));
                    assert_eq!(lhs, rhs);
                    for g in b.basis() {
                        // (e·f)·g = e·(f·g)
                        let l = b.mul(e, f).and_then(|p| b.mul(&p, g));
                        let r = b.mul(f, g).and_then(|p| b.mul(e, &p));
                        assert_eq!(l, r);
                    }
                }
            }
        }
    }

    #[test]
    fn unit_is_two_sided_identity() {
        let b = finite_space(&[1, 2]);
        for e in b.basis() {
            let left: Vec<BasisIdx> = b
                .unit()
                .iter()
                .filter_map(|d| b.mul(d, e))
                .collect();
            let right: Vec<BasisIdx> = b
                .unit()
                .iter()
                .filter_map(|d| b.mul(e, d))
                .collect();
            assert_eq!(left, vec![*e]);
            assert_eq!(right, vec![*e]);
        }
    }

    #[test]
    fn psi_weights() {
        let b = finite_space(&[1, 2]);
        assert_eq!(b.dim(), 5);
        assert_eq!(b.psi_of_unit(), GaussQ::from_int(3));
        let e12 = BasisIdx { block: 2, row: 1, col: 2 };
        let e22 = BasisIdx { block: 2, row: 2, col: 2 };
        assert!(b.psi(&e12).is_zero());
        assert_eq!(b.psi(&e22), GaussQ::from_int(1));
        assert_eq!(b.index_of(&e22), 4);
    }
}
