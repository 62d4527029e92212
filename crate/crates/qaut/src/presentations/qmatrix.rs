//! Exact square matrices of Gaussian rationals for Q-twisted presentations.
//!
//! Symbolic paths need Q and Q⁻¹ with exact entries, so the twisted relations
//! stay decidable.  Positivity is checked exactly for Hermitian matrices via
//! the pivots of the LDL* elimination (all pivots positive ⟺ positive
//! definite); arbitrary floating-point Q belongs to the numeric layer.

use num::Zero;

use crate::error::Error;
use crate::scalar::{GaussQ, Scalar};

/// An exact square matrix, row-major, used as the Q of twisted presentations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    n: usize,
    entries: Vec<GaussQ>,
}

impl QMatrix {
    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n);
        for i in 0..n {
            *m.get_mut(i, i) = GaussQ::from_int(1);
        }
        m
    }

    fn zeros(n: usize) -> Self {
        QMatrix {
            n,
            entries: vec![GaussQ::zero(); n * n],
        }
    }

    /// Diagonal matrix with the given entries.
    pub fn from_diag(diag: &[GaussQ]) -> Self {
        let mut m = QMatrix::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            *m.get_mut(i, i) = d.clone();
        }
        m
    }

    /// Dense matrix from rows; all rows must have the same length as there
    /// are rows.
    pub fn from_rows(rows: Vec<Vec<GaussQ>>) -> Result<Self, Error> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "expected a square {n}×{n} matrix"
            )));
        }
        Ok(QMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Entry at 0-based (row, col).
    pub fn get(&self, i: usize, j: usize) -> &GaussQ {
        &self.entries[i * self.n + j]
    }

    fn get_mut(&mut self, i: usize, j: usize) -> &mut GaussQ {
        &mut self.entries[i * self.n + j]
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let want = GaussQ::from_int(i64::from(i == j));
                *self.get(i, j) == want
            })
        })
    }

    /// The diagonal, if the matrix is diagonal.
    pub fn diagonal(&self) -> Option<Vec<GaussQ>> {
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && !self.get(i, j).is_zero() {
                    return None;
                }
            }
        }
        Some((0..self.n).map(|i| self.get(i, i).clone()).collect())
    }

    pub fn is_hermitian(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| *self.get(i, j) == self.get(j, i).conj()))
    }

    /// Exact positive-definiteness check: the matrix must be Hermitian with
    /// all LDL* pivots real and positive.
    pub fn require_positive(&self) -> Result<(), Error> {
        if !self.is_hermitian() {
            return Err(Error::NotPositive(
                "Q must be Hermitian to be positive".into(),
            ));
        }
        let mut m = self.clone();
        for k in 0..self.n {
            let pivot = m.get(k, k).clone();
            if !pivot.im.is_zero() || pivot.re <= num::BigRational::zero() {
                return Err(Error::NotPositive(format!(
                    "pivot {k} of the LDL* elimination is {pivot}, not positive"
                )));
            }
            let inv = pivot.inv().expect("nonzero pivot");
            for i in (k + 1)..self.n {
                for j in (k + 1)..self.n {
                    let delta = m.get(i, k).clone() * inv.clone() * m.get(k, j).clone();
                    let val = m.get(i, j).clone() - delta;
                    *m.get_mut(i, j) = val;
                }
            }
        }
        Ok(())
    }

    /// Exact inverse by Gauss–Jordan elimination.
    ///
    /// Callers hold positive-definite Q, so a singular input signals a broken
    /// precondition and reports as [`Error::NotPositive`].
    pub fn inverse(&self) -> Result<QMatrix, Error> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = QMatrix::identity(n);
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or_else(|| Error::NotPositive("Q is singular".into()))?;
            if pivot_row != col {
                for j in 0..n {
                    a.entries.swap(col * n + j, pivot_row * n + j);
                    inv.entries.swap(col * n + j, pivot_row * n + j);
                }
            }
            let pinv = a.get(col, col).inv().expect("nonzero pivot");
            for j in 0..n {
                *a.get_mut(col, j) = a.get(col, j).clone() * pinv.clone();
                *inv.get_mut(col, j) = inv.get(col, j).clone() * pinv.clone();
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in 0..n {
                    let da = factor.clone() * a.get(col, j).clone();
                    let di = factor.clone() * inv.get(col, j).clone();
                    *a.get_mut(r, j) = a.get(r, j).clone() - da;
                    *inv.get_mut(r, j) = inv.get(r, j).clone() - di;
                }
            }
        }
        Ok(inv)
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.n, other.n);
        let mut out = QMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut s = GaussQ::zero();
                for k in 0..self.n {
                    s = s + self.get(i, k).clone() * other.get(k, j).clone();
                }
                *out.get_mut(i, j) = s;
            }
        }
        out
    }
}

impl std::fmt::Display for QMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Some(d) = self.diagonal() {
            write!(f, "diag(")?;
            for (i, v) in d.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            return write!(f, ")");
        }
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}
