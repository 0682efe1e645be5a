//! Incomplete LU factorization with zero fill.

use crate::error::{Error, Result};
use crate::linalg::CsrMatrix;
use crate::scalar::Scalar;

/// `L` (unit lower, diagonal implicit) and `U` stored together on the pattern
/// of the factorized matrix.
#[derive(Debug, Clone)]
pub struct Ilu0Factors<T> {
    n: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    diag: Vec<usize>,
    values: Vec<T>,
}

/// Application of `M^{-1}`.
pub trait Preconditioner<T> {
    fn apply(&self, r: &[T], z: &mut [T]);
}

#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityPreconditioner;

impl<T: Scalar> Preconditioner<T> for IdentityPreconditioner {
    fn apply(&self, r: &[T], z: &mut [T]) {
        z.copy_from_slice(r);
    }
}

/// IKJ ILU(0). Every row needs a stored diagonal entry; a pivot whose
/// magnitude falls below `eps * max|row|` is reported with its row.
pub fn ilu0_factorize<T: Scalar>(a: &CsrMatrix<T>) -> Result<Ilu0Factors<T>> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, got: a.ncols() });
    }
    let row_ptr = a.row_ptr().to_vec();
    let col_idx = a.col_idx().to_vec();
    let mut values = a.values().to_vec();
    let mut diag = vec![usize::MAX; n];
    let mut pos = vec![usize::MAX; n];

    for i in 0..n {
        let (start, end) = (row_ptr[i], row_ptr[i + 1]);
        for k in start..end {
            pos[col_idx[k]] = k;
        }
        let row_scale = values[start..end].iter().fold(T::zero(), |m, v| m.max(v.abs()));
        for kk in start..end {
            let k = col_idx[kk];
            if k >= i {
                break;
            }
            let pivot = values[diag[k]];
            let lik = values[kk] / pivot;
            values[kk] = lik;
            for jj in diag[k] + 1..row_ptr[k + 1] {
                let p = pos[col_idx[jj]];
                if p != usize::MAX {
                    let ukj = values[jj];
                    values[p] -= lik * ukj;
                }
            }
        }
        let d = pos[i];
        for k in start..end {
            pos[col_idx[k]] = usize::MAX;
        }
        let pivot = if d == usize::MAX { T::zero() } else { values[d] };
        if d == usize::MAX || !(pivot.abs() > T::epsilon() * row_scale) || !pivot.is_finite() {
            return Err(Error::ZeroPivot { row: i, pivot: pivot.to_f64().unwrap_or(f64::NAN) });
        }
        diag[i] = d;
    }
    Ok(Ilu0Factors { n, row_ptr, col_idx, diag, values })
}

impl<T: Scalar> Ilu0Factors<T> {
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Solves `L U z = r`.
    pub fn solve(&self, r: &[T], z: &mut [T]) {
        debug_assert_eq!(r.len(), self.n);
        z.copy_from_slice(r);
        for i in 0..self.n {
            let mut s = z[i];
            for k in self.row_ptr[i]..self.diag[i] {
                s -= self.values[k] * z[self.col_idx[k]];
            }
            z[i] = s;
        }
        for i in (0..self.n).rev() {
            let mut s = z[i];
            for k in self.diag[i] + 1..self.row_ptr[i + 1] {
                s -= self.values[k] * z[self.col_idx[k]];
            }
            z[i] = s / self.values[self.diag[i]];
        }
    }

    /// Unit lower factor with explicit diagonal.
    pub fn lower(&self) -> CsrMatrix<T> {
        let mut t = Vec::new();
        for i in 0..self.n {
            for k in self.row_ptr[i]..self.diag[i] {
                t.push((i, self.col_idx[k], self.values[k]));
            }
            t.push((i, i, T::one()));
        }
        CsrMatrix::from_triplets(self.n, self.n, t).expect("indices in range")
    }

    pub fn upper(&self) -> CsrMatrix<T> {
        let mut t = Vec::new();
        for i in 0..self.n {
            for k in self.diag[i]..self.row_ptr[i + 1] {
                t.push((i, self.col_idx[k], self.values[k]));
            }
        }
        CsrMatrix::from_triplets(self.n, self.n, t).expect("indices in range")
    }
}

impl<T: Scalar> Preconditioner<T> for Ilu0Factors<T> {
    fn apply(&self, r: &[T], z: &mut [T]) {
        self.solve(r, z);
    }
}
