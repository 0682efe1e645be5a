//! Sparse LU with partial pivoting (supernodal, fill-reducing ordering).

use faer::prelude::*;
use faer::sparse::linalg::solvers::{Lu, SymbolicLu};
use faer::sparse::{SparseColMat, Triplet};

use super::CsrMatrix;
use crate::error::{Error, Result};

/// Symbolic analysis that can be reused for matrices with the same pattern.
#[derive(Debug, Clone)]
pub struct SparseLuPattern {
    symbolic: SymbolicLu<usize>,
    n: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
}

pub struct SparseLu {
    lu: Lu<usize, f64>,
    n: usize,
}

fn to_faer(a: &CsrMatrix<f64>) -> Result<SparseColMat<usize, f64>> {
    let triplets: Vec<Triplet<usize, usize, f64>> = a.triplets().map(|(i, j, v)| Triplet::new(i, j, v)).collect();
    SparseColMat::try_new_from_triplets(a.nrows(), a.ncols(), &triplets)
        .map_err(|e| Error::LinearSolver(format!("cannot convert matrix: {e:?}")))
}

impl SparseLuPattern {
    pub fn analyze(a: &CsrMatrix<f64>) -> Result<Self> {
        if a.nrows() != a.ncols() {
            return Err(Error::DimensionMismatch { expected: a.nrows(), got: a.ncols() });
        }
        let m = to_faer(a)?;
        let symbolic = SymbolicLu::try_new(m.symbolic())
            .map_err(|e| Error::LinearSolver(format!("symbolic LU failed: {e:?}")))?;
        Ok(Self { symbolic, n: a.nrows(), row_ptr: a.row_ptr().to_vec(), col_idx: a.col_idx().to_vec() })
    }

    /// Numeric factorization of `a`, which must have the analyzed pattern.
    pub fn factorize(&self, a: &CsrMatrix<f64>) -> Result<SparseLu> {
        if a.row_ptr() != self.row_ptr.as_slice() || a.col_idx() != self.col_idx.as_slice() {
            return Err(Error::InvalidArgument("matrix pattern differs from the analyzed one".into()));
        }
        let m = to_faer(a)?;
        let lu = Lu::try_new_with_symbolic(self.symbolic.clone(), m.as_ref())
            .map_err(|e| Error::LinearSolver(format!("LU factorization failed: {e:?}")))?;
        Ok(SparseLu { lu, n: self.n })
    }
}

impl SparseLu {
    pub fn factorize(a: &CsrMatrix<f64>) -> Result<Self> {
        SparseLuPattern::analyze(a)?.factorize(a)
    }

    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        if b.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: b.len() });
        }
        let mut x = Mat::<f64>::from_fn(self.n, 1, |i, _| b[i]);
        self.lu.solve_in_place(x.as_mut());
        let x: Vec<f64> = (0..self.n).map(|i| x[(i, 0)]).collect();
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::LinearSolver("LU solve produced non-finite values (singular matrix?)".into()));
        }
        Ok(x)
    }

    /// Solve followed by up to `steps` rounds of iterative refinement
    /// against `a` (the factorized matrix); stops once the residual no
    /// longer decreases.
    pub fn solve_refined(&self, a: &CsrMatrix<f64>, b: &[f64], steps: usize) -> Result<Vec<f64>> {
        let mut x = self.solve(b)?;
        let residual = |x: &[f64]| -> Result<Vec<f64>> {
            let ax = a.spmv(x)?;
            Ok(b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect())
        };
        let mut r = residual(&x)?;
        let mut rnorm = super::vector::norm2(&r);
        for _ in 0..steps {
            if rnorm == 0.0 {
                break;
            }
            let dx = self.solve(&r)?;
            let candidate: Vec<f64> = x.iter().zip(&dx).map(|(xi, di)| xi + di).collect();
            let r_new = residual(&candidate)?;
            let n_new = super::vector::norm2(&r_new);
            if n_new >= rnorm {
                break;
            }
            x = candidate;
            r = r_new;
            rnorm = n_new;
        }
        Ok(x)
    }
}
