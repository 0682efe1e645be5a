//! Restarted GMRES with right preconditioning and modified Gram-Schmidt.
//!
//! With right preconditioning the Givens-updated residual estimate is the
//! norm of the true residual `b - A x`, which is what the stopping rule uses.

use crate::error::{Error, Result};
use crate::linalg::vector::{axpy, dot, norm2};
use crate::linalg::{CsrMatrix, Preconditioner};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy)]
pub struct GmresOptions<T> {
    pub restart: usize,
    pub rtol: T,
    pub max_iters: usize,
}

impl<T: Scalar> Default for GmresOptions<T> {
    fn default() -> Self {
        Self { restart: 500, rtol: T::lit(1e-12), max_iters: 20_000 }
    }
}

#[derive(Debug, Clone)]
pub struct GmresReport<T> {
    pub iterations: usize,
    pub restarts: usize,
    /// `||b - A x|| / ||b||` of the returned iterate.
    pub relative_residual: T,
    pub converged: bool,
    /// Residual estimate after every inner iteration.
    pub residual_history: Vec<T>,
    /// Inner-iteration index at which each restart cycle began.
    pub cycle_starts: Vec<usize>,
}

pub fn gmres<T: Scalar, P: Preconditioner<T>>(
    a: &CsrMatrix<T>,
    b: &[T],
    precond: &P,
    opts: &GmresOptions<T>,
) -> Result<(Vec<T>, GmresReport<T>)> {
    let mut x = vec![T::zero(); b.len()];
    let report = gmres_with_guess(a, b, &mut x, precond, opts)?;
    Ok((x, report))
}

/// GMRES starting from the contents of `x`, which receives the solution.
pub fn gmres_with_guess<T: Scalar, P: Preconditioner<T>>(
    a: &CsrMatrix<T>,
    b: &[T],
    x: &mut [T],
    precond: &P,
    opts: &GmresOptions<T>,
) -> Result<GmresReport<T>> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, got: a.ncols() });
    }
    if b.len() != n || x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: if b.len() != n { b.len() } else { x.len() } });
    }
    if opts.restart == 0 {
        return Err(Error::InvalidArgument("GMRES restart length must be positive".into()));
    }
    let mut report = GmresReport {
        iterations: 0,
        restarts: 0,
        relative_residual: T::zero(),
        converged: false,
        residual_history: Vec::new(),
        cycle_starts: Vec::new(),
    };
    let bnorm = norm2(b);
    if bnorm == T::zero() {
        x.iter_mut().for_each(|v| *v = T::zero());
        report.converged = true;
        return Ok(report);
    }

    let m = opts.restart.min(n.max(1));
    let mut basis: Vec<Vec<T>> = Vec::with_capacity(m + 1);
    let mut hess = vec![vec![T::zero(); m]; m + 1];
    let mut cs = vec![T::zero(); m];
    let mut sn = vec![T::zero(); m];
    let mut g = vec![T::zero(); m + 1];
    let mut z = vec![T::zero(); n];
    let mut w = vec![T::zero(); n];
    let mut r = vec![T::zero(); n];

    let residual = |x: &[T], r: &mut [T]| {
        a.spmv_into(x, r);
        r.iter_mut().zip(b).for_each(|(ri, &bi)| *ri = bi - *ri);
        norm2(r)
    };

    let mut beta = residual(x, &mut r);
    let mut best_cycle_start = beta;
    loop {
        report.relative_residual = beta / bnorm;
        if report.relative_residual <= opts.rtol {
            report.converged = true;
            return Ok(report);
        }
        if report.iterations >= opts.max_iters {
            return Ok(report);
        }
        report.cycle_starts.push(report.iterations);

        ensure_vec(&mut basis, 0, n);
        basis[0].iter_mut().zip(&r).for_each(|(v, &ri)| *v = ri / beta);
        g.iter_mut().for_each(|v| *v = T::zero());
        g[0] = beta;
        let mut k = 0;
        while k < m && report.iterations < opts.max_iters {
            precond.apply(&basis[k], &mut z);
            a.spmv_into(&z, &mut w);
            for i in 0..=k {
                let h = dot(&w, &basis[i]);
                hess[i][k] = h;
                axpy(-h, &basis[i], &mut w);
            }
            let hnext = norm2(&w);
            hess[k + 1][k] = hnext;
            for i in 0..k {
                let (hi, hi1) = (hess[i][k], hess[i + 1][k]);
                hess[i][k] = cs[i] * hi + sn[i] * hi1;
                hess[i + 1][k] = -sn[i] * hi + cs[i] * hi1;
            }
            let (hk, hk1) = (hess[k][k], hess[k + 1][k]);
            let denom = hk.hypot(hk1);
            if denom == T::zero() {
                cs[k] = T::one();
                sn[k] = T::zero();
            } else {
                cs[k] = hk / denom;
                sn[k] = hk1 / denom;
            }
            hess[k][k] = denom;
            hess[k + 1][k] = T::zero();
            g[k + 1] = -sn[k] * g[k];
            g[k] = cs[k] * g[k];
            report.iterations += 1;
            let est = g[k + 1].abs();
            report.residual_history.push(est / bnorm);
            k += 1;
            if est / bnorm <= opts.rtol || hnext == T::zero() || !est.is_finite() {
                break;
            }
            if k < m {
                ensure_vec(&mut basis, k, n);
                let inv = T::one() / hnext;
                basis[k].iter_mut().zip(&w).for_each(|(v, &wi)| *v = wi * inv);
            }
        }

        // back substitution on the triangularized Hessenberg system
        let mut y = vec![T::zero(); k];
        for i in (0..k).rev() {
            let mut s = g[i];
            for j in i + 1..k {
                s -= hess[i][j] * y[j];
            }
            y[i] = s / hess[i][i];
        }
        w.iter_mut().for_each(|v| *v = T::zero());
        for (i, &yi) in y.iter().enumerate() {
            axpy(yi, &basis[i], &mut w);
        }
        precond.apply(&w, &mut z);
        x.iter_mut().zip(&z).for_each(|(xi, &zi)| *xi += zi);
        report.restarts += 1;

        beta = residual(x, &mut r);
        if !beta.is_finite() {
            report.relative_residual = beta;
            return Err(Error::LinearSolver("GMRES produced a non-finite residual".into()));
        }
        // stagnation: a whole cycle without measurable progress
        if beta / bnorm > opts.rtol && beta >= best_cycle_start * (T::one() - T::lit(1e-10)) {
            report.relative_residual = beta / bnorm;
            return Ok(report);
        }
        best_cycle_start = best_cycle_start.min(beta);
    }
}

fn ensure_vec<T: Scalar>(basis: &mut Vec<Vec<T>>, k: usize, n: usize) {
    while basis.len() <= k {
        basis.push(vec![T::zero(); n]);
    }
}

/// Orthonormal Krylov basis `V` (k + 1 columns) and Hessenberg matrix `H`
/// ((k + 1) x k) of `A M^{-1}` started from `v0`, using the same modified
/// Gram-Schmidt step as the solver.
pub fn arnoldi<T: Scalar, P: Preconditioner<T>>(
    a: &CsrMatrix<T>,
    v0: &[T],
    k: usize,
    precond: &P,
) -> (Vec<Vec<T>>, Vec<Vec<T>>) {
    let n = v0.len();
    let beta = norm2(v0);
    let mut basis = vec![v0.iter().map(|&v| v / beta).collect::<Vec<T>>()];
    let mut hess = vec![vec![T::zero(); k]; k + 1];
    let mut z = vec![T::zero(); n];
    for j in 0..k {
        let mut w = vec![T::zero(); n];
        precond.apply(&basis[j], &mut z);
        a.spmv_into(&z, &mut w);
        for i in 0..=j {
            let h = dot(&w, &basis[i]);
            hess[i][j] = h;
            axpy(-h, &basis[i], &mut w);
        }
        let hn = norm2(&w);
        hess[j + 1][j] = hn;
        if hn == T::zero() {
            break;
        }
        basis.push(w.iter().map(|&v| v / hn).collect());
    }
    (basis, hess)
}
