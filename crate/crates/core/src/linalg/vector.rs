//! Dense vector kernels. Reductions use a fixed chunking so results do not
//! depend on the number of worker threads.

use rayon::prelude::*;

use crate::scalar::Scalar;

pub(crate) const PAR_CHUNK: usize = 8192;

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    let serial = |a: &[T], b: &[T]| a.iter().zip(b).fold(T::zero(), |s, (&x, &y)| s + x * y);
    if a.len() < 4 * PAR_CHUNK {
        return a
            .chunks(PAR_CHUNK)
            .zip(b.chunks(PAR_CHUNK))
            .map(|(x, y)| serial(x, y))
            .fold(T::zero(), |s, p| s + p);
    }
    let partial: Vec<T> = a
        .par_chunks(PAR_CHUNK)
        .zip(b.par_chunks(PAR_CHUNK))
        .map(|(x, y)| serial(x, y))
        .collect();
    partial.into_iter().fold(T::zero(), |s, p| s + p)
}

pub fn norm2<T: Scalar>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

/// `y += alpha x`
pub fn axpy<T: Scalar>(alpha: T, x: &[T], y: &mut [T]) {
    if y.len() < 4 * PAR_CHUNK {
        y.iter_mut().zip(x).for_each(|(yi, &xi)| *yi += alpha * xi);
    } else {
        y.par_chunks_mut(PAR_CHUNK)
            .zip(x.par_chunks(PAR_CHUNK))
            .for_each(|(yc, xc)| yc.iter_mut().zip(xc).for_each(|(yi, &xi)| *yi += alpha * xi));
    }
}
