//! Matrix Market coordinate format (`real general`), for inspecting assembled
//! systems with external tools.

use std::io::{BufRead, BufReader, Read, Write};

use crate::error::{Error, Result};
use crate::linalg::CsrMatrix;

pub fn write_matrix_market<W: Write>(a: &CsrMatrix<f64>, mut out: W) -> Result<()> {
    writeln!(out, "%%MatrixMarket matrix coordinate real general")?;
    writeln!(out, "{} {} {}", a.nrows(), a.ncols(), a.nnz())?;
    for (i, j, v) in a.triplets() {
        writeln!(out, "{} {} {:e}", i + 1, j + 1, v)?;
    }
    Ok(())
}

pub fn read_matrix_market<R: Read>(input: R) -> Result<CsrMatrix<f64>> {
    let mut lines = BufReader::new(input).lines();
    let banner = lines.next().ok_or_else(|| Error::Parse("empty Matrix Market file".into()))??;
    let lower = banner.to_ascii_lowercase();
    if !lower.starts_with("%%matrixmarket matrix coordinate") {
        return Err(Error::Parse(format!("unsupported banner {banner:?}")));
    }
    let symmetric = lower.contains("symmetric");
    if !(lower.contains("real") || lower.contains("integer")) {
        return Err(Error::Parse("only real matrices are supported".into()));
    }
    let mut body = lines.filter(|l| l.as_ref().map_or(true, |s| !s.starts_with('%') && !s.trim().is_empty()));
    let size = body.next().ok_or_else(|| Error::Parse("missing size line".into()))??;
    let dims: Vec<usize> = size
        .split_whitespace()
        .map(|s| s.parse().map_err(|_| Error::Parse(format!("bad size line {size:?}"))))
        .collect::<Result<_>>()?;
    let [nrows, ncols, nnz] = dims[..] else {
        return Err(Error::Parse(format!("bad size line {size:?}")));
    };
    let mut triplets = Vec::with_capacity(nnz);
    for line in body.take(nnz) {
        let line = line?;
        let mut it = line.split_whitespace();
        let mut field = || it.next().ok_or_else(|| Error::Parse(format!("short entry {line:?}")));
        let i: usize = field()?.parse().map_err(|_| Error::Parse(format!("bad row in {line:?}")))?;
        let j: usize = field()?.parse().map_err(|_| Error::Parse(format!("bad column in {line:?}")))?;
        let v: f64 = field()?.parse().map_err(|_| Error::Parse(format!("bad value in {line:?}")))?;
        if i == 0 || j == 0 {
            return Err(Error::Parse("Matrix Market indices are one-based".into()));
        }
        triplets.push((i - 1, j - 1, v));
        if symmetric && i != j {
            triplets.push((j - 1, i - 1, v));
        }
    }
    if triplets.len() < nnz {
        return Err(Error::Parse("fewer entries than declared".into()));
    }
    CsrMatrix::from_triplets(nrows, ncols, triplets)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let a = CsrMatrix::from_dense(&[vec![1.5, 0.0, -2.0], vec![0.0, 3.25e-7, 0.0]]);
        let mut buf = Vec::new();
        write_matrix_market(&a, &mut buf).unwrap();
        assert_eq!(read_matrix_market(buf.as_slice()).unwrap(), a);
    }

    #[test]
    fn symmetric_expands() {
        let s = "%%MatrixMarket matrix coordinate real symmetric\n% c\n2 2 2\n1 1 2.0\n2 1 -1.0\n";
        let a = read_matrix_market(s.as_bytes()).unwrap();
        assert_eq!(a.get(0, 1), Some(-1.0));
        assert_eq!(a.get(1, 0), Some(-1.0));
        assert!(read_matrix_market("%%MatrixMarket matrix array real general\n".as_bytes()).is_err());
    }
}
