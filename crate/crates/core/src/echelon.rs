//! Gaussian elimination over the prime field `F_p`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

fn require_field(m: &Matrix) -> Result<()> {
    if m.ring().is_field() {
        Ok(())
    } else {
        Err(Error::NotField)
    }
}

/// Reduced row echelon form and its pivot columns.
pub fn rref(m: &Matrix) -> Result<(Matrix, Vec<usize>)> {
    require_field(m)?;
    let r = m.ring();
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..a.cols() {
        if row == a.rows() {
            break;
        }
        let Some(piv) = (row..a.rows()).find(|&i| a.get(i, c) != 0) else {
            continue;
        };
        a.swap_rows(piv, row);
        let u = r.inv(a.get(row, c)).expect("field");
        a.scale_row(row, u);
        for i in 0..a.rows() {
            if i != row {
                let f = a.get(i, c);
                if f != 0 {
                    a.add_row_multiple(i, row, r.neg(f));
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    Ok((a, pivots))
}

pub fn rank(m: &Matrix) -> Result<usize> {
    Ok(rref(m)?.1.len())
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace(m: &Matrix) -> Result<Vec<Vec<u64>>> {
    let (a, pivots) = rref(m)?;
    let r = m.ring();
    let n = m.cols();
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = r.neg(a.get(i, free));
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Basis of the column space, taken from the original pivot columns.
pub fn column_space(m: &Matrix) -> Result<Vec<Vec<u64>>> {
    let (_, pivots) = rref(m)?;
    Ok(pivots.iter().map(|&c| m.column(c)).collect())
}

/// A basis of the span of `vectors` (a subset of them, in order).
pub fn independent_subset(ring: crate::RingSpec, vectors: &[Vec<u64>]) -> Result<Vec<Vec<u64>>> {
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    let n = vectors[0].len();
    let m = Matrix::from_columns(ring, n, vectors)?;
    column_space(&m)
}

/// Some solution of `m x = b`, if one exists.
pub fn solve(m: &Matrix, b: &[u64]) -> Result<Option<Vec<u64>>> {
    require_field(m)?;
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch { left: (m.rows(), m.cols()), right: (b.len(), 1) });
    }
    let mut aug = Matrix::zeros(m.ring(), m.rows(), m.cols() + 1);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            aug.set(i, j, m.get(i, j));
        }
        aug.set(i, m.cols(), b[i]);
    }
    let (a, pivots) = rref(&aug)?;
    if pivots.last() == Some(&m.cols()) {
        return Ok(None);
    }
    let mut x = vec![0u64; m.cols()];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = a.get(i, m.cols());
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RingSpec;

    #[test]
    fn nullspace_is_annihilated() {
        let r = RingSpec::field(3).unwrap();
        let m = Matrix::from_rows(r, &[[1, 2, 0, 1], [2, 1, 0, 2], [0, 0, 1, 1]]).unwrap();
        let ns = nullspace(&m).unwrap();
        assert_eq!(ns.len(), 4 - rank(&m).unwrap());
        for v in ns {
            assert!(m.mul_vec(&v).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let r = RingSpec::field(2).unwrap();
        let m = Matrix::from_rows(r, &[[1, 1], [1, 1]]).unwrap();
        assert!(solve(&m, &[1, 0]).unwrap().is_none());
        let x = solve(&m, &[1, 1]).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), vec![1, 1]);
    }

    #[test]
    fn requires_field() {
        let r = RingSpec::new(2, 2).unwrap();
        assert_eq!(rank(&Matrix::identity(r, 2)), Err(Error::NotField));
    }
}
