//! Dense matrices over `Z/p^mZ`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::RingSpec;

/// Default cap for [`Matrix::order`].
pub const DEFAULT_ORDER_CAP: u64 = 1_000_000;

/// Dense row-major matrix with every entry reduced into `[0, p^m)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "MatrixRepr", into = "MatrixRepr"))]
pub struct Matrix {
    ring: RingSpec,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Serialised form: the ring and the rows.
#[cfg(feature = "serde")]
#[derive(serde::Serialize, serde::Deserialize)]
struct MatrixRepr {
    ring: RingSpec,
    rows: Vec<Vec<u64>>,
}

#[cfg(feature = "serde")]
impl From<Matrix> for MatrixRepr {
    fn from(m: Matrix) -> Self {
        MatrixRepr { ring: m.ring, rows: m.to_rows() }
    }
}

#[cfg(feature = "serde")]
impl TryFrom<MatrixRepr> for Matrix {
    type Error = Error;

    fn try_from(r: MatrixRepr) -> Result<Self> {
        let cols = r.rows.first().map_or(0, Vec::len);
        if r.rows.iter().any(|row| row.len() != cols) {
            return Err(Error::SizeMismatch);
        }
        Matrix::new(r.ring, r.rows.len(), cols, r.rows.concat())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<Z/{}>[", self.ring.modulus())?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str("; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        f.write_str("]")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            if r + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

impl Matrix {
    /// Builds a matrix from row-major residues, reducing each one.
    pub fn new(ring: RingSpec, rows: usize, cols: usize, data: Vec<u64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::DimensionMismatch { left: (rows, cols), right: (data.len(), 1) });
        }
        let q = ring.modulus();
        let data = data.into_iter().map(|x| x % q).collect();
        Ok(Matrix { ring, rows, cols, data })
    }

    /// Builds a matrix from signed integers, reducing modulo `p^m`.
    pub fn from_i64(ring: RingSpec, rows: usize, cols: usize, data: &[i64]) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::DimensionMismatch { left: (rows, cols), right: (data.len(), 1) });
        }
        let data = data.iter().map(|&x| ring.reduce(x)).collect();
        Ok(Matrix { ring, rows, cols, data })
    }

    /// Builds a matrix from signed rows; all rows must have the same length.
    pub fn from_rows<R: AsRef<[i64]>>(ring: RingSpec, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch { left: (rows.len(), cols), right: (1, r.len()) });
            }
            data.extend_from_slice(r);
        }
        Self::from_i64(ring, rows.len(), cols, &data)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(ring: RingSpec, rows: usize, columns: &[Vec<u64>]) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::EmptyInput);
        }
        let cols = columns.len();
        let mut m = Matrix::zeros(ring, rows, cols);
        for (c, v) in columns.iter().enumerate() {
            if v.len() != rows {
                return Err(Error::DimensionMismatch { left: (rows, cols), right: (v.len(), 1) });
            }
            for (r, &x) in v.iter().enumerate() {
                m.set(r, c, x);
            }
        }
        Ok(m)
    }

    pub fn zeros(ring: RingSpec, rows: usize, cols: usize) -> Self {
        Matrix { ring, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(ring: RingSpec, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % ring.modulus();
        }
        m
    }

    /// Block-diagonal sum of square or rectangular blocks.
    pub fn direct_sum(blocks: &[Matrix]) -> Result<Self> {
        let first = blocks.first().ok_or(Error::EmptyInput)?;
        let ring = first.ring;
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(ring, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            if b.ring != ring {
                return Err(Error::RingMismatch);
            }
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out.set(r0 + r, c0 + c, b.get(r, c));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        Ok(out)
    }

    /// Upper-triangular Jordan block of size `n` with eigenvalue `lambda`.
    pub fn jordan_block(ring: RingSpec, n: usize, lambda: u64) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, lambda);
            if i + 1 < n {
                m.set(i, i + 1, 1);
            }
        }
        m
    }

    #[inline]
    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: u64) {
        self.data[r * self.cols + c] = x % self.ring.modulus();
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u64>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.ring, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (0..self.cols).all(|c| self.get(r, c) == u64::from(r == c)))
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Matrix) -> Matrix {
        let q = self.ring.modulus();
        let mut out = Matrix::zeros(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d = (*d + a * b) % q;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let r = self.ring;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| r.add(a, b)).collect();
        Ok(Matrix { data, ..*self.shape() })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let r = self.ring;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| r.sub(a, b)).collect();
        Ok(Matrix { data, ..*self.shape() })
    }

    fn shape(&self) -> &Matrix {
        self
    }

    pub fn scale(&self, k: u64) -> Matrix {
        let r = self.ring;
        let data = self.data.iter().map(|&a| r.mul(a, k % r.modulus())).collect();
        Matrix { ring: self.ring, rows: self.rows, cols: self.cols, data }
    }

    /// `self - I` for square matrices.
    pub fn minus_identity(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        self.sub(&Matrix::identity(self.ring, self.rows))
    }

    pub fn mul_vec(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { left: (self.rows, self.cols), right: (v.len(), 1) });
        }
        Ok(self.mul_vec_unchecked(v))
    }

    pub(crate) fn mul_vec_unchecked(&self, v: &[u64]) -> Vec<u64> {
        let q = self.ring.modulus();
        (0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).fold(0u64, |acc, (&a, &b)| (acc + a * b) % q)
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let mut acc = Matrix::identity(self.ring, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Result<u64> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        Ok((0..self.rows).fold(0, |acc, i| self.ring.add(acc, self.get(i, i))))
    }

    /// Entrywise reduction to the residue field `F_p`.
    pub fn reduce_mod_p(&self) -> Matrix {
        let f = self.ring.residue_field();
        let data = self.data.iter().map(|&x| x % f.modulus()).collect();
        Matrix { ring: f, rows: self.rows, cols: self.cols, data }
    }

    /// Reinterprets the entries over a ring with the same prime (used to lift
    /// `F_p` data into `Z/p^mZ` by the standard representatives).
    pub fn with_ring(&self, ring: RingSpec) -> Result<Matrix> {
        if ring.p() != self.ring.p() {
            return Err(Error::RingMismatch);
        }
        Matrix::new(ring, self.rows, self.cols, self.data.clone())
    }

    /// Exact determinant in `Z/p^mZ`.
    ///
    /// Cofactor expansion up to size 6, division-free Berkowitz beyond.
    pub fn det(&self) -> Result<u64> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        if self.rows <= 6 {
            Ok(self.det_cofactor())
        } else {
            Ok(self.det_berkowitz())
        }
    }

    pub(crate) fn det_cofactor(&self) -> u64 {
        let n = self.rows;
        let cols: Vec<usize> = (0..n).collect();
        self.cofactor_rec(0, &cols)
    }

    fn cofactor_rec(&self, row: usize, cols: &[usize]) -> u64 {
        let r = self.ring;
        if cols.len() == 1 {
            return self.get(row, cols[0]);
        }
        let mut acc = 0;
        let mut rest = Vec::with_capacity(cols.len() - 1);
        for (j, &c) in cols.iter().enumerate() {
            let a = self.get(row, c);
            if a == 0 {
                continue;
            }
            rest.clear();
            rest.extend(cols.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x));
            let minor = self.cofactor_rec(row + 1, &rest);
            let term = r.mul(a, minor);
            acc = if j % 2 == 0 { r.add(acc, term) } else { r.sub(acc, term) };
        }
        acc
    }

    pub(crate) fn det_berkowitz(&self) -> u64 {
        let cp = self.charpoly_coeffs();
        let c0 = cp[0];
        if self.rows % 2 == 0 {
            c0
        } else {
            self.ring.neg(c0)
        }
    }

    /// Coefficients of `det(X·I - self)`, low to high, via Berkowitz's
    /// division-free recursion (valid over any commutative ring).
    pub fn charpoly_coeffs(&self) -> Vec<u64> {
        assert!(self.is_square(), "charpoly of a non-square matrix");
        let r = self.ring;
        let n = self.rows;
        // high-to-low coefficients of the charpoly of the trailing principal block
        let mut poly: Vec<u64> = vec![1 % r.modulus()];
        for k in (0..n).rev() {
            let s = n - 1 - k;
            let mut toeplitz = Vec::with_capacity(s + 2);
            toeplitz.push(1 % r.modulus());
            toeplitz.push(r.neg(self.get(k, k)));
            // column C = self[k+1.., k]; repeatedly apply M = self[k+1.., k+1..]
            let mut col: Vec<u64> = (k + 1..n).map(|i| self.get(i, k)).collect();
            for _ in 0..s {
                let rc = (k + 1..n).zip(&col).fold(0, |acc, (j, &c)| r.add(acc, r.mul(self.get(k, j), c)));
                toeplitz.push(r.neg(rc));
                col = (k + 1..n)
                    .map(|i| (k + 1..n).zip(&col).fold(0, |acc, (j, &c)| r.add(acc, r.mul(self.get(i, j), c))))
                    .collect();
            }
            let mut next = vec![0u64; s + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, &o) in poly.iter().enumerate() {
                    if j <= i {
                        *slot = r.add(*slot, r.mul(toeplitz[i - j], o));
                    }
                }
            }
            poly = next;
        }
        poly.reverse();
        poly
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.ring.is_unit(self.reduce_mod_p().det_field())
    }

    fn det_field(&self) -> u64 {
        if self.rows <= 6 {
            self.det_cofactor()
        } else {
            self.det_berkowitz()
        }
    }

    /// Inverse by Gauss-Jordan elimination with unit pivots. Over the local ring
    /// `Z/p^mZ` an invertible matrix always offers a unit pivot.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let r = self.ring;
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(r, n);
        for c in 0..n {
            let pivot = (c..n).find(|&i| r.is_unit(a.get(i, c))).ok_or(Error::NotInvertible)?;
            if pivot != c {
                a.swap_rows(pivot, c);
                inv.swap_rows(pivot, c);
            }
            let u = r.inv(a.get(c, c)).expect("unit pivot");
            a.scale_row(c, u);
            inv.scale_row(c, u);
            for i in 0..n {
                if i != c {
                    let f = a.get(i, c);
                    if f != 0 {
                        a.add_row_multiple(i, c, r.neg(f));
                        inv.add_row_multiple(i, c, r.neg(f));
                    }
                }
            }
        }
        Ok(inv)
    }

    pub(crate) fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, k: u64) {
        let r = self.ring;
        for c in 0..self.cols {
            let x = &mut self.data[i * self.cols + c];
            *x = r.mul(*x, k);
        }
    }

    /// `row[i] += k * row[j]`
    pub(crate) fn add_row_multiple(&mut self, i: usize, j: usize, k: u64) {
        let r = self.ring;
        for c in 0..self.cols {
            let s = self.data[j * self.cols + c];
            let x = &mut self.data[i * self.cols + c];
            *x = r.add(*x, r.mul(k, s));
        }
    }

    /// Multiplicative order: least `k >= 1` with `self^k = I`.
    pub fn order(&self, cap: u64) -> Result<u64> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        if !self.is_invertible() {
            return Err(Error::NotInvertible);
        }
        let mut acc = self.clone();
        let mut k = 1u64;
        while !acc.is_identity() {
            if k >= cap {
                return Err(Error::CapExceeded { cap: cap as usize });
            }
            acc = acc.mul_unchecked(self);
            k += 1;
        }
        Ok(k)
    }

    /// Characteristic polynomial over `F_p`.
    pub fn charpoly(&self) -> Result<Polynomial> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        if !self.ring.is_field() {
            return Err(Error::NotField);
        }
        Polynomial::new(self.ring, self.charpoly_coeffs())
    }

    /// Minimal polynomial over `F_p`: the first linear dependency among
    /// `I, a, a^2, ...` found by incremental elimination.
    pub fn minpoly(&self) -> Result<Polynomial> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        if !self.ring.is_field() {
            return Err(Error::NotField);
        }
        let r = self.ring;
        let n = self.rows;
        let mut tracker = DependencyTracker::new(r, n * n);
        let mut power = Matrix::identity(r, n);
        loop {
            if let Some(mut combo) = tracker.push(power.data.clone()) {
                // combo expresses power_k = sum combo[i] power_i; minpoly = X^k - sum
                for c in combo.iter_mut() {
                    *c = r.neg(*c);
                }
                combo.push(1);
                return Polynomial::new(r, combo);
            }
            power = power.mul_unchecked(self);
        }
    }
}

/// Incremental Gaussian elimination over a field that reports the first vector
/// lying in the span of the earlier ones, with its coefficients.
pub(crate) struct DependencyTracker {
    ring: RingSpec,
    len: usize,
    // (reduced vector, pivot column, combination of originals it equals)
    rows: Vec<(Vec<u64>, usize, Vec<u64>)>,
    count: usize,
}

impl DependencyTracker {
    pub(crate) fn new(ring: RingSpec, len: usize) -> Self {
        DependencyTracker { ring, len, rows: Vec::new(), count: 0 }
    }

    /// Adds vector `v_k`; returns `Some(c)` with `v_k = sum c_i v_i` (i < k) if dependent.
    pub(crate) fn push(&mut self, mut v: Vec<u64>) -> Option<Vec<u64>> {
        debug_assert_eq!(v.len(), self.len);
        let r = self.ring;
        let k = self.count;
        // track v = original_k - sum(...)  as combination coefficients
        let mut combo = vec![0u64; k + 1];
        combo[k] = 1;
        for (row, piv, rc) in &self.rows {
            let f = v[*piv];
            if f == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row) {
                *x = r.sub(*x, r.mul(f, y));
            }
            for (x, &y) in combo.iter_mut().zip(rc) {
                *x = r.sub(*x, r.mul(f, y));
            }
        }
        match v.iter().position(|&x| x != 0) {
            None => {
                // 0 = combo . originals, combo[k] = 1
                let coeffs = combo[..k].iter().map(|&c| r.neg(c)).collect();
                Some(coeffs)
            }
            Some(piv) => {
                let u = r.inv(v[piv]).expect("field");
                for x in v.iter_mut() {
                    *x = r.mul(*x, u);
                }
                for x in combo.iter_mut() {
                    *x = r.mul(*x, u);
                }
                // keep earlier rows reduced at this pivot so later pushes stay cheap
                for (row, _, rc) in self.rows.iter_mut() {
                    let f = row[piv];
                    if f != 0 {
                        for (x, &y) in row.iter_mut().zip(&v) {
                            *x = r.sub(*x, r.mul(f, y));
                        }
                        rc.resize(k + 1, 0);
                        for (x, &y) in rc.iter_mut().zip(&combo) {
                            *x = r.sub(*x, r.mul(f, y));
                        }
                    }
                }
                for (_, _, rc) in self.rows.iter_mut() {
                    rc.resize(k + 1, 0);
                }
                self.rows.push((v, piv, combo));
                self.count += 1;
                None
            }
        }
    }
}
