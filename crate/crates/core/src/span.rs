//! Submodules of `(Z/p^mZ)^n`: Howell normal form, Smith form, kernels, and
//! the abelian invariants of finite abelian groups.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{is_prime, RingSpec};

/// Invariant factors `d_1, d_2, ...` of a finite abelian group, sorted so that
/// each divides the previous one. For a `p`-group these are its elementary
/// divisors, e.g. `[8, 8, 8, 4]` for `C_8^3 x C_4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct AbelianInvariants {
    divisors: Vec<u64>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Combines cyclic factors of prime-power order (in any order, ones
    /// ignored) into the canonical divisibility chain.
    pub fn from_prime_powers(orders: impl IntoIterator<Item = u64>) -> Self {
        let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for q in orders {
            if q <= 1 {
                continue;
            }
            let p = smallest_prime_factor(q);
            by_prime.entry(p).or_default().push(q);
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut divisors = vec![1u64; len];
        for powers in by_prime.values_mut() {
            powers.sort_unstable_by(|a, b| b.cmp(a));
            for (slot, q) in divisors.iter_mut().zip(powers.iter()) {
                *slot *= q;
            }
        }
        AbelianInvariants { divisors }
    }

    /// Accepts any list of cyclic orders `C_{n_1} x C_{n_2} x ...` and normalises it.
    pub fn from_cyclic_orders(orders: impl IntoIterator<Item = u64>) -> Self {
        let mut powers = Vec::new();
        for n in orders {
            powers.extend(prime_power_parts(n));
        }
        Self::from_prime_powers(powers)
    }

    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn order(&self) -> u64 {
        self.divisors.iter().product()
    }

    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    /// Prime-power decomposition, sorted descending.
    pub fn elementary_divisors(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self.divisors.iter().flat_map(|&d| prime_power_parts(d)).collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.divisors.is_empty() {
            return f.write_str("1");
        }
        for (i, d) in self.divisors.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "C_{}", d)?;
        }
        Ok(())
    }
}

fn smallest_prime_factor(n: u64) -> u64 {
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 1;
    }
    n
}

fn prime_power_parts(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while n > 1 {
        if d * d > n {
            out.push(n);
            break;
        }
        if n % d == 0 {
            let mut q = 1;
            while n % d == 0 {
                n /= d;
                q *= d;
            }
            out.push(q);
        }
        d += 1;
    }
    debug_assert!(out.iter().all(|&q| is_prime(smallest_prime_factor(q))));
    out
}

/// Howell normal form of a submodule of `(Z/p^mZ)^n`: echelon rows whose
/// pivots are powers of `p`, entries above each pivot reduced below it, and the
/// Howell property (every span vector vanishing on the first `c` columns is
/// spanned by the rows pivoting at or after `c`). Unique per submodule.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HowellSpan {
    ring: RingSpec,
    n: usize,
    rows: Vec<Vec<u64>>,
    /// (pivot column, pivot valuation) per row
    pivots: Vec<(usize, u32)>,
}

/// Canonical basis of the submodule spanned by `vectors` (each of length `n`).
/// An empty input gives the zero module.
pub fn howell_span(ring: RingSpec, n: usize, vectors: &[Vec<u64>]) -> Result<HowellSpan> {
    let q = ring.modulus();
    let mut pending: Vec<Vec<u64>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        if v.len() != n {
            return Err(Error::DimensionMismatch { left: (1, n), right: (1, v.len()) });
        }
        if v.iter().any(|&x| x % q != 0) {
            pending.push(v.iter().map(|&x| x % q).collect());
        }
    }
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut pivots = Vec::new();
    for c in 0..n {
        let best = pending
            .iter()
            .enumerate()
            .filter(|(_, v)| v[c] != 0)
            .min_by_key(|(_, v)| ring.valuation(v[c]))
            .map(|(i, _)| i);
        let Some(best) = best else { continue };
        let mut piv = pending.swap_remove(best);
        let k = ring.valuation(piv[c]);
        let pk = ring.p_power(k);
        let unit = ring.inv(piv[c] / pk).expect("unit part");
        scale(ring, &mut piv, unit);
        debug_assert_eq!(piv[c], pk);
        for s in pending.iter_mut() {
            let e = s[c];
            if e != 0 {
                axpy(ring, s, ring.neg(e / pk), &piv);
            }
        }
        pending.retain(|v| v.iter().any(|&x| x != 0));
        if k > 0 {
            let mut ann = piv.clone();
            scale(ring, &mut ann, ring.p_power(ring.m() - k));
            if ann.iter().any(|&x| x != 0) {
                pending.push(ann);
            }
        }
        rows.push(piv);
        pivots.push((c, k));
    }
    // reduce entries above every pivot into [0, p^k)
    for i in 0..rows.len() {
        let (c, k) = pivots[i];
        let pk = ring.p_power(k);
        let (above, below) = rows.split_at_mut(i);
        let pivot_row = &below[0];
        for row in above.iter_mut() {
            let e = row[c];
            let f = if k == 0 { e } else { e / pk };
            if f != 0 {
                axpy(ring, row, ring.neg(f), pivot_row);
            }
        }
    }
    Ok(HowellSpan { ring, n, rows, pivots })
}

fn scale(ring: RingSpec, v: &mut [u64], k: u64) {
    for x in v.iter_mut() {
        *x = ring.mul(*x, k);
    }
}

/// `v += k * w`
fn axpy(ring: RingSpec, v: &mut [u64], k: u64, w: &[u64]) {
    for (x, &y) in v.iter_mut().zip(w) {
        *x = ring.add(*x, ring.mul(k, y));
    }
}

impl HowellSpan {
    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn ambient_rank(&self) -> usize {
        self.n
    }

    /// The canonical generating rows.
    pub fn basis(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[(usize, u32)] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// `log_p` of the number of elements.
    pub fn log_order(&self) -> u32 {
        self.pivots.iter().map(|&(_, k)| self.ring.m() - k).sum()
    }

    /// Number of elements, if it fits in a `u64`.
    pub fn order(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for _ in 0..self.log_order() {
            acc = acc.checked_mul(self.ring.p())?;
        }
        Some(acc)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        if v.len() != self.n {
            return false;
        }
        let r = self.ring;
        let mut v: Vec<u64> = v.iter().map(|&x| x % r.modulus()).collect();
        for (row, &(c, k)) in self.rows.iter().zip(&self.pivots) {
            let e = v[c];
            if e == 0 {
                continue;
            }
            if r.valuation(e) < k {
                return false;
            }
            axpy(r, &mut v, r.neg(e / r.p_power(k)), row);
        }
        v.iter().all(|&x| x == 0)
    }

    /// Whether every generator of `other` lies in `self`.
    pub fn contains_span(&self, other: &HowellSpan) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    /// Structure of the submodule as an abelian group, read off the Smith form
    /// of the basis rows.
    pub fn invariants(&self) -> AbelianInvariants {
        if self.rows.is_empty() {
            return AbelianInvariants::trivial();
        }
        let m = Matrix::new(
            self.ring,
            self.rows.len(),
            self.n,
            self.rows.iter().flatten().copied().collect(),
        )
        .expect("rows have length n");
        let smith = smith_form(&m, false);
        let r = self.ring;
        AbelianInvariants::from_prime_powers(
            smith.diagonal_valuations.iter().map(|&k| r.modulus() / r.p_power(k)),
        )
    }

    /// Enumerates every element (small modules only).
    pub fn elements(&self, cap: usize) -> Result<Vec<Vec<u64>>> {
        let order = self.order().filter(|&o| o as usize <= cap).ok_or(Error::CapExceeded { cap })?;
        let r = self.ring;
        let mut out = Vec::with_capacity(order as usize);
        out.push(vec![0u64; self.n]);
        for (row, &(_, k)) in self.rows.iter().zip(&self.pivots) {
            let mult = r.modulus() / r.p_power(k);
            let base = out.clone();
            for t in 1..mult {
                for b in &base {
                    let mut v = b.clone();
                    axpy(r, &mut v, t, row);
                    out.push(v);
                }
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

/// Smith normal form data over the local ring `Z/p^mZ`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// valuations `k_1 <= k_2 <= ...` of the nonzero diagonal entries `p^{k_i}`
    pub diagonal_valuations: Vec<u32>,
    /// invertible `V` with `U a V = D` for some invertible `U`, when tracked
    pub column_transform: Option<Matrix>,
}

/// Smith form by minimal-valuation pivoting; optionally tracks column operations.
pub fn smith_form(a: &Matrix, track_columns: bool) -> SmithForm {
    let r = a.ring();
    let (rows, cols) = (a.rows(), a.cols());
    let mut m = a.clone();
    let mut v = track_columns.then(|| Matrix::identity(r, cols));
    let mut vals = Vec::new();
    for t in 0..rows.min(cols) {
        let mut best: Option<(usize, usize, u32)> = None;
        for i in t..rows {
            for j in t..cols {
                let e = m.get(i, j);
                if e != 0 {
                    let k = r.valuation(e);
                    if best.map_or(true, |(_, _, bk)| k < bk) {
                        best = Some((i, j, k));
                    }
                }
            }
        }
        let Some((bi, bj, k)) = best else { break };
        m.swap_rows(t, bi);
        swap_cols(&mut m, t, bj);
        if let Some(v) = v.as_mut() {
            swap_cols(v, t, bj);
        }
        let pk = r.p_power(k);
        let unit = r.inv(m.get(t, t) / pk).expect("unit part");
        m.scale_row(t, unit);
        for i in t + 1..rows {
            let e = m.get(i, t);
            if e != 0 {
                m.add_row_multiple(i, t, r.neg(e / pk));
            }
        }
        for j in t + 1..cols {
            let e = m.get(t, j);
            if e != 0 {
                let f = r.neg(e / pk);
                add_col_multiple(&mut m, j, t, f);
                if let Some(v) = v.as_mut() {
                    add_col_multiple(v, j, t, f);
                }
            }
        }
        vals.push(k);
    }
    SmithForm { diagonal_valuations: vals, column_transform: v }
}

fn swap_cols(m: &mut Matrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for r in 0..m.rows() {
        let (a, b) = (m.get(r, i), m.get(r, j));
        m.set(r, i, b);
        m.set(r, j, a);
    }
}

/// `col[i] += k * col[j]`
fn add_col_multiple(m: &mut Matrix, i: usize, j: usize, k: u64) {
    let ring = m.ring();
    for r in 0..m.rows() {
        let x = ring.add(m.get(r, i), ring.mul(k, m.get(r, j)));
        m.set(r, i, x);
    }
}

/// Generators of `{x in R^cols : a x = 0}` over `R = Z/p^mZ`.
pub fn kernel(a: &Matrix) -> Vec<Vec<u64>> {
    let r = a.ring();
    let smith = smith_form(a, true);
    let v = smith.column_transform.expect("tracked");
    let mut gens = Vec::new();
    for c in 0..a.cols() {
        let mult = match smith.diagonal_valuations.get(c) {
            Some(&k) => r.p_power(r.m() - k),
            None => 1,
        };
        if mult % r.modulus() == 0 {
            continue;
        }
        let col: Vec<u64> = v.column(c).into_iter().map(|x| r.mul(x, mult)).collect();
        if col.iter().any(|&x| x != 0) {
            gens.push(col);
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z8() -> RingSpec {
        RingSpec::new(2, 3).unwrap()
    }

    #[test]
    fn invariants_combine_primes() {
        let inv = AbelianInvariants::from_cyclic_orders([2, 24]);
        assert_eq!(inv.divisors(), &[24, 2]);
        assert_eq!(inv.elementary_divisors(), vec![8, 3, 2]);
        assert_eq!(AbelianInvariants::from_prime_powers([4, 8, 8, 8]).divisors(), &[8, 8, 8, 4]);
    }

    #[test]
    fn full_module_and_zero_module() {
        let r = z8();
        let id: Vec<Vec<u64>> = (0..3).map(|i| (0..3).map(|j| u64::from(i == j)).collect()).collect();
        let s = howell_span(r, 3, &id).unwrap();
        assert_eq!(s.invariants().divisors(), &[8, 8, 8]);
        let z = howell_span(r, 3, &[]).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.invariants(), AbelianInvariants::trivial());
    }

    #[test]
    fn howell_property_needs_annihilator_rows() {
        // span of (2,1) over Z/4 is cyclic of order 4 and contains (0,2)
        let r = RingSpec::new(2, 2).unwrap();
        let s = howell_span(r, 2, &[vec![2, 1]]).unwrap();
        assert!(s.contains(&[0, 2]));
        assert!(!s.contains(&[0, 1]));
        assert_eq!(s.order(), Some(4));
        assert_eq!(s.invariants().divisors(), &[4]);
        assert_eq!(s.basis().len(), 2);
    }

    #[test]
    fn kernel_is_annihilated() {
        let r = z8();
        let a = Matrix::from_rows(r, &[[2, 4, 6], [0, 4, 2]]).unwrap();
        let ker = kernel(&a);
        assert!(!ker.is_empty());
        for v in &ker {
            assert!(a.mul_vec(v).unwrap().iter().all(|&x| x == 0));
        }
        // kernel size = 8^3 / |image|
        let image = howell_span(r, 2, &a.columns()).unwrap();
        let ks = howell_span(r, 3, &ker).unwrap();
        assert_eq!(ks.log_order() + image.log_order(), 9);
    }
}
