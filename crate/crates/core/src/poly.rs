//! Dense polynomials over the prime field `F_p`, with factorisation.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::RingSpec;

/// Polynomial over `F_p`, coefficients stored low to high with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: RingSpec,
    coeffs: Vec<u64>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly<F_{}>({})", self.ring.p(), self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{}", c)?,
                (1, 1) => f.write_str("X")?,
                (1, c) => write!(f, "{}*X", c)?,
                (i, 1) => write!(f, "X^{}", i)?,
                (i, c) => write!(f, "{}*X^{}", c, i)?,
            }
        }
        Ok(())
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by degree, then by coefficients from the top down.
impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl Polynomial {
    pub fn new(ring: RingSpec, coeffs: Vec<u64>) -> Result<Self> {
        if !ring.is_field() {
            return Err(Error::NotField);
        }
        Ok(Self::from_raw(ring, coeffs))
    }

    fn from_raw(ring: RingSpec, mut coeffs: Vec<u64>) -> Self {
        let q = ring.modulus();
        for c in coeffs.iter_mut() {
            *c %= q;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Polynomial { ring, coeffs }
    }

    pub fn from_i64(ring: RingSpec, coeffs: &[i64]) -> Result<Self> {
        Self::new(ring, coeffs.iter().map(|&c| ring.reduce(c)).collect())
    }

    pub fn zero(ring: RingSpec) -> Self {
        Polynomial { ring, coeffs: Vec::new() }
    }

    pub fn one(ring: RingSpec) -> Self {
        Polynomial { ring, coeffs: vec![1] }
    }

    /// `X`
    pub fn x(ring: RingSpec) -> Self {
        Polynomial { ring, coeffs: vec![0, 1] }
    }

    /// `X - a`
    pub fn linear(ring: RingSpec, a: u64) -> Self {
        Self::from_raw(ring, vec![ring.neg(a % ring.modulus()), 1])
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn monic(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let u = self.ring.inv(self.leading()).expect("field");
        self.scale(u)
    }

    pub fn scale(&self, k: u64) -> Polynomial {
        let r = self.ring;
        Self::from_raw(r, self.coeffs.iter().map(|&c| r.mul(c, k)).collect())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let r = self.ring;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_raw(r, (0..n).map(|i| r.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let r = self.ring;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_raw(r, (0..n).map(|i| r.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ring);
        }
        let r = self.ring;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = r.add(out[i + j], r.mul(a, b));
            }
        }
        Self::from_raw(r, out)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Self::one(self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division: `(q, r)` with `self = q*d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        let r = self.ring;
        let lead_inv = r.inv(d.leading()).expect("field");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(r), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = r.mul(rem[i], lead_inv);
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[i - dd + j] = r.sub(rem[i - dd + j], r.mul(c, dc));
            }
        }
        Ok((Self::from_raw(r, quot), Self::from_raw(r, rem)))
    }

    pub fn rem(&self, d: &Polynomial) -> Result<Polynomial> {
        Ok(self.div_rem(d)?.1)
    }

    /// Exact quotient; errors if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Result<Polynomial> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        matches!(other.div_rem(self), Ok((_, r)) if r.is_zero())
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Polynomial {
        let r = self.ring;
        Self::from_raw(
            r,
            self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| r.mul(c, i as u64 % r.modulus())).collect(),
        )
    }

    pub fn mul_mod(&self, other: &Polynomial, modulus: &Polynomial) -> Polynomial {
        self.mul(other).rem(modulus).expect("nonzero modulus")
    }

    pub fn pow_mod(&self, mut e: u64, modulus: &Polynomial) -> Polynomial {
        let mut acc = Self::one(self.ring).rem(modulus).expect("nonzero modulus");
        let mut base = self.rem(modulus).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus);
            }
            base = base.mul_mod(&base, modulus);
            e >>= 1;
        }
        acc
    }

    /// `gcd(f, f') = 1`.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.gcd(&self.derivative()).is_one())
    }

    /// Evaluates at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, a: &Matrix) -> Result<Matrix> {
        if !a.is_square() {
            return Err(Error::NotSquare);
        }
        if a.ring() != self.ring {
            return Err(Error::RingMismatch);
        }
        let n = a.rows();
        let mut acc = Matrix::zeros(self.ring, n, n);
        let id = Matrix::identity(self.ring, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul_unchecked(a).add(&id.scale(c)).expect("same shape");
        }
        Ok(acc)
    }

    /// Column-style companion matrix of a monic polynomial of degree `d >= 1`:
    /// ones on the subdiagonal and `-c_0, ..., -c_{d-1}` in the last column.
    pub fn companion(&self) -> Result<Matrix> {
        let d = self.degree().ok_or(Error::ZeroPolynomial)?;
        if d == 0 || !self.is_monic() {
            return Err(Error::Internal("companion matrix needs a monic polynomial of positive degree".into()));
        }
        let r = self.ring;
        let mut c = Matrix::zeros(r, d, d);
        for i in 0..d {
            if i + 1 < d {
                c.set(i + 1, i, 1);
            }
            c.set(i, d - 1, r.neg(self.coeffs[i]));
        }
        Ok(c)
    }

    /// Irreducible factorisation of a nonzero polynomial into monic factors with
    /// multiplicities, sorted by (degree, coefficients). The leading coefficient
    /// is dropped.
    pub fn factor(&self) -> Result<Vec<(Polynomial, u32)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out: Vec<(Polynomial, u32)> = Vec::new();
        for (sqf, mult) in squarefree_decomposition(&self.monic()) {
            for (block, d) in distinct_degree(&sqf) {
                for f in equal_degree(&block, d) {
                    out.push((f, mult));
                }
            }
        }
        out.sort();
        // merge repeated factors (can arise through the p-th root branch)
        let mut merged: Vec<(Polynomial, u32)> = Vec::new();
        for (f, m) in out {
            match merged.last_mut() {
                Some((g, k)) if *g == f => *k += m,
                _ => merged.push((f, m)),
            }
        }
        Ok(merged)
    }

    pub fn is_irreducible(&self) -> bool {
        match self.factor() {
            Ok(f) => self.degree().unwrap_or(0) >= 1 && f.len() == 1 && f[0].1 == 1,
            Err(_) => false,
        }
    }

    /// `c(X) -> c(X^{1/p})` for a polynomial whose exponents are all multiples of `p`.
    fn pth_root(&self) -> Polynomial {
        let p = self.ring.p() as usize;
        Self::from_raw(self.ring, self.coeffs.iter().step_by(p).copied().collect())
    }
}

/// Square-free decomposition of a monic polynomial over `F_p`: pairs `(g, i)`
/// with `f = prod g^i` and each `g` square-free.
fn squarefree_decomposition(f: &Polynomial) -> Vec<(Polynomial, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = f.ring.p() as u32;
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y.clone();
        c = c.div_exact(&y).expect("gcd divides");
        i += 1;
    }
    if !c.is_one() {
        let root = c.pth_root();
        for (g, k) in squarefree_decomposition(&root) {
            out.push((g, k * p));
        }
    }
    out
}

/// Distinct-degree factorisation of a monic square-free polynomial.
fn distinct_degree(f: &Polynomial) -> Vec<(Polynomial, usize)> {
    let r = f.ring;
    let p = r.p();
    let mut out = Vec::new();
    let mut f = f.clone();
    let x = Polynomial::x(r);
    let mut h = x.rem(&f).unwrap_or_else(|_| Polynomial::zero(r));
    let mut d = 1usize;
    while f.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(p, &f);
        let g = h.sub(&x).gcd(&f);
        if !g.is_one() {
            f = f.div_exact(&g).expect("gcd divides");
            h = h.rem(&f).expect("nonzero");
            out.push((g, d));
        }
        d += 1;
    }
    if f.degree().unwrap_or(0) > 0 {
        let deg = f.degree().unwrap();
        out.push((f, deg));
    }
    out
}

/// Equal-degree splitting of a monic square-free product of irreducibles of
/// degree `d`. Candidates are enumerated deterministically, so the split always
/// terminates with the same output.
fn equal_degree(g: &Polynomial, d: usize) -> Vec<Polynomial> {
    let n = g.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![g.clone()];
    }
    let r = g.ring;
    let p = r.p();
    let mut counter: u64 = p; // skip constants
    loop {
        let a = enumerate_poly(r, counter, n);
        counter += 1;
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // absolute trace a + a^2 + ... + a^(2^(d-1))
            let mut t = a.rem(g).expect("nonzero");
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul_mod(&t, g);
                acc = acc.add(&t);
            }
            acc
        } else {
            // a^((p^d - 1)/2) = prod_j (a^(p^j))^((p-1)/2)
            let half = (p - 1) / 2;
            let mut frob = a.rem(g).expect("nonzero");
            let mut acc = Polynomial::one(r);
            for j in 0..d {
                if j > 0 {
                    frob = frob.pow_mod(p, g);
                }
                acc = acc.mul_mod(&frob.pow_mod(half, g), g);
            }
            acc.sub(&Polynomial::one(r))
        };
        let h = b.gcd(g);
        let hd = h.degree().unwrap_or(0);
        if hd > 0 && hd < n {
            let other = g.div_exact(&h).expect("gcd divides");
            let mut out = equal_degree(&h, d);
            out.extend(equal_degree(&other, d));
            return out;
        }
    }
}

/// The polynomial whose base-`p` digits of `k` are its coefficients (at most `n` of them).
fn enumerate_poly(r: RingSpec, mut k: u64, n: usize) -> Polynomial {
    let p = r.p();
    let mut coeffs = Vec::with_capacity(n);
    while k > 0 && coeffs.len() < n {
        coeffs.push(k % p);
        k /= p;
    }
    Polynomial::from_raw(r, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> RingSpec {
        RingSpec::field(2).unwrap()
    }

    fn poly(r: RingSpec, c: &[i64]) -> Polynomial {
        Polynomial::from_i64(r, c).unwrap()
    }

    #[test]
    fn squarefree_examples() {
        let r = f2();
        // X^3 + 1 = (X+1)(X^2+X+1)
        assert!(poly(r, &[1, 0, 0, 1]).is_squarefree().unwrap());
        // (X+1)^2 (X^2+X+1) = X^4 + X^3 + X + 1
        assert!(!poly(r, &[1, 1, 0, 1, 1]).is_squarefree().unwrap());
        assert!(poly(r, &[0, 1]).is_squarefree().unwrap());
        assert_eq!(Polynomial::zero(r).is_squarefree(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn factor_final_example_quartic() {
        let r = f2();
        let f = poly(r, &[1, 1, 0, 1, 1]);
        let fac = f.factor().unwrap();
        assert_eq!(fac, vec![(poly(r, &[1, 1]), 2), (poly(r, &[1, 1, 1]), 1)]);
    }

    #[test]
    fn factor_pure_power_via_pth_root() {
        let r = RingSpec::field(3).unwrap();
        // (X + 1)^3 * (X^2 + 1) over F_3; derivative of the first factor vanishes
        let f = poly(r, &[1, 1]).pow(3).mul(&poly(r, &[1, 0, 1]));
        let fac = f.factor().unwrap();
        assert_eq!(fac, vec![(poly(r, &[1, 1]), 3), (poly(r, &[1, 0, 1]), 1)]);
    }

    #[test]
    fn division_round_trip() {
        let r = RingSpec::field(5).unwrap();
        let a = poly(r, &[3, 0, 2, 1, 4]);
        let b = poly(r, &[1, 2, 3]);
        let (q, rem) = a.div_rem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&rem), a);
        assert!(rem.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn companion_has_its_polynomial() {
        let r = f2();
        let f = poly(r, &[1, 1, 1]);
        let c = f.companion().unwrap();
        assert_eq!(c.charpoly().unwrap(), f);
        assert!(f.eval_matrix(&c).unwrap().is_zero());
    }

    #[test]
    fn display_is_readable() {
        let r = f2();
        assert_eq!(alloc::format!("{}", poly(r, &[1, 1, 0, 1, 1])), "X^4 + X^3 + X + 1");
    }
}
