//! Residue arithmetic in `R = Z/p^mZ`.

use crate::error::{Error, Result};

/// Largest modulus allowed, so that the product of two residues fits in a `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

/// The ring `Z/p^mZ`. It is a field exactly when `m == 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "(u64, u32)", into = "(u64, u32)"))]
pub struct RingSpec {
    p: u64,
    m: u32,
    modulus: u64,
}

#[cfg(feature = "serde")]
impl TryFrom<(u64, u32)> for RingSpec {
    type Error = Error;

    fn try_from((p, m): (u64, u32)) -> Result<Self> {
        RingSpec::new(p, m)
    }
}

#[cfg(feature = "serde")]
impl From<RingSpec> for (u64, u32) {
    fn from(r: RingSpec) -> Self {
        (r.p, r.m)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl RingSpec {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !is_prime(p) || m == 0 {
            return Err(Error::InvalidRing { p, m });
        }
        let mut modulus = 1u64;
        for _ in 0..m {
            modulus = modulus.checked_mul(p).ok_or(Error::InvalidRing { p, m })?;
            if modulus >= MAX_MODULUS {
                return Err(Error::InvalidRing { p, m });
            }
        }
        Ok(RingSpec { p, m, modulus })
    }

    pub fn field(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    /// `p^m`.
    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn is_field(&self) -> bool {
        self.m == 1
    }

    /// The residue field `F_p`.
    pub fn residue_field(&self) -> RingSpec {
        RingSpec { p: self.p, m: 1, modulus: self.p }
    }

    #[inline]
    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.modulus as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.modulus
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.modulus;
        base %= self.modulus;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    #[inline]
    pub fn is_unit(&self, a: u64) -> bool {
        a % self.p != 0
    }

    /// Inverse of a unit, `None` for zero divisors.
    pub fn inv(&self, a: u64) -> Option<u64> {
        if !self.is_unit(a) {
            return None;
        }
        // extended Euclid on (a, p^m)
        let (mut old_r, mut r) = (a as i64, self.modulus as i64);
        let (mut old_s, mut s) = (1i64, 0i64);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        debug_assert_eq!(old_r, 1);
        Some(self.reduce(old_s))
    }

    /// Largest `k <= m` with `p^k | a`; zero has valuation `m`.
    pub fn valuation(&self, mut a: u64) -> u32 {
        a %= self.modulus;
        if a == 0 {
            return self.m;
        }
        let mut k = 0;
        while a % self.p == 0 {
            a /= self.p;
            k += 1;
        }
        k
    }

    /// `p^k` as a residue (`k <= m`; `p^m` reduces to zero).
    pub fn p_power(&self, k: u32) -> u64 {
        let mut x = 1u64;
        for _ in 0..k {
            x *= self.p;
        }
        x % self.modulus
    }

    /// Additive order of a residue.
    pub fn additive_order(&self, a: u64) -> u64 {
        self.modulus / self.p_power_raw(self.valuation(a))
    }

    fn p_power_raw(&self, k: u32) -> u64 {
        let mut x = 1u64;
        for _ in 0..k {
            x *= self.p;
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_rings() {
        assert!(RingSpec::new(4, 1).is_err());
        assert!(RingSpec::new(2, 0).is_err());
        assert!(RingSpec::new(2, 31).is_err());
        assert!(RingSpec::new(2, 30).is_ok());
    }

    #[test]
    fn unit_inverses_mod_8() {
        let r = RingSpec::new(2, 3).unwrap();
        for a in 0..8 {
            match r.inv(a) {
                Some(b) => assert_eq!(r.mul(a, b), 1),
                None => assert_eq!(a % 2, 0),
            }
        }
    }

    #[test]
    fn valuation_and_order() {
        let r = RingSpec::new(2, 3).unwrap();
        assert_eq!(r.valuation(0), 3);
        assert_eq!(r.valuation(4), 2);
        assert_eq!(r.valuation(6), 1);
        assert_eq!(r.additive_order(4), 2);
        assert_eq!(r.additive_order(6), 4);
        assert_eq!(r.additive_order(3), 8);
        assert_eq!(r.reduce(-1), 7);
    }
}
