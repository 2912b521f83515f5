use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::morphism::{is_automorphism, permutation_group, Permutation};
use super::{Construction, Elem, Group, Repr};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::RingSpec;

/// The additive group `(Z/p^mZ)^n`.
pub fn vector_group(ring: RingSpec, n: usize, cap: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let q = ring.modulus();
    let order = q.checked_pow(n as u32).filter(|&o| o <= cap as u64).ok_or(Error::CapExceeded { cap })?;
    let gens = (0..n).map(|i| q.pow(i as u32) as Elem).collect();
    Ok(Group { repr: Repr::Vector { q, n }, order: order as usize, gens, construction: Construction::Vector { ring, n } })
}

fn table_group(order: usize, gens: Vec<Elem>, f: impl Fn(usize, usize) -> usize) -> Group {
    let mut mul = vec![0; order * order];
    for a in 0..order {
        for b in 0..order {
            mul[a * order + b] = f(a, b) as Elem;
        }
    }
    Group::from_table_unchecked(mul, order, gens)
}

/// `C_n`, element `i` standing for `g^i`.
pub fn cyclic(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let gens = if n > 1 { vec![1] } else { vec![] };
    Ok(table_group(n, gens, |a, b| (a + b) % n))
}

/// Dihedral group of order `2n`: element `i + n·j` is `r^i s^j`.
pub fn dihedral(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let gens = if n > 1 { vec![1, n as Elem] } else { vec![n as Elem] };
    Ok(table_group(2 * n, gens, |a, b| {
        let (i, j) = (a % n, a / n);
        let (k, l) = (b % n, b / n);
        let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
        rot + n * ((j + l) % 2)
    }))
}

/// Dicyclic group of order `4n` (`Q_8` for `n = 2`): `a^{2n} = 1`, `x² = a^n`,
/// `x·a·x⁻¹ = a⁻¹`. Element `i + 2n·j` is `a^i x^j`.
pub fn quaternion(n: usize) -> Result<Group> {
    if n < 2 {
        return Err(Error::EmptyInput);
    }
    let m = 2 * n;
    Ok(table_group(2 * m, vec![1, m as Elem], |a, b| {
        let (i, j) = (a % m, a / m);
        let (k, l) = (b % m, b / m);
        match (j, l) {
            (0, _) => (i + k) % m + m * l,
            (_, 0) => (i + m - k) % m + m,
            _ => (i + m - k + n) % m,
        }
    }))
}

pub(crate) fn semidirect_raw(
    base: Arc<Group>,
    top: Arc<Group>,
    action: Option<Vec<Elem>>,
    construction: Construction,
) -> Group {
    let nb = base.order() as Elem;
    let mut gens: Vec<Elem> = base.generators().to_vec();
    gens.extend(top.generators().iter().map(|&t| t * nb));
    let order = base.order() * top.order();
    Group { repr: Repr::Semidirect { base, top, action }, order, gens, construction }
}

/// `a × b`, element `(x, y)` numbered `y·|a| + x`.
pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
    Ok(semidirect_raw(Arc::new(a.clone()), Arc::new(b.clone()), None, Construction::Direct))
}

/// `base ⋊ ⟨autos⟩`, each automorphism given as the permutation `x ↦ φ(x)` of element ids.
pub fn semidirect(base: &Group, autos: &[Permutation], cap: usize) -> Result<Group> {
    for a in autos {
        if !is_automorphism(base, a) {
            return Err(Error::NotAutomorphism);
        }
    }
    let (top, perms) = permutation_group(autos, base.order(), cap)?;
    if top.order().saturating_mul(base.order()) > cap {
        return Err(Error::CapExceeded { cap });
    }
    let action: Vec<Elem> = perms.iter().flat_map(|p| p.iter().copied()).collect();
    Ok(semidirect_raw(Arc::new(base.clone()), Arc::new(top), Some(action), Construction::Semidirect))
}

impl Group {
    /// `Hol(R^n, H) = R^n ⋊ ⟨H⟩` with `h` acting by matrix-vector product.
    pub fn holomorph(ring: RingSpec, n: usize, h: &[Matrix], cap: usize) -> Result<Group> {
        for m in h {
            if m.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if !m.is_square() || m.rows() != n {
                return Err(Error::SizeMismatch);
            }
        }
        let base = vector_group(ring, n, cap)?;
        let top = if h.is_empty() {
            Group::matrix_closure(&[Matrix::identity(ring, n)], cap)?
        } else {
            Group::matrix_closure(h, cap)?
        };
        if top.order().saturating_mul(base.order()) > cap {
            return Err(Error::CapExceeded { cap });
        }
        let mut action = Vec::with_capacity(top.order() * base.order());
        for t in top.elements() {
            let m = top.matrix(t).expect("matrix group");
            for b in base.elements() {
                let v = m.mul_vec_unchecked(&base.coords(b).expect("vector group"));
                action.push(base.vector_id(&v).expect("same length"));
            }
        }
        Ok(semidirect_raw(Arc::new(base), Arc::new(top), Some(action), Construction::Semidirect))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_group_orders() {
        assert_eq!(cyclic(5).unwrap().order(), 5);
        let d = dihedral(4).unwrap();
        assert_eq!(d.order(), 8);
        assert_eq!(d.element_order(1), 4);
        assert_eq!(d.element_order(4), 2);
        let q = quaternion(2).unwrap();
        let orders: Vec<u64> = q.elements().map(|x| q.element_order(x)).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 4).count(), 6);
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 1);
    }

    #[test]
    fn holomorph_of_jordan_block_is_dihedral() {
        let f2 = RingSpec::field(2).unwrap();
        let g = Group::holomorph(f2, 2, &[Matrix::jordan_block(f2, 2, 1)], 1 << 20).unwrap();
        assert_eq!(g.order(), 8);
        let w = g.whole();
        assert_eq!(g.center(&w).order(), 2);
        assert!(!g.is_abelian(&w));
        let orders: Vec<u64> = g.elements().map(|x| g.element_order(x)).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 4).count(), 2);
    }

    #[test]
    fn inversion_on_c3_gives_s3() {
        let c3 = cyclic(3).unwrap();
        let s3 = semidirect(&c3, &[vec![0, 2, 1]], 1 << 20).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian(&s3.whole()));
        let c2 = cyclic(2).unwrap();
        let klein = semidirect(&c2, &[vec![0, 1]], 1 << 20).unwrap();
        assert_eq!(klein.order(), 2);
        assert_eq!(semidirect(&c3, &[vec![0, 1, 1]], 1 << 20).unwrap_err(), Error::NotAutomorphism);
    }
}
