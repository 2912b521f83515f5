use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::{Construction, Elem, Group, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::RingSpec;

const NONE: Elem = Elem::MAX;

/// Output of [`rebase`].
#[derive(Clone, Debug)]
pub struct RebaseResult {
    /// Matrix of `w ↦ k·w·k⁻¹` in the chosen basis, one per complement generator.
    pub matrices: Vec<Matrix>,
    pub basis: Vec<Elem>,
    /// `Hol(R^n, ⟨matrices⟩)`.
    pub target: Group,
    /// `map[x]` is the image of `x` under the isomorphism `w·k ↦ u(w)·v(k)`.
    pub map: Vec<Elem>,
}

fn ring_of(g: &Group) -> Option<RingSpec> {
    let (base, _) = g.factors()?;
    match base.construction() {
        Construction::Vector { ring, .. } => Some(*ring),
        _ => None,
    }
}

/// Re-expresses `g = W ⋊ K` as a holomorph of `R^n`, where `W` is a normal
/// abelian subgroup free over `R` on `basis` and `K` a complement acting
/// faithfully on it. The ring `R` is that of the base of `g`.
pub fn rebase(g: &Group, w_gens: &[Elem], basis: &[Elem], k_gens: &[Elem]) -> Result<RebaseResult> {
    let ring = ring_of(g).ok_or(Error::NotFreeBasis)?;
    let q = ring.modulus();
    let whole = g.whole();
    let w = g.subgroup(w_gens);
    if !g.is_normal(&whole, &w) {
        return Err(Error::NotNormal);
    }
    if !g.is_abelian(&w) {
        return Err(Error::NotAbelian);
    }

    // coordinates u: W → R^n, by enumerating every R-combination of the basis
    let n = basis.len();
    if n == 0 || basis.iter().any(|&b| !w.contains(b) || g.pow(b, q) != 0) {
        return Err(Error::NotFreeBasis);
    }
    let size = q.checked_pow(n as u32).filter(|&s| s == w.order() as u64).ok_or(Error::NotFreeBasis)?;
    let mut coords: Vec<Elem> = vec![NONE; g.order()];
    // `coords[x]` holds the index `Σ c_i q^i` of the coordinate vector of `x`
    let powers: Vec<Vec<Elem>> = basis
        .iter()
        .map(|&b| {
            let mut acc = vec![0];
            for _ in 1..q {
                let last = *acc.last().unwrap();
                acc.push(g.mul(last, b));
            }
            acc
        })
        .collect();
    for idx in 0..size {
        let mut x = 0;
        let mut r = idx;
        for p in &powers {
            x = g.mul(x, p[(r % q) as usize]);
            r /= q;
        }
        if coords[x as usize] != NONE {
            return Err(Error::NotFreeBasis);
        }
        coords[x as usize] = idx as Elem;
    }
    let vector = |x: Elem| -> Vec<u64> {
        let mut r = coords[x as usize] as u64;
        (0..n)
            .map(|_| {
                let c = r % q;
                r /= q;
                c
            })
            .collect()
    };

    let k = g.subgroup(k_gens);
    if k.elements().iter().any(|&x| x != 0 && w.contains(x)) || w.order() * k.order() != g.order() {
        return Err(Error::NotComplement);
    }

    let mut matrices = Vec::with_capacity(k_gens.len());
    for &kg in k_gens {
        let cols: Vec<Vec<u64>> = basis.iter().map(|&b| vector(g.conj(kg, b))).collect();
        matrices.push(Matrix::from_columns(ring, n, &cols)?);
    }

    let cap = DEFAULT_CAP.max(g.order());
    let target = Group::holomorph(ring, n, &matrices, cap)?;
    let (base, top) = target.factors().expect("holomorph");
    if top.order() != k.order() {
        return Err(Error::NotFaithful);
    }

    // v: K → top, by breadth-first search over the complement generators
    let gen_ids: Vec<Elem> = if k_gens.is_empty() {
        Vec::new()
    } else {
        matrices.iter().map(|m| top.matrix_id(m).expect("generator of closure")).collect()
    };
    let mut v = vec![NONE; g.order()];
    v[0] = 0;
    let mut queue = VecDeque::from([0 as Elem]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in k_gens.iter().zip(&gen_ids) {
            let y = g.mul(x, s);
            let ty = top.mul(v[x as usize], t);
            match v[y as usize] {
                NONE => {
                    v[y as usize] = ty;
                    queue.push_back(y);
                }
                cur if cur != ty => return Err(Error::NotFaithful),
                _ => {}
            }
        }
    }

    let mut map = vec![NONE; g.order()];
    let mut hit = vec![false; target.order()];
    for &a in w.elements() {
        let b = base.vector_id(&vector(a)).expect("length n");
        for &c in k.elements() {
            let x = g.mul(a, c);
            let y = target.pair(b, v[c as usize]);
            if map[x as usize] != NONE || hit[y as usize] {
                return Err(Error::NotComplement);
            }
            map[x as usize] = y;
            hit[y as usize] = true;
        }
    }
    for x in g.elements() {
        for &s in g.generators() {
            if map[g.mul(x, s) as usize] != target.mul(map[x as usize], map[s as usize]) {
                return Err(Error::Internal("rebase map is not a homomorphism".into()));
            }
        }
    }
    Ok(RebaseResult { matrices, basis: basis.to_vec(), target, map })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swapping_the_basis_transposes_a_jordan_block() {
        let f2 = RingSpec::field(2).unwrap();
        let j = Matrix::jordan_block(f2, 2, 1);
        let g = Group::holomorph(f2, 2, &[j.clone()], 1 << 20).unwrap();
        let (v1, v2) = (g.pair(1, 0), g.pair(2, 0));
        let a = g.pair(0, 1);
        let r = rebase(&g, &[v1, v2], &[v2, v1], &[a]).unwrap();
        let expected = Matrix::from_rows(f2, &[vec![1, 0], vec![1, 1]]).unwrap();
        assert_eq!(r.matrices, vec![expected]);
        let same = rebase(&g, &[v1, v2], &[v1, v2], &[a]).unwrap();
        assert_eq!(same.matrices, vec![j]);
    }

    #[test]
    fn rejections() {
        let f2 = RingSpec::field(2).unwrap();
        let j = Matrix::jordan_block(f2, 2, 1);
        let g = Group::holomorph(f2, 2, &[j], 1 << 20).unwrap();
        let (v1, v2, a) = (g.pair(1, 0), g.pair(2, 0), g.pair(0, 1));
        assert_eq!(rebase(&g, &[v1, v2], &[v1, v1], &[a]).unwrap_err(), Error::NotFreeBasis);
        assert_eq!(rebase(&g, &[v1, v2], &[v1, v2], &[]).unwrap_err(), Error::NotComplement);
        assert_eq!(rebase(&g, &[v1, v2], &[v1, v2], &[v1]).unwrap_err(), Error::NotComplement);
        assert_eq!(rebase(&g, &[v2], &[v2], &[a]).unwrap_err(), Error::NotNormal);
        // a complement acting trivially
        let flat = Group::holomorph(f2, 2, &[], 1 << 20).unwrap();
        let (u1, u2) = (flat.pair(1, 0), flat.pair(2, 0));
        assert_eq!(rebase(&flat, &[u1], &[u1], &[u2]).unwrap_err(), Error::NotFaithful);
    }
}
