//! Enumerable finite groups with elements numbered `0..order`, identity `0`.
//!
//! Elements of a semidirect product are stored structurally as
//! `top · |base| + base`, so `Hol((Z/8Z)^4, ⟨A⟩)` with 98304 elements needs
//! only a `24 × 4096` action table rather than a multiplication table.

mod construct;
mod morphism;
mod rebase;
mod subgroup;

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::RingSpec;

pub use construct::{cyclic, dihedral, direct_product, quaternion, semidirect, vector_group};
pub use morphism::{
    automorphism_group, inner_automorphism, is_automorphism, permutation_group, ElementProfile, MorphismSearch, Permutation,
};
pub use rebase::{rebase, RebaseResult};
pub use subgroup::{Quotient, Subgroup};

/// Element handle inside one [`Group`].
pub type Elem = u32;

/// Default bound on the number of elements any construction may enumerate.
pub const DEFAULT_CAP: usize = 1 << 20;

/// Matrix groups up to this order get a precomputed multiplication table.
const MATRIX_TABLE_LIMIT: usize = 1024;

/// How the group was built, kept for reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    Vector { ring: RingSpec, n: usize },
    Matrices { ring: RingSpec, n: usize },
    Table,
    Semidirect,
    Direct,
}

#[derive(Clone, Debug)]
enum Repr {
    /// `(Z/qZ)^n`, element id `sum c_i q^i`.
    Vector { q: u64, n: usize },
    Table { mul: Vec<Elem>, inv: Vec<Elem> },
    Matrices { elems: Vec<Matrix>, index: HashMap<Matrix, Elem>, table: Option<Vec<Elem>>, inv: Vec<Elem> },
    /// `base ⋊ top`, `action[t·|base| + b]` = image of `b` under `t`; `None` for trivial action.
    Semidirect { base: Arc<Group>, top: Arc<Group>, action: Option<Vec<Elem>> },
}

#[derive(Clone, Debug)]
pub struct Group {
    repr: Repr,
    order: usize,
    gens: Vec<Elem>,
    construction: Construction,
}

impl Group {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    pub fn construction(&self) -> &Construction {
        &self.construction
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order as Elem
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.repr {
            Repr::Vector { q, n } => {
                let (mut a, mut b) = (a as u64, b as u64);
                let mut out = 0u64;
                let mut place = 1u64;
                for _ in 0..*n {
                    out += ((a % q + b % q) % q) * place;
                    a /= q;
                    b /= q;
                    place *= q;
                }
                out as Elem
            }
            Repr::Table { mul, .. } => mul[a as usize * self.order + b as usize],
            Repr::Matrices { elems, index, table, .. } => match table {
                Some(t) => t[a as usize * self.order + b as usize],
                None => index[&elems[a as usize].mul_unchecked(&elems[b as usize])],
            },
            Repr::Semidirect { base, top, action } => {
                let nb = base.order as Elem;
                let (b1, t1) = (a % nb, a / nb);
                let (b2, t2) = (b % nb, b / nb);
                let moved = match action {
                    Some(act) => act[t1 as usize * base.order + b2 as usize],
                    None => b2,
                };
                top.mul(t1, t2) * nb + base.mul(b1, moved)
            }
        }
    }

    pub fn inv(&self, a: Elem) -> Elem {
        match &self.repr {
            Repr::Vector { q, n } => {
                let mut a = a as u64;
                let mut out = 0u64;
                let mut place = 1u64;
                for _ in 0..*n {
                    out += ((q - a % q) % q) * place;
                    a /= q;
                    place *= q;
                }
                out as Elem
            }
            Repr::Table { inv, .. } | Repr::Matrices { inv, .. } => inv[a as usize],
            Repr::Semidirect { base, top, action } => {
                let nb = base.order as Elem;
                let (b, t) = (a % nb, a / nb);
                let ti = top.inv(t);
                let bi = base.inv(b);
                let moved = match action {
                    Some(act) => act[ti as usize * base.order + bi as usize],
                    None => bi,
                };
                ti * nb + moved
            }
        }
    }

    pub fn pow(&self, a: Elem, mut k: u64) -> Elem {
        let mut base = a;
        let mut acc = 0;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: Elem) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `g·x·g⁻¹`
    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `[x, y] = x·y·x⁻¹·y⁻¹`
    pub fn commutator(&self, x: Elem, y: Elem) -> Elem {
        self.mul(self.mul(x, y), self.mul(self.inv(x), self.inv(y)))
    }

    pub fn commute(&self, x: Elem, y: Elem) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    /// Every element exactly once, from a table of products; validates the axioms.
    pub fn from_table(mul: Vec<Elem>, order: usize) -> Result<Group> {
        if order == 0 || mul.len() != order * order {
            return Err(Error::SizeMismatch);
        }
        for a in 0..order {
            if mul[a] as usize != a || mul[a * order] as usize != a {
                return Err(Error::Internal("element 0 is not the identity".into()));
            }
        }
        let mut inv = vec![Elem::MAX; order];
        for a in 0..order {
            let row = &mul[a * order..(a + 1) * order];
            let mut seen = vec![false; order];
            for &c in row {
                if c as usize >= order || seen[c as usize] {
                    return Err(Error::Internal("table is not a Latin square".into()));
                }
                seen[c as usize] = true;
            }
            inv[a] = row.iter().position(|&c| c == 0).expect("row is a permutation") as Elem;
        }
        for a in 0..order {
            for b in 0..order {
                let ab = mul[a * order + b] as usize;
                for c in 0..order {
                    if mul[ab * order + c] != mul[a * order + mul[b * order + c] as usize] {
                        return Err(Error::Internal("table is not associative".into()));
                    }
                }
            }
        }
        let mut g = Group { repr: Repr::Table { mul, inv }, order, gens: Vec::new(), construction: Construction::Table };
        g.gens = g.greedy_generators();
        Ok(g)
    }

    /// Same as [`from_table`](Self::from_table) without the cubic associativity check.
    pub(crate) fn from_table_unchecked(mul: Vec<Elem>, order: usize, gens: Vec<Elem>) -> Group {
        let mut inv = vec![0; order];
        for a in 0..order {
            inv[a] = mul[a * order..(a + 1) * order].iter().position(|&c| c == 0).expect("row is a permutation") as Elem;
        }
        Group { repr: Repr::Table { mul, inv }, order, gens, construction: Construction::Table }
    }

    /// Closure of invertible matrices under multiplication, by breadth-first search.
    pub fn matrix_closure(gens: &[Matrix], cap: usize) -> Result<Group> {
        let first = gens.first().ok_or(Error::EmptyInput)?;
        let ring = first.ring();
        let n = first.rows();
        for g in gens {
            if g.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if !g.is_square() || g.rows() != n {
                return Err(Error::SizeMismatch);
            }
            if !g.is_invertible() {
                return Err(Error::NotInvertible);
            }
        }
        let mut elems = vec![Matrix::identity(ring, n)];
        let mut index: HashMap<Matrix, Elem> = HashMap::new();
        index.insert(elems[0].clone(), 0);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let next = elems[i].mul_unchecked(g);
                if !index.contains_key(&next) {
                    if elems.len() >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    index.insert(next.clone(), elems.len() as Elem);
                    elems.push(next);
                }
            }
            i += 1;
        }
        let order = elems.len();
        let inv: Vec<Elem> = elems.iter().map(|m| index[&m.inverse().expect("closure of units")]).collect();
        let table = (order <= MATRIX_TABLE_LIMIT).then(|| {
            let mut t = vec![0; order * order];
            for a in 0..order {
                for b in 0..order {
                    t[a * order + b] = index[&elems[a].mul_unchecked(&elems[b])];
                }
            }
            t
        });
        let mut gen_ids: Vec<Elem> = gens.iter().map(|g| index[g]).filter(|&e| e != 0).collect();
        gen_ids.dedup();
        Ok(Group {
            repr: Repr::Matrices { elems, index, table, inv },
            order,
            gens: gen_ids,
            construction: Construction::Matrices { ring, n },
        })
    }

    /// The matrix behind an element of a matrix group.
    pub fn matrix(&self, e: Elem) -> Option<&Matrix> {
        match &self.repr {
            Repr::Matrices { elems, .. } => elems.get(e as usize),
            _ => None,
        }
    }

    pub fn matrix_id(&self, m: &Matrix) -> Option<Elem> {
        match &self.repr {
            Repr::Matrices { index, .. } => index.get(m).copied(),
            _ => None,
        }
    }

    /// Coordinates of an element of a vector group.
    pub fn coords(&self, e: Elem) -> Option<Vec<u64>> {
        match &self.repr {
            Repr::Vector { q, n } => {
                let mut e = e as u64;
                Some(
                    (0..*n)
                        .map(|_| {
                            let c = e % q;
                            e /= q;
                            c
                        })
                        .collect(),
                )
            }
            _ => None,
        }
    }

    /// Element of a vector group with the given coordinates (reduced mod `q`).
    pub fn vector_id(&self, coords: &[u64]) -> Option<Elem> {
        match &self.repr {
            Repr::Vector { q, n } if coords.len() == *n => {
                Some(coords.iter().rev().fold(0u64, |acc, &c| acc * q + c % q) as Elem)
            }
            _ => None,
        }
    }

    /// `(base, top)` of a semidirect or direct product.
    pub fn factors(&self) -> Option<(&Group, &Group)> {
        match &self.repr {
            Repr::Semidirect { base, top, .. } => Some((base, top)),
            _ => None,
        }
    }

    /// Element `(b, t)` of a semidirect product.
    pub fn pair(&self, b: Elem, t: Elem) -> Elem {
        let (base, _) = self.factors().expect("semidirect product");
        t * base.order as Elem + b
    }

    /// Splits an element of a semidirect product into `(base, top)` parts.
    pub fn split(&self, e: Elem) -> (Elem, Elem) {
        let (base, _) = self.factors().expect("semidirect product");
        let nb = base.order as Elem;
        (e % nb, e / nb)
    }

    /// Element `(v, h)` of a holomorph `R^n ⋊ H`.
    pub fn holomorph_element(&self, v: &[u64], h: &Matrix) -> Option<Elem> {
        let (base, top) = self.factors()?;
        let ring = match base.construction {
            Construction::Vector { ring, .. } => ring,
            _ => return None,
        };
        let reduced: Vec<u64> = v.iter().map(|&x| x % ring.modulus()).collect();
        Some(self.pair(base.vector_id(&reduced)?, top.matrix_id(h)?))
    }

    /// Multiplication table as a fresh [`Group`] with ids permuted by `perm`
    /// (`perm[0]` must be `0`). Generators are carried along.
    pub fn relabel(&self, perm: &[Elem]) -> Result<Group> {
        let n = self.order;
        if perm.len() != n || perm[0] != 0 {
            return Err(Error::SizeMismatch);
        }
        let mut back = vec![Elem::MAX; n];
        for (i, &p) in perm.iter().enumerate() {
            if p as usize >= n || back[p as usize] != Elem::MAX {
                return Err(Error::NotAutomorphism);
            }
            back[p as usize] = i as Elem;
        }
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[perm[a] as usize * n + perm[b] as usize] = perm[self.mul(a as Elem, b as Elem) as usize];
            }
        }
        let gens = self.gens.iter().map(|&g| perm[g as usize]).collect();
        Ok(Group::from_table_unchecked(mul, n, gens))
    }

    /// Full multiplication table.
    pub fn table(&self) -> Vec<Elem> {
        let n = self.order;
        let mut t = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                t[a * n + b] = self.mul(a as Elem, b as Elem);
            }
        }
        t
    }

    /// Repeatedly adds the element that enlarges the generated subgroup most;
    /// ties go to the smallest id.
    pub fn greedy_generators(&self) -> Vec<Elem> {
        let mut gens: Vec<Elem> = Vec::new();
        let mut current = Subgroup::trivial(self);
        while current.order() < self.order {
            let mut best: Option<(usize, Elem, Subgroup)> = None;
            for x in self.elements() {
                if current.contains(x) {
                    continue;
                }
                let s = current.extend(self, &[x]);
                if best.as_ref().map_or(true, |(size, _, _)| s.order() > *size) {
                    best = Some((s.order(), x, s));
                }
            }
            let (_, x, s) = best.expect("proper subgroup has an outside element");
            gens.push(x);
            current = s;
        }
        gens
    }
}

/// Fixed-size bit set over element ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub(crate) fn new(len: usize) -> Self {
        BitSet { words: vec![0; len.div_ceil(64)] }
    }

    pub(crate) fn contains(&self, i: Elem) -> bool {
        self.words[i as usize / 64] >> (i % 64) & 1 == 1
    }

    /// Returns whether `i` was newly inserted.
    pub(crate) fn insert(&mut self, i: Elem) -> bool {
        let w = &mut self.words[i as usize / 64];
        let bit = 1u64 << (i % 64);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_arithmetic() {
        let g = vector_group(RingSpec::new(2, 3).unwrap(), 2, DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 64);
        let a = g.vector_id(&[3, 5]).unwrap();
        let b = g.vector_id(&[6, 7]).unwrap();
        assert_eq!(g.coords(g.mul(a, b)).unwrap(), vec![1, 4]);
        assert_eq!(g.mul(a, g.inv(a)), 0);
        assert_eq!(g.element_order(a), 8);
    }

    #[test]
    fn matrix_closure_of_a_jordan_block() {
        let f2 = RingSpec::field(2).unwrap();
        let j = Matrix::jordan_block(f2, 3, 1);
        let g = Group::matrix_closure(&[j.clone()], DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.element_order(g.matrix_id(&j).unwrap()), 4);
        let i = Group::matrix_closure(&[Matrix::identity(f2, 2)], DEFAULT_CAP).unwrap();
        assert_eq!(i.order(), 1);
        assert!(i.generators().is_empty());
    }

    #[test]
    fn table_validation() {
        // Z/3 written out by hand
        let t = vec![0, 1, 2, 1, 2, 0, 2, 0, 1];
        let g = Group::from_table(t, 3).unwrap();
        assert_eq!(g.inv(1), 2);
        assert!(Group::from_table(vec![0, 1, 1, 1], 2).is_err());
    }

    #[test]
    fn relabel_preserves_structure() {
        let d = dihedral(4).unwrap();
        let perm: Vec<Elem> = [0, 3, 1, 2, 7, 5, 6, 4].to_vec();
        let r = d.relabel(&perm).unwrap();
        for a in d.elements() {
            for b in d.elements() {
                assert_eq!(perm[d.mul(a, b) as usize], r.mul(perm[a as usize], perm[b as usize]));
            }
        }
    }
}
