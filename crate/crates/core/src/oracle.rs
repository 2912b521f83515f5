//! Brute-force isomorphism testing for small groups, independent of any
//! linear-algebra shortcut.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conjugacy::holomorph_isomorphic;
use crate::error::{Error, Result};
use crate::group::{
    automorphism_group, permutation_group, semidirect, Elem, Group, MorphismSearch, Permutation, Subgroup,
};
use crate::matrix::Matrix;
use crate::ring::RingSpec;

/// Default number of partial-map extensions an isomorphism search may attempt.
pub const DEFAULT_BUDGET: u64 = 10_000_000;
pub const FINGERPRINT_CAP: usize = 1 << 17;
/// Random pairs checked on top of the exhaustive generator checks.
pub const WITNESS_SAMPLES: usize = 1000;

/// Isomorphism invariants of a finite group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Fingerprint {
    pub order: usize,
    /// `(element order, count)`, ascending.
    pub order_histogram: Vec<(u64, usize)>,
    pub center_order: usize,
    pub derived_orders: Vec<usize>,
    pub lcs_orders: Vec<usize>,
    pub nilpotency_class: Option<usize>,
    pub abelianization: Vec<u64>,
    /// `(class size, number of classes)`, ascending.
    pub class_sizes: Vec<(usize, usize)>,
}

fn histogram<K: Ord>(keys: impl Iterator<Item = K>) -> Vec<(K, usize)> {
    let mut h = BTreeMap::new();
    for k in keys {
        *h.entry(k).or_insert(0) += 1;
    }
    h.into_iter().collect()
}

pub fn fingerprint(g: &Group, cap: usize) -> Result<Fingerprint> {
    if g.order() > cap {
        return Err(Error::CapExceeded { cap });
    }
    let whole = g.whole();
    let derived = g.derived_series(&whole);
    let lcs = g.lower_central_series(&whole);
    Ok(Fingerprint {
        order: g.order(),
        order_histogram: histogram(g.elements().map(|x| g.element_order(x))),
        center_order: g.center(&whole).order(),
        derived_orders: derived.iter().map(Subgroup::order).collect(),
        lcs_orders: lcs.iter().map(Subgroup::order).collect(),
        nilpotency_class: g.nilpotency_class(&whole),
        abelianization: g.quotient_abelian(&derived[1.min(derived.len() - 1)])?.divisors().to_vec(),
        class_sizes: histogram(g.conjugacy_classes(&whole).iter().map(Vec::len)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IsoResult {
    pub isomorphic: bool,
    /// Full element map `g → h` when isomorphic.
    pub witness: Option<Permutation>,
    /// Extensions spent by the backtracking search (0 if fingerprints decided).
    pub spent: u64,
}

/// Complete within `budget`: a negative answer means no isomorphism exists.
pub fn are_isomorphic(g: &Group, h: &Group, budget: u64) -> Result<IsoResult> {
    let negative = IsoResult { isomorphic: false, witness: None, spent: 0 };
    if g.order() != h.order() {
        return Ok(negative);
    }
    let cap = g.order().max(FINGERPRINT_CAP);
    if fingerprint(g, cap)? != fingerprint(h, cap)? {
        return Ok(negative);
    }
    let mut search = MorphismSearch::new(g, h, budget);
    let found = search.first()?;
    let spent = search.spent();
    match found {
        Some(map) => {
            if !verify_isomorphism(g, h, &map, WITNESS_SAMPLES, 0) {
                return Err(Error::Internal("isomorphism witness failed verification".into()));
            }
            Ok(IsoResult { isomorphic: true, witness: Some(map), spent })
        }
        None => Ok(IsoResult { spent, ..negative }),
    }
}

/// Checks that `map` is a bijection respecting every product `x·s` with `s` a
/// generator (which proves it a homomorphism), every product of two
/// generators, and `samples` random products.
pub fn verify_isomorphism(g: &Group, h: &Group, map: &[Elem], samples: usize, seed: u64) -> bool {
    let n = g.order();
    if map.len() != n || h.order() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &y in map {
        if y as usize >= n || hit[y as usize] {
            return false;
        }
        hit[y as usize] = true;
    }
    let f = |x: Elem| map[x as usize];
    let respects = |x: Elem, y: Elem| f(g.mul(x, y)) == h.mul(f(x), f(y));
    let gens = g.generators();
    if !gens.iter().all(|&a| gens.iter().all(|&b| respects(a, b))) {
        return false;
    }
    if !g.elements().all(|x| gens.iter().all(|&s| respects(x, s))) {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).all(|_| respects(rng.gen_range(0..n) as Elem, rng.gen_range(0..n) as Elem))
}

/// The subgroup `s` as a group in its own right; element `i` is `s.elements()[i]`.
pub fn induced_group(g: &Group, s: &Subgroup) -> Group {
    let elems = s.elements();
    let mut index = vec![Elem::MAX; g.order()];
    for (i, &x) in elems.iter().enumerate() {
        index[x as usize] = i as Elem;
    }
    let k = elems.len();
    let mut mul = vec![0; k * k];
    for (i, &a) in elems.iter().enumerate() {
        for (j, &b) in elems.iter().enumerate() {
            mul[i * k + j] = index[g.mul(a, b) as usize];
        }
    }
    let gens = s.generators().iter().map(|&x| index[x as usize]).filter(|&e| e != 0).collect();
    Group::from_table_unchecked(mul, k, gens)
}

/// Every invertible `n×n` matrix over `ring`.
pub fn general_linear(ring: RingSpec, n: usize, cap: usize) -> Result<Vec<Matrix>> {
    let q = ring.modulus();
    let total = q.checked_pow((n * n) as u32).filter(|&t| t <= cap as u64).ok_or(Error::CapExceeded { cap })?;
    let mut out = Vec::new();
    for mut k in 0..total {
        let data = (0..n * n)
            .map(|_| {
                let d = k % q;
                k /= q;
                d
            })
            .collect();
        let m = Matrix::new(ring, n, n, data)?;
        if m.is_invertible() {
            out.push(m);
        }
    }
    Ok(out)
}

/// One generator for each conjugacy class of cyclic subgroups of `GL_n(ring)`.
pub fn cyclic_class_representatives(ring: RingSpec, n: usize, cap: usize) -> Result<Vec<Matrix>> {
    let all = general_linear(ring, n, cap)?;
    let gl = Group::matrix_closure(&all, cap)?;
    let mut seen = BTreeMap::new();
    let mut subs = Vec::new();
    let mut gens = Vec::new();
    for x in gl.elements() {
        let s = gl.subgroup(&[x]);
        if seen.insert(s.elements().to_vec(), ()).is_none() {
            subs.push(s);
            gens.push(x);
        }
    }
    let classes = gl.conjugacy_classes_of_subgroups(&subs);
    let mut taken = vec![false; subs.len()];
    let mut reps = Vec::new();
    for (i, &c) in classes.iter().enumerate() {
        if !taken[c] {
            taken[c] = true;
            reps.push(gl.matrix(gens[i]).expect("matrix group").clone());
        }
    }
    Ok(reps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum LindoScope {
    /// Every ordered pair of elements.
    All,
    /// Every ordered pair of cyclic-class representatives.
    ClassRepresentatives,
    /// Class representatives of order at most the bound.
    MaxOrder(u64),
}

#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LindoReport {
    pub p: u64,
    pub n: usize,
    pub scope: LindoScope,
    pub pairs: usize,
    pub isomorphic_pairs: usize,
    pub disagreements: Vec<(Matrix, Matrix)>,
}

/// Compares the linear-algebra decision of `Hol(V,a) ≅ Hol(V,b)` with the
/// brute-force oracle on pairs drawn from `GL_n(p)`.
pub fn verify_lindo(p: u64, n: usize, scope: LindoScope, budget: u64) -> Result<LindoReport> {
    let ring = RingSpec::field(p)?;
    let cap = 1 << 20;
    let mats = match scope {
        LindoScope::All => general_linear(ring, n, cap)?,
        LindoScope::ClassRepresentatives => cyclic_class_representatives(ring, n, cap)?,
        LindoScope::MaxOrder(k) => {
            let mut reps = Vec::new();
            for m in cyclic_class_representatives(ring, n, cap)? {
                if m.order(k)? <= k {
                    reps.push(m);
                }
            }
            reps
        }
    };
    let hols = mats.iter().map(|m| Group::holomorph(ring, n, &[m.clone()], cap)).collect::<Result<Vec<_>>>()?;
    let mut report = LindoReport { p, n, scope, pairs: 0, isomorphic_pairs: 0, disagreements: Vec::new() };
    for (i, a) in mats.iter().enumerate() {
        for (j, b) in mats.iter().enumerate() {
            let linear = holomorph_isomorphic(a, b)?;
            let brute = are_isomorphic(&hols[i], &hols[j], budget)?.isomorphic;
            report.pairs += 1;
            report.isomorphic_pairs += brute as usize;
            if linear != brute {
                report.disagreements.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AdmittingCaps {
    pub group_order: usize,
    pub aut_order: usize,
    pub subgroups: usize,
    pub budget: u64,
}

impl Default for AdmittingCaps {
    fn default() -> Self {
        AdmittingCaps { group_order: 64, aut_order: 200, subgroups: 100_000, budget: DEFAULT_BUDGET }
    }
}

/// One conjugacy class of subgroups `H ≤ Aut(G)`.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SubgroupClass {
    pub order: usize,
    pub size: usize,
    /// Automorphisms generating a representative.
    pub generators: Vec<Permutation>,
    pub holomorph: Fingerprint,
}

#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AdmittingReport {
    pub group_order: usize,
    pub aut_order: usize,
    pub subgroup_count: usize,
    pub classes: Vec<SubgroupClass>,
    /// Class pairs whose holomorph fingerprints coincide.
    pub compared_pairs: usize,
    /// Class pairs `(i, j)` with isomorphic holomorphs, and whether the
    /// subgroups themselves are isomorphic.
    pub isomorphic_pairs: Vec<(usize, usize, bool)>,
    pub admitting: bool,
    pub highly_admitting: bool,
}

/// Searches for non-conjugate `H, K ≤ Aut(G)` with `Hol(G,H) ≅ Hol(G,K)`,
/// over every subgroup of `Aut(G)`.
pub fn admitting_report(g: &Group, caps: &AdmittingCaps) -> Result<AdmittingReport> {
    if g.order() > caps.group_order {
        return Err(Error::CapExceeded { cap: caps.group_order });
    }
    let auts = automorphism_group(g, caps.aut_order)?;
    let (aut, perms) = permutation_group(&auts, g.order(), caps.aut_order)?;
    let subs = aut.all_subgroups(caps.subgroups)?;
    let class_of = aut.conjugacy_classes_of_subgroups(&subs);
    let count = class_of.iter().max().map_or(0, |&c| c + 1);
    let mut reps: Vec<Option<usize>> = vec![None; count];
    let mut sizes = vec![0; count];
    for (i, &c) in class_of.iter().enumerate() {
        reps[c].get_or_insert(i);
        sizes[c] += 1;
    }
    let cap = g.order() * aut.order();
    let mut classes = Vec::with_capacity(count);
    let mut hols = Vec::with_capacity(count);
    for (c, rep) in reps.iter().enumerate() {
        let s = &subs[rep.expect("nonempty class")];
        let generators: Vec<Permutation> = s.generators().iter().map(|&x| perms[x as usize].clone()).collect();
        let hol = semidirect(g, &generators, cap)?;
        classes.push(SubgroupClass {
            order: s.order(),
            size: sizes[c],
            generators,
            holomorph: fingerprint(&hol, cap.max(FINGERPRINT_CAP))?,
        });
        hols.push(hol);
    }
    let mut compared = 0;
    let mut isomorphic_pairs = Vec::new();
    for i in 0..count {
        for j in i + 1..count {
            if classes[i].holomorph != classes[j].holomorph {
                continue;
            }
            compared += 1;
            if are_isomorphic(&hols[i], &hols[j], caps.budget)?.isomorphic {
                let si = induced_group(&aut, &subs[reps[i].unwrap()]);
                let sj = induced_group(&aut, &subs[reps[j].unwrap()]);
                let same = are_isomorphic(&si, &sj, caps.budget)?.isomorphic;
                isomorphic_pairs.push((i, j, same));
            }
        }
    }
    Ok(AdmittingReport {
        group_order: g.order(),
        aut_order: aut.order(),
        subgroup_count: subs.len(),
        classes,
        compared_pairs: compared,
        admitting: !isomorphic_pairs.is_empty(),
        highly_admitting: isomorphic_pairs.iter().any(|&(_, _, same)| !same),
        isomorphic_pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, quaternion, vector_group};

    #[test]
    fn small_fingerprints() {
        let f2 = RingSpec::field(2).unwrap();
        let c4 = fingerprint(&cyclic(4).unwrap(), 1 << 10).unwrap();
        let v4 = fingerprint(&vector_group(f2, 2, 1 << 10).unwrap(), 1 << 10).unwrap();
        assert_ne!(c4.order_histogram, v4.order_histogram);
        assert_eq!(c4.abelianization, vec![4]);
        assert_eq!(v4.abelianization, vec![2, 2]);
        let d8 = fingerprint(&dihedral(4).unwrap(), 1 << 10).unwrap();
        assert_eq!(d8.lcs_orders, vec![8, 2, 1]);
        assert_eq!(d8.nilpotency_class, Some(2));
        assert_eq!(d8.class_sizes, vec![(1, 2), (2, 3)]);
    }

    #[test]
    fn dihedral_and_quaternion_differ() {
        let r = are_isomorphic(&dihedral(4).unwrap(), &quaternion(2).unwrap(), DEFAULT_BUDGET).unwrap();
        assert!(!r.isomorphic);
        let d = dihedral(4).unwrap();
        let r = are_isomorphic(&d, &d, DEFAULT_BUDGET).unwrap();
        assert!(r.isomorphic);
        assert!(verify_isomorphism(&d, &d, &r.witness.unwrap(), 100, 1));
    }

    #[test]
    fn gl2_sizes() {
        let f3 = RingSpec::field(3).unwrap();
        assert_eq!(general_linear(f3, 2, 1 << 10).unwrap().len(), 48);
        // classes of cyclic subgroups of GL_2(2) ≅ S_3: orders 1, 2, 3
        let f2 = RingSpec::field(2).unwrap();
        assert_eq!(cyclic_class_representatives(f2, 2, 1 << 10).unwrap().len(), 3);
    }
}
