use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::{Elem, Group, Subgroup};
use crate::error::{Error, Result};

/// A map of element ids, `p[x]` being the image of `x`.
pub type Permutation = Vec<Elem>;

const NONE: Elem = Elem::MAX;

/// Bijective, fixes the identity, and respects products with every generator.
pub fn is_automorphism(g: &Group, p: &[Elem]) -> bool {
    let n = g.order();
    if p.len() != n || p[0] != 0 {
        return false;
    }
    let mut hit = vec![false; n];
    for &y in p {
        if y as usize >= n || hit[y as usize] {
            return false;
        }
        hit[y as usize] = true;
    }
    g.elements().all(|x| g.generators().iter().all(|&s| p[g.mul(x, s) as usize] == g.mul(p[x as usize], p[s as usize])))
}

/// `y ↦ x·y·x⁻¹`
pub fn inner_automorphism(g: &Group, x: Elem) -> Permutation {
    g.elements().map(|y| g.conj(x, y)).collect()
}

/// Closure of permutations of `0..degree` under composition, as a table group
/// whose product is `(a·b)(x) = a(b(x))`. Returns the group and its elements.
pub fn permutation_group(gens: &[Permutation], degree: usize, cap: usize) -> Result<(Group, Vec<Permutation>)> {
    for p in gens {
        if p.len() != degree {
            return Err(Error::SizeMismatch);
        }
    }
    let identity: Permutation = (0..degree as Elem).collect();
    let mut elems = vec![identity.clone()];
    let mut index: HashMap<Permutation, Elem> = HashMap::new();
    index.insert(identity, 0);
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let next: Permutation = g.iter().map(|&x| elems[i][x as usize]).collect();
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
    let mut mul = vec![0; order * order];
    for a in 0..order {
        for b in 0..order {
            let c: Permutation = elems[b].iter().map(|&x| elems[a][x as usize]).collect();
            mul[a * order + b] = index[&c];
        }
    }
    let mut gen_ids: Vec<Elem> = gens.iter().map(|g| index[g]).filter(|&e| e != 0).collect();
    gen_ids.sort_unstable();
    gen_ids.dedup();
    Ok((Group::from_table_unchecked(mul, order, gen_ids), elems))
}

/// Per-element isomorphism invariants used to prune generator images.
#[derive(Clone, Debug)]
pub struct ElementProfile {
    pub order: Vec<u64>,
    pub class_size: Vec<usize>,
    /// Order of the image in the abelianisation.
    pub abelian_order: Vec<u64>,
}

impl ElementProfile {
    pub fn new(g: &Group) -> ElementProfile {
        let whole = g.whole();
        let order: Vec<u64> = g.elements().map(|x| g.element_order(x)).collect();
        let mut class_size = vec![0; g.order()];
        for class in g.conjugacy_classes(&whole) {
            for &x in &class {
                class_size[x as usize] = class.len();
            }
        }
        let derived = g.derived_subgroup(&whole);
        let abelian_order = g
            .elements()
            .map(|x| {
                let mut y = x;
                let mut k = 1;
                while !derived.contains(y) {
                    y = g.mul(y, x);
                    k += 1;
                }
                k
            })
            .collect();
        ElementProfile { order, class_size, abelian_order }
    }

    pub fn key(&self, x: Elem) -> (u64, usize, u64) {
        let i = x as usize;
        (self.order[i], self.class_size[i], self.abelian_order[i])
    }

    pub(crate) fn histogram(&self) -> BTreeMap<(u64, usize, u64), usize> {
        let mut h = BTreeMap::new();
        for x in 0..self.order.len() {
            *h.entry(self.key(x as Elem)).or_insert(0) += 1;
        }
        h
    }
}

/// Backtracking over images of a generating set of `src` in `dst`, extending
/// each partial assignment along the Cayley graph and rejecting it on the
/// first inconsistent edge or collision. A full assignment that survives is a
/// bijective homomorphism, since it respects every edge `x → x·s`.
pub struct MorphismSearch<'a> {
    src: &'a Group,
    dst: &'a Group,
    gens: Vec<Elem>,
    candidates: Vec<Vec<Elem>>,
    budget: u64,
    spent: u64,
    compatible: bool,
}

impl<'a> MorphismSearch<'a> {
    pub fn new(src: &'a Group, dst: &'a Group, budget: u64) -> Self {
        Self::with_profiles(src, &ElementProfile::new(src), dst, &ElementProfile::new(dst), budget)
    }

    pub fn with_profiles(
        src: &'a Group,
        sp: &ElementProfile,
        dst: &'a Group,
        dp: &ElementProfile,
        budget: u64,
    ) -> Self {
        let compatible = src.order() == dst.order() && sp.histogram() == dp.histogram();
        let mut by_key: BTreeMap<(u64, usize, u64), Vec<Elem>> = BTreeMap::new();
        if compatible {
            for y in dst.elements() {
                by_key.entry(dp.key(y)).or_default().push(y);
            }
        }
        let gens = if compatible { generators_for_search(src, sp, &by_key) } else { Vec::new() };
        let candidates = gens.iter().map(|&g| by_key.get(&sp.key(g)).cloned().unwrap_or_default()).collect();
        MorphismSearch { src, dst, gens, candidates, budget, spent: 0, compatible }
    }

    /// Generators of `src` whose images are searched, in search order.
    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    /// Partial-map extensions attempted so far.
    pub fn spent(&self) -> u64 {
        self.spent
    }

    /// First isomorphism under the fixed candidate order, as a full element map.
    pub fn first(&mut self) -> Result<Option<Permutation>> {
        let mut found = None;
        self.run(&mut |phi| {
            found = Some(phi.to_vec());
            false
        })?;
        Ok(found)
    }

    /// Every isomorphism, failing once more than `cap` are found.
    pub fn all(&mut self, cap: usize) -> Result<Vec<Permutation>> {
        let mut out = Vec::new();
        let mut over = false;
        self.run(&mut |phi| {
            if out.len() >= cap {
                over = true;
                return false;
            }
            out.push(phi.to_vec());
            true
        })?;
        if over {
            return Err(Error::CapExceeded { cap });
        }
        Ok(out)
    }

    /// Calls `visit` on each isomorphism until it returns `false`.
    fn run(&mut self, visit: &mut dyn FnMut(&[Elem]) -> bool) -> Result<()> {
        if !self.compatible {
            return Ok(());
        }
        let n = self.src.order();
        if self.gens.is_empty() {
            // trivial group
            visit(&[0]);
            return Ok(());
        }
        let mut phi = vec![NONE; n];
        let mut used = vec![false; n];
        phi[0] = 0;
        used[0] = true;
        let mut images = Vec::with_capacity(self.gens.len());
        self.descend(0, &mut images, &mut phi, &mut used, &[0], visit).map(|_| ())
    }

    /// Returns `Ok(false)` once the visitor asks to stop.
    fn descend(
        &mut self,
        level: usize,
        images: &mut Vec<Elem>,
        phi: &mut [Elem],
        used: &mut [bool],
        domain: &[Elem],
        visit: &mut dyn FnMut(&[Elem]) -> bool,
    ) -> Result<bool> {
        for ci in 0..self.candidates[level].len() {
            let c = self.candidates[level][ci];
            self.spent += 1;
            if self.spent > self.budget {
                return Err(Error::BudgetExceeded { budget: self.budget });
            }
            images.push(c);
            if let Some(added) = self.extend(&self.gens[..=level], images, phi, used, domain) {
                let go_on = if level + 1 == self.gens.len() {
                    visit(phi)
                } else {
                    let mut next = domain.to_vec();
                    next.extend_from_slice(&added);
                    self.descend(level + 1, images, phi, used, &next, visit)?
                };
                for &x in &added {
                    used[phi[x as usize] as usize] = false;
                    phi[x as usize] = NONE;
                }
                if !go_on {
                    images.pop();
                    return Ok(false);
                }
            }
            images.pop();
        }
        Ok(true)
    }

    /// Extends the map from `domain = ⟨gens minus the last⟩` to `⟨gens⟩` by
    /// breadth-first search. On success returns the newly mapped elements;
    /// on failure undoes its own additions.
    fn extend(
        &self,
        gens: &[Elem],
        images: &[Elem],
        phi: &mut [Elem],
        used: &mut [bool],
        domain: &[Elem],
    ) -> Option<Vec<Elem>> {
        let mut queue = domain.to_vec();
        let start = queue.len();
        let mut i = 0;
        let mut ok = true;
        'outer: while i < queue.len() {
            let x = queue[i];
            let fx = phi[x as usize];
            for (&s, &t) in gens.iter().zip(images) {
                let y = self.src.mul(x, s);
                let fy = self.dst.mul(fx, t);
                let cur = phi[y as usize];
                if cur == NONE {
                    if used[fy as usize] {
                        ok = false;
                        break 'outer;
                    }
                    phi[y as usize] = fy;
                    used[fy as usize] = true;
                    queue.push(y);
                } else if cur != fy {
                    ok = false;
                    break 'outer;
                }
            }
            i += 1;
        }
        let added = queue.split_off(start);
        if ok {
            Some(added)
        } else {
            for &x in &added {
                used[phi[x as usize] as usize] = false;
                phi[x as usize] = NONE;
            }
            None
        }
    }
}

/// Greedy generating set: at each step the element that enlarges the generated
/// subgroup most, preferring elements with fewer candidate images.
fn generators_for_search(g: &Group, p: &ElementProfile, by_key: &BTreeMap<(u64, usize, u64), Vec<Elem>>) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut current = Subgroup::trivial(g);
    while current.order() < g.order() {
        let mut best: Option<(usize, usize, Elem, Subgroup)> = None;
        for x in g.elements() {
            if current.contains(x) {
                continue;
            }
            let s = current.extend(g, &[x]);
            let fan = by_key.get(&p.key(x)).map_or(0, Vec::len);
            let better = match &best {
                None => true,
                Some((size, bfan, _, _)) => s.order() > *size || (s.order() == *size && fan < *bfan),
            };
            if better {
                best = Some((s.order(), fan, x, s));
            }
        }
        let (_, _, x, s) = best.expect("outside element");
        gens.push(x);
        current = s;
    }
    gens
}

/// All automorphisms of `g`, as element permutations.
pub fn automorphism_group(g: &Group, cap: usize) -> Result<Vec<Permutation>> {
    let mut search = MorphismSearch::new(g, g, u64::MAX);
    search.all(cap)
}
