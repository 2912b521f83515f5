use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::{BitSet, Elem, Group};
use crate::error::{Error, Result};
use crate::ring::is_prime;
use crate::span::AbelianInvariants;

/// A subgroup of a [`Group`], stored as a membership bit set plus sorted ids.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: BitSet,
    elements: Vec<Elem>,
    gens: Vec<Elem>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub fn trivial(g: &Group) -> Subgroup {
        let mut members = BitSet::new(g.order());
        members.insert(0);
        Subgroup { members, elements: vec![0], gens: Vec::new() }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Sorted element ids.
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// `⟨self, xs⟩`
    pub fn extend(&self, g: &Group, xs: &[Elem]) -> Subgroup {
        let fresh: Vec<Elem> = xs.iter().copied().filter(|&x| !self.contains(x)).collect();
        if fresh.is_empty() {
            return self.clone();
        }
        let mut gens = self.gens.clone();
        gens.extend(fresh);
        let mut members = self.members.clone();
        let mut elements = self.elements.clone();
        let mut i = 0;
        while i < elements.len() {
            let x = elements[i];
            for &s in &gens {
                let y = g.mul(x, s);
                if members.insert(y) {
                    elements.push(y);
                }
            }
            i += 1;
        }
        elements.sort_unstable();
        Subgroup { members, elements, gens }
    }

    pub(crate) fn bits(&self) -> &BitSet {
        &self.members
    }
}

/// `G/N` as a table group, with the coset label of every element of `G`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: Group,
    pub labels: Vec<Elem>,
    /// One representative of each coset, indexed by label.
    pub representatives: Vec<Elem>,
}

/// Quotients larger than this are refused (their table is quadratic).
const QUOTIENT_LIMIT: usize = 4096;

impl Group {
    pub fn whole(&self) -> Subgroup {
        let mut members = BitSet::new(self.order());
        for x in self.elements() {
            members.insert(x);
        }
        Subgroup { members, elements: self.elements().collect(), gens: self.generators().to_vec() }
    }

    pub fn subgroup(&self, xs: &[Elem]) -> Subgroup {
        Subgroup::trivial(self).extend(self, xs)
    }

    /// Smallest subgroup containing `xs` that is normalised by `ambient`.
    pub fn normal_closure(&self, ambient: &Subgroup, xs: &[Elem]) -> Subgroup {
        let mut s = self.subgroup(xs);
        let mut work: Vec<Elem> = s.generators().to_vec();
        while let Some(x) = work.pop() {
            for &g in ambient.generators() {
                let c = self.conj(g, x);
                if !s.contains(c) {
                    s = s.extend(self, &[c]);
                    work.push(c);
                }
            }
        }
        s
    }

    pub fn is_normal(&self, ambient: &Subgroup, s: &Subgroup) -> bool {
        ambient.generators().iter().all(|&g| s.generators().iter().all(|&x| s.contains(self.conj(g, x))))
    }

    pub fn is_abelian(&self, s: &Subgroup) -> bool {
        let gens = s.generators();
        gens.iter().enumerate().all(|(i, &a)| gens[i + 1..].iter().all(|&b| self.commute(a, b)))
    }

    /// `[S, S]`: normal closure in `S` of the commutators of its generators.
    pub fn derived_subgroup(&self, s: &Subgroup) -> Subgroup {
        let gens = s.generators();
        let mut comms = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                let c = self.commutator(a, b);
                if c != 0 {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(s, &comms)
    }

    /// `S ⊇ S' ⊇ S'' ⊇ ...` until it stabilises (the last term repeats nothing).
    pub fn derived_series(&self, s: &Subgroup) -> Vec<Subgroup> {
        let mut series = vec![s.clone()];
        loop {
            let next = self.derived_subgroup(series.last().unwrap());
            if next == *series.last().unwrap() {
                return series;
            }
            series.push(next);
        }
    }

    /// `S = S^1 ⊇ S^2 = [S, S] ⊇ S^3 = [S, S^2] ⊇ ...` until it stabilises.
    pub fn lower_central_series(&self, s: &Subgroup) -> Vec<Subgroup> {
        let mut series = vec![s.clone()];
        loop {
            let cur = series.last().unwrap();
            let mut comms = Vec::new();
            for &a in s.generators() {
                for &b in cur.generators() {
                    let c = self.commutator(a, b);
                    if c != 0 {
                        comms.push(c);
                    }
                }
            }
            let next = self.normal_closure(s, &comms);
            if next == *cur {
                return series;
            }
            series.push(next);
        }
    }

    /// Number of steps for the lower central series to reach `1`, if it does.
    pub fn nilpotency_class(&self, s: &Subgroup) -> Option<usize> {
        let series = self.lower_central_series(s);
        series.last().unwrap().is_trivial().then(|| series.len() - 1)
    }

    pub fn center(&self, s: &Subgroup) -> Subgroup {
        let central: Vec<Elem> = s
            .elements()
            .iter()
            .copied()
            .filter(|&x| s.generators().iter().all(|&g| self.commute(x, g)))
            .collect();
        self.subgroup_from_elements(&central)
    }

    pub fn centralizer(&self, s: &Subgroup, x: Elem) -> Subgroup {
        let c: Vec<Elem> = s.elements().iter().copied().filter(|&y| self.commute(x, y)).collect();
        self.subgroup_from_elements(&c)
    }

    /// Wraps a set already known to be a subgroup.
    pub(crate) fn subgroup_from_elements(&self, xs: &[Elem]) -> Subgroup {
        let mut members = BitSet::new(self.order());
        let mut elements = Vec::with_capacity(xs.len());
        for &x in xs {
            if members.insert(x) {
                elements.push(x);
            }
        }
        elements.sort_unstable();
        // generators: grow greedily through the listed elements
        let mut gen_sub = Subgroup::trivial(self);
        for &x in &elements {
            if !gen_sub.contains(x) {
                gen_sub = gen_sub.extend(self, &[x]);
            }
        }
        debug_assert_eq!(gen_sub.order(), elements.len());
        Subgroup { members, elements, gens: gen_sub.gens }
    }

    /// Conjugacy classes of `S` (orbits under conjugation by its generators),
    /// each sorted, listed by smallest element.
    pub fn conjugacy_classes(&self, s: &Subgroup) -> Vec<Vec<Elem>> {
        let mut seen = BitSet::new(self.order());
        let mut classes = Vec::new();
        for &x in s.elements() {
            if !seen.insert(x) {
                continue;
            }
            let mut orbit = vec![x];
            let mut i = 0;
            while i < orbit.len() {
                for &g in s.generators() {
                    let y = self.conj(g, orbit[i]);
                    if seen.insert(y) {
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }
        classes
    }

    /// Abelian invariants by counting, for each prime `p`, the solutions of `x^{p^k} = 1`.
    pub fn abelian_invariants(&self, s: &Subgroup) -> Result<AbelianInvariants> {
        if !self.is_abelian(s) {
            return Err(Error::NotAbelian);
        }
        let orders: Vec<u64> = s.elements().iter().map(|&x| self.element_order(x)).collect();
        let mut powers = Vec::new();
        let n = s.order() as u64;
        for p in (2..=n).filter(|&p| n % p == 0 && is_prime(p)) {
            // log_p of |{x : x^{p^k} = 1}| for k = 0, 1, ...
            let mut logs = vec![0u32];
            let mut k = 1u32;
            loop {
                let pk = p.pow(k);
                let count = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
                let mut log = 0;
                let mut c = count;
                while c > 1 {
                    c /= p;
                    log += 1;
                }
                logs.push(log);
                if logs[k as usize] == logs[k as usize - 1] {
                    break;
                }
                k += 1;
            }
            // r_k = number of cyclic factors of order at least p^k
            let r: Vec<u32> = (1..logs.len()).map(|k| logs[k] - logs[k - 1]).collect();
            for k in 1..=r.len() {
                let exact = r[k - 1] - r.get(k).copied().unwrap_or(0);
                for _ in 0..exact {
                    powers.push(p.pow(k as u32));
                }
            }
        }
        Ok(AbelianInvariants::from_prime_powers(powers))
    }

    /// `G/N` for a normal subgroup `N` of the whole group.
    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient> {
        let whole = self.whole();
        if !self.is_normal(&whole, n) {
            return Err(Error::NotNormal);
        }
        let index = self.order() / n.order();
        if index > QUOTIENT_LIMIT {
            return Err(Error::CapExceeded { cap: QUOTIENT_LIMIT });
        }
        let mut labels = vec![Elem::MAX; self.order()];
        let mut representatives = Vec::with_capacity(index);
        for g in self.elements() {
            if labels[g as usize] != Elem::MAX {
                continue;
            }
            let label = representatives.len() as Elem;
            representatives.push(g);
            for &x in n.elements() {
                labels[self.mul(g, x) as usize] = label;
            }
        }
        let mut mul = vec![0; index * index];
        for (i, &a) in representatives.iter().enumerate() {
            for (j, &b) in representatives.iter().enumerate() {
                mul[i * index + j] = labels[self.mul(a, b) as usize];
            }
        }
        let gens: Vec<Elem> = {
            let mut v: Vec<Elem> =
                self.generators().iter().map(|&g| labels[g as usize]).filter(|&l| l != 0).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        Ok(Quotient { group: Group::from_table_unchecked(mul, index, gens), labels, representatives })
    }

    /// Invariants of the abelian quotient `G/N`, for normal `N ⊇ [G, G]`.
    pub fn quotient_abelian(&self, n: &Subgroup) -> Result<AbelianInvariants> {
        let whole = self.whole();
        if !self.is_normal(&whole, n) {
            return Err(Error::NotNormal);
        }
        if !self.derived_subgroup(&whole).is_subgroup_of(n) {
            return Err(Error::DerivedNotContained);
        }
        let q = self.quotient(n)?;
        let qw = q.group.whole();
        q.group.abelian_invariants(&qw)
    }

    /// All subgroups `M` with `N ≤ M ≤ G` and `|M : N| = index`, for normal `N`.
    pub fn intermediate_subgroups(&self, n: &Subgroup, index: usize) -> Result<Vec<Subgroup>> {
        let q = self.quotient(n)?;
        let mut out = Vec::new();
        for s in q.group.all_subgroups(usize::MAX)? {
            if s.order() != index {
                continue;
            }
            let extra: Vec<Elem> = s.generators().iter().map(|&l| q.representatives[l as usize]).collect();
            out.push(n.extend(self, &extra));
        }
        Ok(out)
    }

    /// Every subgroup, by closing each known subgroup under one more cyclic
    /// generator until nothing new appears. Complete, since any subgroup is
    /// reached along a chain `⟨x_1⟩ ⊂ ⟨x_1, x_2⟩ ⊂ ...`. Sorted by order, then ids.
    pub fn all_subgroups(&self, cap: usize) -> Result<Vec<Subgroup>> {
        // one generator per cyclic subgroup
        let mut cyclic_reps = Vec::new();
        let mut seen_cyclic = BTreeSet::new();
        for x in self.elements() {
            let c = self.subgroup(&[x]);
            if seen_cyclic.insert(c.bits().clone()) {
                cyclic_reps.push(x);
            }
        }
        let mut known = BTreeSet::new();
        let trivial = Subgroup::trivial(self);
        known.insert(trivial.bits().clone());
        let mut list = vec![trivial];
        let mut i = 0;
        while i < list.len() {
            for &x in &cyclic_reps {
                if list[i].contains(x) {
                    continue;
                }
                let t = list[i].extend(self, &[x]);
                if known.insert(t.bits().clone()) {
                    if list.len() >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    list.push(t);
                }
            }
            i += 1;
        }
        list.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
        Ok(list)
    }

    /// `g·S·g⁻¹`
    pub fn conjugate_subgroup(&self, g: Elem, s: &Subgroup) -> Subgroup {
        let gi = self.inv(g);
        let mut members = BitSet::new(self.order());
        let mut elements: Vec<Elem> = s.elements().iter().map(|&x| self.mul(self.mul(g, x), gi)).collect();
        for &x in &elements {
            members.insert(x);
        }
        elements.sort_unstable();
        let gens = s.generators().iter().map(|&x| self.mul(self.mul(g, x), gi)).collect();
        Subgroup { members, elements, gens }
    }

    /// Partition of `subgroups` into classes under conjugation by the whole
    /// group; returns the class index of each input.
    pub fn conjugacy_classes_of_subgroups(&self, subgroups: &[Subgroup]) -> Vec<usize> {
        let mut class_of: Vec<Option<usize>> = vec![None; subgroups.len()];
        let mut next = 0;
        for i in 0..subgroups.len() {
            if class_of[i].is_some() {
                continue;
            }
            let mut orbit = vec![subgroups[i].clone()];
            let mut seen = BTreeSet::new();
            seen.insert(subgroups[i].bits().clone());
            let mut k = 0;
            while k < orbit.len() {
                for &g in self.generators() {
                    let c = self.conjugate_subgroup(g, &orbit[k]);
                    if seen.insert(c.bits().clone()) {
                        orbit.push(c);
                    }
                }
                k += 1;
            }
            for (j, s) in subgroups.iter().enumerate().skip(i) {
                if class_of[j].is_none() && seen.contains(s.bits()) {
                    class_of[j] = Some(next);
                }
            }
            next += 1;
        }
        class_of.into_iter().map(|c| c.expect("assigned")).collect()
    }
}
