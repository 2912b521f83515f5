//! Property suites: each statement is checked exhaustively on small general
//! linear groups and on seeded random cases, and every counterexample is kept.

use std::collections::BTreeMap;

use holoforge_core::conjugacy::{cyclic_conjugate_field, holomorph_isomorphic, Verdict};
use holoforge_core::group::{Construction, Elem, Group, Subgroup};
use holoforge_core::normal_forms::{
    frobenius_power_similar, image_basis, invariant_factors, is_p_regular, is_similar, restriction, unipotent_partition,
};
use holoforge_core::oracle::{
    are_isomorphic, fingerprint, general_linear, verify_isomorphism, verify_lindo, LindoScope, DEFAULT_BUDGET,
    WITNESS_SAMPLES,
};
use holoforge_core::span::howell_span;
use holoforge_core::{Matrix, Polynomial, RingSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::report::{ReportBuilder, RunReport};

pub const SUITES: &[&str] = &["orden", "psimilar", "pid", "unip", "lindo", "lindo2", "derived", "lcs", "nicecase0", "suma", "abe"];

pub const DEFAULT_CASES: usize = 200;
const CAP: usize = 1 << 20;
/// Counterexamples echoed into the report.
const SHOWN: usize = 5;

pub fn run_suite(name: &str, seed: u64, cases: usize) -> Result<RunReport> {
    let mut b = ReportBuilder::new(format!("verify {name}"), json!({"seed": seed, "cases": cases}));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tally::default();
    match name {
        "orden" => orden(&mut t, &mut rng, cases)?,
        "psimilar" => psimilar(&mut t, &mut rng, cases)?,
        "pid" => pid(&mut t, &mut rng, cases)?,
        "unip" => unip(&mut t, &mut rng, cases)?,
        "lindo" => lindo(&mut t, &mut b, &mut rng, cases)?,
        "lindo2" => lindo2(&mut t, &mut rng, cases)?,
        "derived" => derived(&mut t, &mut rng, cases)?,
        "lcs" => lcs(&mut t, &mut rng, cases)?,
        "nicecase0" => nicecase0(&mut t, &mut rng, cases)?,
        "suma" => suma(&mut t, &mut rng, cases)?,
        "abe" => abe(&mut t, &mut b, &mut rng, cases)?,
        _ => return Err(Error::UnknownSuite(name.into())),
    }
    t.finish(&mut b, cases);
    Ok(b.finish())
}

#[derive(Default)]
struct Tally {
    exhaustive: usize,
    random: usize,
    /// Cases where the hypothesis of an implication held.
    hypothesis: usize,
    counterexamples: Vec<String>,
    extra: BTreeMap<&'static str, usize>,
}

impl Tally {
    fn record(&mut self, random: bool, ok: bool, what: impl FnOnce() -> String) {
        if random {
            self.random += 1;
        } else {
            self.exhaustive += 1;
        }
        if !ok {
            self.counterexamples.push(what());
        }
    }

    fn bump(&mut self, key: &'static str) {
        *self.extra.entry(key).or_insert(0) += 1;
    }

    fn finish(self, b: &mut ReportBuilder, cases: usize) {
        b.result("exhaustive_cases", self.exhaustive);
        b.result("random_cases", self.random);
        b.result("hypothesis_held", self.hypothesis);
        for (k, v) in &self.extra {
            b.result(k, v);
        }
        b.check_that("randomized cases", format!(">= {cases}"), self.random, self.random >= cases);
        let shown: Vec<&String> = self.counterexamples.iter().take(SHOWN).collect();
        b.check_that("counterexamples", 0, (self.counterexamples.len(), shown), self.counterexamples.is_empty());
    }
}

fn field(p: u64) -> RingSpec {
    RingSpec::field(p).expect("prime")
}

fn random_matrix(ring: RingSpec, n: usize, rng: &mut impl Rng) -> Matrix {
    let q = ring.modulus();
    Matrix::new(ring, n, n, (0..n * n).map(|_| rng.gen_range(0..q)).collect()).expect("n×n entries")
}

fn random_invertible(ring: RingSpec, n: usize, rng: &mut impl Rng) -> Matrix {
    loop {
        let a = random_matrix(ring, n, rng);
        if a.is_invertible() {
            return a;
        }
    }
}

fn conjugate(x: &Matrix, a: &Matrix) -> Result<Matrix> {
    Ok(x.mul(a)?.mul(&x.inverse()?)?)
}

/// A random conjugate of a random upper unitriangular matrix.
fn random_unipotent(ring: RingSpec, n: usize, rng: &mut impl Rng) -> Result<Matrix> {
    let mut u = Matrix::identity(ring, n);
    for i in 0..n {
        for j in i + 1..n {
            u.set(i, j, rng.gen_range(0..ring.modulus()));
        }
    }
    conjugate(&random_invertible(ring, n, rng), &u)
}

fn is_p_power(mut k: u64, p: u64) -> bool {
    while k % p == 0 {
        k /= p;
    }
    k == 1
}

fn gl(p: u64, n: usize) -> Result<Vec<Matrix>> {
    Ok(general_linear(field(p), n, CAP)?)
}

const FIELD_SHAPES: &[(u64, usize)] = &[(2, 3), (2, 4), (3, 3), (5, 2), (7, 2), (3, 4), (2, 5)];

fn orden(t: &mut Tally, rng: &mut impl Rng, cases: usize) -> Result<()> {
    let check = |t: &mut Tally, a: &Matrix, random: bool| -> Result<()> {
        let p = a.ring().p();
        let regular = a.order(1 << 40)? % p != 0;
        let squarefree = a.minpoly()?.is_squarefree()?;
        t.record(random, regular == squarefree && regular == is_p_regular(a)?, || format!("{a:?}"));
        Ok(())
    };
    for (p, n) in [(2, 2), (3, 2), (2, 3)] {
        for a in gl(p, n)? {
            check(t, &a, false)?;
        }
    }
    for i in 0..cases {
        let (p, n) = FIELD_SHAPES[i % FIELD_SHAPES.len()];
        check(t, &random_invertible(field(p), n, rng), true)?;
    }
    Ok(())
}

fn psimilar(t: &mut Tally, rng: &mut impl Rng, cases: usize) -> Result<()> {
    let check = |t: &mut Tally, a: &Matrix, random: bool| -> Result<()> {
        let p = a.ring().p();
        let regular = a.order(1 << 40)? % p != 0;
        let similar = is_similar(a, &a.pow(p)?)?;
        t.record(random, regular == similar && similar == frobenius_power_similar(a)?, || format!("{a:?}"));
        Ok(())
    };
    for (p, n) in [(2, 2), (3, 2), (2, 3)] {
        for a in gl(p, n)? {
            check(t, &a, false)?;
        }
    }
    for i in 0..cases {
        let (p, n) = FIELD_SHAPES[i % FIELD_SHAPES.len()];
        check(t, &random_invertible(field(p), n, rng), true)?;
    }
    Ok(())
}

/// `u` restricted to `q(u)W`, checked against `u·B = B·R`; `None` when `q(u)W = 0`.
fn restricted(u: &Matrix, q: &Polynomial) -> Result<Option<Matrix>> {
    let basis = image_basis(&q.eval_matrix(u)?)?;
    if basis.is_empty() {
        return Ok(None);
    }
    let r = restriction(u, &basis)?;
    let bm = Matrix::from_columns(u.ring(), u.rows(), &basis)?;
    if u.mul(&bm)? != bm.mul(&r)? {
        return Err(Error::Invalid("restriction does not intertwine".into()));
    }
    Ok(Some(r))
}

fn pid_case(t: &mut Tally, u: &Matrix, v: &Matrix, q: &Polynomial, random: bool) -> Result<()> {
    let (ru, rv) = (restricted(u, q)?, restricted(v, q)?);
    let hypothesis = match (&ru, &rv) {
        (None, None) => true,
        (Some(a), Some(b)) => a.rows() == b.rows() && is_similar(a, b)?,
        _ => false,
    };
    let similar = is_similar(u, v)?;
    // similarity recomputed through invariant factors
    let by_factors = invariant_factors(u)?.factors() == invariant_factors(v)?.factors();
    if hypothesis {
        t.hypothesis += 1;
    }
    t.record(random, (!hypothesis || similar) && similar == by_factors, || format!("u = {u:?}, v = {v:?}, q = {q}"));
    Ok(())
}

fn pid(t: &mut Tally, rng: &mut impl Rng, cases: usize) -> Result<()> {
    let f2 = field(2);
    let all2: Vec<Matrix> = (0..16u64).map(|k| Matrix::new(f2, 2, 2, (0..4).map(|i| (k >> i) & 1).collect()).unwrap()).collect();
    let irreducible = [vec![0, 1], vec![1, 1], vec![1, 1, 1]];
    for q in &irreducible {
        let q = Polynomial::new(f2, q.clone())?;
        for u in &all2 {
            for v in &all2 {
                pid_case(t, u, v, &q, false)?;
            }
        }
    }
    for i in 0..cases {
        let (p, n) = [(2, 3), (2, 4), (3, 2), (3, 3), (2, 5)][i % 5];
        let ring = field(p);
        let u = random_matrix(ring, n, rng);
        let factors = u.minpoly()?.factor()?;
        let q = factors[rng.gen_range(0..factors.len())].0.clone();
        // half the time v shares the structure of u
        let v = if i % 2 == 0 { conjugate(&random_invertible(ring, n, rng), &u)? } else { random_matrix(ring, n, rng) };
        pid_case(t, &u, &v, &q, true)?;
    }
    Ok(())
}

fn unip(t: &mut Tally, rng: &mut impl Rng, cases: usize) -> Result<()> {
    let check = |t: &mut Tally, a: &Matrix, random: bool| -> Result<()> {
        let ring = a.ring();
        let n = a.rows();
        let g = Group::holomorph(ring, n, &[a.clone()], CAP)?;
        let nilpotent = g.nilpotency_class(&g.whole()).is_some();
        let unipotent = a.minus_identity()?.pow(n as u64)?.is_zero();
        let p_power = is_p_power(a.order(1 << 40)?, ring.p());
        t.record(random, nilpotent == unipotent && unipotent == p_power, || format!("{a:?}"));
        Ok(())
    };
    for (p, n) in [(2, 2), (3, 2)] {
        for a in gl(p, n)? {
            check(t, &a, false)?;
        }
    }
    for i in 0..cases {
        let (p, n) = [(2, 3), (2, 4), (3, 2), (3, 3), (5, 2)][i % 5];
        let a = if i % 2 == 0 { random_unipotent(field(p), n, rng)? } else { random_invertible(field(p), n, rng) };
        check(t, &a, true)?;
    }
    Ok(())
}

fn lindo(t: &mut Tally, b: &mut ReportBuilder, rng: &mut impl Rng, cases: usize) -> Result<()> {
    for (p, scope) in [(2, LindoScope::All), (3, LindoScope::ClassRepresentatives)] {
        let r = verify_lindo(p, 2, scope, DEFAULT_BUDGET)?;
        b.result(&format!("gl2_{p}"), json!({"pairs": r.pairs, "isomorphic_pairs": r.isomorphic_pairs, "disagreements": r.disagreements.len()}));
        t.exhaustive += r.pairs;
        for (a, c) in r.disagreements {
            t.counterexamples.push(format!("{a:?} vs {c:?}"));
        }
    }
    for i in 0..cases {
        let (p, n) = [(2, 3), (5, 2), (3, 2), (2, 4)][i % 4];
        let ring = field(p);
        let a = random_invertible(ring, n, rng);
        let c = if i % 2 == 0 {
            // a conjugate of a generator of <a>
            let o = a.order(1 << 40)?;
            let k = loop {
                let k = rng.gen_range(1..o.max(2));
                if holoforge_core::ring::gcd(k, o) == 1 {
                    break k;
                }
            };
            conjugate(&random_invertible(ring, n, rng), &a.pow(k)?)?
        } else {
            random_invertible(ring, n, rng)
        };
        let linear = holomorph_isomorphic(&a, &c)?;
        let ga = Group::holomorph(ring, n, &[a.clone()], CAP)?;
        let gc = Group::holomorph(ring, n, &[c.clone()], CAP)?;
        let r = are_isomorphic(&ga, &gc, DEFAULT_BUDGET)?;
        let witnessed = r.witness.as_ref().map_or(true, |w| verify_isomorphism(&ga, &gc, w, WITNESS_SAMPLES, i as u64));
        if linear {
            t.hypothesis += 1;
        }
        t.record(true, linear == r.isomorphic && witnessed, || format!("{a:?} vs {c:?}"));
    }
    Ok(())
}

fn lindo2_case(t: &mut Tally, u: &Matrix, v: &Matrix, random: bool) -> Result<()> {
    let ring = u.ring();
    let n = u.rows();
    let (pu, pv) = (unipotent_partition(u)?, unipotent_partition(v)?);
    let rebuilt = pu.jordan_matrix(ring)?;
    let reconstruction = pu.dimension() == n && is_similar(u, &rebuilt)?;
    let gu = Group::holomorph(ring, n, &[u.clone()], CAP)?;
    let gv = Group::holomorph(ring, n, &[v.clone()], CAP)?;
    let same_fingerprint = fingerprint(&gu, CAP)? == fingerprint(&gv, CAP)?;
    let similar = is_similar(u, v)?;
    let decided = cyclic_conjugate_field(u, v)?.verdict == Verdict::Conjugate;
    if same_fingerprint {
        t.hypothesis += 1;
    }
    let ok = reconstruction && (!same_fingerprint || similar) && similar == (pu == pv) && decided == similar;
    t.record(random, ok, || format!("{u:?} vs {v:?}"));
    Ok(())
}

fn lindo2(t: &mut Tally, rng: &mut impl Rng, cases: usize) -> Result<()> {
    for (p, n) in [(2, 3), (3, 2)] {
        let unis: Vec<Matrix> =
            gl(p, n)?.into_iter().filter(|a| a.minus_identity().unwrap().pow(n as u64).unwrap().is_zero()).collect();
        for u in &unis {
            for v in &unis {
                lindo2_case(t, u, v, false)?;
            }
        }
    }
    for i in 0..cases {
        let (p, n) = [(2, 4), (2, 5), (3, 3), (2, 3)][i % 4];
        let ring = field(p);
        let u = random_unipotent(ring, n, rng)?;
        // conjugation-invariance of the partition
        let x = random_invertible(ring, n, rng);
        if unipotent_partition(&conjugate(&x, &u)?)? != unipotent_partition(&u)? {
            t.counterexamples.push(format!("partition not invariant: {u:?}"));
        }
        let v = if i % 2 == 0 { conjugate(&x, &u)? } else { random_unipotent(ring, n, rng)? };
        lindo2_case(t, &u, &v, true)?;
    }
    Ok(())
}

fn ring_of(g: &Group) -> RingSpec {
    match g.factors().expect("holomorph").0.construction() {
        Construction::Vector { ring, .. } => *ring,
        _ => unreachable!("holomorph bases are vector groups"),
    }
}

/// Ids of `(v, 1)` for `v` in the span of `vectors`, sorted.
fn base_span(g: &Group, vectors: &[Vec<u64>]) -> Result<Vec<Elem>> {
    let (base, _) = g.factors().expect("holomorph");
    let n = vectors.first().map_or(0, Vec::len);
    let span = howell_span(ring_of(g), n, vectors)?;
    let mut ids: Vec<Elem> = span.elements(CAP)?.iter().map(|v| g.pair(base.vector_id(v).expect("length n"), 0)).collect();
    ids.sort_unstable();
    Ok(ids)
}

const SMALL_RINGS: &[(u64, u32, usize)] = &[(2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 2), (5, 1, 2), (2, 3, 2), (3, 2, 2), (2, 1, 4)];

fn derived(t: &mut Tally, rng: &mut impl Rng, cases: usize) -> Result<()> {
    let check = |t: &mut Tally, a: &Matrix, random: bool| -> Result<()> {
        let g = Group::holomorph(a.ring(), a.rows(), &[a.clone()], CAP)?;
        let d = g.derived_subgroup(&g.whole());
        let expected = base_span(&g, &a.minus_identity()?.columns())?;
        t.record(random, d.elements() == &expected[..], || format!("{a:?}"));
        Ok(())
    };
    for (p, n) in [(2, 2), (3, 2)] {
        for a in gl(p, n)? {
            check(t, &a, false)?;
        }
    }
    for i in 0..cases {
        let (p, m, n) = SMALL_RINGS[i % SMALL_RINGS.len()];
        check(t, &random_invertible(RingSpec::new(p, m)?, n, rng), true)?;
    }
    Ok(())
}

fn lcs(t: &mut Tally, rng: &mut impl Rng, cases: usize) -> Result<()> {
    let check = |t: &mut Tally, a: &Matrix, random: bool| -> Result<()> {
        let g = Group::holomorph(a.ring(), a.rows(), &[a.clone()], CAP)?;
        let series = g.lower_central_series(&g.whole());
        let d = a.minus_identity()?;
        let mut power = d.clone();
        let mut ok = series.last().is_some_and(Subgroup::is_trivial);
        for term in &series[1..] {
            ok &= term.elements() == &base_span(&g, &power.columns())?[..];
            power = power.mul(&d)?;
        }
        ok &= power.is_zero();
        t.record(random, ok, || format!("{a:?}"));
        Ok(())
    };
    for (p, n) in [(2, 2), (3, 2), (2, 3)] {
        for a in gl(p, n)? {
            if a.minus_identity()?.pow(n as u64)?.is_zero() {
                check(t, &a, false)?;
            }
        }
    }
    for i in 0..cases {
        let (p, m, n) = SMALL_RINGS[i % SMALL_RINGS.len()];
        check(t, &random_unipotent(RingSpec::new(p, m)?, n, rng)?, true)?;
    }
    Ok(())
}

/// `GL_n(p)` as a matrix group, with its subgroups handled by element id.
struct Linear {
    ring: RingSpec,
    n: usize,
    group: Group,
}

impl Linear {
    fn new(p: u64, n: usize) -> Result<Linear> {
        let ring = field(p);
        let group = Group::matrix_closure(&general_linear(ring, n, CAP)?, CAP)?;
        Ok(Linear { ring, n, group })
    }

    fn holomorph(&self, s: &Subgroup) -> Result<Group> {
        let gens: Vec<Matrix> = s.generators().iter().map(|&e| self.group.matrix(e).expect("matrix group").clone()).collect();
        Ok(Group::holomorph(self.ring, self.n, &gens, CAP)?)
    }

    fn conjugate(&self, h: &Subgroup, k: &Subgroup) -> bool {
        h.order() == k.order()
            && self.group.elements().any(|x| h.generators().iter().all(|&y| k.contains(self.group.conj(x, y))))
    }

    fn random(&self, rng: &mut impl Rng, gens: usize) -> Subgroup {
        let xs: Vec<Elem> = (0..gens).map(|_| rng.gen_range(0..self.group.order()) as Elem).collect();
        self.group.subgroup(&xs)
    }

    fn random_conjugate(&self, rng: &mut impl Rng, s: &Subgroup) -> Subgroup {
        let x = rng.gen_range(0..self.group.order()) as Elem;
        let gens: Vec<Elem> = s.generators().iter().map(|&y| self.group.conj(x, y)).collect();
        self.group.subgroup(&gens)
    }

    /// `Σ_h (h-1)V = V`.
    fn moves_everything(&self, s: &Subgroup) -> Result<bool> {
        let mut cols = Vec::new();
        for &h in s.elements() {
            cols.extend(self.group.matrix(h).expect("matrix group").minus_identity()?.columns());
        }
        if cols.is_empty() {
            return Ok(false);
        }
        Ok(howell_span(self.ring, self.n, &cols)?.order() == Some(self.ring.modulus().pow(self.n as u32)))
    }
}

/// Oracle isomorphism of the holomorphs with the witness re-checked.
fn holomorphs_isomorphic(gl: &Linear, h: &Subgroup, k: &Subgroup) -> Result<bool> {
    let (gh, gk) = (gl.holomorph(h)?, gl.holomorph(k)?);
    let r = are_isomorphic(&gh, &gk, DEFAULT_BUDGET)?;
    if let Some(w) = &r.witness {
        if !verify_isomorphism(&gh, &gk, w, WITNESS_SAMPLES, 5) {
            return Err(Error::Invalid("oracle witness failed verification".into()));
        }
    }
    Ok(r.isomorphic)
}

fn coprime(gl: &Linear, s: &Subgroup) -> bool {
    s.order() as u64 % gl.ring.p() != 0
}

fn nicecase0(t: &mut Tally, rng: &mut impl Rng, cases: usize) -> Result<()> {
    let gl23 = Linear::new(3, 2)?;
    let subs: Vec<Subgroup> = gl23.group.all_subgroups(CAP)?.into_iter().filter(|s| coprime(&gl23, s)).collect();
    for (i, h) in subs.iter().enumerate() {
        for k in &subs[i..] {
            if h.order() != k.order() {
                continue;
            }
            let iso = holomorphs_isomorphic(&gl23, h, k)?;
            let conj = gl23.conjugate(h, k);
            if iso {
                t.hypothesis += 1;
            }
            t.record(false, iso == conj, || format!("GL_2(3) subgroups {:?} / {:?}", h.generators(), k.generators()));
        }
    }
    let groups = [Linear::new(2, 3)?, Linear::new(5, 2)?, gl23];
    let mut i = 0;
    while t.random < cases {
        let gl = &groups[i % groups.len()];
        i += 1;
        let h = gl.random(rng, 1 + i % 2);
        if !coprime(gl, &h) {
            t.bump("rejected_not_coprime");
            continue;
        }
        let k = if i % 2 == 0 {
            gl.random_conjugate(rng, &h)
        } else {
            match (0..20).map(|_| gl.random(rng, 1 + i % 2)).find(|k| k.order() == h.order()) {
                Some(k) => k,
                None => gl.random_conjugate(rng, &h),
            }
        };
        let iso = holomorphs_isomorphic(gl, &h, &k)?;
        let conj = gl.conjugate(&h, &k);
        if iso {
            t.hypothesis += 1;
        }
        t.record(true, iso == conj, || format!("GL_{}({}) subgroups {:?} / {:?}", gl.n, gl.ring.p(), h.generators(), k.generators()));
    }
    Ok(())
}

fn abelian(gl: &Linear, s: &Subgroup) -> bool {
    gl.group.is_abelian(s)
}

/// Random abelian subgroup: a cyclic group, possibly with a scalar adjoined.
fn random_abelian(gl: &Linear, rng: &mut impl Rng) -> Subgroup {
    let a = rng.gen_range(0..gl.group.order()) as Elem;
    if rng.gen_bool(0.5) {
        let c = rng.gen_range(1..gl.ring.p());
        let scalar = Matrix::identity(gl.ring, gl.n).scale(c);
        let s = gl.group.matrix_id(&scalar).expect("scalars are invertible");
        gl.group.subgroup(&[a, s])
    } else {
        gl.group.subgroup(&[a])
    }
}

fn suma(t: &mut Tally, rng: &mut impl Rng, cases: usize) -> Result<()> {
    let gl23 = Linear::new(3, 2)?;
    let subs: Vec<Subgroup> = gl23.group.all_subgroups(CAP)?.into_iter().filter(|s| abelian(&gl23, s)).collect();
    for h in &subs {
        if !gl23.moves_everything(h)? {
            continue;
        }
        for k in &subs {
            if h.order() != k.order() {
                continue;
            }
            let iso = holomorphs_isomorphic(&gl23, h, k)?;
            if iso {
                t.hypothesis += 1;
            }
            t.record(false, !iso || gl23.conjugate(h, k), || format!("GL_2(3) subgroups {:?} / {:?}", h.generators(), k.generators()));
        }
    }
    let groups = [Linear::new(5, 2)?, Linear::new(2, 3)?, gl23];
    let mut i = 0;
    while t.random < cases {
        let gl = &groups[i % groups.len()];
        i += 1;
        let h = random_abelian(gl, rng);
        if !gl.moves_everything(&h)? {
            t.bump("rejected_sum_not_everything");
            continue;
        }
        let k = if i % 2 == 0 {
            gl.random_conjugate(rng, &h)
        } else {
            match (0..20).map(|_| random_abelian(gl, rng)).find(|k| k.order() == h.order()) {
                Some(k) => k,
                None => gl.random_conjugate(rng, &h),
            }
        };
        let iso = holomorphs_isomorphic(gl, &h, &k)?;
        if iso {
            t.hypothesis += 1;
        }
        t.record(true, !iso || gl.conjugate(&h, &k), || format!("GL_{}({}) subgroups {:?} / {:?}", gl.n, gl.ring.p(), h.generators(), k.generators()));
    }
    Ok(())
}

fn invariants_of(gl: &Linear, s: &Subgroup) -> Result<Vec<u64>> {
    Ok(gl.group.abelian_invariants(s)?.divisors().to_vec())
}

fn abe(t: &mut Tally, b: &mut ReportBuilder, rng: &mut impl Rng, cases: usize) -> Result<()> {
    // the worked examples: e9 has abelian H, L; in e7 L is not abelian
    for p in [2, 3] {
        let r = crate::repro::e9(p, 6, CAP)?;
        t.record(false, r.pass, || format!("e9 at p = {p}"));
    }
    let e7 = crate::repro::e7(4, CAP)?;
    b.result("e7_applies", false);
    t.record(false, e7.pass, || "e7".into());

    let gl23 = Linear::new(3, 2)?;
    let subs: Vec<Subgroup> = gl23.group.all_subgroups(CAP)?.into_iter().filter(|s| abelian(&gl23, s)).collect();
    for (i, h) in subs.iter().enumerate() {
        for k in &subs[i..] {
            if h.order() != k.order() {
                continue;
            }
            let iso = holomorphs_isomorphic(&gl23, h, k)?;
            if iso {
                t.hypothesis += 1;
            }
            let same = invariants_of(&gl23, h)? == invariants_of(&gl23, k)?;
            t.record(false, !iso || same, || format!("GL_2(3) subgroups {:?} / {:?}", h.generators(), k.generators()));
        }
    }
    let groups = [Linear::new(5, 2)?, Linear::new(2, 3)?, Linear::new(7, 2)?];
    let mut i = 0;
    while t.random < cases {
        let gl = &groups[i % groups.len()];
        i += 1;
        let h = random_abelian(gl, rng);
        let k = if i % 2 == 0 {
            gl.random_conjugate(rng, &h)
        } else {
            match (0..20).map(|_| random_abelian(gl, rng)).find(|k| k.order() == h.order()) {
                Some(k) => k,
                None => gl.random_conjugate(rng, &h),
            }
        };
        if gl.ring.p().pow(gl.n as u32) as usize * h.order() > 4096 {
            t.bump("skipped_large");
            continue;
        }
        let iso = holomorphs_isomorphic(gl, &h, &k)?;
        if iso {
            t.hypothesis += 1;
        }
        let same = invariants_of(gl, &h)? == invariants_of(gl, &k)?;
        t.record(true, !iso || same, || format!("GL_{}({}) subgroups {:?} / {:?}", gl.n, gl.ring.p(), h.generators(), k.generators()));
    }
    Ok(())
}
