//! Scripted reproductions of the worked examples. Every checkable claim
//! becomes one assertion in the returned report.

use std::collections::{BTreeMap, BTreeSet};

use holoforge_core::conjugacy::{cyclic_conjugate_ring, RingSearch, SeparatingInvariant, Verdict};
use holoforge_core::echelon::rank;
use holoforge_core::group::*;
use holoforge_core::normal_forms::is_similar;
use holoforge_core::oracle::{
    admitting_report, are_isomorphic, induced_group, verify_isomorphism, AdmittingCaps, DEFAULT_BUDGET,
    WITNESS_SAMPLES,
};
use holoforge_core::span::howell_span;
use holoforge_core::{Matrix, RingSpec};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::data;
use crate::error::{Error, Result};
use crate::report::{ReportBuilder, RunReport};
use crate::spec::fingerprint_of;

pub const EXAMPLES: &[&str] = &["final", "e3", "e7", "e9", "e1", "e6a", "e6b", "e6c", "e6d"];

/// Optional size parameters; each example documents which it reads.
#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
pub struct Params {
    pub p: Option<u64>,
    pub n: Option<usize>,
    pub m: Option<usize>,
}

pub fn run_example(name: &str, params: Params, cap: usize) -> Result<RunReport> {
    match name {
        "final" => final_example(cap),
        "e3" => e3(params.p.unwrap_or(3), params.n.unwrap_or(2), cap),
        "e7" => e7(params.n.unwrap_or(4), cap),
        "e9" => e9(params.p.unwrap_or(2), params.n.unwrap_or(6), cap),
        "e1" => e1(params.p.unwrap_or(2), params.m.unwrap_or(2), cap),
        "e6a" => e6a(),
        "e6b" => e6b(cap),
        "e6c" => e6c(),
        "e6d" => e6d(params.n.unwrap_or(6)),
        _ => Err(Error::UnknownExample(name.into())),
    }
}

fn vec_el(g: &Group, v: &[u64]) -> Elem {
    let ring = base_ring(g).expect("holomorph");
    g.holomorph_element(v, &Matrix::identity(ring, v.len())).expect("vector of the base")
}

fn mat_el(g: &Group, m: &Matrix) -> Result<Elem> {
    g.holomorph_element(&vec![0; m.rows()], m).ok_or_else(|| Error::Invalid(format!("matrix not in the complement:\n{m}")))
}

fn base_ring(g: &Group) -> Option<RingSpec> {
    match g.factors()?.0.construction() {
        Construction::Vector { ring, .. } => Some(*ring),
        _ => None,
    }
}

fn unit(n: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn rows(m: &Matrix) -> Vec<Vec<u64>> {
    m.to_rows()
}

fn block(ring: RingSpec, top_left: &Matrix, top_right: &Matrix, bottom_right: &Matrix) -> Result<Matrix> {
    let (a, b) = (top_left.rows(), bottom_right.rows());
    let mut m = Matrix::zeros(ring, a + b, a + b);
    for i in 0..a {
        for j in 0..a {
            m.set(i, j, top_left.get(i, j));
        }
        for j in 0..b {
            m.set(i, a + j, top_right.get(i, j));
        }
    }
    for i in 0..b {
        for j in 0..b {
            m.set(a + i, a + j, bottom_right.get(i, j));
        }
    }
    Ok(m)
}

fn invariants(g: &Group, s: &Subgroup) -> Result<Vec<u64>> {
    Ok(g.abelian_invariants(s)?.divisors().to_vec())
}

/// Oracle check with an independently re-verified witness.
fn oracle_check(b: &mut ReportBuilder, name: &str, g: &Group, h: &Group, expect: bool) -> Result<()> {
    let r = are_isomorphic(g, h, DEFAULT_BUDGET)?;
    let verified = r.witness.as_ref().map(|w| verify_isomorphism(g, h, w, WITNESS_SAMPLES, 7));
    b.check(name, expect, r.isomorphic);
    if expect {
        b.check(format!("{name}: witness verified"), Some(true), verified);
    }
    Ok(())
}

pub fn final_example(cap: usize) -> Result<RunReport> {
    let mut b = ReportBuilder::new("example final", json!({"p": 2, "m": 3, "n": 4}));
    let a = data::matrix("final_a")?;
    let bm = data::matrix("final_b")?;
    let ring = a.ring();

    b.check("o(A) = 24", 24, a.order(1 << 20)?);
    for (k, name) in [(2, "final_a2"), (3, "final_a3"), (6, "final_a6"), (12, "final_a12")] {
        b.check(format!("A^{k} matches the displayed matrix"), rows(&data::matrix(name)?), rows(&a.pow(k)?));
    }
    let (abar, bbar) = (a.reduce_mod_p(), bm.reduce_mod_p());
    b.check("o(Ā) = 6", 6, abar.order(1 << 20)?);
    // (X+1)²(X²+X+1) = X⁴+X³+X+1 over F_2
    b.check("charpoly of Ā", vec![1, 1, 0, 1, 1], abar.charpoly()?.coeffs().to_vec());
    b.check("minpoly of Ā equals its charpoly", abar.charpoly()?.coeffs().to_vec(), abar.minpoly()?.coeffs().to_vec());
    b.check("minpoly of B̄ equals that of Ā", abar.minpoly()?.coeffs().to_vec(), bbar.minpoly()?.coeffs().to_vec());
    b.check("Ā is similar to B̄", true, is_similar(&abar, &bbar)?);
    b.check("det A = -1", 7, a.det()?);
    b.check("det B = 3", 3, bm.det()?);
    let decision = cyclic_conjugate_ring(&a, &bm, &RingSearch::default())?;
    b.check("<A> and <B> are not conjugate", Verdict::NotConjugate, decision.verdict);
    let cert_ok = matches!(
        &decision.separating_invariant,
        Some(SeparatingInvariant::Determinant { det_a: 7, det_powers }) if det_powers == &[3]
    );
    b.check_that(
        "separated by determinants of coprime powers",
        "det A = 7, every coprime power of B has det 3",
        decision.separating_invariant.as_ref().map(|s| s.to_string()),
        cert_ok,
    );
    let one = Matrix::identity(ring, 4);
    let am1 = a.minus_identity()?;
    b.check("(A^12 - 1)(A - 1) = 0", true, a.pow(12)?.sub(&one)?.mul(&am1)?.is_zero());

    let g = Group::holomorph(ring, 4, &[a.clone()], cap)?;
    b.check("|G| = 4096 · 24", 98304, g.order());
    let whole = g.whole();
    let derived = g.derived_subgroup(&whole);
    let f: Vec<Elem> = am1.columns().iter().map(|c| vec_el(&g, c)).collect();
    let span = howell_span(ring, 4, &am1.columns())?;
    let derived_in_span = derived.elements().iter().all(|&x| {
        let (v, t) = g.split(x);
        t == 0 && span.contains(&g.factors().unwrap().0.coords(v).unwrap())
    });
    b.check_that(
        "[G,G] is the span of the columns of A - 1",
        span.order(),
        Some(derived.order() as u64),
        derived_in_span && span.order() == Some(derived.order() as u64),
    );
    b.check("[G,G] ≅ C8^3 × C4", vec![8, 8, 8, 4], invariants(&g, &derived)?);
    b.check("orders of f1..f4", vec![4, 8, 8, 8], f.iter().map(|&x| g.element_order(x)).collect::<Vec<_>>());
    b.check("G/[G,G] ≅ C2 × C24", vec![24, 2], g.quotient_abelian(&derived)?.divisors().to_vec());

    let x = [ring.reduce(-1), 0, 0, 1];
    let y = g.holomorph_element(&x, &a.pow(12)?).ok_or_else(|| Error::Invalid("A^12 not in G".into()))?;
    b.check("y² = f1", f[0], g.mul(y, y));
    let mut w_gens = f.clone();
    w_gens.push(y);
    let w = g.subgroup(&w_gens);
    b.check("W is normal", true, g.is_normal(&whole, &w));
    b.check("W ≅ U", vec![8, 8, 8, 8], invariants(&g, &w)?);
    let q = Matrix::from_columns(ring, 4, &[x.to_vec(), am1.column(1), am1.column(2), am1.column(3)])?;
    b.check("x, f2, f3, f4 form an invertible matrix", true, q.is_invertible());
    let a_el = mat_el(&g, &a)?;
    let k = g.subgroup(&[a_el]);
    b.check("W ∩ <A> = 1", 1, k.elements().iter().filter(|&&e| w.contains(e)).count());
    let r = rebase(&g, &w_gens, &[y, f[1], f[2], f[3]], &[a_el])?;
    b.check("action of A on W in basis {y, f2, f3, f4} is B", vec![rows(&bm)], r.matrices.iter().map(rows).collect::<Vec<_>>());
    b.check("rebase map is onto Hol(U,B)", g.order(), r.target.order());

    let over = g.intermediate_subgroups(&derived, 2)?;
    b.check("normal subgroups containing [G,G] with index 2", 3, over.len());
    b.check("all of them normal", true, over.iter().all(|s| g.is_normal(&whole, s)));
    let u = g.subgroup(&(0..4).map(|i| vec_el(&g, &unit(4, i))).collect::<Vec<_>>());
    let mut mid_gens = f.clone();
    mid_gens.push(mat_el(&g, &a.pow(12)?)?);
    let mid = g.subgroup(&mid_gens);
    let found: BTreeSet<Vec<Elem>> = over.iter().map(|s| s.elements().to_vec()).collect();
    let named: BTreeSet<Vec<Elem>> = [&u, &mid, &w].iter().map(|s| s.elements().to_vec()).collect();
    b.check_that("they are U, [G,G] × <A^12> and W", "equal sets", found == named, found == named);
    let mid_inv = invariants(&g, &mid)?;
    b.check("[G,G] × <A^12> ≅ C8^3 × C4 × C2", vec![8, 8, 8, 4, 2], mid_inv.clone());
    b.check("U ≅ C8^4", vec![8, 8, 8, 8], invariants(&g, &u)?);
    b.check_that("[G,G] × <A^12> is not isomorphic to U", "different invariants", &mid_inv, mid_inv != vec![8, 8, 8, 8]);
    Ok(b.finish())
}

fn extend_identity(m: &Matrix, n: usize) -> Result<Matrix> {
    if n == m.rows() {
        return Ok(m.clone());
    }
    Ok(Matrix::direct_sum(&[m.clone(), Matrix::identity(m.ring(), n - m.rows())])?)
}

pub fn e3(p: u64, n: usize, cap: usize) -> Result<RunReport> {
    let mut b = ReportBuilder::new("example e3", json!({"p": p, "n": n}));
    if p % 2 == 0 || n < 2 {
        return Err(Error::Invalid("e3 needs an odd prime p and n >= 2".into()));
    }
    let ring = RingSpec::field(p)?;
    let load = |name: &str| -> Result<Matrix> { extend_identity(&data::matrix_over(name, ring)?, n) };
    let (a, bb, l1, l2) = (load("e3_a")?, load("e3_b")?, load("e3_l1")?, load("e3_l2")?);
    b.check("o(B) = p", p, bb.order(1 << 20)?);
    b.check("o(A) = 2", 2, a.order(1 << 20)?);
    b.check("A B A^-1 = B^-1", rows(&bb.inverse()?), rows(&a.mul(&bb)?.mul(&a.inverse()?)?));
    let g = Group::holomorph(ring, n, &[a.clone(), bb.clone()], cap)?;
    let (_, h) = g.factors().unwrap();
    b.check("H is dihedral of order 2p", true, h.order() as u64 == 2 * p && !h.is_abelian(&h.whole()));
    b.check("|Hol(V,H)| = p^n · 2p", p.pow(n as u32) * 2 * p, g.order() as u64);

    let v: Vec<Elem> = (0..n).map(|i| vec_el(&g, &unit(n, i))).collect();
    let b_el = mat_el(&g, &bb)?;
    let a_el = mat_el(&g, &a)?;
    let mut basis = vec![v[0], b_el];
    basis.extend_from_slice(&v[2..]);
    let k = g.subgroup(&[v[1], a_el]);
    let kg = induced_group(&g, &k);
    b.check("K is cyclic of order 2p", true, kg.order() as u64 == 2 * p && kg.elements().any(|x| kg.element_order(x) == 2 * p));
    let r = rebase(&g, &basis, &basis, &[v[1], a_el])?;
    b.check(
        "action of v2 and A on W in basis {v1, B, ...}",
        vec![rows(&l1), rows(&l2)],
        r.matrices.iter().map(rows).collect::<Vec<_>>(),
    );
    let gl = Group::holomorph(ring, n, &r.matrices, cap)?;
    let (_, l) = gl.factors().unwrap();
    b.check("L is cyclic of order 2p", true, l.order() as u64 == 2 * p && l.is_abelian(&l.whole()));
    let (fh, fl) = (fingerprint_of(h)?, fingerprint_of(l)?);
    b.check_that("H ≇ L (fingerprints differ)", "different", (&fh.order_histogram, &fl.order_histogram), fh != fl);
    oracle_check(&mut b, "Hol(V,H) ≅ Hol(V,L) by the oracle", &g, &gl, true)?;
    b.check("rebase map verified", true, verify_isomorphism(&g, &r.target, &r.map, WITNESS_SAMPLES, 11));
    Ok(b.finish())
}

pub fn e7(n: usize, cap: usize) -> Result<RunReport> {
    let mut b = ReportBuilder::new("example e7", json!({"p": 2, "n": n}));
    if n < 4 {
        return Err(Error::Invalid("e7 needs n >= 4".into()));
    }
    let ring = RingSpec::field(2)?;
    let load = |name: &str| -> Result<Matrix> { extend_identity(&data::matrix(name)?, n) };
    let (x, y, z, l1, l2) = (load("e7_x")?, load("e7_y")?, load("e7_z")?, load("e7_l1")?, load("e7_l2")?);
    let g = Group::holomorph(ring, n, &[x.clone(), y.clone(), z.clone()], cap)?;
    let (_, h) = g.factors().unwrap();
    b.check("H ≅ C2^3", vec![2, 2, 2], h.abelian_invariants(&h.whole())?.divisors().to_vec());
    b.check("|Hol(V,H)| = 2^n · 8", 8usize << n, g.order());
    let mut e14 = unit(n, 0);
    e14[3] = 1;
    let mut e23 = unit(n, 1);
    e23[2] = 1;
    let mut basis = vec![vec_el(&g, &e14), vec_el(&g, &e23), mat_el(&g, &x)?, mat_el(&g, &z)?];
    basis.extend((4..n).map(|i| vec_el(&g, &unit(n, i))));
    let kgens = [vec_el(&g, &unit(n, 0)), mat_el(&g, &y)?];
    let k = g.subgroup(&kgens);
    b.check("K ≅ D8", true, are_isomorphic(&induced_group(&g, &k), &dihedral(4)?, DEFAULT_BUDGET)?.isomorphic);
    let r = rebase(&g, &basis, &basis, &kgens)?;
    b.check(
        "action of v1 and Y on W in basis {v1+v4, v2+v3, X, Z, ...}",
        vec![rows(&l1), rows(&l2)],
        r.matrices.iter().map(rows).collect::<Vec<_>>(),
    );
    let gl = Group::holomorph(ring, n, &r.matrices, cap)?;
    let (_, l) = gl.factors().unwrap();
    b.check("L ≅ D8", true, are_isomorphic(l, &dihedral(4)?, DEFAULT_BUDGET)?.isomorphic);
    let (fh, fl) = (fingerprint_of(h)?, fingerprint_of(l)?);
    b.check_that("H ≇ L (fingerprints differ)", "different", (&fh.center_order, &fl.center_order), fh != fl);
    oracle_check(&mut b, "Hol(V,H) ≅ Hol(V,L) by the oracle", &g, &gl, true)?;
    b.check("rebase map verified", true, verify_isomorphism(&g, &r.target, &r.map, WITNESS_SAMPLES, 13));
    Ok(b.finish())
}

fn s_matrix(ring: RingSpec, a: &Matrix) -> Result<Matrix> {
    let k = a.rows();
    block(ring, &Matrix::identity(ring, k), a, &Matrix::identity(ring, k))
}

pub fn e9(p: u64, n: usize, cap: usize) -> Result<RunReport> {
    if n != 6 {
        return Err(Error::Invalid("e9 is reproduced for n = 6 only".into()));
    }
    let mut b = ReportBuilder::new("example e9", json!({"p": p, "n": n}));
    let ring = RingSpec::field(p)?;
    let am: Vec<Matrix> = ["e9_a1", "e9_a2", "e9_a3"].iter().map(|s| data::matrix_over(s, ring)).collect::<Result<_>>()?;
    let bm: Vec<Matrix> = ["e9_b1", "e9_b2", "e9_b3"].iter().map(|s| data::matrix_over(s, ring)).collect::<Result<_>>()?;
    // B_i is minus the matrix whose columns are the i-th columns of A_1, A_2, A_3
    let derived_b: Vec<Matrix> = (0..3)
        .map(|i| Ok(Matrix::from_columns(ring, 3, &am.iter().map(|a| a.column(i)).collect::<Vec<_>>())?.scale(ring.reduce(-1))))
        .collect::<Result<_>>()?;
    b.check("B_i from the columns of A_1, A_2, A_3", bm.iter().map(rows).collect::<Vec<_>>(), derived_b.iter().map(rows).collect::<Vec<_>>());
    let sa: Vec<Matrix> = am.iter().map(|a| s_matrix(ring, a)).collect::<Result<_>>()?;
    let sb: Vec<Matrix> = bm.iter().map(|a| s_matrix(ring, a)).collect::<Result<_>>()?;
    let g = Group::holomorph(ring, 6, &sa, cap)?;
    let gl = Group::holomorph(ring, 6, &sb, cap)?;
    let (_, h) = g.factors().unwrap();
    let (_, l) = gl.factors().unwrap();
    let elementary = vec![p; 3];
    b.check("H ≅ C_p^3", &elementary, h.abelian_invariants(&h.whole())?.divisors().to_vec());
    b.check("L ≅ C_p^3", &elementary, l.abelian_invariants(&l.whole())?.divisors().to_vec());

    for (name, grp) in [("Hol(V,H)", &g), ("Hol(V,L)", &gl)] {
        let z = grp.center(&grp.whole());
        let v123 = grp.subgroup(&(0..3).map(|i| vec_el(grp, &unit(6, i))).collect::<Vec<_>>());
        b.check(format!("center of {name} is <v1, v2, v3>"), v123.elements().to_vec(), z.elements().to_vec());
    }

    let v: Vec<Elem> = (0..6).map(|i| vec_el(&g, &unit(6, i))).collect();
    let mut basis = v[..3].to_vec();
    for s in &sa {
        basis.push(mat_el(&g, s)?);
    }
    let r = rebase(&g, &basis, &basis, &v[3..])?;
    b.check("action of v4, v5, v6 is S_B1, S_B2, S_B3", sb.iter().map(rows).collect::<Vec<_>>(), r.matrices.iter().map(rows).collect::<Vec<_>>());

    let span_ranks = |gens: &[Matrix]| -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for c in 0..p.pow(3) {
            let (c0, c1, c2) = (c % p, (c / p) % p, c / (p * p));
            let t = gens[0].scale(c0).add(&gens[1].scale(c1))?.add(&gens[2].scale(c2))?;
            out.push(rank(&t)?);
        }
        Ok(out)
    };
    let rl = span_ranks(&bm)?;
    let rh = span_ranks(&am)?;
    b.check("every matrix in T_L has rank at most 2", 2, rl.iter().copied().max().unwrap_or(0));
    b.check("T_H contains a matrix of rank 3", 3, rh.iter().copied().max().unwrap_or(0));
    let (fg, fgl) = (fingerprint_of(&g)?, fingerprint_of(&gl)?);
    b.check("holomorph fingerprints agree", true, fg == fgl);
    b.check("rebase map verified", true, verify_isomorphism(&g, &r.target, &r.map, WITNESS_SAMPLES, 17));
    if g.order() <= 2000 {
        oracle_check(&mut b, "Hol(V,H) ≅ Hol(V,L) by the oracle", &g, &gl, true)?;
    } else {
        b.result("oracle", format!("skipped at order {}", g.order()));
    }
    Ok(b.finish())
}

/// `Hol(F_p^{2m}, J_2(1) ⊕ … ⊕ J_2(1))` with `x = v_2` and `y` the matrix.
pub fn e1(p: u64, m: usize, cap: usize) -> Result<RunReport> {
    let mut b = ReportBuilder::new("example e1", json!({"p": p, "m": m}));
    if m < 2 {
        return Err(Error::Invalid("e1 needs m >= 2".into()));
    }
    let ring = RingSpec::field(p)?;
    let n = 2 * m;
    let alpha = Matrix::direct_sum(&vec![Matrix::jordan_block(ring, 2, 1); m])?;
    let g = Group::holomorph(ring, n, &[alpha.clone()], cap)?;
    b.check("|G| = p^(2m+1)", p.pow(2 * m as u32 + 1), g.order() as u64);
    let whole = g.whole();
    let z = g.center(&whole);
    let odd = g.subgroup(&(0..m).map(|i| vec_el(&g, &unit(n, 2 * i))).collect::<Vec<_>>());
    b.check("Z(G) = <x1, x3, ...>", odd.elements().to_vec(), z.elements().to_vec());
    let x = vec_el(&g, &unit(n, 1));
    let y = mat_el(&g, &alpha)?;
    b.check("o(x) = o(y) = p", (p, p), (g.element_order(x), g.element_order(y)));
    let meets_center = |e: Elem| (1..p).any(|i| z.contains(g.pow(e, i)));
    b.check("<x> ∩ Z(G) = 1 = <y> ∩ Z(G)", (false, false), (meets_center(x), meets_center(y)));
    let cx: BTreeSet<usize> = (1..p).map(|i| g.centralizer(&whole, g.pow(x, i)).order()).collect();
    let cy: BTreeSet<usize> = z.elements().iter().map(|&c| g.centralizer(&whole, g.mul(y, c)).order()).collect();
    b.check("|C(x^i)| = p^(2m)", vec![p.pow(n as u32) as usize], cx.into_iter().collect::<Vec<_>>());
    b.check("|C(yz)| = p^(m+1)", vec![p.pow(m as u32 + 1) as usize], cy.into_iter().collect::<Vec<_>>());

    let ix = inner_automorphism(&g, x);
    let iy = inner_automorphism(&g, y);
    let gc = direct_product(&g, &cyclic(p as usize)?)?;
    let hx = semidirect(&g, &[ix.clone()], cap)?;
    let hy = semidirect(&g, &[iy.clone()], cap)?;
    oracle_check(&mut b, "Hol(G, i(x)) ≅ G × C_p", &hx, &gc, true)?;
    oracle_check(&mut b, "Hol(G, i(y)) ≅ G × C_p", &hy, &gc, true)?;

    let auts = automorphism_group(&g, cap)?;
    let powers_y: Vec<Permutation> = (1..p).map(|k| inner_automorphism(&g, g.pow(y, k))).collect();
    let mut conjugators = 0;
    for phi in &auts {
        let mut inv = vec![0; phi.len()];
        for (i, &t) in phi.iter().enumerate() {
            inv[t as usize] = i as Elem;
        }
        // φ ∘ i(x) ∘ φ⁻¹
        let c: Permutation = (0..phi.len()).map(|t| phi[ix[inv[t] as usize] as usize]).collect();
        if powers_y.contains(&c) {
            conjugators += 1;
        }
    }
    b.result("aut_order", auts.len());
    b.check("no automorphism conjugates <i(x)> to <i(y)>", 0, conjugators);

    if p == 2 && m == 2 {
        // the same group as a Sylow 2-subgroup of GL_2(Z/4)
        let mats: Vec<Matrix> = ["e1_a", "e1_b", "e1_c", "e1_d", "e1_e"].iter().map(|s| data::matrix(s)).collect::<Result<_>>()?;
        let n_gens = &mats[1..];
        let kernel = Group::matrix_closure(n_gens, cap)?;
        b.check("N ≅ C2^4", vec![2, 2, 2, 2], kernel.abelian_invariants(&kernel.whole())?.divisors().to_vec());
        let conj = |m: &Matrix| -> Result<Matrix> { Ok(mats[0].mul(m)?.mul(&mats[0].inverse()?)?) };
        let (bb, cc, dd, ee) = (&mats[1], &mats[2], &mats[3], &mats[4]);
        b.check(
            "A-conjugation: B ↦ BC, C ↦ C, D ↦ DE, E ↦ E",
            vec![rows(&bb.mul(cc)?), rows(cc), rows(&dd.mul(ee)?), rows(ee)],
            vec![rows(&conj(bb)?), rows(&conj(cc)?), rows(&conj(dd)?), rows(&conj(ee)?)],
        );
        let sylow = Group::matrix_closure(&mats, cap)?;
        oracle_check(&mut b, "G ≅ <A, B, C, D, E> ≤ GL_2(Z/4)", &g, &sylow, true)?;
    }
    Ok(b.finish())
}

pub fn e6a() -> Result<RunReport> {
    let mut b = ReportBuilder::new("example e6a", json!({"p": 2, "n": 2}));
    let v = vector_group(RingSpec::field(2)?, 2, 1 << 10)?;
    let r = admitting_report(&v, &AdmittingCaps::default())?;
    b.check("|GL_2(2)| = 6", 6, r.aut_order);
    let gl = Group::matrix_closure(&holoforge_core::oracle::general_linear(RingSpec::field(2)?, 2, 1 << 10)?, 1 << 10)?;
    b.check("GL_2(2) ≅ S3", true, are_isomorphic(&gl, &dihedral(3)?, DEFAULT_BUDGET)?.isomorphic);
    let proper_cyclic = gl.all_subgroups(1 << 10)?.iter().filter(|s| s.order() < 6).all(|s| {
        let sg = induced_group(&gl, s);
        sg.elements().any(|x| sg.element_order(x) as usize == sg.order())
    });
    b.check("every proper subgroup is cyclic", true, proper_cyclic);
    b.result("subgroup_classes", r.classes.len());
    b.check("F_2^2 is non-admitting", false, r.admitting);
    Ok(b.finish())
}

fn classes_by_order(r: &holoforge_core::oracle::AdmittingReport) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for c in &r.classes {
        *m.entry(c.order).or_insert(0) += 1;
    }
    m
}

pub fn e6b(cap: usize) -> Result<RunReport> {
    let mut b = ReportBuilder::new("example e6b", json!({"p": 2, "n": 3}));
    let f2 = RingSpec::field(2)?;
    let v = vector_group(f2, 3, 1 << 10)?;
    let r = admitting_report(&v, &AdmittingCaps::default())?;
    b.check("|GL_3(2)| = 168", 168, r.aut_order);
    let counts = classes_by_order(&r);
    let repeated: BTreeMap<usize, usize> = counts.iter().filter(|(_, &c)| c > 1).map(|(&o, &c)| (o, c)).collect();
    b.check("orders with several classes of subgroups", BTreeMap::from([(4, 3), (12, 2), (24, 2)]), repeated);
    // explicit subgroups H, K, J of order 4
    let e = |i: usize, j: usize| -> Matrix {
        let mut m = Matrix::identity(f2, 3);
        m.set(i, j, 1);
        m
    };
    let hk = [vec![e(0, 2), e(1, 2)], vec![e(0, 1), e(0, 2)], vec![data::matrix("e6_j")?]];
    let mut hols = Vec::new();
    let mut stats = Vec::new();
    for gens in &hk {
        let g = Group::holomorph(f2, 3, gens, cap)?;
        let w = g.whole();
        stats.push((g.derived_subgroup(&w).order(), g.nilpotency_class(&w)));
        hols.push(g);
    }
    b.check("(|[G_i,G_i]|, class) for H, K, J", vec![(4, Some(2)), (2, Some(2)), (4, Some(3))], stats.clone());
    let from_report: BTreeSet<(usize, Option<usize>)> =
        r.classes.iter().filter(|c| c.order == 4).map(|c| (c.holomorph.derived_orders[1], c.holomorph.nilpotency_class)).collect();
    b.check("the three order-4 classes are H, K, J", stats.iter().copied().collect::<BTreeSet<_>>(), from_report);
    for i in 0..3 {
        for j in i + 1..3 {
            oracle_check(&mut b, &format!("G_{} ≇ G_{}", i + 1, j + 1), &hols[i], &hols[j], false)?;
        }
    }

    // orders 24 and 12: A acting on <v1, v2> with a column u, or on <v2, v3> with a row w
    let c = data::matrix("e6_c")?;
    let gl2 = holoforge_core::oracle::general_linear(f2, 2, 1 << 10)?;
    let one = Matrix::identity(f2, 1);
    let zero_col = Matrix::zeros(f2, 2, 1);
    let zero_row = Matrix::zeros(f2, 1, 2);
    let id2 = Matrix::identity(f2, 2);
    for (order, tops) in [(24, gl2.clone()), (12, vec![c.clone()])] {
        let mut h = Vec::new();
        let mut k = Vec::new();
        for a in &tops {
            h.push(block(f2, a, &zero_col, &one)?);
            k.push(block(f2, &one, &zero_row, a)?);
        }
        for i in 0..2 {
            let mut u = Matrix::zeros(f2, 2, 1);
            u.set(i, 0, 1);
            h.push(block(f2, &id2, &u, &one)?);
            let mut w = Matrix::zeros(f2, 1, 2);
            w.set(0, i, 1);
            k.push(block(f2, &one, &w, &id2)?);
        }
        let g1 = Group::holomorph(f2, 3, &h, cap)?;
        let g2 = Group::holomorph(f2, 3, &k, cap)?;
        let (_, th) = g1.factors().unwrap();
        let (_, tk) = g2.factors().unwrap();
        b.check(format!("|H| = |K| = {order}"), (order, order), (th.order(), tk.order()));
        let d1 = g1.derived_subgroup(&g1.whole()).order();
        let d2 = g2.derived_subgroup(&g2.whole()).order();
        // [V ⋊ T, V ⋊ T] = [V,T] ⋊ [T,T], with [V,T] spanned by the columns of t - 1
        let expected = |g: &Group, gens: &[Matrix]| -> Result<usize> {
            let (_, t) = g.factors().unwrap();
            let cols: Vec<Vec<u64>> = gens.iter().map(|m| Ok(m.minus_identity()?.columns())).collect::<Result<Vec<_>>>()?.concat();
            let vt = howell_span(f2, 3, &cols)?.order().unwrap_or(0) as usize;
            Ok(vt * t.derived_subgroup(&t.whole()).order())
        };
        b.check(format!("order {order}: |[G,G]| = |[V,T]|·|[T,T]|"), (expected(&g1, &h)?, expected(&g2, &k)?), (d1, d2));
        b.check_that(format!("order {order}: derived subgroup orders differ"), "different", (d1, d2), d1 != d2);
        let from_report: BTreeSet<usize> = r.classes.iter().filter(|c| c.order == order).map(|c| c.holomorph.derived_orders[1]).collect();
        b.check(format!("order {order}: the two classes have these derived orders"), BTreeSet::from([d1, d2]), from_report);
    }
    b.check("F_2^3 is non-admitting", false, r.admitting);
    b.result("subgroup_classes", r.classes.len());
    Ok(b.finish())
}

pub fn e6c() -> Result<RunReport> {
    let mut b = ReportBuilder::new("example e6c", json!({"order": 8}));
    let f2 = RingSpec::field(2)?;
    let groups = [
        ("C8", cyclic(8)?),
        ("C4 x C2", direct_product(&cyclic(4)?, &cyclic(2)?)?),
        ("C2^3", vector_group(f2, 3, 1 << 10)?),
        ("D8", dihedral(4)?),
        ("Q8", quaternion(2)?),
    ];
    for (name, g) in &groups {
        let r = admitting_report(g, &AdmittingCaps::default())?;
        b.check(format!("{name} is non-admitting (|Aut| = {})", r.aut_order), false, r.admitting);
    }
    Ok(b.finish())
}

/// Cyclic `p`-groups up to order 64.
pub fn e6d(max_n: usize) -> Result<RunReport> {
    let caps = AdmittingCaps::default();
    let mut b = ReportBuilder::new("example e6d", json!({"max_order": caps.group_order, "max_n": max_n}));
    let mut unverified = Vec::new();
    for p in [2usize, 3, 5, 7] {
        for n in 1..=max_n {
            let order = p.pow(n as u32);
            if order > caps.group_order {
                if p == 2 {
                    unverified.push(order);
                }
                continue;
            }
            let r = admitting_report(&cyclic(order)?, &caps)?;
            b.check(format!("C{order} is non-admitting"), false, r.admitting);
        }
    }
    b.result("cap", caps.group_order);
    b.result("unverified_orders", unverified);
    Ok(b.finish())
}
