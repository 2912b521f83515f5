mod common;

use common::*;
use holoforge_core::conjugacy::*;
use holoforge_core::normal_forms::is_similar;
use holoforge_core::ring::gcd;
use holoforge_core::{Matrix, RingSpec};
use rand::Rng;

/// Conjugacy of cyclic subgroups by exhaustive search over the whole group:
/// some X in GL maps ⟨a⟩ onto ⟨b⟩ as sets.
fn brute_cyclic_conjugate(a: &Matrix, b: &Matrix, gl: &[Matrix]) -> bool {
    let cyc = |m: &Matrix| {
        let mut s = vec![Matrix::identity(m.ring(), m.rows())];
        let mut x = m.clone();
        while !x.is_identity() {
            s.push(x.clone());
            x = x.mul(m).unwrap();
        }
        s.sort();
        s
    };
    let hb = cyc(b);
    let ha = cyc(a);
    if ha.len() != hb.len() {
        return false;
    }
    gl.iter().any(|x| {
        let xi = x.inverse().unwrap();
        let mut img: Vec<Matrix> = ha.iter().map(|h| x.mul(h).unwrap().mul(&xi).unwrap()).collect();
        img.sort();
        img == hb
    })
}

#[test]
fn field_decision_matches_brute_force_on_small_groups() {
    for (p, n) in [(2u64, 2usize), (3, 2), (2, 3)] {
        let gl = general_linear(field(p), n);
        // all pairs for GL_2(2) and GL_2(3); every 5th element for GL_3(2)
        let sample: Vec<&Matrix> = if n == 3 { gl.iter().step_by(5).collect() } else { gl.iter().collect() };
        for a in &sample {
            for b in &sample {
                let d = cyclic_conjugate_field(a, b).unwrap();
                assert_ne!(d.verdict, Verdict::Unknown);
                let expect = brute_cyclic_conjugate(a, b, &gl);
                assert_eq!(d.verdict == Verdict::Conjugate, expect, "{a:?} {b:?}");
                if let Some(w) = &d.witness {
                    assert!(verify_witness(a, b, w).unwrap());
                    // smallest coprime exponent wins
                    for i in coprime_exponents(b.order(1000).unwrap()) {
                        if i == w.exponent {
                            break;
                        }
                        assert!(!is_similar(a, &b.pow(i).unwrap()).unwrap());
                    }
                } else {
                    assert!(d.separating_invariant.is_some());
                }
            }
        }
    }
}

#[test]
fn symmetry_on_gl22_and_random_gl23() {
    let gl = general_linear(field(2), 2);
    for a in &gl {
        for b in &gl {
            assert_eq!(cyclic_conjugate_field(a, b).unwrap().verdict, cyclic_conjugate_field(b, a).unwrap().verdict);
        }
    }
    let gl3 = general_linear(field(3), 2);
    let mut g = rng(11);
    for _ in 0..100 {
        let a = &gl3[g.gen_range(0..gl3.len())];
        let b = &gl3[g.gen_range(0..gl3.len())];
        assert_eq!(cyclic_conjugate_field(a, b).unwrap().verdict, cyclic_conjugate_field(b, a).unwrap().verdict);
    }
}

#[test]
fn holomorph_decision_on_examples() {
    let abar = matrix_a().reduce_mod_p();
    let bbar = matrix_b().reduce_mod_p();
    assert!(holomorph_isomorphic(&abar, &bbar).unwrap());
    let d = cyclic_conjugate_field(&abar, &bbar).unwrap();
    assert_eq!(d.witness.unwrap().exponent, 1);
    let j = Matrix::jordan_block(field(2), 2, 1);
    assert!(!holomorph_isomorphic(&j, &Matrix::identity(field(2), 2)).unwrap());
    let same = cyclic_conjugate_field(&abar, &abar).unwrap().witness.unwrap();
    assert_eq!(same.exponent, 1);
}

#[test]
fn determinant_refutes_a_against_b() {
    let d = cyclic_conjugate_ring(&matrix_a(), &matrix_b(), &RingSearch::default()).unwrap();
    assert_eq!(d.verdict, Verdict::NotConjugate);
    assert_eq!(d.separating_invariant, Some(SeparatingInvariant::Determinant { det_a: 7, det_powers: vec![3] }));
    // recompute the certificate independently
    for i in coprime_exponents(24) {
        assert_eq!(matrix_b().pow(i).unwrap().det().unwrap(), 3);
    }
}

#[test]
fn ring_self_and_planted_conjugacy() {
    let a = matrix_a();
    let d = cyclic_conjugate_ring(&a, &a, &RingSearch::default()).unwrap();
    assert_eq!(d.verdict, Verdict::Conjugate);
    assert_eq!(d.witness.as_ref().unwrap().exponent, 1);
    let mut g = rng(3);
    for _ in 0..5 {
        let x = random_invertible(z8(), 4, &mut g);
        let b = x.mul(&a).unwrap().mul(&x.inverse().unwrap()).unwrap();
        let d = cyclic_conjugate_ring(&a, &b, &RingSearch::default()).unwrap();
        assert_eq!(d.verdict, Verdict::Conjugate);
        assert!(verify_witness(&a, &b, d.witness.as_ref().unwrap()).unwrap());
        // planted power: b = X a^5 X^-1 generates the same subgroup
        let b5 = x.mul(&a.pow(5).unwrap()).unwrap().mul(&x.inverse().unwrap()).unwrap();
        let d = cyclic_conjugate_ring(&a, &b5, &RingSearch::default()).unwrap();
        assert_eq!(d.verdict, Verdict::Conjugate);
        let w = d.witness.unwrap();
        assert!(gcd(w.exponent, 24) == 1);
        assert_eq!(w.conjugator.mul(&a).unwrap(), b5.pow(w.exponent).unwrap().mul(&w.conjugator).unwrap());
    }
}

#[test]
fn external_witness_is_accepted_only_when_valid() {
    let a = matrix_a();
    let x = Matrix::from_rows(z8(), &[[1, 2, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]).unwrap();
    let b = x.mul(&a).unwrap().mul(&x.inverse().unwrap()).unwrap();
    let good = Witness { exponent: 1, conjugator: x.clone() };
    let opts = RingSearch { budget: 0, seed: 0, witness: Some(good.clone()) };
    let d = cyclic_conjugate_ring(&a, &b, &opts).unwrap();
    assert_eq!(d.witness, Some(good));
    let bad = Witness { exponent: 1, conjugator: Matrix::identity(z8(), 4) };
    let opts = RingSearch { budget: 0, seed: 0, witness: Some(bad) };
    let d = cyclic_conjugate_ring(&a, &b, &opts).unwrap();
    assert_eq!(d.verdict, Verdict::Unknown);
    assert!(d.budget_note.is_some());
}

/// Exhaustive cyclic-subgroup conjugacy in GL_2(Z/4Z) (96 elements).
#[test]
fn ring_decision_is_exact_on_gl2_z4() {
    let r = RingSpec::new(2, 2).unwrap();
    let gl = general_linear(r, 2);
    assert_eq!(gl.len(), 96);
    let mut g = rng(5);
    for _ in 0..150 {
        let a = &gl[g.gen_range(0..gl.len())];
        let b = &gl[g.gen_range(0..gl.len())];
        let d = cyclic_conjugate_ring(a, b, &RingSearch::default()).unwrap();
        assert_ne!(d.verdict, Verdict::Unknown);
        assert_eq!(d.verdict == Verdict::Conjugate, brute_cyclic_conjugate(a, b, &gl), "{a:?} {b:?}");
        // never contradicts the field decision on reductions
        let fd = cyclic_conjugate_field(&a.reduce_mod_p(), &b.reduce_mod_p()).unwrap();
        if fd.verdict == Verdict::NotConjugate {
            assert_eq!(d.verdict, Verdict::NotConjugate);
        }
    }
}

#[test]
fn ring_never_contradicts_field_on_random_z8_pairs() {
    let mut g = rng(9);
    for _ in 0..30 {
        let a = random_invertible(z8(), 3, &mut g);
        let b = random_invertible(z8(), 3, &mut g);
        let d = cyclic_conjugate_ring(&a, &b, &RingSearch { budget: 2000, ..RingSearch::default() }).unwrap();
        let fd = cyclic_conjugate_field(&a.reduce_mod_p(), &b.reduce_mod_p()).unwrap();
        if fd.verdict == Verdict::NotConjugate {
            assert_eq!(d.verdict, Verdict::NotConjugate);
        }
        if let Some(w) = &d.witness {
            assert!(verify_witness(&a, &b, w).unwrap());
        }
    }
}
