mod common;

use common::*;
use holoforge_core::normal_forms::*;
use holoforge_core::{Error, Matrix, Polynomial, RingSpec};
use proptest::prelude::*;
use rand::Rng;

fn f2() -> RingSpec {
    field(2)
}

/// Conjugacy classes of `M_n(F_p)` under `GL_n(F_p)`, by orbit enumeration.
fn brute_classes(r: RingSpec, n: usize) -> Vec<Vec<Matrix>> {
    let gl: Vec<(Matrix, Matrix)> = general_linear(r, n).into_iter().map(|x| {
        let inv = x.inverse().unwrap();
        (x, inv)
    }).collect();
    let mut seen = std::collections::HashSet::new();
    let mut classes = Vec::new();
    for a in all_matrices(r, n) {
        if seen.contains(&a) {
            continue;
        }
        let mut orbit: Vec<Matrix> = gl.iter().map(|(x, xi)| x.mul(&a).unwrap().mul(xi).unwrap()).collect();
        orbit.sort();
        orbit.dedup();
        for b in &orbit {
            seen.insert(b.clone());
        }
        classes.push(orbit);
    }
    classes
}

#[test]
fn similarity_matches_orbit_oracle_exhaustively() {
    for (p, n) in [(2u64, 2usize), (3, 2), (2, 3)] {
        let r = field(p);
        let classes = brute_classes(r, n);
        let reps: Vec<&Matrix> = classes.iter().map(|c| &c[0]).collect();
        // within a class: same form; across classes: different forms
        let mut forms = std::collections::HashSet::new();
        for class in &classes {
            let form = rcf(&class[0]).unwrap().form;
            for b in class.iter().step_by(7) {
                assert_eq!(rcf(b).unwrap().form, form);
            }
            assert!(forms.insert(form), "two classes share a rational form");
        }
        for (i, a) in reps.iter().enumerate() {
            for (j, b) in reps.iter().enumerate() {
                assert_eq!(is_similar(a, b).unwrap(), i == j);
            }
        }
    }
}

#[test]
fn class_counts_of_small_matrix_algebras() {
    // numbers of similarity classes in M_n(F_q): q^2+q for n=2, q^3+q^2+q for n=3
    assert_eq!(brute_classes(field(2), 2).len(), 6);
    assert_eq!(brute_classes(field(3), 2).len(), 12);
    assert_eq!(brute_classes(field(2), 3).len(), 14);
}

#[test]
fn example_invariant_factors() {
    let abar = matrix_a().reduce_mod_p();
    let inv = invariant_factors(&abar).unwrap();
    assert_eq!(inv.factors(), &[Polynomial::from_i64(f2(), &[1, 1, 0, 1, 1]).unwrap()]);
    let x1 = Polynomial::from_i64(f2(), &[1, 1]).unwrap();
    assert_eq!(invariant_factors(&Matrix::identity(f2(), 3)).unwrap().factors(), &[x1.clone(), x1.clone(), x1.clone()]);
    let j = Matrix::direct_sum(&[Matrix::jordan_block(f2(), 2, 1), Matrix::jordan_block(f2(), 1, 1)]).unwrap();
    assert_eq!(invariant_factors(&j).unwrap().factors(), &[x1.clone(), x1.pow(2)]);
    assert_eq!(invariant_factors(&matrix_a()), Err(Error::NotField));
    let rect = Matrix::zeros(f2(), 2, 3);
    assert_eq!(invariant_factors(&rect), Err(Error::NotSquare));
}

#[test]
fn example_rcf() {
    let f = Polynomial::from_i64(f2(), &[1, 1, 1]).unwrap();
    let c = f.companion().unwrap();
    let r = rcf(&c).unwrap();
    assert_eq!(r.form, c);
    let abar = matrix_a().reduce_mod_p();
    let r = rcf(&abar).unwrap();
    assert_eq!(r.form, Polynomial::from_i64(f2(), &[1, 1, 0, 1, 1]).unwrap().companion().unwrap());
    assert_eq!(rcf(&r.form).unwrap().form, r.form);
}

#[test]
fn example_similarity() {
    let abar = matrix_a().reduce_mod_p();
    let bbar = matrix_b().reduce_mod_p();
    assert!(is_similar(&abar, &bbar).unwrap());
    let x = similarity_witness(&abar, &bbar).unwrap();
    assert_eq!(x.mul(&abar).unwrap().mul(&x.inverse().unwrap()).unwrap(), bbar);
    let j2 = Matrix::jordan_block(f2(), 2, 1);
    let i2 = Matrix::identity(f2(), 2);
    assert!(!is_similar(&j2, &i2).unwrap());
    assert_eq!(similarity_witness(&j2, &i2), Err(Error::NotSimilar));
    assert!(similarity_witness(&abar, &abar).unwrap().is_invertible());
    assert!(!is_similar(&i2, &Matrix::identity(f2(), 3)).unwrap());
    assert_eq!(is_similar(&i2, &Matrix::identity(field(3), 2)), Err(Error::RingMismatch));
}

#[test]
fn example_regularity() {
    let abar = matrix_a().reduce_mod_p();
    let c = Polynomial::from_i64(f2(), &[1, 1, 1]).unwrap().companion().unwrap();
    let j2 = Matrix::jordan_block(f2(), 2, 1);
    assert!(!is_p_regular(&abar).unwrap());
    assert!(is_p_regular(&c).unwrap());
    assert!(is_p_regular(&Matrix::identity(field(3), 4)).unwrap());
    assert!(frobenius_power_similar(&c).unwrap());
    assert!(!frobenius_power_similar(&j2).unwrap());
    assert!(!frobenius_power_similar(&abar).unwrap());
    assert!(!is_similar(&abar, &abar.pow(2).unwrap()).unwrap());
    assert_eq!(is_p_regular(&Matrix::zeros(f2(), 2, 2)), Err(Error::NotInvertible));
}

#[test]
fn example_restrictions() {
    let abar = matrix_a().reduce_mod_p();
    let basis = image_basis(&abar.minus_identity().unwrap()).unwrap();
    assert_eq!(basis.len(), 3);
    let r = restriction(&abar, &basis).unwrap();
    assert_eq!((r.rows(), r.cols()), (3, 3));
    let e: Vec<Vec<u64>> = Matrix::identity(f2(), 4).columns();
    assert_eq!(restriction(&abar, &e).unwrap(), abar);
    let j3 = Matrix::jordan_block(f2(), 3, 1);
    assert!(restriction(&j3, &[vec![1, 0, 0]]).unwrap().is_identity());
    assert_eq!(restriction(&j3, &[vec![0, 0, 1]]), Err(Error::NotInvariant));
    assert_eq!(restriction(&j3, &[vec![1, 0, 0], vec![1, 0, 0]]), Err(Error::NotIndependent));
}

#[test]
fn example_partitions() {
    assert_eq!(unipotent_partition(&Matrix::identity(f2(), 4)).unwrap().multiplicities(), &[4]);
    let j = Matrix::direct_sum(&[Matrix::jordan_block(f2(), 3, 1), Matrix::jordan_block(f2(), 1, 1)]).unwrap();
    assert_eq!(unipotent_partition(&j).unwrap().multiplicities(), &[1, 0, 1]);
    let f3 = field(3);
    let jj = Matrix::direct_sum(&[Matrix::jordan_block(f3, 2, 1), Matrix::jordan_block(f3, 2, 1)]).unwrap();
    let mut g = rng(7);
    for _ in 0..20 {
        let x = random_invertible(f3, 4, &mut g);
        let c = x.mul(&jj).unwrap().mul(&x.inverse().unwrap()).unwrap();
        assert_eq!(unipotent_partition(&c).unwrap().multiplicities(), &[0, 2]);
    }
    let c = Polynomial::from_i64(f2(), &[1, 1, 1]).unwrap().companion().unwrap();
    assert_eq!(unipotent_partition(&c), Err(Error::NotUnipotent));
}

#[test]
fn similar_to_frobenius_power_iff_p_regular_exhaustive() {
    for p in [2u64, 3] {
        for a in general_linear(field(p), 2) {
            let o = a.order(1000).unwrap();
            let reg = is_p_regular(&a).unwrap();
            assert_eq!(reg, o % p != 0);
            assert_eq!(frobenius_power_similar(&a).unwrap(), reg, "{:?}", a);
        }
    }
}

#[test]
fn unipotence_equals_p_power_order() {
    // for invertible a over F_p: (a-1)^n = 0 iff o(a) is a power of p
    for (p, n) in [(2u64, 2usize), (3, 2), (2, 3)] {
        for a in general_linear(field(p), n) {
            let mut o = a.order(1000).unwrap();
            while o % p == 0 {
                o /= p;
            }
            assert_eq!(unipotent_partition(&a).is_ok(), o == 1);
        }
    }
}

fn field_strategy() -> impl Strategy<Value = RingSpec> {
    prop_oneof![Just(field(2)), Just(field(3))]
}

fn square_over_field(max_n: usize) -> impl Strategy<Value = Matrix> {
    (field_strategy(), 1..=max_n).prop_flat_map(|(r, n)| {
        proptest::collection::vec(0..r.modulus(), n * n).prop_map(move |d| Matrix::new(r, n, n, d).unwrap())
    })
}

/// A random matrix built to have repeated structure, so that non-cyclic and
/// unipotent cases actually come up.
fn structured(r: RingSpec, n: usize, g: &mut impl Rng) -> Matrix {
    let mut blocks = Vec::new();
    let mut left = n;
    while left > 0 {
        let size = g.gen_range(1..=left);
        let eig = g.gen_range(0..r.modulus());
        blocks.push(Matrix::jordan_block(r, size, eig));
        left -= size;
    }
    let d = Matrix::direct_sum(&blocks).unwrap();
    let x = random_invertible(r, n, g);
    x.mul(&d).unwrap().mul(&x.inverse().unwrap()).unwrap()
}

fn random_unipotent(r: RingSpec, n: usize, g: &mut impl Rng) -> Matrix {
    let mut blocks = Vec::new();
    let mut left = n;
    while left > 0 {
        let size = g.gen_range(1..=left);
        blocks.push(Matrix::jordan_block(r, size, 1));
        left -= size;
    }
    let d = Matrix::direct_sum(&blocks).unwrap();
    let x = random_invertible(r, n, g);
    x.mul(&d).unwrap().mul(&x.inverse().unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rcf_witness_is_correct(a in square_over_field(4)) {
        let r = rcf(&a).unwrap();
        prop_assert!(r.transform.is_invertible());
        prop_assert_eq!(r.transform.mul(&a).unwrap().mul(&r.transform.inverse().unwrap()).unwrap(), r.form.clone());
        let f = r.invariant_factors.factors();
        for w in f.windows(2) {
            prop_assert!(w[0].divides(&w[1]));
        }
        prop_assert_eq!(r.invariant_factors.product().unwrap(), a.charpoly().unwrap());
        prop_assert_eq!(r.invariant_factors.minimal_polynomial().unwrap(), &a.minpoly().unwrap());
        prop_assert_eq!(rcf(&r.form).unwrap().form, r.form);
    }

    #[test]
    fn similarity_is_an_equivalence(seed in any::<u64>(), n in 1usize..6, p in prop_oneof![Just(2u64), Just(3)]) {
        let r = field(p);
        let mut g = rng(seed);
        let a = structured(r, n, &mut g);
        let x = random_invertible(r, n, &mut g);
        let y = random_invertible(r, n, &mut g);
        let b = x.mul(&a).unwrap().mul(&x.inverse().unwrap()).unwrap();
        let c = y.mul(&b).unwrap().mul(&y.inverse().unwrap()).unwrap();
        prop_assert!(is_similar(&a, &a).unwrap());
        prop_assert!(is_similar(&a, &b).unwrap() && is_similar(&b, &a).unwrap());
        prop_assert!(is_similar(&a, &c).unwrap());
        let w = similarity_witness(&a, &c).unwrap();
        prop_assert_eq!(w.mul(&a).unwrap(), c.mul(&w).unwrap());
        // a random other matrix is similar exactly when its invariants agree
        let d = structured(r, n, &mut g);
        prop_assert_eq!(is_similar(&a, &d).unwrap(), a.charpoly().unwrap() == d.charpoly().unwrap()
            && invariant_factors(&a).unwrap() == invariant_factors(&d).unwrap());
    }

    #[test]
    fn similar_restrictions_to_q_image_force_similarity(seed in any::<u64>(), n in 1usize..6, p in prop_oneof![Just(2u64), Just(3)]) {
        let r = field(p);
        let mut g = rng(seed);
        let u = structured(r, n, &mut g);
        // half the time plant a similar v, otherwise draw an independent one
        let v = if g.gen_bool(0.5) {
            let x = random_invertible(r, n, &mut g);
            x.mul(&u).unwrap().mul(&x.inverse().unwrap()).unwrap()
        } else {
            structured(r, n, &mut g)
        };
        let mut qs: Vec<Polynomial> = u.minpoly().unwrap().factor().unwrap().into_iter().map(|(q, _)| q).collect();
        qs.extend(v.minpoly().unwrap().factor().unwrap().into_iter().map(|(q, _)| q));
        qs.push(Polynomial::x(r));
        qs.sort();
        qs.dedup();
        for q in qs {
            let bu = image_basis(&q.eval_matrix(&u).unwrap()).unwrap();
            let bv = image_basis(&q.eval_matrix(&v).unwrap()).unwrap();
            let restricted_similar = match (bu.is_empty(), bv.is_empty()) {
                (true, true) => true,
                (false, false) => is_similar(&restriction(&u, &bu).unwrap(), &restriction(&v, &bv).unwrap()).unwrap(),
                _ => false,
            };
            if restricted_similar {
                prop_assert!(is_similar(&u, &v).unwrap());
            }
        }
    }

    #[test]
    fn partition_identity_and_rebuild(seed in any::<u64>(), n in 1usize..7, p in prop_oneof![Just(2u64), Just(3), Just(5)]) {
        let r = field(p);
        let mut g = rng(seed);
        let a = random_unipotent(r, n, &mut g);
        let part = unipotent_partition(&a).unwrap();
        prop_assert_eq!(part.dimension(), n);
        let j = part.jordan_matrix(r).unwrap();
        prop_assert!(is_similar(&a, &j).unwrap());
        let x = random_invertible(r, n, &mut g);
        let c = x.mul(&a).unwrap().mul(&x.inverse().unwrap()).unwrap();
        prop_assert_eq!(unipotent_partition(&c).unwrap(), part.clone());
        // largest block is the nilpotency index of a - 1
        let nil = a.minus_identity().unwrap();
        prop_assert!(nil.pow(part.largest_block() as u64).unwrap().is_zero());
        prop_assert!(!nil.pow(part.largest_block() as u64 - 1).unwrap().is_zero() || part.largest_block() == 1);
    }

    #[test]
    fn unipotent_similarity_is_partition_equality(seed in any::<u64>(), n in 1usize..7) {
        let r = field(2);
        let mut g = rng(seed);
        let a = random_unipotent(r, n, &mut g);
        let b = random_unipotent(r, n, &mut g);
        prop_assert_eq!(is_similar(&a, &b).unwrap(), unipotent_partition(&a).unwrap() == unipotent_partition(&b).unwrap());
    }
}
