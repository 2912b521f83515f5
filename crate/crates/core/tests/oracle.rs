mod common;

use common::*;
use holoforge_core::group::*;
use holoforge_core::oracle::*;
use holoforge_core::Matrix;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

const CAP: usize = 1 << 20;

fn random_small_group(rng: &mut impl Rng) -> Group {
    match rng.gen_range(0..5) {
        0 => dihedral(rng.gen_range(1..12)).unwrap(),
        1 => quaternion(rng.gen_range(2..8)).unwrap(),
        2 => {
            let a = cyclic(rng.gen_range(1..6)).unwrap();
            let b = dihedral(rng.gen_range(2..5)).unwrap();
            direct_product(&a, &b).unwrap()
        }
        _ => {
            let (r, n) = [(field(2), 2), (field(2), 3), (field(3), 2), (field(5), 1)][rng.gen_range(0..4)];
            let a = random_invertible(r, n, rng);
            Group::holomorph(r, n, &[a], CAP).unwrap()
        }
    }
}

fn random_relabel(g: &Group, rng: &mut impl Rng) -> (Group, Vec<Elem>) {
    let mut rest: Vec<Elem> = (1..g.order() as Elem).collect();
    rest.shuffle(rng);
    let perm: Vec<Elem> = std::iter::once(0).chain(rest).collect();
    (g.relabel(&perm).unwrap(), perm)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn planted_relabelings_are_found(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let g = random_small_group(&mut rng);
        let (h, _) = random_relabel(&g, &mut rng);
        let r = are_isomorphic(&g, &h, DEFAULT_BUDGET).unwrap();
        prop_assert!(r.isomorphic);
        prop_assert!(verify_isomorphism(&g, &h, &r.witness.unwrap(), WITNESS_SAMPLES, seed));
    }

    #[test]
    fn fingerprints_survive_relabeling(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let g = random_small_group(&mut rng);
        let (h, _) = random_relabel(&g, &mut rng);
        prop_assert_eq!(fingerprint(&g, CAP).unwrap(), fingerprint(&h, CAP).unwrap());
    }

    #[test]
    fn differing_fingerprints_mean_not_isomorphic(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let g = random_small_group(&mut rng);
        let h = random_small_group(&mut rng);
        let r = are_isomorphic(&g, &h, DEFAULT_BUDGET).unwrap();
        if fingerprint(&g, CAP).unwrap() != fingerprint(&h, CAP).unwrap() {
            prop_assert!(!r.isomorphic);
        }
        if r.isomorphic {
            prop_assert!(verify_isomorphism(&g, &h, &r.witness.unwrap(), WITNESS_SAMPLES, seed));
        }
    }
}

#[test]
fn tampered_witness_is_rejected() {
    let g = dihedral(6).unwrap();
    let r = are_isomorphic(&g, &g, DEFAULT_BUDGET).unwrap();
    let mut w = r.witness.unwrap();
    assert!(verify_isomorphism(&g, &g, &w, 100, 0));
    w.swap(1, 2);
    assert!(!verify_isomorphism(&g, &g, &w, 100, 0));
}

#[test]
fn groups_of_order_eight_are_pairwise_distinct() {
    let f2 = field(2);
    let groups = [
        cyclic(8).unwrap(),
        direct_product(&cyclic(4).unwrap(), &cyclic(2).unwrap()).unwrap(),
        vector_group(f2, 3, CAP).unwrap(),
        dihedral(4).unwrap(),
        quaternion(2).unwrap(),
    ];
    for (i, a) in groups.iter().enumerate() {
        for (j, b) in groups.iter().enumerate() {
            assert_eq!(are_isomorphic(a, b, DEFAULT_BUDGET).unwrap().isomorphic, i == j);
        }
    }
}

#[test]
fn budget_is_enforced() {
    let f2 = field(2);
    let g = vector_group(f2, 4, CAP).unwrap();
    let (h, _) = random_relabel(&g, &mut rng(3));
    assert!(matches!(are_isomorphic(&g, &h, 1), Err(holoforge_core::Error::BudgetExceeded { budget: 1 })));
}

#[test]
fn lindo_agreement_on_gl2_2_and_gl2_3() {
    let r = verify_lindo(2, 2, LindoScope::All, DEFAULT_BUDGET).unwrap();
    assert_eq!(r.pairs, 36);
    assert!(r.disagreements.is_empty());
    let r = verify_lindo(3, 2, LindoScope::ClassRepresentatives, DEFAULT_BUDGET).unwrap();
    assert!(r.pairs >= 49);
    assert!(r.disagreements.is_empty());
    // each class is isomorphic to itself only
    assert_eq!(r.isomorphic_pairs * r.isomorphic_pairs, r.pairs);
}

#[test]
fn lindo_agreement_on_gl3_2() {
    let r = verify_lindo(2, 3, LindoScope::MaxOrder(8), DEFAULT_BUDGET).unwrap();
    assert!(r.disagreements.is_empty());
    assert_eq!(r.isomorphic_pairs * r.isomorphic_pairs, r.pairs);
}

#[test]
fn non_admitting_small_groups() {
    let f2 = field(2);
    let caps = AdmittingCaps::default();
    for g in [vector_group(f2, 2, CAP).unwrap(), cyclic(8).unwrap(), quaternion(2).unwrap(), dihedral(4).unwrap()] {
        let r = admitting_report(&g, &caps).unwrap();
        assert!(!r.admitting, "order {} aut {}", r.group_order, r.aut_order);
    }
    let r = admitting_report(&vector_group(f2, 2, CAP).unwrap(), &caps).unwrap();
    assert_eq!(r.aut_order, 6);
    assert_eq!(r.subgroup_count, 6);
    assert_eq!(r.classes.len(), 4);
}

#[test]
fn dihedral_holomorph_matches_cyclic_holomorph_over_f3() {
    let f3 = field(3);
    let a = Matrix::from_rows(f3, &[[-1, 0], [0, 1]]).unwrap();
    let b = Matrix::from_rows(f3, &[[1, 1], [0, 1]]).unwrap();
    let l1 = Matrix::from_rows(f3, &[[1, -1], [0, 1]]).unwrap();
    let l2 = Matrix::from_rows(f3, &[[-1, 0], [0, -1]]).unwrap();
    let gh = Group::holomorph(f3, 2, &[a, b], CAP).unwrap();
    let gl = Group::holomorph(f3, 2, &[l1, l2], CAP).unwrap();
    let r = are_isomorphic(&gh, &gl, DEFAULT_BUDGET).unwrap();
    assert!(r.isomorphic);
    let (_, h) = gh.factors().unwrap();
    let (_, l) = gl.factors().unwrap();
    assert!(!are_isomorphic(h, l, DEFAULT_BUDGET).unwrap().isomorphic);
}
