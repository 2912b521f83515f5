use holoforge::matfile::{format_matrix, parse_matrix};
use holoforge::repro::{run_example, Params};
use holoforge::RunReport;
use holoforge_core::{Matrix, RingSpec};
use proptest::prelude::*;

fn ring() -> impl Strategy<Value = RingSpec> {
    prop_oneof![Just((2, 1)), Just((2, 3)), Just((3, 1)), Just((3, 2)), Just((7, 1))].prop_map(|(p, m)| RingSpec::new(p, m).unwrap())
}

proptest! {
    #[test]
    fn matrices_survive_format_and_parse(r in ring(), rows in 1usize..5, cols in 1usize..5, seed in prop::collection::vec(any::<u64>(), 16)) {
        let q = r.modulus();
        let a = Matrix::new(r, rows, cols, (0..rows * cols).map(|i| seed[i] % q).collect()).unwrap();
        prop_assert_eq!(parse_matrix(&format_matrix(&a)).unwrap(), a);
    }

    #[test]
    fn negative_entries_are_reduced(r in ring(), x in -1000i64..1000) {
        let text = format!("{} {} 1 1\n{x}\n", r.p(), r.m());
        prop_assert_eq!(parse_matrix(&text).unwrap().get(0, 0), r.reduce(x));
    }
}

#[test]
fn reports_reparse() {
    let r = run_example("e6a", Params::default(), 1 << 20).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    let back: RunReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r);
}

#[test]
fn malformed_matrices_are_rejected() {
    for bad in ["", "2 1 2", "2 1 1 1\n", "2 1 1 2\n1\n", "4 1 1 1\n1\n", "2 1 1 1\n1\n1\n", "2 1 1 1\nx\n"] {
        assert!(parse_matrix(bad).is_err(), "{bad:?}");
    }
}
