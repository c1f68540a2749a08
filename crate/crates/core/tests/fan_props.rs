mod common;

use common::geometry;
use hodge_matroid::chow::default_submodular;
use hodge_matroid::corpus::entry;
use hodge_matroid::fan::{
    ample_check, bergman_fan, bergman_fan_filtered, is_pure, is_unimodular, nef_check,
    reduced_bergman_fan, validate_fan, Fan, PlFunction,
};
use hodge_matroid::linalg::rat_frac;
use hodge_matroid::{Exec, Filter, Matroid};
use proptest::prelude::*;

fn random_filter(m: &Matroid, picks: &[usize]) -> Filter {
    let mut f = Filter::top(m);
    for &k in picks {
        let cands = f.maximal_missing(m);
        if cands.is_empty() {
            break;
        }
        f = f.flip(m, cands[k % cands.len()]).unwrap();
    }
    f
}

fn small_geometry() -> impl Strategy<Value = Matroid> {
    geometry(4, 6).prop_filter("small", |m| m.num_flats() <= 30)
}

/// Cones as sets of ray labels, so fans with different ray orders compare.
fn labelled_cones(f: &Fan) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = f
        .cones()
        .iter()
        .map(|c| {
            let mut v: Vec<String> = c.iter().map(|&i| f.labels()[i].to_string()).collect();
            v.sort();
            v
        })
        .collect();
    out.sort();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bergman_fan_is_a_unimodular_pure_fan(m in small_geometry()) {
        let f = bergman_fan(&m).unwrap();
        prop_assert!(validate_fan(&f, Exec::Parallel).is_valid());
        prop_assert!(is_unimodular(&f));
        prop_assert!(is_pure(&f, m.rank() - 1));
    }

    #[test]
    fn filtered_fans_stay_valid_along_flips(m in small_geometry(), picks in prop::collection::vec(any::<usize>(), 0..10)) {
        let filter = random_filter(&m, &picks);
        let full = bergman_fan_filtered(&m, &filter).unwrap();
        let reduced = reduced_bergman_fan(&m, &filter).unwrap();
        let v = validate_fan(&full, Exec::Parallel);
        prop_assert!(v.is_valid(), "{:?}", v.problems);
        prop_assert!(is_unimodular(&full));
        prop_assert!(validate_fan(&reduced, Exec::Parallel).is_valid());
        prop_assert!(is_pure(&reduced, m.rank() - 1));
        let big = labelled_cones(&full);
        for c in labelled_cones(&reduced) {
            prop_assert!(big.binary_search(&c).is_ok());
        }
    }

    #[test]
    fn full_filter_fans_coincide(m in small_geometry()) {
        let filter = Filter::full(&m);
        let sigma = labelled_cones(&bergman_fan(&m).unwrap());
        prop_assert_eq!(&labelled_cones(&bergman_fan_filtered(&m, &filter).unwrap()), &sigma);
        prop_assert_eq!(&labelled_cones(&reduced_bergman_fan(&m, &filter).unwrap()), &sigma);
    }

    #[test]
    fn ample_implies_nef(m in small_geometry(), values in prop::collection::vec(-3i64..4, 64)) {
        let f = bergman_fan(&m).unwrap();
        let phi = PlFunction {
            values: (0..f.rays().len()).map(|i| rat_frac(values[i % 64], 1)).collect(),
        };
        if ample_check(&f, &phi, Exec::Sequential) {
            prop_assert!(nef_check(&f, &phi, Exec::Sequential));
        }
    }
}

#[test]
fn ample_classes_survive_small_perturbations() {
    for name in ["u23", "u24", "k4", "boolean3", "fano"] {
        let m = entry(name).unwrap().unwrap().matroid;
        let f = bergman_fan(&m).unwrap();
        let phi = PlFunction::from_subset_fn(&f, default_submodular(m.ground_size()));
        assert!(ample_check(&f, &phi, Exec::Parallel), "{name}");
        for v in 0..f.rays().len() {
            for eps in [rat_frac(1, 1000), rat_frac(-1, 1000)] {
                let mut psi = phi.clone();
                psi.values[v] += &eps;
                assert!(
                    ample_check(&f, &psi, Exec::Parallel),
                    "{name} ray {v} by {eps}"
                );
            }
        }
    }
}

#[test]
fn filtered_fans_of_corpus_flip_chains() {
    for name in ["boolean3", "u35", "k4"] {
        let m = entry(name).unwrap().unwrap().matroid;
        let mut filter = Filter::top(&m);
        for c in filter.flip_sequence_to_full(&m) {
            filter = filter.flip(&m, c).unwrap();
            let f = bergman_fan_filtered(&m, &filter).unwrap();
            assert!(
                validate_fan(&f, Exec::Parallel).is_valid(),
                "{name} after {c}"
            );
            assert!(is_unimodular(&f));
        }
    }
}
