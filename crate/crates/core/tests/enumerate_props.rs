mod common;

use meridian::enumerate::{slope_sequences, SearchFailure};
use meridian::{
    classify_genus1, endpoint_kinds, find_construction, knot_check, recognize, surface_invariants,
    trace, validate_assembly, Genus1Class, ManifoldSpec, SearchSpec, Skeleton,
};

#[test]
fn slope_sequences_are_closed_under_the_filter() {
    for m in common::manifolds() {
        for n in 1..=2 {
            let seqs = slope_sequences(m, n, 3);
            assert!(!seqs.is_empty());
            for g in &seqs {
                assert_eq!(g.len(), n + 1);
                let refiltered = slope_sequences(m, n, 3);
                assert!(refiltered.contains(g));
            }
            let mut sorted = seqs.clone();
            sorted.dedup();
            assert_eq!(sorted.len(), seqs.len());
        }
    }
}

#[test]
fn results_pass_every_check() {
    for m in common::manifolds() {
        for g in 1..=2 {
            for b in [0, 2] {
                let a = find_construction(&SearchSpec::new(m, g, b)).unwrap();
                assert!(validate_assembly(&a).unwrap().is_valid());
                assert!(knot_check(&a).unwrap().is_one_one);
                let sr = surface_invariants(&a).unwrap();
                assert!(sr.connected);
                assert_eq!((sr.components[0].genus, sr.total_boundary), (g, b));
                let (lo, hi) = endpoint_kinds(&a);
                assert_eq!(
                    recognize(&trace(&a).unwrap(), lo, hi).unwrap(),
                    Skeleton::of(&a)
                );
            }
        }
    }
}

#[test]
fn search_is_deterministic() {
    let spec = SearchSpec::new(ManifoldSpec::lens(5, 2).unwrap(), 3, 4);
    let a = find_construction(&spec).unwrap();
    for _ in 0..3 {
        assert_eq!(find_construction(&spec).unwrap(), a);
    }
}

#[test]
fn exhausted_bounds_are_not_found() {
    let mut spec = SearchSpec::new(ManifoldSpec::S3, 5, 2);
    spec.max_r = 1;
    spec.max_pieces = 3;
    assert!(matches!(
        find_construction(&spec),
        Err(SearchFailure::NotFound { .. })
    ));
}

#[test]
fn genus_one_classes() {
    let mut seen = std::collections::BTreeSet::new();
    for a in common::small_family() {
        let c = classify_genus1(&a).unwrap();
        assert!(!matches!(c, Genus1Class::Unclassified(_)), "{c}");
        seen.insert(c.to_string());
    }
    for class in ["A+C+C", "B+C", "D", "not-genus-1"] {
        assert!(seen.contains(class), "no {class} instance");
    }
}
