mod common;

use cbkit::curves::{CertifyOptions, Status};
use cbkit::documents::{PointSetDocument, PolynomialDocument};
use cbkit::hypersurface::{
    cheltsov_certify, extra_singularities, factoriality_verdict, generate_example, random_example,
    singular_points_enumerate, FactorialityStatus, HypersurfaceSpec, ScanBudget, SingularityCensus,
};
use cbkit::projective::{reduce_point, Field, Form, PointConfiguration, PrimeField, Rationals};
use std::collections::BTreeSet;
use cbkit::Error;

fn lines(coeffs: &[[i64; 3]]) -> Vec<Form<Rationals>> {
    coeffs.iter().map(|c| Form::linear_from_ints(Rationals, c)).collect()
}

#[test]
fn census_invariants_for_small_degrees() {
    for d in 3..=6u32 {
        let (spec, census) = common::example(d);
        assert_eq!(census.len(), ((d - 1) * (d - 1)) as usize);
        assert!(census.all_nodes());
        let doc = PolynomialDocument::from_form(spec.form());
        for p in census.points.iter() {
            assert!(spec.form().vanishes_at(p).unwrap());
            assert!(spec.is_singular_at(p).unwrap());
            assert!(p.coords()[0] == Rationals.zero() && p.coords()[1] == Rationals.zero());
            for v in 0..5 {
                assert!(num_traits::Zero::is_zero(&common::partial_at(&doc, v, p.coords())));
            }
            assert!(common::is_node_oracle(&doc, p.coords()));
        }
    }
}

#[test]
fn degenerate_line_choices_rejected() {
    // shares the line z
    let err = generate_example(3, &lines(&[[1, 0, 0], [0, 1, 0]]), &lines(&[[1, 0, 0], [1, 1, 0]])).unwrap_err();
    assert!(matches!(err, Error::DegenerateLineConfiguration(_)));
    // z, t, z + t, z - t all pass through (0 : 0 : 1)
    let err = generate_example(3, &lines(&[[1, 0, 0], [0, 1, 0]]), &lines(&[[1, 1, 0], [1, -1, 0]])).unwrap_err();
    assert!(matches!(err, Error::DegenerateLineConfiguration(_)));
    assert!(generate_example(2, &lines(&[[1, 0, 0]]), &lines(&[[0, 1, 0]])).is_err());
}

/// Over the screening primes the exhaustive scan finds exactly the grid,
/// and where the grid stays distinct every point is a node.
#[test]
fn enumeration_finds_exactly_the_grid() {
    for d in 3..=5u32 {
        let ex = random_example(d, d as u64, 16).unwrap();
        assert!(!ex.screened_at.is_empty());
        for p in [11u64, 13, 17, 19] {
            let f = PrimeField::new(p).unwrap();
            let reduced_spec = HypersurfaceSpec::new(ex.spec.form().reduce_into(f).unwrap()).unwrap();
            let found = singular_points_enumerate(&reduced_spec, f, ScanBudget::default()).unwrap();
            assert!(found.complete);
            let grid: BTreeSet<_> = ex.census.points.iter().map(|q| reduce_point(Rationals, q, f)).collect();
            let scanned: BTreeSet<_> = found.points.iter().cloned().collect();
            if ex.screened_at.contains(&p) {
                assert_eq!(scanned, grid, "d={d}, p={p}");
            }
            if let Ok(distinct) = ex.census.points.reduce_into(f) {
                if scanned == grid {
                    assert!(found.all_nodes(), "d={d}, p={p}");
                    assert_eq!(distinct.len(), found.len());
                }
            }
        }
    }
}

/// Lines tangent to one conic are in general position, but for odd `d` the
/// pencil member through `x^d + y^d = 0` is singular and the hypersurface
/// picks up singular points off the plane `x = y = 0`.
#[test]
fn conic_tangent_lines_give_extra_singularities() {
    let ls = common::conic_tangent_lines([0, 1].into_iter());
    let ms = common::conic_tangent_lines([2, 3].into_iter());
    let (spec, census) = generate_example(3, &ls, &ms).unwrap();
    for p in [13u64, 17, 19] {
        let extra = extra_singularities(&spec, &census, PrimeField::new(p).unwrap(), ScanBudget::default()).unwrap();
        assert!(!extra.is_empty(), "p={p}");
        for q in &extra {
            assert!(q.coords()[0] != 0 || q.coords()[1] != 0);
        }
    }
}

#[test]
fn enumeration_respects_budgets() {
    let (spec, _) = common::example(3);
    let f = PrimeField::new(37).unwrap();
    let small = HypersurfaceSpec::new(spec.form().reduce_into(f).unwrap()).unwrap();
    assert!(matches!(
        singular_points_enumerate(&small, f, ScanBudget::default()),
        Err(Error::BudgetExceeded { .. })
    ));
    let big = PrimeField::new(103).unwrap();
    let spec103 = HypersurfaceSpec::new(spec.form().reduce_into(big).unwrap()).unwrap();
    assert!(matches!(
        singular_points_enumerate(&spec103, big, ScanBudget { max_points: u128::MAX }),
        Err(Error::BudgetExceeded { .. })
    ));
}

#[test]
fn factoriality_of_grid_and_deletions() {
    let (_, census) = common::example(4);
    let v = factoriality_verdict(&census, 4).unwrap();
    assert_eq!((v.status, v.defect), (FactorialityStatus::NonFactorial, 1));
    let c = cheltsov_certify(&census, 4, &CertifyOptions::default()).unwrap();
    assert_eq!(c.status, FactorialityStatus::NonFactorial);
    assert_eq!(c.hypothesis_report.unwrap().cardinality.status, Status::Violated);
    assert!(!c.theorem_violation);
    for i in 0..9 {
        let smaller = census.without(i).unwrap();
        assert_eq!(factoriality_verdict(&smaller, 4).unwrap().status, FactorialityStatus::Factorial);
        assert_eq!(
            cheltsov_certify(&smaller, 4, &CertifyOptions::default()).unwrap().status,
            FactorialityStatus::CertifiedFactorial
        );
    }
}

#[test]
fn collinear_census_falls_back_to_the_defect() {
    let raw: Vec<Vec<i64>> = (0..4).map(|i| vec![0, 0, 1, i, 0]).collect();
    let points = PointConfiguration::from_ints(Rationals, 4, &raw).unwrap();
    let census = SingularityCensus {
        node_flags: vec![true; 4],
        points,
        complete: false,
    };
    let v = cheltsov_certify(&census, 4, &CertifyOptions::default()).unwrap();
    let report = v.hypothesis_report.unwrap();
    assert_eq!((report.degrees[0].status, report.degrees[0].max_found), (Status::Violated, 4));
    assert_eq!((v.status, v.defect), (FactorialityStatus::Factorial, 0));
}

#[test]
fn empty_census_is_factorial() {
    let census = SingularityCensus {
        points: PointConfiguration::empty(Rationals, 4),
        node_flags: vec![],
        complete: true,
    };
    for d in [2, 3, 7] {
        let v = factoriality_verdict(&census, d).unwrap();
        assert_eq!((v.status, v.defect), (FactorialityStatus::Factorial, 0));
    }
}

#[test]
fn census_documents_round_trip() {
    let (spec, census) = common::example(5);
    let doc = PointSetDocument::from_config(&census.points);
    let back = PointSetDocument::parse(&doc.emit()).unwrap().to_rational_config().unwrap();
    assert_eq!(back, census.points);
    let poly = PolynomialDocument::from_form(spec.form());
    let form = PolynomialDocument::parse(&poly.emit()).unwrap().to_rational_form().unwrap();
    assert_eq!(&form, spec.form());
}
