mod common;

use cbkit::documents::PointSetDocument;
use cbkit::projection::{project_config, random_projection, validate_projection, ProjectionMap};
use cbkit::projective::{Field, PointConfiguration, PrimeField, Rationals};
use cbkit::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn plane_grid() -> PointConfiguration<Rationals> {
    let path = format!("{}/tests/fixtures/plane_grid.pointset", env!("CARGO_MANIFEST_DIR"));
    PointSetDocument::parse(&std::fs::read_to_string(path).unwrap())
        .unwrap()
        .to_rational_config()
        .unwrap()
}

/// Largest number of points on a line, by testing every pair.
fn collinear_oracle(config: &PointConfiguration<PrimeField>) -> usize {
    let p = config.field().modulus();
    let pts = config.points();
    let mut best = pts.len().min(2);
    for a in 0..pts.len() {
        for b in a + 1..pts.len() {
            let on = (0..pts.len())
                .filter(|&c| {
                    let rows = [a, b, c].iter().map(|&i| pts[i].coords().to_vec()).collect();
                    common::rank_p(rows, p) < 3
                })
                .count();
            best = best.max(on);
        }
    }
    best
}

/// A plane in `P^3` missing the center maps isomorphically onto `P^2`, so
/// the image has the same defect as the original plane grid in every degree.
#[test]
fn planar_grid_keeps_its_defects() {
    let grid = plane_grid();
    // the plane w = z + 2t - u
    let raw: Vec<Vec<_>> = grid
        .iter()
        .map(|p| {
            let c = p.coords();
            let w = &c[0] + &c[1] * common::q(2) - &c[2];
            vec![c[0].clone(), c[1].clone(), c[2].clone(), w]
        })
        .collect();
    let space = PointConfiguration::from_raw(Rationals, 3, &raw).unwrap();
    let psi = random_projection(Rationals, 3, 2, 5).unwrap();
    let (image, _) = project_config(&psi, &space, 8).unwrap();
    assert_eq!(image.len(), 9);
    for m in 1..=3 {
        assert_eq!(common::defect_q(&image, m), common::defect_q(&grid, m), "m={m}");
    }
}

/// A twisted lift `w = z * t` is not planar; a generic projection still
/// keeps the three points on each grid line, and nothing more.
#[test]
fn twisted_grid_keeps_collinear_maximum() {
    let f = PrimeField::new(1_000_003).unwrap();
    let grid = plane_grid().reduce_into(f).unwrap();
    let raw: Vec<Vec<u64>> = grid
        .iter()
        .map(|p| {
            let c = p.coords();
            vec![c[0], c[1], c[2], f.mul(&c[0], &c[1])]
        })
        .collect();
    let space = PointConfiguration::from_raw(f, 3, &raw).unwrap();
    let psi = random_projection(f, 3, 2, 9).unwrap();
    let (image, report) = project_config(&psi, &space, 8).unwrap();
    assert_eq!(image.len(), 9);
    assert_eq!(collinear_oracle(&image), collinear_oracle(&space));
    assert!(report.rejected.iter().all(|r| r.seed != report.accepted_seed));
}

/// Includes forced collinear triples so the preserved maximum is not always 2.
#[test]
fn accepted_projections_match_the_oracle() {
    let f = PrimeField::new(1009).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for trial in 0..30u64 {
        let mut raw: Vec<Vec<u64>> = (0..6 + trial % 5).map(|_| (0..4).map(|_| rng.gen_range(0..1009)).collect()).collect();
        // a third point on the line through the first two
        let c = rng.gen_range(1..1009);
        raw.push((0..4).map(|i| f.add(&raw[0][i], &f.mul(&c, &raw[1][i]))).collect());
        let Ok(config) = PointConfiguration::from_raw(f, 3, &raw) else {
            continue;
        };
        let psi = random_projection(f, 3, 2, trial).unwrap();
        match validate_projection(&psi, &config).unwrap() {
            Ok(image) => {
                assert_eq!(image.len(), config.len());
                assert_eq!(collinear_oracle(&image), collinear_oracle(&config), "trial {trial}");
            }
            Err(_) => {
                let (image, report) = project_config(&psi, &config, 16).unwrap();
                assert!(!report.rejected.is_empty());
                assert_eq!(collinear_oracle(&image), collinear_oracle(&config), "trial {trial}");
            }
        }
    }
}

#[test]
fn center_point_without_retries_is_a_genericity_failure() {
    let q = Rationals;
    let rows = vec![
        vec![q.one(), q.zero(), q.zero(), q.zero()],
        vec![q.zero(), q.one(), q.zero(), q.zero()],
        vec![q.zero(), q.zero(), q.one(), q.zero()],
    ];
    let psi = ProjectionMap::from_rows(q, rows, 0).unwrap();
    let config = PointConfiguration::from_ints(q, 3, &[vec![0, 0, 0, 1], vec![1, 0, 0, 0]]).unwrap();
    assert!(matches!(
        project_config(&psi, &config, 0),
        Err(Error::GenericityFailure { attempts: 1, .. })
    ));
}

#[test]
fn same_seed_same_image() {
    let f = PrimeField::new(101).unwrap();
    let config = PointConfiguration::from_ints(f, 4, &[vec![1, 2, 3, 4, 5], vec![0, 1, 0, 7, 2], vec![3, 3, 1, 0, 0]]).unwrap();
    let a = project_config(&random_projection(f, 4, 2, 77).unwrap(), &config, 4).unwrap();
    let b = project_config(&random_projection(f, 4, 2, 77).unwrap(), &config, 4).unwrap();
    assert_eq!(a, b);
}

#[test]
fn square_projection_rejected() {
    assert!(matches!(random_projection(Rationals, 3, 3, 0), Err(Error::Precondition(_))));
    let config = PointConfiguration::from_ints(Rationals, 2, &[vec![1, 0, 0]]).unwrap();
    let psi = random_projection(Rationals, 3, 2, 0).unwrap();
    assert!(matches!(
        validate_projection(&psi, &config),
        Err(Error::WrongAmbientDimension { .. })
    ));
}
