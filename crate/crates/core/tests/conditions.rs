mod common;

use cbkit::conditions::{conditions_defect, conditions_report, forced_points, separating_form};
use cbkit::projective::{evaluation_matrix, PointConfiguration, PrimeField, Rationals};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn plane(pts: &[[i64; 3]]) -> PointConfiguration<Rationals> {
    PointConfiguration::from_ints(Rationals, 2, &pts.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
}

#[test]
fn grid_matrix_is_nine_by_thirty_five_of_rank_eight() {
    let (_, census) = common::example(4);
    let eval = evaluation_matrix(&census.points, 3);
    assert_eq!((eval.nrows(), eval.ncols()), (9, 35));
    assert_eq!(eval.rank(), 8);
    let rows: Vec<_> = census.points.iter().map(|p| common::eval_row_q(p.coords(), 3)).collect();
    assert_eq!(common::rank_q(rows), 8);
}

#[test]
fn small_plane_examples() {
    assert_eq!(conditions_defect(&plane(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]), 1), 0);
    assert!(conditions_defect(&plane(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]), 1) >= 1);
    assert!(forced_points(&plane(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]), 1).is_empty());
    assert_eq!(forced_points(&plane(&[[1, 0, 0], [1, 1, 0], [1, 2, 0]]), 1), vec![0, 1, 2]);
    let empty = PointConfiguration::empty(Rationals, 2);
    assert_eq!(evaluation_matrix(&empty, 2).ncols(), 6);
    assert_eq!(conditions_defect(&empty, 2), 0);
}

#[test]
fn grid_forces_every_point() {
    let (_, census) = common::example(4);
    let report = conditions_report(&census.points, 3);
    assert_eq!(report.defect, 1);
    assert_eq!(report.forced_points, (0..9).collect::<Vec<_>>());
    for i in 0..9 {
        assert_eq!(separating_form(&census.points, i, 3).unwrap(), None);
    }
}

#[test]
fn grid_minus_one_has_separating_cubics() {
    let (_, census) = common::example(4);
    let eight = census.points.without(8).unwrap();
    for i in 0..8 {
        let g = separating_form(&eight, i, 3).unwrap().expect("point is not forced");
        assert_eq!(g.degree(), 3);
        for (j, p) in eight.iter().enumerate() {
            assert_eq!(g.vanishes_at(p).unwrap(), j != i, "point {j}");
        }
    }
}

#[test]
fn separating_line_for_two_points() {
    let two = plane(&[[1, 0, 0], [0, 1, 0]]);
    let g = separating_form(&two, 1, 1).unwrap().unwrap();
    assert!(g.vanishes_at(&two.points()[0]).unwrap());
    assert!(!g.vanishes_at(&two.points()[1]).unwrap());
}

/// Forced points are exactly those without a separating form, and the
/// library defect matches the oracle, on random configurations.
#[test]
fn forced_iff_no_separating_form_on_random_configs() {
    let f = PrimeField::new(7).unwrap();
    let all: Vec<_> = cbkit::projective::point::all_points(f, 2).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..40 {
        let mut pts = all.clone();
        pts.shuffle(&mut rng);
        pts.truncate(3 + trial % 8);
        let config = PointConfiguration::new(f, 2, pts).unwrap();
        for m in 1..=3 {
            assert_eq!(conditions_defect(&config, m), common::defect_p(&config, m));
            let forced = forced_points(&config, m);
            for i in 0..config.len() {
                let sep = separating_form(&config, i, m).unwrap();
                assert_eq!(sep.is_none(), forced.contains(&i), "trial {trial}, m={m}, point {i}");
            }
        }
    }
}

#[test]
fn rational_defect_matches_oracle_in_space() {
    let raw: Vec<Vec<i64>> = vec![
        vec![1, 0, 0, 0],
        vec![0, 1, 0, 0],
        vec![0, 0, 1, 0],
        vec![0, 0, 0, 1],
        vec![1, 1, 1, 1],
        vec![1, 2, 3, 4],
        vec![1, -1, 2, -2],
        vec![3, 1, 4, 1],
        vec![2, 7, 1, 8],
        vec![1, 1, 0, 0],
        vec![0, 1, 1, 0],
    ];
    let config = PointConfiguration::from_ints(Rationals, 3, &raw).unwrap();
    for m in 0..=3 {
        assert_eq!(conditions_defect(&config, m), common::defect_q(&config, m), "m={m}");
    }
}
