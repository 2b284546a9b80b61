//! Nine points of a grid fail to impose independent conditions on cubics;
//! any eight of them do, and each of those eight has a separating cubic.

use cbkit::conditions::{conditions_report, separating_form};
use cbkit::projective::{Form, Rationals};
use cbkit::hypersurface::generate_example;

fn main() -> cbkit::Result<()> {
    let line = |c: [i64; 3]| Form::linear_from_ints(Rationals, &c);
    let l = [line([1, 0, 0]), line([0, 1, 0]), line([1, 1, 1])];
    let m = [line([0, 0, 1]), line([1, 2, 3]), line([2, -1, 1])];
    let (_, census) = generate_example(4, &l, &m)?;

    let grid = &census.points;
    let report = conditions_report(grid, 3);
    println!(
        "{} points, rank {} in degree 3, defect {}",
        report.config_size, report.rank, report.defect
    );
    println!("forced: {:?}", report.forced_points);

    let eight = grid.without(8)?;
    let report = conditions_report(&eight, 3);
    println!("drop one: defect {}", report.defect);
    if let Some(g) = separating_form(&eight, 0, 3)? {
        println!("cubic through points 1..8 but not 0 has {} terms", g.num_terms());
    }
    Ok(())
}
