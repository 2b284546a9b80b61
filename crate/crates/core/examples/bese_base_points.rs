//! Base points of the cubics through a point set over F_11, and tangent
//! directions at the input points.

use cbkit::bese::{base_point_free_check, bese_hypotheses};
use cbkit::curves::DEFAULT_SEARCH_CAP;
use cbkit::hypersurface::ScanBudget;
use cbkit::projective::{PointConfiguration, PrimeField};

fn main() -> cbkit::Result<()> {
    let f = PrimeField::new(11)?;
    let sets: [&[[i64; 3]]; 2] = [
        &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3]],
        &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 4], [1, 3, 9], [1, 5, 3], [1, 7, 2]],
    ];
    for raw in sets {
        let raw: Vec<Vec<i64>> = raw.iter().map(|p| p.to_vec()).collect();
        let points = PointConfiguration::from_ints(f, 2, &raw)?;
        let hyp = bese_hypotheses(&points, 3, DEFAULT_SEARCH_CAP)?;
        let report = base_point_free_check(&points, 3, ScanBudget::default())?;
        println!(
            "{} points: hypotheses {}, system dim {} (expected {}), extra base points {}, free {}",
            points.len(),
            hyp.ok(),
            report.system_dim,
            report.expected_dim,
            report.extra_base_points.len(),
            report.base_point_free()
        );
    }
    Ok(())
}
