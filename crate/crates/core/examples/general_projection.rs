//! Project points of P^3 to the plane with a seeded matrix, redrawing when a
//! point sits in the center or a new collinearity appears.

use cbkit::projection::{project_config, random_projection};
use cbkit::projective::{PointConfiguration, PrimeField};

fn main() -> cbkit::Result<()> {
    let f = PrimeField::new(101)?;
    let raw = vec![
        vec![1, 0, 0, 0],
        vec![0, 1, 0, 0],
        vec![0, 0, 1, 0],
        vec![0, 0, 0, 1],
        vec![1, 1, 1, 1],
        vec![1, 2, 3, 0],
    ];
    let points = PointConfiguration::from_ints(f, 3, &raw)?;
    let psi = random_projection(f, 3, 2, 2026)?;
    let (image, report) = project_config(&psi, &points, 8)?;
    println!("accepted seed {} after {} rejections", report.accepted_seed, report.rejected.len());
    for r in &report.rejected {
        println!("  seed {}: {}", r.seed, r.defect);
    }
    for p in image.iter() {
        println!("{p}");
    }
    Ok(())
}
