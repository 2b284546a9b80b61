//! Build the seeded example of degree d and show that its (d-1)^2 nodes
//! fail by exactly one in degree 2d - 5.

use cbkit::conditions::conditions_defect;
use cbkit::hypersurface::{factoriality_verdict, random_example};

fn main() -> cbkit::Result<()> {
    let d: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let ex = random_example(d, d as u64, 16)?;
    println!("degree {d}, {} terms, screened mod {:?}", ex.spec.form().num_terms(), ex.screened_at);
    println!("nodes: {}", ex.census.len());
    println!("defect in degree {}: {}", 2 * d - 5, conditions_defect(&ex.census.points, 2 * d - 5));
    let verdict = factoriality_verdict(&ex.census, d)?;
    println!("{:?}", verdict.status);
    Ok(())
}
