//! Scan P^4(F_p) for the singular points of the reduced cubic example and
//! compare with the grid.

use cbkit::hypersurface::{random_example, singular_points_enumerate, HypersurfaceSpec, ScanBudget};
use cbkit::projective::PrimeField;

fn main() -> cbkit::Result<()> {
    let ex = random_example(3, 3, 16)?;
    for p in [11, 13, 17] {
        let f = PrimeField::new(p)?;
        let spec = HypersurfaceSpec::new(ex.spec.form().reduce_into(f)?)?;
        let found = singular_points_enumerate(&spec, f, ScanBudget::from_env())?;
        println!("p = {p}: {} singular points, all nodes: {}", found.len(), found.all_nodes());
        for q in found.points.iter() {
            println!("  {q}");
        }
    }
    Ok(())
}
