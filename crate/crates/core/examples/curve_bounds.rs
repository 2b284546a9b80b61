//! How many points of a planar set lie on one line, conic, cubic; then the
//! full hypothesis check for a given mu.

use cbkit::curves::{certify_theorem_hypotheses, max_on_plane_curve, CertifyOptions, DEFAULT_SEARCH_CAP};
use cbkit::projective::{PointConfiguration, Rationals};

fn main() -> cbkit::Result<()> {
    // the grid of the lines z, t, z+t+u against u, z+2t+3u, 2z-t+u, minus one point
    let raw = vec![
        vec![0, 1, 0],
        vec![0, 3, -2],
        vec![0, 1, 1],
        vec![1, 0, 0],
        vec![3, 0, -1],
        vec![1, 0, -2],
        vec![1, -1, 0],
        vec![1, -2, 1],
    ];
    let points = PointConfiguration::from_ints(Rationals, 2, &raw)?;
    for k in 1..=3 {
        let best = max_on_plane_curve(&points, k, DEFAULT_SEARCH_CAP)?;
        println!("degree {k}: {} points, witness {:?}", best.count, best.witness);
    }
    let report = certify_theorem_hypotheses(&points, 3, None, &CertifyOptions::default())?;
    println!("mu = 3: {:?}", report.status());
    for entry in &report.degrees {
        println!("  k = {}: found {} <= bound {}? {:?}", entry.degree, entry.max_found, entry.bound, entry.status);
    }
    Ok(())
}
