//! Delete one node from the quartic grid and certify factoriality through
//! the curve hypotheses, without computing any rank.

use cbkit::curves::CertifyOptions;
use cbkit::hypersurface::{cheltsov_certify, random_example};

fn main() -> cbkit::Result<()> {
    let ex = random_example(4, 4, 16)?;
    let full = cheltsov_certify(&ex.census, 4, &CertifyOptions::default())?;
    println!("all 9 nodes: {:?}", full.status);

    for i in 0..ex.census.len() {
        let fewer = ex.census.without(i)?;
        let v = cheltsov_certify(&fewer, 4, &CertifyOptions::default())?;
        println!("without node {i}: {:?}, violation={}", v.status, v.theorem_violation);
    }
    Ok(())
}
