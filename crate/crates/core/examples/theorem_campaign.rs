//! A small seeded campaign: random configurations in P^3(F_101), checked
//! against the curve hypotheses and the defect.

use cbkit::campaign::{run_campaign, CampaignConfig};

fn main() -> cbkit::Result<()> {
    let config = CampaignConfig::from_toml(
        r#"
trials = 60
mu_min = 3
mu_max = 4
prime = 101
seed = 7
"#,
    )?;
    let (summary, outcomes) = run_campaign(&config)?;
    println!(
        "{} trials: {} certified, {} violated, {} unknown",
        summary.trials, summary.certified, summary.violated, summary.unknown
    );
    for t in outcomes.iter().filter(|t| t.defect.is_some_and(|d| d > 0)).take(5) {
        println!("trial {}: mu {}, {} points, {:?}, defect {:?}", t.index, t.mu, t.size, t.status, t.defect);
    }
    assert!(summary.violations.is_empty(), "counterexample found: {:?}", summary.violations);
    Ok(())
}
