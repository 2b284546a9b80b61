//! Seeded random campaigns: sample configurations in `P^n(F_p)`, certify the
//! hypotheses, and check the conclusion on every certified one.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conditions::conditions_defect;
use crate::curves::{certify_theorem_hypotheses, CertifyOptions, Status, DEFAULT_SEARCH_CAP};
use crate::error::{Error, Result};
use crate::projective::{normalize_point, Field, PointConfiguration, PrimeField, ProjectivePoint};

fn default_search_cap() -> usize {
    DEFAULT_SEARCH_CAP
}

fn default_retries() -> usize {
    8
}

fn default_ambient_dim() -> usize {
    3
}

/// Campaign parameters, read from TOML:
///
/// ```toml
/// trials = 200
/// mu_min = 3
/// mu_max = 4
/// ambient_dim = 3
/// prime = 101
/// seed = 7
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    pub trials: usize,
    pub mu_min: usize,
    pub mu_max: usize,
    #[serde(default = "default_ambient_dim")]
    pub ambient_dim: usize,
    pub prime: u64,
    pub seed: u64,
    #[serde(default = "default_search_cap")]
    pub search_cap: usize,
    #[serde(default = "default_retries")]
    pub retries: usize,
}

impl CampaignConfig {
    /// Parses and validates. TOML errors become positioned parse errors.
    pub fn from_toml(text: &str) -> Result<Self> {
        let config: CampaignConfig = toml::from_str(text).map_err(|e| {
            let line = e
                .span()
                .map_or(1, |s| text[..s.start.min(text.len())].matches('\n').count() + 1);
            Error::Parse {
                line,
                message: e.message().to_string(),
            }
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.mu_min < 2 {
            return Err(Error::Precondition(format!("mu must be at least 2, got {}", self.mu_min)));
        }
        if self.mu_max < self.mu_min {
            return Err(Error::Precondition(format!(
                "empty mu range {}..={}",
                self.mu_min, self.mu_max
            )));
        }
        if self.ambient_dim < 2 {
            return Err(Error::Precondition(format!(
                "ambient dimension must be at least 2, got {}",
                self.ambient_dim
            )));
        }
        if self.search_cap == 0 {
            return Err(Error::Precondition("search cap must be positive".into()));
        }
        PrimeField::new(self.prime)?;
        Ok(())
    }
}

/// How a trial's configuration was drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sampler {
    Uniform,
    /// Several points on one line.
    Line,
    /// Several points on one conic.
    Conic,
    /// Everything inside one plane.
    Plane,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialOutcome {
    pub index: usize,
    pub mu: usize,
    pub size: usize,
    pub sampler: Sampler,
    pub status: Status,
    /// Computed for certified trials only.
    pub defect: Option<usize>,
}

impl TrialOutcome {
    pub fn is_violation(&self) -> bool {
        self.status == Status::Certified && self.defect.is_some_and(|d| d > 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CampaignSummary {
    pub trials: usize,
    pub certified: usize,
    pub violated: usize,
    pub unknown: usize,
    /// Certified trials with positive defect. Must be empty.
    pub violations: Vec<usize>,
}

impl CampaignSummary {
    pub fn from_outcomes(outcomes: &[TrialOutcome]) -> Self {
        let count = |s: Status| outcomes.iter().filter(|o| o.status == s).count();
        CampaignSummary {
            trials: outcomes.len(),
            certified: count(Status::Certified),
            violated: count(Status::Violated),
            unknown: count(Status::Unknown),
            violations: outcomes.iter().filter(|o| o.is_violation()).map(|o| o.index).collect(),
        }
    }
}

/// The deterministic generator of trial `index`.
pub fn trial_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn random_vector(rng: &mut ChaCha8Rng, p: u64, len: usize) -> Vec<u64> {
    loop {
        let v: Vec<u64> = (0..len).map(|_| rng.gen_range(0..p)).collect();
        if v.iter().any(|&c| c != 0) {
            return v;
        }
    }
}

fn combine(field: PrimeField, coeffs: &[u64], basis: &[Vec<u64>]) -> Vec<u64> {
    let len = basis[0].len();
    (0..len)
        .map(|i| {
            coeffs
                .iter()
                .zip(basis)
                .fold(0, |acc, (c, b)| field.add(&acc, &field.mul(c, &b[i])))
        })
        .collect()
}

/// Draws a configuration of `size` distinct points of `P^n(F_p)`.
pub fn sample_configuration(
    rng: &mut ChaCha8Rng,
    field: PrimeField,
    n: usize,
    mu: usize,
    size: usize,
) -> (Sampler, PointConfiguration<PrimeField>) {
    let p = field.modulus();
    let sampler = match rng.gen_range(0..4) {
        0 => Sampler::Uniform,
        1 => Sampler::Line,
        2 => Sampler::Conic,
        _ => Sampler::Plane,
    };
    let mut points: Vec<ProjectivePoint<u64>> = Vec::with_capacity(size);
    let mut seen = HashSet::new();
    let mut push = |raw: Vec<u64>, points: &mut Vec<_>| {
        if let Ok(pt) = normalize_point(field, &raw) {
            if seen.insert(pt.clone()) {
                points.push(pt);
            }
        }
    };

    let basis: Vec<Vec<u64>> = (0..3).map(|_| random_vector(rng, p, n + 1)).collect();
    let structured = match sampler {
        Sampler::Uniform => 0,
        Sampler::Line => rng.gen_range(2..=(mu + 1).min(size).max(2)),
        Sampler::Conic => rng.gen_range(2..=(2 * mu + 1).min(size).max(2)),
        Sampler::Plane => size,
    }
    .min(size);
    // bounded so a degenerate basis cannot loop forever
    for _ in 0..structured * 8 {
        if points.len() >= structured {
            break;
        }
        let raw = match sampler {
            Sampler::Uniform => unreachable!(),
            Sampler::Line => {
                let (s, t) = (rng.gen_range(0..p), rng.gen_range(0..p));
                combine(field, &[s, t], &basis[..2])
            }
            Sampler::Conic => {
                let (s, t) = (rng.gen_range(0..p), rng.gen_range(0..p));
                let st = field.mul(&s, &t);
                combine(field, &[field.mul(&s, &s), st, field.mul(&t, &t)], &basis)
            }
            Sampler::Plane => {
                let c: Vec<u64> = (0..3).map(|_| rng.gen_range(0..p)).collect();
                combine(field, &c, &basis)
            }
        };
        push(raw, &mut points);
    }
    while points.len() < size {
        let raw = random_vector(rng, p, n + 1);
        push(raw, &mut points);
    }
    let config = PointConfiguration::new(field, n, points).expect("distinct points of the right dimension");
    (sampler, config)
}

/// Everything trial `index` is run on, regenerated from the seed.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialInput {
    pub mu: usize,
    pub sampler: Sampler,
    pub points: PointConfiguration<PrimeField>,
    pub opts: CertifyOptions,
}

pub fn trial_input(config: &CampaignConfig, index: usize) -> Result<TrialInput> {
    let field = PrimeField::new(config.prime)?;
    let mut rng = trial_rng(config.seed, index);
    let mu = rng.gen_range(config.mu_min..=config.mu_max);
    let size = rng.gen_range(1..=mu * mu - 1);
    let (sampler, points) = sample_configuration(&mut rng, field, config.ambient_dim, mu, size);
    let opts = CertifyOptions {
        seed: rng.gen(),
        retries: config.retries,
        search_cap: config.search_cap,
    };
    Ok(TrialInput {
        mu,
        sampler,
        points,
        opts,
    })
}

/// Runs one trial; search-cap overruns count as unknown.
pub fn run_trial(config: &CampaignConfig, index: usize) -> Result<TrialOutcome> {
    let TrialInput {
        mu,
        sampler,
        points,
        opts,
    } = trial_input(config, index)?;
    let size = points.len();
    let status = match certify_theorem_hypotheses(&points, mu, None, &opts) {
        Ok(report) => report.status(),
        Err(Error::SearchCapExceeded { .. }) => Status::Unknown,
        Err(e) => return Err(e),
    };
    let defect = (status == Status::Certified).then(|| conditions_defect(&points, 2 * mu as u32 - 3));
    Ok(TrialOutcome {
        index,
        mu,
        size,
        sampler,
        status,
        defect,
    })
}

/// All trials in parallel, returned in index order.
pub fn run_campaign(config: &CampaignConfig) -> Result<(CampaignSummary, Vec<TrialOutcome>)> {
    config.validate()?;
    let outcomes = (0..config.trials)
        .into_par_iter()
        .map(|i| run_trial(config, i))
        .collect::<Result<Vec<_>>>()?;
    Ok((CampaignSummary::from_outcomes(&outcomes), outcomes))
}
