//! Seeded linear projections `P^n --> P^m` and the genericity checks that
//! make them safe to reason through.
//!
//! A draw is accepted for a configuration when no point lies in the center,
//! distinct points stay distinct, and no new collinearities appear.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::curves::collinear_max;
use crate::error::{Error, Result};
use crate::projective::{Field, PointConfiguration};

/// Matrix entries are drawn uniformly from `[-ENTRY_RANGE, ENTRY_RANGE]`.
pub const ENTRY_RANGE: i64 = 10_000;

const MAX_RANK_REDRAWS: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionMap<F: Field> {
    field: F,
    source_dim: usize,
    // (target_dim + 1) rows of (source_dim + 1) entries
    rows: Vec<Vec<F::Elem>>,
    seed: u64,
}

impl<F: Field> ProjectionMap<F> {
    /// Wraps an explicit matrix; fails unless it has full row rank and `n > m >= 1`.
    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>, seed: u64) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.len() < 2 || cols <= rows.len() || rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Precondition(format!(
                "projection matrix must be (m+1) x (n+1) with n > m >= 1, got {} x {cols}",
                rows.len()
            )));
        }
        if field.rank(rows.clone(), cols) != rows.len() {
            return Err(Error::Precondition("projection matrix is rank deficient".into()));
        }
        Ok(ProjectionMap {
            field,
            source_dim: cols - 1,
            rows,
            seed,
        })
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    /// Image of raw coordinates (may be the zero vector for a point of the center).
    pub fn apply_coords(&self, coords: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field;
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(coords)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }
}

/// Draws a full-rank `(m+1) x (n+1)` matrix from the seeded generator.
pub fn random_projection<F: Field>(field: F, n: usize, m: usize, seed: u64) -> Result<ProjectionMap<F>> {
    if m < 2 || n <= m {
        return Err(Error::Precondition(format!(
            "a general projection P^{n} --> P^{m} needs n > m >= 2"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RANK_REDRAWS {
        let rows: Vec<Vec<F::Elem>> = (0..=m)
            .map(|_| {
                (0..=n)
                    .map(|_| field.from_i64(rng.gen_range(-ENTRY_RANGE..=ENTRY_RANGE)))
                    .collect()
            })
            .collect();
        if field.rank(rows.clone(), n + 1) == m + 1 {
            return Ok(ProjectionMap {
                field,
                source_dim: n,
                rows,
                seed,
            });
        }
    }
    Err(Error::RetriesExhausted)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GenericityDefect {
    PointInCenter { index: usize },
    NotInjective { first: usize, second: usize },
    NewCollinearity { before: usize, after: usize },
}

impl std::fmt::Display for GenericityDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GenericityDefect::PointInCenter { index } => write!(f, "point {index} lies in the center"),
            GenericityDefect::NotInjective { first, second } => {
                write!(f, "points {first} and {second} have the same image")
            }
            GenericityDefect::NewCollinearity { before, after } => {
                write!(f, "collinear maximum grew from {before} to {after}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RejectedDraw {
    pub seed: u64,
    pub defect: GenericityDefect,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenericityReport {
    pub accepted_seed: u64,
    pub rejected: Vec<RejectedDraw>,
}

/// Checks one projection against a configuration; returns the image on success.
pub fn validate_projection<F: Field>(
    psi: &ProjectionMap<F>,
    config: &PointConfiguration<F>,
) -> Result<std::result::Result<PointConfiguration<F>, GenericityDefect>> {
    if psi.source_dim() != config.ambient_dim() {
        return Err(Error::WrongAmbientDimension {
            expected: psi.source_dim(),
            found: config.ambient_dim(),
        });
    }
    let f = config.field();
    let mut images = Vec::with_capacity(config.len());
    for (index, p) in config.iter().enumerate() {
        let image = psi.apply_coords(p.coords());
        match crate::projective::normalize_point(f, &image) {
            Ok(point) => images.push(point),
            Err(_) => return Ok(Err(GenericityDefect::PointInCenter { index })),
        }
    }
    let projected = match PointConfiguration::new(f, psi.target_dim(), images) {
        Ok(c) => c,
        Err(Error::DuplicatePoint { first, second }) => {
            return Ok(Err(GenericityDefect::NotInjective { first, second }))
        }
        Err(e) => return Err(e),
    };
    let before = collinear_max(config).0;
    let after = collinear_max(&projected).0;
    if after != before {
        return Ok(Err(GenericityDefect::NewCollinearity { before, after }));
    }
    Ok(Ok(projected))
}

/// Projects `config` by `psi`, redrawing with seeds `psi.seed() + 1, + 2, ...`
/// (up to `retries` extra draws) until every genericity predicate holds.
pub fn project_config<F: Field>(
    psi: &ProjectionMap<F>,
    config: &PointConfiguration<F>,
    retries: usize,
) -> Result<(PointConfiguration<F>, GenericityReport)> {
    let mut rejected = Vec::new();
    let mut current = psi.clone();
    for attempt in 0..=retries {
        if attempt > 0 {
            let seed = psi.seed().wrapping_add(attempt as u64);
            current = random_projection(config.field(), psi.source_dim(), psi.target_dim(), seed)?;
        }
        match validate_projection(&current, config)? {
            Ok(projected) => {
                return Ok((
                    projected,
                    GenericityReport {
                        accepted_seed: current.seed(),
                        rejected,
                    },
                ))
            }
            Err(defect) => rejected.push(RejectedDraw {
                seed: current.seed(),
                defect,
            }),
        }
    }
    let reason = rejected
        .iter()
        .map(|r| format!("seed {}: {}", r.seed, r.defect))
        .collect::<Vec<_>>()
        .join("; ");
    Err(Error::GenericityFailure {
        attempts: retries + 1,
        reason,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::{PrimeField, Rationals};

    #[test]
    fn same_seed_same_matrix() {
        let a = random_projection(Rationals, 3, 2, 42).unwrap();
        let b = random_projection(Rationals, 3, 2, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rows().len(), 3);
        assert_eq!(a.rows()[0].len(), 4);
        let c = random_projection(Rationals, 4, 2, 7).unwrap();
        assert_eq!((c.target_dim(), c.source_dim()), (2, 4));
    }

    #[test]
    fn degenerate_requests_rejected() {
        assert!(random_projection(Rationals, 2, 2, 1).is_err());
        assert!(random_projection(Rationals, 3, 1, 1).is_err());
    }

    #[test]
    fn point_in_center_forces_redraw() {
        // center of this projection is (0:0:0:1)
        let q = Rationals;
        let rows = vec![
            vec![q.one(), q.zero(), q.zero(), q.zero()],
            vec![q.zero(), q.one(), q.zero(), q.zero()],
            vec![q.zero(), q.zero(), q.one(), q.zero()],
        ];
        let psi = ProjectionMap::from_rows(q, rows, 100).unwrap();
        let config = PointConfiguration::from_ints(q, 3, &[vec![0, 0, 0, 1], vec![1, 2, 3, 4]]).unwrap();
        let (image, report) = project_config(&psi, &config, 5).unwrap();
        assert_eq!(image.len(), 2);
        assert_eq!(report.rejected[0].defect, GenericityDefect::PointInCenter { index: 0 });
        assert_ne!(report.accepted_seed, 100);
    }

    #[test]
    fn two_points_stay_distinct() {
        let f = PrimeField::new(101).unwrap();
        let config = PointConfiguration::from_ints(f, 3, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap();
        let psi = random_projection(f, 3, 2, 9).unwrap();
        let (image, _) = project_config(&psi, &config, 10).unwrap();
        assert_eq!(image.len(), 2);
        assert_eq!(image.ambient_dim(), 2);
    }

    #[test]
    fn exhausted_retries_report_failure() {
        // over F_2 every projection of all of P^3 is non-injective
        let f = PrimeField::new(2).unwrap();
        let pts: Vec<_> = crate::projective::point::all_points(f, 3).collect();
        let config = PointConfiguration::new(f, 3, pts).unwrap();
        let psi = random_projection(f, 3, 2, 0).unwrap();
        let err = project_config(&psi, &config, 3).unwrap_err();
        assert!(matches!(err, Error::GenericityFailure { attempts: 4, .. }));
    }
}
