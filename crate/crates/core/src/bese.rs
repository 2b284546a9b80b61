//! Base points of the plane linear system of degree-`xi` curves through a
//! point set, pulled back to the blowup at those points.
//!
//! The system `|xi H - E_1 - ... - E_delta|` on the blowup is base point free
//! iff (a) the degree-`xi` forms through the points have no other common
//! zero, and (b) at every blown-up point the gradients of those forms span
//! the full cotangent plane, so every tangent direction is separated.
//! Condition (a) is decided by scanning `P^2(F_p)`; the result therefore
//! certifies freeness over `F_p` only.

use rayon::prelude::*;
use serde::Serialize;

use crate::curves::{max_on_plane_curve, vanishing_system};
use crate::error::{Error, Result};
use crate::hypersurface::ScanBudget;
use crate::projective::point::{all_points, count_points};
use crate::projective::{forms_dimension, Field, Matrix, PointConfiguration, PrimeField, ProjectivePoint};

/// `floor((xi + 3) / 2)`, the largest curve degree the hypotheses constrain.
pub fn max_constrained_degree(xi: u32) -> u32 {
    (xi + 3) / 2
}

/// `max{ h (xi + 3 - h) - 1, h^2 }` with `h = floor((xi + 3) / 2)`.
pub fn cardinality_bound(xi: u32) -> usize {
    let h = max_constrained_degree(xi) as usize;
    let s = xi as usize + 3;
    (h * (s - h) - 1).max(h * h)
}

/// `k (xi + 3 - k) - 2`, the most points allowed on a degree-`k` curve.
pub fn curve_bound(xi: u32, k: u32) -> usize {
    (k as usize * (xi as usize + 3 - k as usize)).saturating_sub(2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveClause {
    pub degree: u32,
    pub bound: usize,
    /// `None` when the clause holds trivially because `delta <= bound`.
    pub max_found: Option<usize>,
    pub ok: bool,
    pub witness: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BeseHypotheses {
    pub xi: u32,
    pub delta: usize,
    pub cardinality_bound: usize,
    pub cardinality_ok: bool,
    pub curve_clauses: Vec<CurveClause>,
}

impl BeseHypotheses {
    pub fn ok(&self) -> bool {
        self.cardinality_ok && self.curve_clauses.iter().all(|c| c.ok)
    }
}

fn check_input<F: Field>(points: &PointConfiguration<F>, xi: u32) -> Result<()> {
    if points.ambient_dim() != 2 {
        return Err(Error::WrongAmbientDimension {
            expected: 2,
            found: points.ambient_dim(),
        });
    }
    if xi < 3 {
        return Err(Error::Precondition(format!("xi must be at least 3, got {xi}")));
    }
    Ok(())
}

/// Evaluates both hypotheses exactly; the curve clause runs
/// `k = 1, ..., floor((xi + 3) / 2)`.
pub fn bese_hypotheses<F: Field>(
    points: &PointConfiguration<F>,
    xi: u32,
    search_cap: usize,
) -> Result<BeseHypotheses> {
    check_input(points, xi)?;
    let delta = points.len();
    let card = cardinality_bound(xi);
    let mut curve_clauses = Vec::new();
    for k in 1..=max_constrained_degree(xi) {
        let bound = curve_bound(xi, k);
        let clause = if delta <= bound {
            CurveClause {
                degree: k,
                bound,
                max_found: None,
                ok: true,
                witness: None,
            }
        } else {
            let best = max_on_plane_curve(points, k, search_cap)?;
            let ok = best.count <= bound;
            CurveClause {
                degree: k,
                bound,
                max_found: Some(best.count),
                ok,
                witness: (!ok).then_some(best.witness),
            }
        };
        curve_clauses.push(clause);
    }
    Ok(BeseHypotheses {
        xi,
        delta,
        cardinality_bound: card,
        cardinality_ok: delta <= card,
        curve_clauses,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BeseReport {
    pub xi: u32,
    pub delta: usize,
    pub prime: u64,
    pub system_dim: usize,
    /// `binomial(xi + 2, 2) - delta`; equals `system_dim` iff the points
    /// impose independent conditions.
    pub expected_dim: i64,
    pub extra_base_points: Vec<ProjectivePoint<u64>>,
    /// Input points where the gradients span rank below 2.
    pub tangent_deficient_points: Vec<usize>,
    /// Input points where every form of the system is singular (gradient rank 0).
    pub exceptional_in_base_locus: Vec<usize>,
}

impl BeseReport {
    pub fn base_point_free(&self) -> bool {
        self.extra_base_points.is_empty() && self.tangent_deficient_points.is_empty()
    }
}

/// Base-point-freeness of the blown-up degree-`xi` system over `F_p`.
pub fn base_point_free_check(
    points: &PointConfiguration<PrimeField>,
    xi: u32,
    budget: ScanBudget,
) -> Result<BeseReport> {
    check_input(points, xi)?;
    let field = points.field();
    let p = field.modulus();
    budget.check(count_points(p, 2))?;

    let system = vanishing_system(points, xi);
    let delta = points.len();

    let extra_base_points: Vec<ProjectivePoint<u64>> = {
        let candidates: Vec<_> = all_points(field, 2).collect();
        candidates
            .into_par_iter()
            .filter(|q| !points.contains(q))
            .filter(|q| system.iter().all(|g| g.vanishes_at(q).expect("plane point")))
            .collect()
    };

    let gradients: Vec<_> = system.iter().map(|g| g.gradient()).collect();
    let mut tangent_deficient_points = Vec::new();
    let mut exceptional_in_base_locus = Vec::new();
    for (i, pt) in points.iter().enumerate() {
        let rows = gradients
            .iter()
            .map(|grad| grad.iter().map(|d| d.evaluate(pt)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let rank = Matrix::from_rows(field, 3, rows).rank();
        if rank < 2 {
            tangent_deficient_points.push(i);
        }
        if rank == 0 {
            exceptional_in_base_locus.push(i);
        }
    }

    Ok(BeseReport {
        xi,
        delta,
        prime: p,
        system_dim: system.len(),
        expected_dim: forms_dimension(2, xi) as i64 - delta as i64,
        extra_base_points,
        tangent_deficient_points,
        exceptional_in_base_locus,
    })
}
