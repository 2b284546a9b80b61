//! Independence of the linear conditions a point set imposes on forms of a
//! given degree.
//!
//! A configuration `S` imposes independent conditions on degree-`m` forms
//! when its evaluation matrix has full row rank. The defect `|S| - rank` is
//! the failure of independence; a point is *forced* when every degree-`m`
//! form through the other points also passes through it.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::projective::matrix::kernel_basis;
use crate::projective::{evaluation_matrix, Field, Form, PointConfiguration};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionsReport {
    pub config_size: usize,
    pub degree: u32,
    pub rank: usize,
    pub defect: usize,
    pub forced_points: Vec<usize>,
}

impl ConditionsReport {
    pub fn is_independent(&self) -> bool {
        self.defect == 0
    }
}

/// `|S| - rank` of the degree-`m` evaluation matrix.
pub fn conditions_defect<F: Field>(config: &PointConfiguration<F>, degree: u32) -> usize {
    config.len() - evaluation_matrix(config, degree).rank()
}

/// Indices `i` whose deletion leaves the rank unchanged.
pub fn forced_points<F: Field>(config: &PointConfiguration<F>, degree: u32) -> Vec<usize> {
    forced_with_rank(config, degree).1
}

fn forced_with_rank<F: Field>(config: &PointConfiguration<F>, degree: u32) -> (usize, Vec<usize>) {
    let eval = evaluation_matrix(config, degree);
    let rank = eval.rank();
    if rank == config.len() {
        return (rank, Vec::new());
    }
    let forced = (0..config.len())
        .into_par_iter()
        .filter(|&i| eval.matrix.without_row(i).rank() == rank)
        .collect();
    (rank, forced)
}

pub fn conditions_report<F: Field>(config: &PointConfiguration<F>, degree: u32) -> ConditionsReport {
    let (rank, forced) = forced_with_rank(config, degree);
    ConditionsReport {
        config_size: config.len(),
        degree,
        rank,
        defect: config.len() - rank,
        forced_points: forced,
    }
}

/// A degree-`m` form vanishing on every point except `index` and nonzero at
/// `index`, or `None` when that point is forced.
///
/// The form is the first vector of the canonical kernel basis of the
/// evaluation matrix of the remaining points (free columns in graded-lex
/// order) that does not vanish at the chosen point.
pub fn separating_form<F: Field>(
    config: &PointConfiguration<F>,
    index: usize,
    degree: u32,
) -> Result<Option<Form<F>>> {
    let target = config.point(index)?.clone();
    let rest = config.without(index)?;
    let eval = evaluation_matrix(&rest, degree);
    let f = config.field();
    let kernel = kernel_basis(f, eval.matrix.rows().to_vec(), eval.ncols());
    for coeffs in kernel {
        let form = Form::from_coefficients(f, &eval.basis, &coeffs);
        if !form.vanishes_at(&target)? {
            return Ok(Some(form));
        }
    }
    Ok(None)
}
