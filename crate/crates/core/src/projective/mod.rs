//! Exact scalars, projective points, monomial bases, forms and exact rank.

pub mod field;
pub mod form;
pub mod matrix;
pub mod monomial;
pub mod point;

pub use field::{Field, FieldDescriptor, PrimeField, Rationals};
pub use form::Form;
pub use matrix::{Matrix, RowSpace};
pub use monomial::{binomial, forms_dimension, MonomialBasis};
pub use point::{normalize_point, point_from_ints, reduce_point, PointConfiguration, ProjectivePoint};

/// The linear-conditions map of a configuration in degree `m`: row `i`
/// holds every basis monomial evaluated at point `i`.
#[derive(Debug, Clone)]
pub struct EvaluationMatrix<F: Field> {
    pub basis: MonomialBasis,
    pub matrix: Matrix<F>,
}

impl<F: Field> EvaluationMatrix<F> {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn nrows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.matrix.ncols()
    }
}

pub fn evaluation_matrix<F: Field>(config: &PointConfiguration<F>, degree: u32) -> EvaluationMatrix<F> {
    let basis = MonomialBasis::new(config.num_vars(), degree);
    let matrix = evaluation_rows(config, &basis);
    EvaluationMatrix { basis, matrix }
}

pub(crate) fn evaluation_rows<F: Field>(config: &PointConfiguration<F>, basis: &MonomialBasis) -> Matrix<F> {
    let f = config.field();
    let rows = config
        .iter()
        .map(|p| basis.evaluate_all(f, p.coords()))
        .collect();
    Matrix::from_rows(f, basis.len(), rows)
}

/// Rank of the degree-`m` evaluation matrix.
pub fn conditions_rank<F: Field>(config: &PointConfiguration<F>, degree: u32) -> usize {
    evaluation_matrix(config, degree).rank()
}
