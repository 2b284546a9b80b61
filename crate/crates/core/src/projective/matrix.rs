//! Dense exact matrices: rank, reduced row echelon form, kernels.
//!
//! Over `F_p` everything is plain Gaussian elimination. Over the rationals the
//! rank is computed fraction-free: rows are cleared of denominators and then
//! reduced with Bareiss' exact-division scheme on integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::Field;

/// A dense row-major matrix over an exact field.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    cols: usize,
    rows: Vec<Vec<F::Elem>>,
}

impl<F: Field> Matrix<F> {
    /// Panics if a row length differs from `cols`.
    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        Matrix { field, cols, rows }
    }

    pub fn zeros(field: F, nrows: usize, cols: usize) -> Self {
        Matrix {
            field,
            cols,
            rows: vec![vec![field.zero(); cols]; nrows],
        }
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.rows[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: F::Elem) {
        self.rows[r][c] = value;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.field.rank(self.rows.clone(), self.cols)
    }

    /// Same matrix without row `skip`.
    pub fn without_row(&self, skip: usize) -> Self {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .map(|(_, r)| r.clone())
            .collect();
        Matrix {
            field: self.field,
            cols: self.cols,
            rows,
        }
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.cols)
            .map(|c| self.rows.iter().map(|r| r[c].clone()).collect())
            .collect();
        Matrix {
            field: self.field,
            cols: self.rows.len(),
            rows,
        }
    }

    /// Basis of `{ v : M v = 0 }`, one vector per free column in increasing
    /// column order, with that free coordinate set to 1 and the other free
    /// coordinates set to 0.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        kernel_basis(self.field, self.rows.clone(), self.cols)
    }
}

/// Gaussian elimination rank.
pub fn gaussian_rank<F: Field>(field: F, mut rows: Vec<Vec<F::Elem>>, cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !field.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(&rows[rank][col]).expect("nonzero pivot");
        for r in rank + 1..rows.len() {
            if field.is_zero(&rows[r][col]) {
                continue;
            }
            let factor = field.mul(&rows[r][col], &inv);
            for c in col..cols {
                let t = field.mul(&factor, &rows[rank][c]);
                rows[r][c] = field.sub(&rows[r][c], &t);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Rank over the rationals: clear denominators row by row, then run Bareiss.
pub fn rational_rank(rows: Vec<Vec<BigRational>>, cols: usize) -> usize {
    let int_rows = rows
        .into_iter()
        .map(|row| {
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.into_iter()
                .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
                .collect()
        })
        .collect();
    bareiss_rank(int_rows, cols)
}

/// Fraction-free rank of an integer matrix. After each step, every active
/// entry is a minor of the original matrix, so the division by the previous
/// pivot is exact.
pub fn bareiss_rank(mut rows: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let nrows = rows.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (top, bottom) = rows.split_at_mut(rank + 1);
        let prow = &top[rank];
        let pval = prow[col].clone();
        for row in bottom.iter_mut() {
            let lead = std::mem::take(&mut row[col]);
            for c in col + 1..cols {
                let num = &pval * &row[c] - &lead * &prow[c];
                debug_assert!((&num % &prev).is_zero(), "inexact Bareiss division");
                row[c] = num / &prev;
            }
        }
        prev = pval;
        rank += 1;
    }
    rank
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref<F: Field>(
    field: F,
    mut rows: Vec<Vec<F::Elem>>,
    cols: usize,
) -> (Vec<Vec<F::Elem>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !field.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(&rows[rank][col]).expect("nonzero pivot");
        for c in col..cols {
            rows[rank][c] = field.mul(&rows[rank][c], &inv);
        }
        for r in 0..rows.len() {
            if r == rank || field.is_zero(&rows[r][col]) {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..cols {
                let t = field.mul(&factor, &rows[rank][c]);
                rows[r][c] = field.sub(&rows[r][c], &t);
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// Kernel basis in the canonical free-column order (see [`Matrix::kernel_basis`]).
pub fn kernel_basis<F: Field>(field: F, rows: Vec<Vec<F::Elem>>, cols: usize) -> Vec<Vec<F::Elem>> {
    let (reduced, pivots) = rref(field, rows, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); cols];
            v[free] = field.one();
            for (row, &pc) in reduced.iter().zip(&pivots) {
                v[pc] = field.neg(&row[free]);
            }
            v
        })
        .collect()
}

/// Incrementally maintained row space in reduced echelon form.
///
/// Used by the subset searches, which repeatedly ask whether a new row lies in
/// the span of the rows chosen so far.
#[derive(Debug, Clone)]
pub struct RowSpace<F: Field> {
    field: F,
    cols: usize,
    // (pivot column, row normalized to 1 at the pivot)
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> RowSpace<F> {
    pub fn new(field: F, cols: usize) -> Self {
        RowSpace {
            field,
            cols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    fn reduce(&self, row: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field;
        let mut v = row.to_vec();
        for (pc, basis) in &self.rows {
            if f.is_zero(&v[*pc]) {
                continue;
            }
            let factor = v[*pc].clone();
            for c in 0..self.cols {
                if !f.is_zero(&basis[c]) {
                    let t = f.mul(&factor, &basis[c]);
                    v[c] = f.sub(&v[c], &t);
                }
            }
        }
        v
    }

    pub fn contains(&self, row: &[F::Elem]) -> bool {
        self.reduce(row).iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `row`; returns false (and leaves the space unchanged) if it was already in the span.
    pub fn insert(&mut self, row: &[F::Elem]) -> bool {
        let f = self.field;
        let mut v = self.reduce(row);
        let Some(pc) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[pc]).expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for (_, basis) in self.rows.iter_mut() {
            if f.is_zero(&basis[pc]) {
                continue;
            }
            let factor = basis[pc].clone();
            for c in 0..self.cols {
                let t = f.mul(&factor, &v[c]);
                basis[c] = f.sub(&basis[c], &t);
            }
        }
        self.rows.push((pc, v));
        true
    }
}
