use std::collections::HashMap;

use super::field::Field;

/// All monomials of one total degree in a fixed number of variables,
/// listed in graded-lexicographic order (`x0^m` first, `x_{k-1}^m` last).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    num_vars: usize,
    degree: u32,
    monomials: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl MonomialBasis {
    /// Panics if `num_vars == 0`.
    pub fn new(num_vars: usize, degree: u32) -> Self {
        assert!(num_vars >= 1, "a monomial basis needs at least one variable");
        let mut monomials = Vec::with_capacity(binomial(degree as u64 + num_vars as u64 - 1, num_vars as u64 - 1) as usize);
        let mut current = vec![0u32; num_vars];
        fill(&mut current, 0, degree, &mut monomials);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        MonomialBasis {
            num_vars,
            degree,
            monomials,
            index,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monomials
    }

    pub fn index_of(&self, exponents: &[u32]) -> Option<usize> {
        self.index.get(exponents).copied()
    }

    /// Values of every basis monomial at `coords`.
    pub fn evaluate_all<F: Field>(&self, field: F, coords: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(coords.len(), self.num_vars, "coordinate count mismatch");
        let powers = power_table(field, coords, self.degree);
        self.monomials
            .iter()
            .map(|m| monomial_value(field, &powers, m))
            .collect()
    }
}

fn fill(current: &mut Vec<u32>, var: usize, remaining: u32, out: &mut Vec<Vec<u32>>) {
    if var + 1 == current.len() {
        current[var] = remaining;
        out.push(current.clone());
        return;
    }
    for e in (0..=remaining).rev() {
        current[var] = e;
        fill(current, var + 1, remaining - e, out);
    }
    current[var] = 0;
}

/// `powers[i][e] = coords[i]^e` for `e <= max_degree`.
pub(crate) fn power_table<F: Field>(field: F, coords: &[F::Elem], max_degree: u32) -> Vec<Vec<F::Elem>> {
    coords
        .iter()
        .map(|c| {
            let mut row = Vec::with_capacity(max_degree as usize + 1);
            row.push(field.one());
            for e in 1..=max_degree as usize {
                let next = field.mul(&row[e - 1], c);
                row.push(next);
            }
            row
        })
        .collect()
}

pub(crate) fn monomial_value<F: Field>(field: F, powers: &[Vec<F::Elem>], exponents: &[u32]) -> F::Elem {
    exponents
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .fold(field.one(), |acc, (i, &e)| field.mul(&acc, &powers[i][e as usize]))
}

/// Binomial coefficient, exact in `u64` for the sizes used here.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Dimension of the space of degree-`m` forms on `P^n`: `binomial(m + n, n)`.
pub fn forms_dimension(n: usize, m: u32) -> usize {
    binomial(m as u64 + n as u64, n as u64) as usize
}
