use std::collections::BTreeMap;
use std::fmt;

use super::field::{Field, PrimeField};
use super::monomial::{monomial_value, power_table, MonomialBasis};
use super::point::ProjectivePoint;
use crate::error::{Error, Result};

/// A homogeneous polynomial stored sparsely: exponent tuple to nonzero coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct Form<F: Field> {
    field: F,
    num_vars: usize,
    degree: u32,
    terms: BTreeMap<Vec<u32>, F::Elem>,
}

impl<F: Field> Form<F> {
    pub fn zero(field: F, num_vars: usize, degree: u32) -> Self {
        Form {
            field,
            num_vars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a form from `(exponents, coefficient)` pairs. Repeated exponent
    /// tuples are summed and zero coefficients dropped.
    pub fn from_terms<I>(field: F, num_vars: usize, degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, F::Elem)>,
    {
        let mut form = Self::zero(field, num_vars, degree);
        for (exps, coeff) in terms {
            if exps.len() != num_vars {
                return Err(Error::DimensionMismatch {
                    expected: num_vars,
                    found: exps.len(),
                });
            }
            let total: u32 = exps.iter().sum();
            if total != degree {
                return Err(Error::Precondition(format!(
                    "term {exps:?} has degree {total}, expected {degree}"
                )));
            }
            form.add_term(exps, coeff);
        }
        Ok(form)
    }

    /// The form whose coefficient on `basis.monomials()[j]` is `coeffs[j]`.
    pub fn from_coefficients(field: F, basis: &MonomialBasis, coeffs: &[F::Elem]) -> Self {
        assert_eq!(coeffs.len(), basis.len(), "coefficient count mismatch");
        let terms = basis
            .monomials()
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Form {
            field,
            num_vars: basis.num_vars(),
            degree: basis.degree(),
            terms,
        }
    }

    /// `sum_i coeffs[i] * x_i`.
    pub fn linear(field: F, coeffs: &[F::Elem]) -> Self {
        let n = coeffs.len();
        let terms = coeffs.iter().enumerate().map(|(i, c)| {
            let mut e = vec![0; n];
            e[i] = 1;
            (e, c.clone())
        });
        Self::from_terms(field, n, 1, terms).expect("well-formed linear form")
    }

    pub fn linear_from_ints(field: F, coeffs: &[i64]) -> Self {
        let c: Vec<_> = coeffs.iter().map(|&v| field.from_i64(v)).collect();
        Self::linear(field, &c)
    }

    /// `c * x^exponents` as a single-term form.
    pub fn monomial(field: F, exponents: Vec<u32>, coeff: F::Elem) -> Self {
        let n = exponents.len();
        let d = exponents.iter().sum();
        Self::from_terms(field, n, d, [(exponents, coeff)]).expect("well-formed monomial")
    }

    fn add_term(&mut self, exps: Vec<u32>, coeff: F::Elem) {
        let f = self.field;
        match self.terms.remove(&exps) {
            Some(old) => {
                let sum = f.add(&old, &coeff);
                if !f.is_zero(&sum) {
                    self.terms.insert(exps, sum);
                }
            }
            None => {
                if !f.is_zero(&coeff) {
                    self.terms.insert(exps, coeff);
                }
            }
        }
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &F::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> F::Elem {
        self.terms
            .get(exponents)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Coefficients in the order of `basis`.
    pub fn coefficients_in(&self, basis: &MonomialBasis) -> Vec<F::Elem> {
        assert_eq!(basis.num_vars(), self.num_vars);
        assert_eq!(basis.degree(), self.degree);
        basis.monomials().iter().map(|m| self.coefficient(m)).collect()
    }

    pub fn evaluate(&self, point: &ProjectivePoint<F::Elem>) -> Result<F::Elem> {
        self.evaluate_coords(point.coords())
    }

    /// Evaluation at an arbitrary (not necessarily normalized) coordinate tuple.
    pub fn evaluate_coords(&self, coords: &[F::Elem]) -> Result<F::Elem> {
        if coords.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                found: coords.len(),
            });
        }
        let f = self.field;
        let powers = power_table(f, coords, self.degree);
        Ok(self.terms.iter().fold(f.zero(), |acc, (m, c)| {
            f.add(&acc, &f.mul(c, &monomial_value(f, &powers, m)))
        }))
    }

    pub fn vanishes_at(&self, point: &ProjectivePoint<F::Elem>) -> Result<bool> {
        Ok(self.field.is_zero(&self.evaluate(point)?))
    }

    /// Partial derivative with respect to variable `var`. The derivative of a
    /// degree-0 form is the zero form of degree 0.
    pub fn partial(&self, var: usize) -> Self {
        assert!(var < self.num_vars, "variable index out of range");
        let f = self.field;
        let mut out = Self::zero(f, self.num_vars, self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            let e = m[var];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm[var] -= 1;
            out.add_term(dm, f.mul(c, &f.from_i64(e as i64)));
        }
        out
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.num_vars).map(|v| self.partial(v)).collect()
    }

    /// The symmetric matrix of second partials, as forms.
    pub fn hessian(&self) -> Vec<Vec<Self>> {
        let grad = self.gradient();
        grad.iter()
            .map(|g| (0..self.num_vars).map(|j| g.partial(j)).collect())
            .collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::Precondition(format!(
                "cannot add forms of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = if self.is_zero() { other.clone() } else { self.clone() };
        let rest = if self.is_zero() { self } else { other };
        for (m, c) in &rest.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let f = self.field;
        let mut out = Self::zero(f, self.num_vars, self.degree + other.degree);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, f.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.field;
        let mut out = Self::zero(f, self.num_vars, self.degree);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), f.mul(v, c));
        }
        out
    }

    /// Product of a nonempty list of forms.
    pub fn product(forms: &[Self]) -> Result<Self> {
        let (first, rest) = forms
            .split_first()
            .ok_or_else(|| Error::Precondition("empty product".into()))?;
        rest.iter().try_fold(first.clone(), |acc, g| acc.mul(g))
    }

    /// Re-indexes variables: variable `i` becomes variable `mapping[i]` of a
    /// ring with `num_vars` variables.
    pub fn embed(&self, num_vars: usize, mapping: &[usize]) -> Result<Self> {
        if mapping.len() != self.num_vars || mapping.iter().any(|&v| v >= num_vars) {
            return Err(Error::Precondition("invalid variable mapping".into()));
        }
        let mut out = Self::zero(self.field, num_vars, self.degree);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; num_vars];
            for (i, &x) in m.iter().enumerate() {
                e[mapping[i]] += x;
            }
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    /// Coefficient-wise reduction into `F_p`.
    pub fn reduce_into(&self, target: PrimeField) -> Result<Form<PrimeField>> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.clone(), self.field.reduce_into(c, target)?)))
            .collect::<Result<Vec<_>>>()?;
        Form::from_terms(target, self.num_vars, self.degree, terms)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                found: other.num_vars,
            });
        }
        Ok(())
    }
}

impl<F: Field> fmt::Display for Form<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (v, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{v}")?,
                    _ => write!(f, "*x{v}^{e}")?,
                }
            }
        }
        Ok(())
    }
}
