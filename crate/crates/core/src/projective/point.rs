use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::field::{Field, PrimeField};
use crate::error::{Error, Result};

/// A point of projective space, stored as its canonical representative:
/// the first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(transparent)]
pub struct ProjectivePoint<E> {
    coords: Vec<E>,
}

impl<E: Clone> ProjectivePoint<E> {
    pub fn coords(&self) -> &[E] {
        &self.coords
    }

    /// `n` for a point of `P^n`.
    pub fn ambient_dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn into_coords(self) -> Vec<E> {
        self.coords
    }
}

impl<E: fmt::Display> fmt::Display for ProjectivePoint<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, " : ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Scales `raw` so that its first nonzero coordinate becomes 1.
pub fn normalize_point<F: Field>(field: F, raw: &[F::Elem]) -> Result<ProjectivePoint<F::Elem>> {
    let lead = raw
        .iter()
        .find(|c| !field.is_zero(c))
        .ok_or(Error::AllZeroCoordinates)?;
    let inv = field.inv(lead).expect("nonzero lead");
    Ok(ProjectivePoint {
        coords: raw.iter().map(|c| field.mul(c, &inv)).collect(),
    })
}

/// Convenience constructor from integer coordinates.
pub fn point_from_ints<F: Field>(field: F, raw: &[i64]) -> Result<ProjectivePoint<F::Elem>> {
    let coords: Vec<_> = raw.iter().map(|&v| field.from_i64(v)).collect();
    normalize_point(field, &coords)
}

/// An ordered list of distinct points of `P^n` over one field.
#[derive(Debug, Clone, PartialEq)]
pub struct PointConfiguration<F: Field> {
    field: F,
    ambient_dim: usize,
    points: Vec<ProjectivePoint<F::Elem>>,
}

impl<F: Field> PointConfiguration<F> {
    /// Fails on a dimension mismatch or a repeated point.
    pub fn new(
        field: F,
        ambient_dim: usize,
        points: Vec<ProjectivePoint<F::Elem>>,
    ) -> Result<Self> {
        let mut seen: HashMap<&ProjectivePoint<F::Elem>, usize> = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            if p.coords.len() != ambient_dim + 1 {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim + 1,
                    found: p.coords.len(),
                });
            }
            if let Some(&first) = seen.get(p) {
                return Err(Error::DuplicatePoint { first, second: i });
            }
            seen.insert(p, i);
        }
        Ok(PointConfiguration {
            field,
            ambient_dim,
            points,
        })
    }

    pub fn empty(field: F, ambient_dim: usize) -> Self {
        PointConfiguration {
            field,
            ambient_dim,
            points: Vec::new(),
        }
    }

    /// Normalizes every raw tuple, then validates as in [`PointConfiguration::new`].
    pub fn from_raw(field: F, ambient_dim: usize, raw: &[Vec<F::Elem>]) -> Result<Self> {
        let points = raw
            .iter()
            .map(|r| normalize_point(field, r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, ambient_dim, points)
    }

    pub fn from_ints(field: F, ambient_dim: usize, raw: &[Vec<i64>]) -> Result<Self> {
        let points = raw
            .iter()
            .map(|r| point_from_ints(field, r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, ambient_dim, points)
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn num_vars(&self) -> usize {
        self.ambient_dim + 1
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ProjectivePoint<F::Elem>] {
        &self.points
    }

    pub fn point(&self, index: usize) -> Result<&ProjectivePoint<F::Elem>> {
        self.points.get(index).ok_or(Error::IndexOutOfRange {
            index,
            len: self.points.len(),
        })
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ProjectivePoint<F::Elem>> {
        self.points.iter()
    }

    /// The configuration with point `index` removed.
    pub fn without(&self, index: usize) -> Result<Self> {
        self.point(index)?;
        let mut points = self.points.clone();
        points.remove(index);
        Ok(PointConfiguration { points, ..self.clone() })
    }

    /// The sub-configuration at the given indices, in the given order.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        let points = indices
            .iter()
            .map(|&i| self.point(i).cloned())
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.field, self.ambient_dim, points)
    }

    /// Appends a point; fails if it is already present.
    pub fn with_point(&self, point: ProjectivePoint<F::Elem>) -> Result<Self> {
        let mut points = self.points.clone();
        points.push(point);
        Self::new(self.field, self.ambient_dim, points)
    }

    pub fn contains(&self, point: &ProjectivePoint<F::Elem>) -> bool {
        self.points.contains(point)
    }

    /// Points sorted by their normalized coordinates.
    pub fn sorted(&self) -> Self {
        let mut points = self.points.clone();
        points.sort();
        PointConfiguration { points, ..self.clone() }
    }

    /// Applies the linear map `rows` (target coordinates as rows) to every
    /// point. Fails if some image is the zero vector or if two images coincide.
    pub fn map_linear(&self, rows: &[Vec<F::Elem>]) -> Result<Self> {
        let f = self.field;
        if rows.iter().any(|r| r.len() != self.num_vars()) {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars(),
                found: rows.first().map_or(0, |r| r.len()),
            });
        }
        let images = self
            .points
            .iter()
            .map(|p| {
                let image: Vec<_> = rows
                    .iter()
                    .map(|r| {
                        r.iter()
                            .zip(p.coords())
                            .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
                    })
                    .collect();
                normalize_point(f, &image)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(f, rows.len().saturating_sub(1), images)
    }

    /// Reduces mod p through the primitive integer representative of each
    /// point, so denominators never get in the way. Fails when two points
    /// collide mod p.
    pub fn reduce_into(&self, target: PrimeField) -> Result<PointConfiguration<PrimeField>> {
        let raw: Vec<Vec<u64>> = self
            .points
            .iter()
            .map(|pt| reduce_point(self.field, pt, target).coords)
            .collect();
        PointConfiguration::from_raw(target, self.ambient_dim, &raw)
    }
}

impl<'a, F: Field> IntoIterator for &'a PointConfiguration<F> {
    type Item = &'a ProjectivePoint<F::Elem>;
    type IntoIter = std::slice::Iter<'a, ProjectivePoint<F::Elem>>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// Reduction mod p of one point via its primitive integer representative;
/// defined for every point and every prime.
pub fn reduce_point<F: Field>(field: F, point: &ProjectivePoint<F::Elem>, target: PrimeField) -> ProjectivePoint<u64> {
    let p = BigInt::from(target.modulus());
    let lifted: Vec<BigRational> = point.coords().iter().map(|c| field.lift(c)).collect();
    let lcm = lifted.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = lifted.iter().map(|c| (c * &lcm).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let residues: Vec<u64> = ints
        .iter()
        .map(|c| (c / &gcd).mod_floor(&p).to_u64().expect("residue fits"))
        .collect();
    normalize_point(target, &residues).expect("a primitive vector survives reduction")
}

/// Every point of `P^n(F_p)` in normalized form, ordered by the position of
/// the leading 1 and then lexicographically.
pub fn all_points(field: PrimeField, n: usize) -> impl Iterator<Item = ProjectivePoint<u64>> {
    let p = field.modulus();
    (0..=n).flat_map(move |lead| {
        let tail = n - lead;
        let count = p.pow(tail as u32);
        (0..count).map(move |mut code| {
            let mut coords = vec![0u64; n + 1];
            coords[lead] = 1;
            for c in (lead + 1..=n).rev() {
                coords[c] = code % p;
                code /= p;
            }
            ProjectivePoint { coords }
        })
    })
}

/// `|P^n(F_p)| = (p^{n+1} - 1) / (p - 1)`.
pub fn count_points(p: u64, n: usize) -> u128 {
    (0..=n as u32).map(|e| (p as u128).pow(e)).sum()
}
