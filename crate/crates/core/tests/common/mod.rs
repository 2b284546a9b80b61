//! Independent oracles for the integration tests: plain fraction Gauss
//! elimination, monomials by recursion, brute-force subset search, and
//! derivatives taken term by term. None of them call the library's
//! linear algebra.
#![allow(dead_code)]

use cbkit::documents::PolynomialDocument;
use cbkit::hypersurface::{random_example, HypersurfaceSpec, SingularityCensus};
use cbkit::projective::{Form, PointConfiguration, PrimeField, Rationals};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exponent vectors of total degree `m` in `n` variables.
pub fn monomials(n: usize, m: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![m]];
    }
    let mut out = Vec::new();
    for first in 0..=m {
        for mut rest in monomials(n - 1, m - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn eval_row_q(coords: &[BigRational], m: u32) -> Vec<BigRational> {
    monomials(coords.len(), m)
        .iter()
        .map(|e| {
            e.iter()
                .zip(coords)
                .fold(BigRational::one(), |acc, (&k, c)| acc * num_traits::pow(c.clone(), k as usize))
        })
        .collect()
}

pub fn eval_row_p(coords: &[u64], m: u32, p: u64) -> Vec<u64> {
    monomials(coords.len(), m)
        .iter()
        .map(|e| {
            e.iter()
                .zip(coords)
                .fold(1u64, |acc, (&k, &c)| (0..k).fold(acc, |a, _| a * c % p))
        })
        .collect()
}

pub fn rank_q(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let lead = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let factor = &rows[r][c] / &lead;
                for k in c..cols {
                    let t = &factor * &rows[rank][k];
                    rows[r][k] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn inv_p(a: u64, p: u64) -> u64 {
    // Fermat
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

pub fn rank_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] % p != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_p(rows[rank][c], p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] % p != 0 {
                let factor = rows[r][c] * inv % p;
                for k in c..cols {
                    rows[r][k] = (rows[r][k] + p * p - factor * rows[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn defect_q(config: &PointConfiguration<Rationals>, m: u32) -> usize {
    let rows: Vec<_> = config.iter().map(|pt| eval_row_q(pt.coords(), m)).collect();
    config.len() - rank_q(rows)
}

pub fn defect_p(config: &PointConfiguration<PrimeField>, m: u32) -> usize {
    let p = config.field().modulus();
    let rows: Vec<_> = config.iter().map(|pt| eval_row_p(pt.coords(), m, p)).collect();
    config.len() - rank_p(rows, p)
}

/// Whether the chosen points lie on a common degree-`k` curve.
pub fn on_curve_p(config: &PointConfiguration<PrimeField>, subset: &[usize], k: u32) -> bool {
    let p = config.field().modulus();
    let n = monomials(config.num_vars(), k).len();
    let rows: Vec<_> = subset
        .iter()
        .map(|&i| eval_row_p(config.points()[i].coords(), k, p))
        .collect();
    rank_p(rows, p) < n
}

/// Largest number of points on one degree-`k` curve, over every subset.
pub fn naive_max_on_curve_p(config: &PointConfiguration<PrimeField>, k: u32) -> usize {
    let len = config.len();
    assert!(len <= 16, "exhaustive oracle is exponential");
    let mut best = 0;
    for mask in 0u32..(1 << len) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let subset: Vec<usize> = (0..len).filter(|i| mask >> i & 1 == 1).collect();
        if on_curve_p(config, &subset, k) {
            best = size;
        }
    }
    best
}

/// Line coefficient vectors `(1, a, a^2)`: distinct values of `a` give lines
/// tangent to one conic, so no three are concurrent.
pub fn conic_tangent_lines(values: impl Iterator<Item = i64>) -> Vec<Form<Rationals>> {
    values
        .map(|a| Form::linear_from_ints(Rationals, &[1, a, a * a]))
        .collect()
}

/// The seeded degree-`d` example the CLI writes for `--seed d`.
pub fn example(d: u32) -> (HypersurfaceSpec<Rationals>, SingularityCensus<Rationals>) {
    let ex = random_example(d, d as u64, 16).expect("usable lines");
    (ex.spec, ex.census)
}

/// `df/dx_var` at `coords`, differentiating each term directly.
pub fn partial_at(doc: &PolynomialDocument, var: usize, coords: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (exps, c) in &doc.terms {
        if exps[var] == 0 {
            continue;
        }
        let mut term = c * q(exps[var] as i64);
        for (i, &e) in exps.iter().enumerate() {
            let e = if i == var { e - 1 } else { e };
            term *= num_traits::pow(coords[i].clone(), e as usize);
        }
        acc += term;
    }
    acc
}

/// Full projective Hessian at `coords`, term by term.
pub fn hessian_at(doc: &PolynomialDocument, coords: &[BigRational]) -> Vec<Vec<BigRational>> {
    let n = doc.num_vars;
    let mut h = vec![vec![BigRational::zero(); n]; n];
    for (exps, c) in &doc.terms {
        for i in 0..n {
            for j in 0..n {
                let mut e = exps.clone();
                let mut coeff = c.clone();
                for v in [i, j] {
                    if e[v] == 0 {
                        coeff = BigRational::zero();
                        break;
                    }
                    coeff *= q(e[v] as i64);
                    e[v] -= 1;
                }
                if coeff.is_zero() {
                    continue;
                }
                let mono = e
                    .iter()
                    .zip(coords)
                    .fold(BigRational::one(), |acc, (&k, x)| acc * num_traits::pow(x.clone(), k as usize));
                h[i][j] += coeff * mono;
            }
        }
    }
    h
}

/// A singular point of a degree-`d` hypersurface in characteristic 0 is a
/// node iff the full 5x5 Hessian has rank 4 (the point spans its kernel).
pub fn is_node_oracle(doc: &PolynomialDocument, coords: &[BigRational]) -> bool {
    rank_q(hessian_at(doc, coords)) == doc.num_vars - 1
}
