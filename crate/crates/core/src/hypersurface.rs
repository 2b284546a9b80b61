//! Hypersurfaces in `P^4`: the non-factorial boundary family, singular point
//! censuses, the node test, and factoriality verdicts.
//!
//! Coordinates are `(x, y, z, t, u)`, variables 0 through 4. A nodal
//! hypersurface of degree `d` is factorial exactly when its singular points
//! impose independent conditions on forms of degree `2d - 5`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::conditions::conditions_defect;
use crate::curves::{certify_theorem_hypotheses, CertifyOptions, HypothesisReport};
use crate::error::{Error, Result};
use crate::projective::point::{all_points, count_points};
use crate::projective::{
    normalize_point, reduce_point, Field, Form, Matrix, PointConfiguration, PrimeField, ProjectivePoint,
    Rationals,
};

pub const NUM_VARS: usize = 5;

/// Largest prime accepted for a `P^4(F_p)` scan regardless of the budget.
pub const MAX_SCAN_PRIME: u64 = 101;

/// Environment variable overriding the scan budget (a point count).
pub const BUDGET_ENV: &str = "CBKIT_BUDGET";

/// Upper bound on the number of projective points a scan may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanBudget {
    pub max_points: u128,
}

impl Default for ScanBudget {
    /// Enough for `P^4(F_31)`.
    fn default() -> Self {
        ScanBudget {
            max_points: count_points(31, 4),
        }
    }
}

impl ScanBudget {
    /// The default, overridden by a positive integer in `CBKIT_BUDGET`.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u128>().ok())
            .map(|max_points| ScanBudget { max_points })
            .unwrap_or_default()
    }

    pub fn check(&self, points: u128) -> Result<()> {
        if points > self.max_points {
            return Err(Error::BudgetExceeded {
                points,
                budget: self.max_points,
            });
        }
        Ok(())
    }
}

/// A hypersurface `f = 0` in `P^4`.
#[derive(Debug, Clone, PartialEq)]
pub struct HypersurfaceSpec<F: Field> {
    form: Form<F>,
}

impl<F: Field> HypersurfaceSpec<F> {
    pub fn new(form: Form<F>) -> Result<Self> {
        if form.num_vars() != NUM_VARS {
            return Err(Error::DimensionMismatch {
                expected: NUM_VARS,
                found: form.num_vars(),
            });
        }
        if form.is_zero() || form.degree() == 0 {
            return Err(Error::Precondition("hypersurface equation must be a nonzero form of positive degree".into()));
        }
        Ok(HypersurfaceSpec { form })
    }

    pub fn form(&self) -> &Form<F> {
        &self.form
    }

    pub fn degree(&self) -> u32 {
        self.form.degree()
    }

    /// Whether `f` and all five partials vanish at `point`.
    pub fn is_singular_at(&self, point: &ProjectivePoint<F::Elem>) -> Result<bool> {
        if !self.form.vanishes_at(point)? {
            return Ok(false);
        }
        for g in self.form.gradient() {
            if !g.vanishes_at(point)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Singular points of a hypersurface with their node flags.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularityCensus<F: Field> {
    pub points: PointConfiguration<F>,
    pub node_flags: Vec<bool>,
    /// True only for an exhaustive scan, and then only relative to the scanned field.
    pub complete: bool,
}

impl<F: Field> SingularityCensus<F> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn all_nodes(&self) -> bool {
        self.node_flags.iter().all(|&b| b)
    }

    pub fn without(&self, index: usize) -> Result<Self> {
        let points = self.points.without(index)?;
        let mut node_flags = self.node_flags.clone();
        node_flags.remove(index);
        Ok(SingularityCensus {
            points,
            node_flags,
            complete: false,
        })
    }
}

fn line_coefficients<F: Field>(line: &Form<F>) -> Result<[F::Elem; 3]> {
    if line.num_vars() != 3 || line.degree() != 1 || line.is_zero() {
        return Err(Error::Precondition("expected a nonzero linear form in (z, t, u)".into()));
    }
    Ok([
        line.coefficient(&[1, 0, 0]),
        line.coefficient(&[0, 1, 0]),
        line.coefficient(&[0, 0, 1]),
    ])
}

fn cross<F: Field>(field: F, a: &[F::Elem; 3], b: &[F::Elem; 3]) -> [F::Elem; 3] {
    let m = |i: usize, j: usize| field.sub(&field.mul(&a[i], &b[j]), &field.mul(&a[j], &b[i]));
    [m(1, 2), m(2, 0), m(0, 1)]
}

fn dot<F: Field>(field: F, a: &[F::Elem; 3], b: &[F::Elem; 3]) -> F::Elem {
    (0..3).fold(field.zero(), |acc, i| field.add(&acc, &field.mul(&a[i], &b[i])))
}

/// The boundary hypersurface
/// `x * L_1 ... L_{d-1} + y * M_1 ... M_{d-1} + x^d + y^d = 0`
/// and its `(d - 1)^2` singular points, the grid `x = y = L_i = M_j = 0`.
///
/// The lines are linear forms in `(z, t, u)`. They must be pairwise
/// distinct and no line other than `L_i` and `M_j` may pass through the grid
/// point `L_i = M_j = 0`. The `x^d + y^d` term does not change the equation on
/// the plane `x = y = 0` to second order; it keeps the singular locus from
/// containing the line `z = t = u = 0`.
pub fn generate_example<F: Field>(
    degree: u32,
    lines_l: &[Form<F>],
    lines_m: &[Form<F>],
) -> Result<(HypersurfaceSpec<F>, SingularityCensus<F>)> {
    if degree < 3 {
        return Err(Error::Precondition(format!("degree must be at least 3, got {degree}")));
    }
    let count = degree as usize - 1;
    if lines_l.len() != count || lines_m.len() != count {
        return Err(Error::Precondition(format!(
            "need {count} lines in each family, got {} and {}",
            lines_l.len(),
            lines_m.len()
        )));
    }
    let field = lines_l[0].field();
    let l: Vec<_> = lines_l.iter().map(line_coefficients).collect::<Result<_>>()?;
    let m: Vec<_> = lines_m.iter().map(line_coefficients).collect::<Result<_>>()?;
    let all: Vec<&[F::Elem; 3]> = l.iter().chain(&m).collect();
    for a in 0..all.len() {
        for b in a + 1..all.len() {
            if cross(field, all[a], all[b]).iter().all(|c| field.is_zero(c)) {
                return Err(Error::DegenerateLineConfiguration(format!(
                    "{} and {} define the same line",
                    line_name(a, count),
                    line_name(b, count)
                )));
            }
        }
    }
    let mut grid = Vec::with_capacity(count * count);
    for (i, li) in l.iter().enumerate() {
        for (j, mj) in m.iter().enumerate() {
            let q = cross(field, li, mj);
            for (c, line) in all.iter().enumerate() {
                if c == i || c == count + j {
                    continue;
                }
                if field.is_zero(&dot(field, line, &q)) {
                    return Err(Error::DegenerateLineConfiguration(format!(
                        "{} passes through the intersection of {} and {}",
                        line_name(c, count),
                        line_name(i, count),
                        line_name(count + j, count)
                    )));
                }
            }
            let coords = vec![field.zero(), field.zero(), q[0].clone(), q[1].clone(), q[2].clone()];
            grid.push(normalize_point(field, &coords)?);
        }
    }

    let plane_vars = [2, 3, 4];
    let embed = |lines: &[Form<F>]| -> Result<Form<F>> {
        let embedded = lines
            .iter()
            .map(|g| g.embed(NUM_VARS, &plane_vars))
            .collect::<Result<Vec<_>>>()?;
        Form::product(&embedded)
    };
    let x = Form::monomial(field, vec![1, 0, 0, 0, 0], field.one());
    let y = Form::monomial(field, vec![0, 1, 0, 0, 0], field.one());
    let xd = Form::monomial(field, vec![degree, 0, 0, 0, 0], field.one());
    let yd = Form::monomial(field, vec![0, degree, 0, 0, 0], field.one());
    let f = x
        .mul(&embed(lines_l)?)?
        .add(&y.mul(&embed(lines_m)?)?)?
        .add(&xd)?
        .add(&yd)?;
    let spec = HypersurfaceSpec::new(f)?;

    let points = PointConfiguration::new(field, 4, grid)?;
    let mut node_flags = Vec::with_capacity(points.len());
    for p in points.iter() {
        node_flags.push(is_node(&spec, p)?);
    }
    Ok((
        spec,
        SingularityCensus {
            points,
            node_flags,
            complete: false,
        },
    ))
}

/// Primes used by [`random_example`] to screen for singular points off the grid.
pub const SCREEN_PRIMES: [u64; 6] = [13, 17, 19, 23, 29, 31];

/// Singular points of the reduction mod p that are not reductions of census
/// points. Census points that collide mod p are compared as a set.
pub fn extra_singularities<F: Field>(
    spec: &HypersurfaceSpec<F>,
    census: &SingularityCensus<F>,
    field: PrimeField,
    budget: ScanBudget,
) -> Result<Vec<ProjectivePoint<u64>>> {
    let grid: Vec<_> = census.points.iter().map(|q| reduce_point(census.points.field(), q, field)).collect();
    let found = singular_points_enumerate(spec, field, budget)?;
    Ok(found.points.iter().filter(|q| !grid.contains(q)).cloned().collect())
}

/// An example drawn from seeded random lines.
#[derive(Debug, Clone)]
pub struct RandomExample {
    pub spec: HypersurfaceSpec<Rationals>,
    pub census: SingularityCensus<Rationals>,
    pub seed: u64,
    pub attempts: usize,
    /// Primes at which the scan found no singular point besides the grid.
    pub screened_at: Vec<u64>,
}

/// Lines with coefficients drawn from `[-30, 30]`.
///
/// The grid is the whole singular locus unless, for a root `(x0 : y0)` of
/// `x^d + y^d`, the plane curve `x0 * L_1 ... L_{d-1} + y0 * M_1 ... M_{d-1}`
/// is singular somewhere; then that point lifts to an extra singularity.
/// Special line choices do this (lines tangent to one conic, for odd `d`).
/// Deciding it exactly needs elimination, so each draw is screened by
/// scanning two of [`SCREEN_PRIMES`] and redrawn if anything turns up; this
/// is evidence, not proof.
pub fn random_example(degree: u32, seed: u64, retries: usize) -> Result<RandomExample> {
    if degree < 3 {
        return Err(Error::Precondition(format!("degree must be at least 3, got {degree}")));
    }
    let count = degree as usize - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Lines in general position: each new one avoids every existing
    // intersection, so only the modular screen can reject a draw.
    let mut draw = || -> (Vec<Form<Rationals>>, Vec<Form<Rationals>>) {
        let mut lines: Vec<[i64; 3]> = Vec::with_capacity(2 * count);
        while lines.len() < 2 * count {
            let c = [0; 3].map(|_: i64| rng.gen_range(-30..=30));
            let general = lines.iter().enumerate().all(|(i, a)| {
                let meet = cross_i64(a, &c);
                meet != [0; 3] && lines[..i].iter().all(|b| dot_i64(b, &meet) != 0)
            });
            if c != [0; 3] && general {
                lines.push(c);
            }
        }
        let forms: Vec<_> = lines.iter().map(|c| Form::linear_from_ints(Rationals, c)).collect();
        let m = forms[count..].to_vec();
        (forms[..count].to_vec(), m)
    };
    let mut last = String::new();
    for attempt in 1..=retries + 1 {
        let (l, m) = draw();
        let (spec, census) = match generate_example(degree, &l, &m) {
            Ok(pair) => pair,
            Err(Error::DegenerateLineConfiguration(why)) => {
                last = why;
                continue;
            }
            Err(e) => return Err(e),
        };
        let mut screened_at = Vec::new();
        let mut clean = true;
        for &p in &SCREEN_PRIMES {
            let field = PrimeField::new(p).expect("prime");
            // skip primes where a coefficient denominator vanishes
            let Ok(extra) = extra_singularities(&spec, &census, field, ScanBudget::default()) else {
                continue;
            };
            if !extra.is_empty() {
                last = format!("{} singular points off the grid mod {p}", extra.len());
                clean = false;
                break;
            }
            screened_at.push(p);
            if screened_at.len() == 2 {
                break;
            }
        }
        if clean && !screened_at.is_empty() {
            return Ok(RandomExample {
                spec,
                census,
                seed,
                attempts: attempt,
                screened_at,
            });
        }
    }
    Err(Error::DegenerateLineConfiguration(format!(
        "no usable lines in {} draws (last: {last})",
        retries + 1
    )))
}

fn cross_i64(a: &[i64; 3], b: &[i64; 3]) -> [i64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot_i64(a: &[i64; 3], b: &[i64; 3]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn line_name(index: usize, count: usize) -> String {
    if index < count {
        format!("L{}", index + 1)
    } else {
        format!("M{}", index - count + 1)
    }
}

/// Whether the singular point `point` is an ordinary double point: the
/// Hessian of the affine equation in the chart of the last coordinate equal
/// to 1 has full rank 4.
pub fn is_node<F: Field>(spec: &HypersurfaceSpec<F>, point: &ProjectivePoint<F::Elem>) -> Result<bool> {
    let field = spec.form.field();
    if field.characteristic() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    if !spec.is_singular_at(point)? {
        return Err(Error::NotSingular);
    }
    let one = field.one();
    let chart = point
        .coords()
        .iter()
        .rposition(|c| *c == one)
        .expect("normalized point has a unit coordinate");
    let hessian = spec.form.hessian();
    let keep: Vec<usize> = (0..NUM_VARS).filter(|&v| v != chart).collect();
    let mut rows = Vec::with_capacity(4);
    for &i in &keep {
        let mut row = Vec::with_capacity(4);
        for &j in &keep {
            row.push(hessian[i][j].evaluate(point)?);
        }
        rows.push(row);
    }
    Ok(Matrix::from_rows(field, 4, rows).rank() == 4)
}

/// All `F_p`-rational singular points, by exhaustive scan of `P^4(F_p)`.
pub fn singular_points_enumerate<F: Field>(
    spec: &HypersurfaceSpec<F>,
    field: PrimeField,
    budget: ScanBudget,
) -> Result<SingularityCensus<PrimeField>> {
    let p = field.modulus();
    let total = count_points(p, 4);
    if p > MAX_SCAN_PRIME {
        return Err(Error::BudgetExceeded {
            points: total,
            budget: count_points(MAX_SCAN_PRIME, 4),
        });
    }
    budget.check(total)?;
    let reduced = HypersurfaceSpec::new(spec.form.reduce_into(field)?)?;
    let mut checks: Vec<CompiledForm> = reduced.form.gradient().iter().map(CompiledForm::new).collect();
    checks.push(CompiledForm::new(&reduced.form));
    let degree = reduced.degree();

    // strata: position of the leading 1 and the value of the next coordinate
    let strata: Vec<(usize, u64)> = (0..NUM_VARS)
        .flat_map(|lead| {
            let next = if lead + 1 < NUM_VARS { p } else { 1 };
            (0..next).map(move |v| (lead, v))
        })
        .collect();
    let mut found: Vec<ProjectivePoint<u64>> = strata
        .into_par_iter()
        .flat_map_iter(|(lead, second)| {
            let tail = NUM_VARS.saturating_sub(lead + 2);
            let count = p.pow(tail as u32);
            let checks = &checks;
            (0..count).filter_map(move |mut code| {
                let mut coords = [0u64; NUM_VARS];
                coords[lead] = 1;
                if lead + 1 < NUM_VARS {
                    coords[lead + 1] = second;
                }
                for c in (lead + 2..NUM_VARS).rev() {
                    coords[c] = code % p;
                    code /= p;
                }
                let powers = powers_mod(&coords, degree, p);
                checks
                    .iter()
                    .all(|g| g.vanishes(&powers, p))
                    .then(|| normalize_point(field, &coords).expect("nonzero point"))
            })
        })
        .collect();
    found.sort();
    let points = PointConfiguration::new(field, 4, found)?;
    let node_flags = points
        .iter()
        .map(|pt| is_node(&reduced, pt))
        .collect::<Result<Vec<_>>>()?;
    Ok(SingularityCensus {
        points,
        node_flags,
        complete: true,
    })
}

/// A form over `F_p` flattened for fast repeated evaluation.
struct CompiledForm {
    terms: Vec<([u32; NUM_VARS], u64)>,
}

impl CompiledForm {
    fn new(form: &Form<PrimeField>) -> Self {
        let terms = form
            .terms()
            .map(|(e, c)| {
                let mut ex = [0u32; NUM_VARS];
                ex.copy_from_slice(e);
                (ex, *c)
            })
            .collect();
        CompiledForm { terms }
    }

    fn vanishes(&self, powers: &[Vec<u64>; NUM_VARS], p: u64) -> bool {
        let mut acc = 0u64;
        for (e, c) in &self.terms {
            let mut v = *c;
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    v = v * powers[i][k as usize] % p;
                }
            }
            acc = (acc + v) % p;
        }
        acc == 0
    }
}

fn powers_mod(coords: &[u64; NUM_VARS], degree: u32, p: u64) -> [Vec<u64>; NUM_VARS] {
    std::array::from_fn(|i| {
        let mut row = Vec::with_capacity(degree as usize + 1);
        row.push(1);
        for e in 1..=degree as usize {
            row.push(row[e - 1] * coords[i] % p);
        }
        row
    })
}

/// Every point of `P^4(F_p)`, exposed for small brute-force checks.
pub fn projective_four_space(field: PrimeField) -> impl Iterator<Item = ProjectivePoint<u64>> {
    all_points(field, 4)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorialityStatus {
    Factorial,
    NonFactorial,
    CertifiedFactorial,
}

impl std::fmt::Display for FactorialityStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FactorialityStatus::Factorial => "factorial",
            FactorialityStatus::NonFactorial => "non_factorial",
            FactorialityStatus::CertifiedFactorial => "certified_factorial",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FactorialityVerdict<F: Field> {
    pub status: FactorialityStatus,
    pub degree: u32,
    /// Defect of the singular points in degree `2d - 5`.
    pub defect: usize,
    pub singular_points: usize,
    /// The verdict speaks about the hypersurface only if the census is the
    /// whole singular locus and every point is a node; these record what is known.
    pub census_complete: bool,
    pub all_nodes: bool,
    pub hypothesis_report: Option<HypothesisReport<F>>,
    /// A fully certified hypothesis report together with a positive defect.
    pub theorem_violation: bool,
}

fn check_degree(degree: u32) -> Result<()> {
    if degree < 3 {
        return Err(Error::Precondition(format!("degree must be at least 3, got {degree}")));
    }
    Ok(())
}

/// Factorial iff the singular points impose independent conditions on forms of degree `2d - 5`.
///
/// An empty census is factorial in every degree (a smooth hypersurface in
/// `P^4`); a nonempty one needs `d >= 3`.
pub fn factoriality_verdict<F: Field>(census: &SingularityCensus<F>, degree: u32) -> Result<FactorialityVerdict<F>> {
    if census.is_empty() {
        if degree == 0 {
            return Err(Error::Precondition("degree must be positive".into()));
        }
    } else {
        check_degree(degree)?;
    }
    let defect = if census.is_empty() {
        0
    } else {
        conditions_defect(&census.points, 2 * degree - 5)
    };
    Ok(FactorialityVerdict {
        status: if defect == 0 {
            FactorialityStatus::Factorial
        } else {
            FactorialityStatus::NonFactorial
        },
        degree,
        defect,
        singular_points: census.len(),
        census_complete: census.complete,
        all_nodes: census.all_nodes(),
        hypothesis_report: None,
        theorem_violation: false,
    })
}

/// Certifies factoriality through the point-count theorem with `mu = d - 1`;
/// falls back to [`factoriality_verdict`] when the hypotheses are not certified.
pub fn cheltsov_certify<F: Field>(
    census: &SingularityCensus<F>,
    degree: u32,
    opts: &CertifyOptions,
) -> Result<FactorialityVerdict<F>> {
    let mut verdict = factoriality_verdict(census, degree)?;
    if degree < 3 {
        // only reachable with an empty census
        return Ok(verdict);
    }
    let mu = degree as usize - 1;
    let report = match certify_theorem_hypotheses(&census.points, mu, None, opts) {
        Ok(r) => r,
        // too many points to search; the theorem cannot be applied
        Err(Error::SearchCapExceeded { .. }) => return Ok(verdict),
        Err(e) => return Err(e),
    };
    if report.is_certified() {
        if verdict.defect == 0 {
            verdict.status = FactorialityStatus::CertifiedFactorial;
        } else {
            verdict.theorem_violation = true;
        }
    }
    verdict.hypothesis_report = Some(report);
    Ok(verdict)
}
