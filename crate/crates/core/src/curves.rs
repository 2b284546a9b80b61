//! How many points of a configuration lie on a curve of degree `k`.
//!
//! In the plane this is decided exactly: a subset lies on a degree-`k`
//! curve iff its degree-`k` evaluation matrix is rank deficient, and the
//! maximum is found by branch and bound over subsets. Lines are decided
//! exactly in any ambient dimension. Higher-degree bounds in `P^n`, `n >= 3`,
//! go through a validated general projection to the plane: a degree-`k`
//! space curve maps into a plane curve of degree at most `k`, so a bound that
//! holds downstairs holds upstairs. A bound that fails downstairs proves
//! nothing and is reported as unknown.

use crate::error::{Error, Result};
use crate::projection::{random_projection, validate_projection, ProjectionMap, RejectedDraw};
use crate::projective::matrix::kernel_basis;
use crate::projective::{
    evaluation_matrix, forms_dimension, Field, Form, MonomialBasis, PointConfiguration, RowSpace,
};

pub const DEFAULT_SEARCH_CAP: usize = 24;

/// Every degree-`k` form vanishing on `config`, as the canonical kernel basis.
pub fn vanishing_system<F: Field>(config: &PointConfiguration<F>, degree: u32) -> Vec<Form<F>> {
    let eval = evaluation_matrix(config, degree);
    let f = config.field();
    kernel_basis(f, eval.matrix.rows().to_vec(), eval.ncols())
        .into_iter()
        .map(|c| Form::from_coefficients(f, &eval.basis, &c))
        .collect()
}

fn require_plane<F: Field>(config: &PointConfiguration<F>) -> Result<()> {
    if config.ambient_dim() != 2 {
        return Err(Error::WrongAmbientDimension {
            expected: 2,
            found: config.ambient_dim(),
        });
    }
    Ok(())
}

/// Whether some nonzero degree-`k` form vanishes on all of `config` (a plane configuration).
pub fn lies_on_plane_curve<F: Field>(config: &PointConfiguration<F>, degree: u32) -> Result<bool> {
    require_plane(config)?;
    Ok(evaluation_matrix(config, degree).rank() < forms_dimension(2, degree))
}

/// A largest subset on a common curve, with the lexicographically smallest
/// index list among all largest subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveMaximum {
    pub count: usize,
    pub witness: Vec<usize>,
}

/// Exact maximum number of points of a plane configuration on one degree-`k` curve.
pub fn max_on_plane_curve<F: Field>(
    config: &PointConfiguration<F>,
    degree: u32,
    search_cap: usize,
) -> Result<CurveMaximum> {
    require_plane(config)?;
    if config.len() > search_cap {
        return Err(Error::SearchCapExceeded {
            size: config.len(),
            cap: search_cap,
        });
    }
    let basis = MonomialBasis::new(3, degree);
    let full = basis.len();
    if config.len() < full {
        return Ok(CurveMaximum {
            count: config.len(),
            witness: (0..config.len()).collect(),
        });
    }
    let f = config.field();
    let rows: Vec<Vec<F::Elem>> = config
        .iter()
        .map(|p| basis.evaluate_all(f, p.coords()))
        .collect();
    let mut search = SubsetSearch {
        rows: &rows,
        full_rank: full,
        best: None,
        chosen: Vec::new(),
        excluded: Vec::new(),
    };
    search.descend(0, RowSpace::new(f, full));
    let witness = search.best.unwrap_or_default();
    Ok(CurveMaximum {
        count: witness.len(),
        witness,
    })
}

/// Depth-first search over subsets in index order, trying inclusion before
/// exclusion, so the first maximum reached is the lexicographically smallest.
///
/// Pruning:
/// * a point already in the span of the chosen rows lies on every curve
///   through them and is always taken;
/// * a chosen set whose span reaches `full_rank` lies on no curve;
/// * once an excluded point falls into the span, the branch is dominated by
///   the branch that included it;
/// * size bound against the best found so far.
struct SubsetSearch<'a, F: Field> {
    rows: &'a [Vec<F::Elem>],
    full_rank: usize,
    best: Option<Vec<usize>>,
    chosen: Vec<usize>,
    excluded: Vec<usize>,
}

impl<F: Field> SubsetSearch<'_, F> {
    fn best_len(&self) -> Option<usize> {
        self.best.as_ref().map(Vec::len)
    }

    fn record(&mut self, extra: &[usize]) {
        let size = self.chosen.len() + extra.len();
        if self.best_len().is_none_or(|b| size > b) {
            let mut set = self.chosen.clone();
            set.extend_from_slice(extra);
            self.best = Some(set);
        }
    }

    fn dominated(&self, space: &RowSpace<F>) -> bool {
        self.excluded.iter().any(|&e| space.contains(&self.rows[e]))
    }

    fn descend(&mut self, start: usize, space: RowSpace<F>) {
        let n = self.rows.len();
        let mut i = start;
        let mut forced = 0;
        // absorb points that are already in the span
        while i < n && space.contains(&self.rows[i]) {
            self.chosen.push(i);
            forced += 1;
            i += 1;
        }
        self.descend_at(i, space);
        self.chosen.truncate(self.chosen.len() - forced);
    }

    fn descend_at(&mut self, i: usize, space: RowSpace<F>) {
        let n = self.rows.len();
        if let Some(best) = self.best_len() {
            if self.chosen.len() + (n - i) <= best {
                return;
            }
        }
        if i == n {
            self.record(&[]);
            return;
        }
        if space.rank() + 1 == self.full_rank {
            // the curve is unique: exactly the points in the span can join
            let extra: Vec<usize> = (i..n).filter(|&j| space.contains(&self.rows[j])).collect();
            self.record(&extra);
            return;
        }
        let mut with = space.clone();
        with.insert(&self.rows[i]);
        if !self.dominated(&with) {
            self.chosen.push(i);
            self.descend(i + 1, with);
            self.chosen.pop();
        }
        self.excluded.push(i);
        self.descend(i + 1, space);
        self.excluded.pop();
    }
}

/// Maximum number of collinear points, exact in any ambient dimension, with
/// the lexicographically smallest maximizing index list.
pub fn collinear_max<F: Field>(config: &PointConfiguration<F>) -> (usize, Vec<usize>) {
    let n = config.len();
    if n <= 2 {
        return (n, (0..n).collect());
    }
    let f = config.field();
    let cols = config.num_vars();
    let pts = config.points();
    let mut best: Vec<usize> = vec![0, 1];
    for a in 0..n {
        for b in a + 1..n {
            if n - a <= best.len() {
                return (best.len(), best);
            }
            let mut line = RowSpace::new(f, cols);
            line.insert(pts[a].coords());
            line.insert(pts[b].coords());
            let on_line: Vec<usize> = std::iter::once(a)
                .chain(std::iter::once(b))
                .chain((b + 1..n).filter(|&c| line.contains(pts[c].coords())))
                .collect();
            if on_line.len() > best.len() {
                best = on_line;
            }
        }
    }
    (best.len(), best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Certified,
    Violated,
    Unknown,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Certified => "certified",
            Status::Violated => "violated",
            Status::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CardinalityClause {
    pub size: usize,
    pub bound: usize,
    pub status: Status,
}

/// One degree clause: at most `bound = mu * degree` points on a curve of that degree.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeEntry<F: Field> {
    pub degree: u32,
    pub bound: usize,
    /// Exact maximum when `exact`, otherwise an upper bound (certified) or a
    /// count in a projection (unknown).
    pub max_found: usize,
    pub exact: bool,
    pub status: Status,
    pub witness: Option<Vec<usize>>,
    /// Nonzero form of this degree through the witness, for plane violations.
    pub witness_form: Option<Form<F>>,
    pub projection_seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisReport<F: Field> {
    pub mu: usize,
    pub ambient_dim: usize,
    pub cardinality: CardinalityClause,
    pub degrees: Vec<DegreeEntry<F>>,
    pub rejected_projections: Vec<RejectedDraw>,
}

impl<F: Field> HypothesisReport<F> {
    /// Violated if any clause is violated, else unknown if any is unknown.
    pub fn status(&self) -> Status {
        let all = std::iter::once(self.cardinality.status).chain(self.degrees.iter().map(|e| e.status));
        let mut status = Status::Certified;
        for s in all {
            match s {
                Status::Violated => return Status::Violated,
                Status::Unknown => status = Status::Unknown,
                Status::Certified => {}
            }
        }
        status
    }

    pub fn is_certified(&self) -> bool {
        self.status() == Status::Certified
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertifyOptions {
    pub seed: u64,
    /// Extra projection draws after the first.
    pub retries: usize,
    pub search_cap: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            seed: 0,
            retries: 8,
            search_cap: DEFAULT_SEARCH_CAP,
        }
    }
}

/// Checks `|S| <= mu^2 - 1` and, for `k = 1, ..., mu - 1`, that at most
/// `mu * k` points lie on a curve of degree `k`.
///
/// `projection`, when given, is the first projection tried in ambient
/// dimension at least 3; later draws use seeds following `opts.seed`.
pub fn certify_theorem_hypotheses<F: Field>(
    config: &PointConfiguration<F>,
    mu: usize,
    projection: Option<&ProjectionMap<F>>,
    opts: &CertifyOptions,
) -> Result<HypothesisReport<F>> {
    if mu < 2 {
        return Err(Error::Precondition(format!("mu must be at least 2, got {mu}")));
    }
    let n = config.ambient_dim();
    if n < 2 {
        return Err(Error::Precondition(format!("ambient dimension must be at least 2, got {n}")));
    }
    let size = config.len();
    let bound = mu * mu - 1;
    let cardinality = CardinalityClause {
        size,
        bound,
        status: if size <= bound { Status::Certified } else { Status::Violated },
    };

    let mut degrees = Vec::with_capacity(mu - 1);
    let (lines, line_witness) = collinear_max(config);
    degrees.push(DegreeEntry {
        degree: 1,
        bound: mu,
        max_found: lines,
        exact: true,
        status: if lines <= mu { Status::Certified } else { Status::Violated },
        witness: Some(line_witness),
        witness_form: None,
        projection_seed: None,
    });

    let mut projections = ProjectionPool::new(config, projection, opts);
    for k in 2..mu as u32 {
        let bound = mu * k as usize;
        let entry = if n == 2 {
            plane_entry(config, k, bound, opts.search_cap)?
        } else if size <= bound {
            DegreeEntry {
                degree: k,
                bound,
                max_found: size,
                exact: false,
                status: Status::Certified,
                witness: None,
                witness_form: None,
                projection_seed: None,
            }
        } else {
            space_entry(&mut projections, k, bound, opts)?
        };
        degrees.push(entry);
    }

    Ok(HypothesisReport {
        mu,
        ambient_dim: n,
        cardinality,
        degrees,
        rejected_projections: projections.rejected,
    })
}

fn plane_entry<F: Field>(
    config: &PointConfiguration<F>,
    k: u32,
    bound: usize,
    cap: usize,
) -> Result<DegreeEntry<F>> {
    let best = max_on_plane_curve(config, k, cap)?;
    let violated = best.count > bound;
    let witness_form = if violated {
        vanishing_system(&config.subset(&best.witness)?, k).into_iter().next()
    } else {
        None
    };
    Ok(DegreeEntry {
        degree: k,
        bound,
        max_found: best.count,
        exact: true,
        status: if violated { Status::Violated } else { Status::Certified },
        witness: Some(best.witness),
        witness_form,
        projection_seed: None,
    })
}

fn space_entry<F: Field>(
    pool: &mut ProjectionPool<'_, F>,
    k: u32,
    bound: usize,
    opts: &CertifyOptions,
) -> Result<DegreeEntry<F>> {
    let mut smallest: Option<(usize, Vec<usize>, u64)> = None;
    for slot in 0..=opts.retries {
        let Some((seed, projected)) = pool.get(slot)? else {
            continue;
        };
        let best = max_on_plane_curve(projected, k, opts.search_cap)?;
        if best.count <= bound {
            return Ok(DegreeEntry {
                degree: k,
                bound,
                max_found: best.count,
                exact: false,
                status: Status::Certified,
                witness: Some(best.witness),
                witness_form: None,
                projection_seed: Some(seed),
            });
        }
        if smallest.as_ref().is_none_or(|(c, _, _)| best.count < *c) {
            smallest = Some((best.count, best.witness, seed));
        }
    }
    let (max_found, witness, seed) = match smallest {
        Some((c, w, s)) => (c, Some(w), Some(s)),
        None => (0, None, None),
    };
    Ok(DegreeEntry {
        degree: k,
        bound,
        max_found,
        exact: false,
        status: Status::Unknown,
        witness,
        witness_form: None,
        projection_seed: seed,
    })
}

/// Lazily drawn and validated projections, slot `i` using seed `opts.seed + i`
/// (slot 0 uses the caller's projection when given).
struct ProjectionPool<'a, F: Field> {
    config: &'a PointConfiguration<F>,
    first: Option<&'a ProjectionMap<F>>,
    seed: u64,
    slots: Vec<Option<(u64, PointConfiguration<F>)>>,
    rejected: Vec<RejectedDraw>,
}

impl<'a, F: Field> ProjectionPool<'a, F> {
    fn new(config: &'a PointConfiguration<F>, first: Option<&'a ProjectionMap<F>>, opts: &CertifyOptions) -> Self {
        ProjectionPool {
            config,
            first,
            seed: opts.seed,
            slots: Vec::new(),
            rejected: Vec::new(),
        }
    }

    fn get(&mut self, slot: usize) -> Result<Option<(u64, &PointConfiguration<F>)>> {
        while self.slots.len() <= slot {
            let i = self.slots.len();
            let psi = match (i, self.first) {
                (0, Some(psi)) => psi.clone(),
                _ => random_projection(self.config.field(), self.config.ambient_dim(), 2, self.seed.wrapping_add(i as u64))?,
            };
            let entry = match validate_projection(&psi, self.config)? {
                Ok(projected) => Some((psi.seed(), projected)),
                Err(defect) => {
                    self.rejected.push(RejectedDraw { seed: psi.seed(), defect });
                    None
                }
            };
            self.slots.push(entry);
        }
        Ok(self.slots[slot].as_ref().map(|(s, c)| (*s, c)))
    }
}
