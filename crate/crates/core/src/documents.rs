//! Plain-text document formats for point sets and polynomials.
//!
//! Point set:
//!
//! ```text
//! pointset v1 dim=2 field=rational
//! 1 0 0
//! 0 1/2 -3
//! ```
//!
//! Polynomial (exponent tuple, then coefficient):
//!
//! ```text
//! poly v1 vars=3 deg=2
//! 2 0 0 : 1
//! 0 1 1 : -3/4
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Parse errors carry
//! the 1-based line number.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::projective::field::parse_fraction;
use crate::projective::{Field, FieldDescriptor, Form, PointConfiguration, PrimeField, Rationals};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Content lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses `key=value` tokens of a header after the magic words.
fn header_fields<'a>(line: usize, tokens: &[&'a str], keys: &[&str]) -> Result<Vec<&'a str>> {
    if tokens.len() != keys.len() {
        return Err(parse_err(
            line,
            format!("header needs exactly the fields {}", keys.join(", ")),
        ));
    }
    tokens
        .iter()
        .zip(keys)
        .map(|(tok, key)| {
            tok.strip_prefix(key)
                .and_then(|rest| rest.strip_prefix('='))
                .ok_or_else(|| parse_err(line, format!("expected `{key}=...`, found `{tok}`")))
        })
        .collect()
}

fn parse_rational(line: usize, tok: &str) -> Result<BigRational> {
    let (num, den) = parse_fraction(tok).map_err(|m| parse_err(line, m))?;
    Ok(BigRational::new(num, den))
}

fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A parsed point-set document. Coordinates are kept exactly as written
/// (up to reducing fractions); normalization happens when a configuration
/// is built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSetDocument {
    pub ambient_dim: usize,
    pub field: FieldDescriptor,
    pub points: Vec<Vec<BigRational>>,
}

impl PointSetDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty document"))?;
        let tokens: Vec<&str> = header.split_whitespace().collect();
        if tokens.len() < 2 || tokens[0] != "pointset" || tokens[1] != "v1" {
            return Err(parse_err(hline, "expected header `pointset v1 dim=<n> field=<field>`"));
        }
        let vals = header_fields(hline, &tokens[2..], &["dim", "field"])?;
        let ambient_dim: usize = vals[0]
            .parse()
            .map_err(|_| parse_err(hline, format!("bad dimension `{}`", vals[0])))?;
        if ambient_dim == 0 {
            return Err(parse_err(hline, "dimension must be positive"));
        }
        let field: FieldDescriptor = vals[1].parse().map_err(|m: String| parse_err(hline, m))?;
        if let FieldDescriptor::Prime(p) = field {
            PrimeField::new(p).map_err(|e| parse_err(hline, e.to_string()))?;
        }
        let mut points = Vec::new();
        for (ln, l) in lines {
            let coords = l
                .split_whitespace()
                .map(|t| parse_rational(ln, t))
                .collect::<Result<Vec<_>>>()?;
            if coords.len() != ambient_dim + 1 {
                return Err(parse_err(
                    ln,
                    format!("expected {} coordinates, found {}", ambient_dim + 1, coords.len()),
                ));
            }
            if matches!(field, FieldDescriptor::Prime(_)) && coords.iter().any(|c| !c.is_integer()) {
                return Err(parse_err(ln, "prime-field coordinates must be integers"));
            }
            if coords.iter().all(|c| c.is_zero()) {
                return Err(parse_err(ln, "all coordinates are zero"));
            }
            points.push(coords);
        }
        Ok(PointSetDocument {
            ambient_dim,
            field,
            points,
        })
    }

    pub fn emit(&self) -> String {
        let mut out = format!("pointset v1 dim={} field={}\n", self.ambient_dim, self.field);
        for p in &self.points {
            let row: Vec<String> = p.iter().map(format_rational).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// The document for a configuration, with normalized coordinates.
    pub fn from_config<F: Field>(config: &PointConfiguration<F>) -> Self {
        let field = config.field();
        PointSetDocument {
            ambient_dim: config.ambient_dim(),
            field: field.descriptor(),
            points: config
                .iter()
                .map(|p| p.coords().iter().map(|c| field.lift(c)).collect())
                .collect(),
        }
    }

    /// Only for `field=rational` documents.
    pub fn to_rational_config(&self) -> Result<PointConfiguration<Rationals>> {
        if self.field != FieldDescriptor::Rational {
            return Err(Error::Precondition(format!(
                "document is over {}, not the rationals",
                self.field
            )));
        }
        PointConfiguration::from_raw(Rationals, self.ambient_dim, &self.points)
    }

    /// Interprets the coordinates in `F_p`. A rational document is reduced
    /// mod p; a prime document must name the same p.
    pub fn to_prime_config(&self, field: PrimeField) -> Result<PointConfiguration<PrimeField>> {
        if let FieldDescriptor::Prime(q) = self.field {
            if q != field.modulus() {
                return Err(Error::Precondition(format!(
                    "document is over F_{q}, requested F_{}",
                    field.modulus()
                )));
            }
        }
        let raw = self
            .points
            .iter()
            .map(|p| {
                p.iter()
                    .map(|c| Rationals.reduce_into(c, field))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        PointConfiguration::from_raw(field, self.ambient_dim, &raw)
    }
}

/// A parsed polynomial document: a homogeneous form with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialDocument {
    pub num_vars: usize,
    pub degree: u32,
    /// Distinct exponent tuples with nonzero coefficients, in file order.
    pub terms: Vec<(Vec<u32>, BigRational)>,
}

impl PolynomialDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty document"))?;
        let tokens: Vec<&str> = header.split_whitespace().collect();
        if tokens.len() < 2 || tokens[0] != "poly" || tokens[1] != "v1" {
            return Err(parse_err(hline, "expected header `poly v1 vars=<k> deg=<d>`"));
        }
        let vals = header_fields(hline, &tokens[2..], &["vars", "deg"])?;
        let num_vars: usize = vals[0]
            .parse()
            .map_err(|_| parse_err(hline, format!("bad variable count `{}`", vals[0])))?;
        let degree: u32 = vals[1]
            .parse()
            .map_err(|_| parse_err(hline, format!("bad degree `{}`", vals[1])))?;
        if num_vars == 0 {
            return Err(parse_err(hline, "need at least one variable"));
        }
        let mut seen = BTreeSet::new();
        let mut terms = Vec::new();
        for (ln, l) in lines {
            let (lhs, rhs) = l
                .split_once(':')
                .ok_or_else(|| parse_err(ln, "expected `<exponents> : <coefficient>`"))?;
            let exps = lhs
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| parse_err(ln, format!("bad exponent `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            if exps.len() != num_vars {
                return Err(parse_err(
                    ln,
                    format!("expected {num_vars} exponents, found {}", exps.len()),
                ));
            }
            let total: u64 = exps.iter().map(|&e| e as u64).sum();
            if total != degree as u64 {
                return Err(parse_err(ln, format!("exponents sum to {total}, not {degree}")));
            }
            let coeff = parse_rational(ln, rhs.trim())?;
            if coeff.is_zero() {
                return Err(parse_err(ln, "zero coefficient"));
            }
            if !seen.insert(exps.clone()) {
                return Err(parse_err(ln, "repeated monomial"));
            }
            terms.push((exps, coeff));
        }
        Ok(PolynomialDocument {
            num_vars,
            degree,
            terms,
        })
    }

    pub fn emit(&self) -> String {
        let mut out = format!("poly v1 vars={} deg={}\n", self.num_vars, self.degree);
        for (exps, c) in &self.terms {
            let e: Vec<String> = exps.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "{} : {}", e.join(" "), format_rational(c));
        }
        out
    }

    /// Terms in the form's monomial order.
    pub fn from_form<F: Field>(form: &Form<F>) -> Self {
        let field = form.field();
        PolynomialDocument {
            num_vars: form.num_vars(),
            degree: form.degree(),
            terms: form
                .terms()
                .map(|(e, c)| (e.clone(), field.lift(c)))
                .collect(),
        }
    }

    pub fn to_rational_form(&self) -> Result<Form<Rationals>> {
        Form::from_terms(Rationals, self.num_vars, self.degree, self.terms.iter().cloned())
    }

    /// Coefficients reduced mod p; fails if a denominator vanishes.
    pub fn to_prime_form(&self, field: PrimeField) -> Result<Form<PrimeField>> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| Ok((e.clone(), Rationals.reduce_into(c, field)?)))
            .collect::<Result<Vec<_>>>()?;
        Form::from_terms(field, self.num_vars, self.degree, terms)
    }
}

/// Integer tuple helper for callers building documents by hand.
pub fn rational_row(values: &[i64]) -> Vec<BigRational> {
    values
        .iter()
        .map(|&v| BigRational::from_integer(BigInt::from(v)))
        .collect()
}
