//! The `cbkit` command line. [`run`] does all the work and returns the
//! output and exit code, so it can be driven in-process.
//!
//! Every command prints line-delimited records tagged with
//! [`SCHEMA`]. Exit codes depend only on the record contents:
//!
//! | code | meaning |
//! |------|---------|
//! | 0  | independent / certified / factorial / base point free |
//! | 10 | positive defect, violated hypotheses, non-factorial, base points |
//! | 20 | hypotheses neither certified nor refuted |
//! | 30 | certified hypotheses with positive defect |
//! | 1  | I/O failure |
//! | 2  | parse or usage error |
//! | 3  | invalid input (duplicates, wrong dimension, bad parameters) |
//! | 4  | enumeration budget exceeded |
//! | 5  | subset search cap exceeded |
//! | 6  | no generic projection found |

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::bese::{base_point_free_check, bese_hypotheses};
use crate::campaign::{run_campaign, CampaignConfig};
use crate::conditions::{conditions_defect, conditions_report};
use crate::curves::{certify_theorem_hypotheses, CertifyOptions, HypothesisReport, Status, DEFAULT_SEARCH_CAP};
use crate::documents::{PointSetDocument, PolynomialDocument};
use crate::error::Error;
use crate::hypersurface::{
    cheltsov_certify, generate_example, random_example, singular_points_enumerate, FactorialityStatus, FactorialityVerdict,
    HypersurfaceSpec, ScanBudget, SingularityCensus,
};
use crate::projective::{Field, FieldDescriptor, Form, PointConfiguration, PrimeField, Rationals};

pub const SCHEMA: &str = "cbkit/v1";

pub mod exit {
    pub const OK: i32 = 0;
    pub const NEGATIVE: i32 = 10;
    pub const UNKNOWN: i32 = 20;
    pub const THEOREM_VIOLATION: i32 = 30;
    pub const IO: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const INVALID: i32 = 3;
    pub const BUDGET: i32 = 4;
    pub const SEARCH_CAP: i32 = 5;
    pub const PROJECTION: i32 = 6;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "cbkit", version, about = "Exact checks for points imposing independent conditions")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub output: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank, defect and forced points of a point set in degree m.
    Defect {
        points: PathBuf,
        #[arg(long, short = 'm')]
        degree: u32,
        /// Reduce the points into F_p first.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Certify the hypotheses for mu and check the conclusion in degree 2mu-3.
    Certify {
        points: PathBuf,
        #[arg(long)]
        mu: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
        max_subset: usize,
        #[arg(long, default_value_t = 8)]
        retries: usize,
    },
    /// Factoriality verdict from a polynomial in five variables or a census of nodes.
    Factoriality {
        #[arg(long, conflicts_with = "census", required_unless_present = "census")]
        poly: Option<PathBuf>,
        #[arg(long, requires = "degree")]
        census: Option<PathBuf>,
        /// Required with --census; read from the polynomial otherwise.
        #[arg(long)]
        degree: Option<u32>,
        /// Field scanned for singular points (required with --poly).
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
        max_subset: usize,
        #[arg(long, default_value_t = 8)]
        retries: usize,
    },
    /// Write the nodal hypersurface of degree d and its census of nodes.
    GenExample {
        #[arg(long)]
        degree: u32,
        /// Draw random lines from this seed (default when no lines are given).
        #[arg(long, conflicts_with_all = ["lines_l", "lines_m"])]
        seed: Option<u64>,
        /// `a,b,c;a,b,c;...`, d-1 linear forms in (z, t, u).
        #[arg(long, requires = "lines_m")]
        lines_l: Option<String>,
        #[arg(long, requires = "lines_l")]
        lines_m: Option<String>,
        #[arg(long, default_value_t = 16)]
        retries: usize,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Base points of the degree-xi system through plane points over F_p.
    BeseCheck {
        points: PathBuf,
        #[arg(long)]
        xi: u32,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
        max_subset: usize,
    },
    /// Seeded random campaign from a TOML configuration.
    Campaign { config: PathBuf },
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Io(PathBuf, std::io::Error),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CmdResult = std::result::Result<(i32, Vec<Value>), Failure>;

/// Exit code for a library error.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => exit::PARSE,
        Error::BudgetExceeded { .. } => exit::BUDGET,
        Error::SearchCapExceeded { .. } => exit::SEARCH_CAP,
        Error::GenericityFailure { .. } | Error::RetriesExhausted => exit::PROJECTION,
        _ => exit::INVALID,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } => "parse",
        Error::BudgetExceeded { .. } => "budget_exceeded",
        Error::SearchCapExceeded { .. } => "search_cap_exceeded",
        Error::GenericityFailure { .. } | Error::RetriesExhausted => "projection",
        _ => "invalid_input",
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> CliOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::PARSE } else { exit::OK };
            let text = e.render().to_string();
            return if code == exit::OK {
                CliOutcome { code, stdout: text, stderr: String::new() }
            } else {
                CliOutcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let format = cli.output;
    match dispatch(cli.command) {
        Ok((code, records)) => CliOutcome {
            code,
            stdout: records.iter().map(|r| render(r, format)).collect(),
            stderr: String::new(),
        },
        Err(f) => {
            let (code, record) = match &f {
                Failure::Io(path, e) => (
                    exit::IO,
                    record("error", json!({"kind": "io", "path": path.display().to_string(), "message": e.to_string()})),
                ),
                Failure::Lib(e) => {
                    let mut body = json!({"kind": error_kind(e), "message": e.to_string()});
                    if let Error::Parse { line, .. } = e {
                        body["line"] = json!(line);
                    }
                    (error_code(e), record("error", body))
                }
            };
            CliOutcome {
                code,
                stdout: String::new(),
                stderr: render(&record, format),
            }
        }
    }
}

fn record(kind: &str, body: Value) -> Value {
    let mut map = Map::new();
    map.insert("schema".into(), json!(SCHEMA));
    map.insert("record".into(), json!(kind));
    if let Value::Object(fields) = body {
        map.extend(fields);
    }
    Value::Object(map)
}

fn render(record: &Value, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => format!("{record}\n"),
        OutputFormat::Text => {
            let mut out = String::new();
            if let Value::Object(map) = record {
                for (k, v) in map {
                    let shown = match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    out.push_str(&format!("{k}: {shown}\n"));
                }
            }
            out.push('\n');
            out
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn write(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn prime_field(p: u64) -> std::result::Result<PrimeField, Failure> {
    Ok(PrimeField::new(p)?)
}

/// Runs `body` over the field the document (or `--prime`) selects.
macro_rules! with_config {
    ($doc:expr, $prime:expr, |$config:ident| $body:expr) => {{
        match ($prime, $doc.field) {
            (Some(p), _) => {
                let $config = $doc.to_prime_config(prime_field(p)?)?;
                $body
            }
            (None, FieldDescriptor::Prime(p)) => {
                let $config = $doc.to_prime_config(prime_field(p)?)?;
                $body
            }
            (None, FieldDescriptor::Rational) => {
                let $config = $doc.to_rational_config()?;
                $body
            }
        }
    }};
}

fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::Defect { points, degree, prime } => {
            let doc = PointSetDocument::parse(&read(&points)?)?;
            with_config!(doc, prime, |config| cmd_defect(&config, degree))
        }
        Command::Certify {
            points,
            mu,
            seed,
            prime,
            max_subset,
            retries,
        } => {
            let doc = PointSetDocument::parse(&read(&points)?)?;
            let opts = CertifyOptions {
                seed,
                retries,
                search_cap: max_subset,
            };
            with_config!(doc, prime, |config| cmd_certify(&config, mu, &opts))
        }
        Command::Factoriality {
            poly,
            census,
            degree,
            prime,
            seed,
            max_subset,
            retries,
        } => {
            let opts = CertifyOptions {
                seed,
                retries,
                search_cap: max_subset,
            };
            if let Some(path) = poly {
                let doc = PolynomialDocument::parse(&read(&path)?)?;
                let p = prime.ok_or_else(|| Error::Precondition("--poly needs --prime".into()))?;
                if degree.is_some_and(|d| d != doc.degree) {
                    return Err(Error::Precondition(format!(
                        "--degree disagrees with the polynomial degree {}",
                        doc.degree
                    ))
                    .into());
                }
                let field = prime_field(p)?;
                let spec = HypersurfaceSpec::new(doc.to_prime_form(field)?)?;
                let census = singular_points_enumerate(&spec, field, ScanBudget::from_env())?;
                cmd_factoriality(&census, doc.degree, &opts, "enumeration")
            } else {
                let path = census.expect("clap enforces one source");
                let d = degree.ok_or_else(|| Error::Precondition("--census needs --degree".into()))?;
                let doc = PointSetDocument::parse(&read(&path)?)?;
                with_config!(doc, prime, |config| {
                    let n = config.len();
                    // nodes are taken on trust in census mode
                    let census = SingularityCensus {
                        points: config,
                        node_flags: vec![true; n],
                        complete: false,
                    };
                    cmd_factoriality(&census, d, &opts, "census")
                })
            }
        }
        Command::GenExample {
            degree,
            seed,
            lines_l,
            lines_m,
            retries,
            out_dir,
        } => cmd_gen_example(degree, seed, lines_l.zip(lines_m), retries, &out_dir),
        Command::BeseCheck {
            points,
            xi,
            prime,
            max_subset,
        } => {
            let doc = PointSetDocument::parse(&read(&points)?)?;
            let p = match (prime, doc.field) {
                (Some(p), _) | (None, FieldDescriptor::Prime(p)) => p,
                (None, FieldDescriptor::Rational) => {
                    return Err(Error::Precondition("rational points need --prime".into()).into())
                }
            };
            let config = doc.to_prime_config(prime_field(p)?)?;
            cmd_bese(&config, xi, max_subset)
        }
        Command::Campaign { config } => {
            let config = CampaignConfig::from_toml(&read(&config)?)?;
            let (summary, outcomes) = run_campaign(&config)?;
            let code = if summary.violations.is_empty() {
                exit::OK
            } else {
                exit::THEOREM_VIOLATION
            };
            let mut records: Vec<Value> = outcomes
                .iter()
                .filter(|o| o.is_violation())
                .map(|o| record("theorem_violation", serde_json::to_value(o).expect("serializable")))
                .collect();
            records.push(record(
                "campaign_summary",
                json!({
                    "config": config,
                    "trials": summary.trials,
                    "certified": summary.certified,
                    "violated": summary.violated,
                    "unknown": summary.unknown,
                    "violations": summary.violations.len(),
                    "violating_trials": summary.violations,
                }),
            ));
            Ok((code, records))
        }
    }
}

fn field_name<F: Field>(field: F) -> String {
    field.descriptor().to_string()
}

fn cmd_defect<F: Field>(config: &PointConfiguration<F>, degree: u32) -> CmdResult {
    let report = conditions_report(config, degree);
    let code = if report.is_independent() { exit::OK } else { exit::NEGATIVE };
    let mut body = serde_json::to_value(&report).expect("serializable");
    body["field"] = json!(field_name(config.field()));
    body["independent"] = json!(report.is_independent());
    Ok((code, vec![record("conditions", body)]))
}

fn hypothesis_json<F: Field>(report: &HypothesisReport<F>) -> Value {
    let degrees: Vec<Value> = report
        .degrees
        .iter()
        .map(|e| {
            json!({
                "degree": e.degree,
                "bound": e.bound,
                "max_found": e.max_found,
                "exact": e.exact,
                "status": e.status,
                "witness": e.witness,
                "witness_form": e.witness_form.as_ref().map(|f| f.to_string()),
                "projection_seed": e.projection_seed,
            })
        })
        .collect();
    json!({
        "mu": report.mu,
        "ambient_dim": report.ambient_dim,
        "status": report.status(),
        "cardinality": {
            "size": report.cardinality.size,
            "bound": report.cardinality.bound,
            "status": report.cardinality.status,
        },
        "degrees": degrees,
        "rejected_projections": report.rejected_projections,
    })
}

fn cmd_certify<F: Field>(config: &PointConfiguration<F>, mu: usize, opts: &CertifyOptions) -> CmdResult {
    let report = certify_theorem_hypotheses(config, mu, None, opts)?;
    let conclusion_degree = 2 * mu as u32 - 3;
    let defect = conditions_defect(config, conclusion_degree);
    let status = report.status();
    let violation = status == Status::Certified && defect > 0;
    let code = match status {
        _ if violation => exit::THEOREM_VIOLATION,
        Status::Certified => exit::OK,
        Status::Violated => exit::NEGATIVE,
        Status::Unknown => exit::UNKNOWN,
    };
    let mut body = hypothesis_json(&report);
    body["field"] = json!(field_name(config.field()));
    body["conclusion_degree"] = json!(conclusion_degree);
    body["defect"] = json!(defect);
    body["theorem_violation"] = json!(violation);
    Ok((code, vec![record("certification", body)]))
}

fn verdict_code<F: Field>(v: &FactorialityVerdict<F>) -> i32 {
    if v.theorem_violation {
        return exit::THEOREM_VIOLATION;
    }
    match v.status {
        FactorialityStatus::Factorial | FactorialityStatus::CertifiedFactorial => exit::OK,
        FactorialityStatus::NonFactorial => exit::NEGATIVE,
    }
}

fn cmd_factoriality<F: Field>(
    census: &SingularityCensus<F>,
    degree: u32,
    opts: &CertifyOptions,
    source: &str,
) -> CmdResult {
    let verdict = cheltsov_certify(census, degree, opts)?;
    let body = json!({
        "source": source,
        "field": field_name(census.points.field()),
        "status": verdict.status,
        "degree": verdict.degree,
        "conditions_degree": 2 * degree as i64 - 5,
        "defect": verdict.defect,
        "singular_points": verdict.singular_points,
        "census_complete": verdict.census_complete,
        "all_nodes": verdict.all_nodes,
        "nodes_verified": source == "enumeration",
        "hypotheses": verdict.hypothesis_report.as_ref().map(hypothesis_json),
        "theorem_violation": verdict.theorem_violation,
    });
    Ok((verdict_code(&verdict), vec![record("factoriality", body)]))
}

fn parse_lines(text: &str) -> std::result::Result<Vec<Form<Rationals>>, Failure> {
    text.split(';')
        .enumerate()
        .map(|(i, chunk)| {
            let coeffs = chunk
                .split(',')
                .map(|c| c.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse {
                    line: i + 1,
                    message: format!("bad line coefficients `{chunk}`: {e}"),
                })?;
            if coeffs.len() != 3 {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("a line needs 3 coefficients, got `{chunk}`"),
                }
                .into());
            }
            Ok(Form::linear_from_ints(Rationals, &coeffs))
        })
        .collect()
}

fn cmd_gen_example(
    degree: u32,
    seed: Option<u64>,
    lines: Option<(String, String)>,
    retries: usize,
    out_dir: &Path,
) -> CmdResult {
    let (spec, census, mode) = match lines {
        Some((l, m)) => {
            let (spec, census) = generate_example(degree, &parse_lines(&l)?, &parse_lines(&m)?)?;
            (spec, census, json!("explicit"))
        }
        None => {
            let ex = random_example(degree, seed.unwrap_or(0), retries)?;
            let mode = json!({"seed": ex.seed, "attempts": ex.attempts, "screened_at": ex.screened_at});
            (ex.spec, ex.census, mode)
        }
    };
    fs::create_dir_all(out_dir).map_err(|e| Failure::Io(out_dir.to_path_buf(), e))?;
    let poly_path = out_dir.join(format!("example_d{degree}.poly"));
    let census_path = out_dir.join(format!("example_d{degree}.census"));
    write(&poly_path, &PolynomialDocument::from_form(spec.form()).emit())?;
    write(&census_path, &PointSetDocument::from_config(&census.points).emit())?;
    let body = json!({
        "degree": degree,
        "mode": mode,
        "polynomial": poly_path.display().to_string(),
        "census": census_path.display().to_string(),
        "singular_points": census.len(),
        "all_nodes": census.all_nodes(),
    });
    Ok((exit::OK, vec![record("example", body)]))
}

fn cmd_bese(config: &PointConfiguration<PrimeField>, xi: u32, search_cap: usize) -> CmdResult {
    let hypotheses = bese_hypotheses(config, xi, search_cap)?;
    let report = base_point_free_check(config, xi, ScanBudget::from_env())?;
    let free = report.base_point_free();
    let mut body = serde_json::to_value(&report).expect("serializable");
    body["base_point_free"] = json!(free);
    body["hypotheses_ok"] = json!(hypotheses.ok());
    body["hypotheses"] = serde_json::to_value(&hypotheses).expect("serializable");
    Ok((if free { exit::OK } else { exit::NEGATIVE }, vec![record("bese", body)]))
}
