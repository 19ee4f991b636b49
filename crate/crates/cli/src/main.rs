//! Command-line front end: builds operators from JSON descriptions, runs
//! the exhaustive exact checks and prints deterministic JSON reports.
//!
//! Exit codes: 0 = all checks passed, 1 = a report contains violations,
//! 2 = malformed input or invalid construction parameters.

use std::fs;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use rbalg::json::{
    averaging_spec_from_json, averaging_spec_to_json, decomposition_spec_from_json,
    rb_family_from_json, rule_from_json, table_to_json,
};
use rbalg::{
    alpha_sum_formula, build_averaging, check_averaging, check_decomposition,
    empirical_slopes, enumerate_idempotents, matrix_to_averaging, negate_rule, r1_alpha_row,
    r1_extend, rb_check, s_closed_form, s_recurrence, splitting_criterion_check, splitting_rbo,
    DecompCase, Error, FieldElement, Monomial, OperatorRule, RBFamily, Window,
};

#[derive(Parser)]
#[command(name = "rbalg", version, about = "Exact checks for monomial Rota-Baxter and averaging operators on F[x,y]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Total-degree bound of the exhaustive window
    #[arg(short = 'N', long = "degree", default_value_t = 10)]
    degree: i64,
    /// Worker threads; 1 forces the sequential path
    #[arg(long, default_value_t = 4)]
    workers: usize,
    /// Write the JSON report to this path instead of standard output
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the Rota-Baxter identity for a family over all monomial pairs
    VerifyRb {
        /// Family description, e.g. '{"family":"Fibonacci","a":"0","b":"1"}'
        #[arg(long)]
        family: String,
        /// Weight to check at; defaults to the family's declared weight
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Verify all four homomorphic-averaging laws for an averaging spec
    VerifyAveraging {
        /// Averaging description, e.g. '{"case":"Case2","r":1,"alpha":"3"}'
        #[arg(long)]
        spec: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Enumerate idempotent exponent matrices and tag each with its case
    Classify {
        /// Entry bound of the enumeration
        #[arg(long, default_value_t = 1)]
        bound: u64,
        #[arg(long)]
        out: Option<String>,
    },
    /// Emit the coefficient table of a family over an exponent rectangle
    Table {
        #[arg(long)]
        family: String,
        /// Largest x-exponent of the table
        #[arg(short = 'K', long, default_value_t = 4)]
        max_n: i64,
        /// Largest y-exponent of the table
        #[arg(short = 'M', long, default_value_t = 8)]
        max_m: i64,
        /// Recompute every entry by the recurrence pipeline and the double
        /// binomial sum and fail on any mismatch
        #[arg(long, default_value_t = false)]
        cross_check: bool,
        #[arg(long)]
        out: Option<String>,
    },
    /// Check a direct-sum decomposition: closure, slopes and the splitting
    /// operator it induces
    Decomp {
        /// Decomposition description, e.g. '{"case":"IV","slope":"3/2"}'
        #[arg(long)]
        spec: String,
        /// Weight of the splitting operator
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        lambda: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Print the s-sequence by recurrence and closed form side by side
    SSeq {
        #[arg(long, allow_hyphen_values = true)]
        s2: String,
        #[arg(short = 'M', long, default_value_t = 30)]
        max_m: usize,
        #[arg(long)]
        out: Option<String>,
    },
}

fn parse_json(text: &str) -> Result<Value, Error> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

fn parse_field(text: &str) -> Result<FieldElement, Error> {
    FieldElement::from_str(text)
}

fn emit(value: &Value, out: &Option<String>) -> Result<(), Error> {
    let text = format!("{:#}", value);
    match out {
        Some(path) => fs::write(path, text + "\n")
            .map_err(|e| Error::Parse(format!("cannot write {path}: {e}"))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run() -> Result<bool, Error> {
    match Cli::parse().command {
        Command::VerifyRb {
            family,
            weight,
            common,
        } => {
            let rule = rule_from_json(&parse_json(&family)?)?;
            let weight = match weight {
                Some(w) => parse_field(&w)?,
                None => rule.weight().cloned().ok_or_else(|| {
                    Error::InvalidFamilyParams("the family declares no weight; pass --weight".into())
                })?,
            };
            let report = rb_check(&rule, &weight, Window::Poly, common.degree, common.workers)?;
            let mut value = report.to_json();
            value["law"] = json!(format!("Rota-Baxter, weight {weight}"));
            value["rule"] = json!(rule.label());
            emit(&value, &common.out)?;
            Ok(report.passed())
        }
        Command::VerifyAveraging { spec, common } => {
            let spec = averaging_spec_from_json(&parse_json(&spec)?)?;
            let rule = build_averaging(&spec);
            let report = check_averaging(&rule, common.degree, common.workers)?;
            // R = -T must in turn be Rota-Baxter of weight 1 and satisfy
            // the splitting criterion
            let one = FieldElement::one();
            let neg = negate_rule(&rule);
            let rb = rb_check(&neg, &one, Window::Poly, common.degree, common.workers)?;
            let split = splitting_criterion_check(&neg, &one, common.degree, common.workers)?;
            let passed = report.passed() && rb.passed() && split.passed();
            let value = json!({
                "spec": averaging_spec_to_json(&spec),
                "averaging": report.to_json(),
                "negation_rb": rb.to_json(),
                "negation_splitting_criterion": split.to_json(),
                "passed": passed,
            });
            emit(&value, &common.out)?;
            Ok(passed)
        }
        Command::Classify { bound, out } => {
            let one = FieldElement::one();
            let entries: Vec<Value> = enumerate_idempotents(bound)
                .iter()
                .map(|mat| {
                    let spec = matrix_to_averaging(mat, (&one, &one));
                    json!({
                        "matrix": [mat.a, mat.b, mat.c, mat.d],
                        "spec": spec.map(|s| averaging_spec_to_json(&s)),
                    })
                })
                .collect();
            let value = json!({
                "bound": bound,
                "count": entries.len(),
                "entries": entries,
            });
            emit(&value, &out)?;
            Ok(true)
        }
        Command::Table {
            family,
            max_n,
            max_m,
            cross_check,
            out,
        } => {
            let params = parse_json(&family)?;
            let rule = rule_from_json(&params)?;
            let name = params
                .get("family")
                .and_then(Value::as_str)
                .unwrap_or("unknown")
                .to_string();
            let value = table_to_json(&name, params.clone(), &rule, max_n, max_m);
            let passed = if cross_check {
                cross_check_table(&params, &rule, max_n, max_m)?
            } else {
                true
            };
            emit(&value, &out)?;
            Ok(passed)
        }
        Command::Decomp {
            spec,
            lambda,
            common,
        } => {
            let spec = decomposition_spec_from_json(&parse_json(&spec)?)?;
            let lambda = parse_field(&lambda)?;
            let closure = check_decomposition(&spec, common.degree, common.workers)?;
            let slopes = match spec.case {
                DecompCase::IV { .. } | DecompCase::V { .. } | DecompCase::VI { .. } => {
                    let (a, b) = empirical_slopes(&spec, common.degree)?;
                    json!({"alphaHat": a.to_string(), "betaHat": b.to_string()})
                }
                _ => Value::Null,
            };
            let rule = splitting_rbo(&spec, &lambda)?;
            let rb = rb_check(&rule, &lambda, Window::Poly, common.degree, common.workers)?;
            let criterion =
                splitting_criterion_check(&rule, &lambda, common.degree, common.workers)?;
            let passed = closure.passed() && rb.passed() && criterion.passed();
            let value = json!({
                "closure": closure.to_json(),
                "slopes": slopes,
                "splitting_rb": rb.to_json(),
                "splitting_criterion": criterion.to_json(),
                "passed": passed,
            });
            emit(&value, &common.out)?;
            Ok(passed)
        }
        Command::SSeq { s2, max_m, out } => {
            let s2 = parse_field(&s2)?;
            let rec = s_recurrence(&s2, max_m)?;
            let closed = s_closed_form(&s2, max_m)?;
            let rows: Vec<Value> = rec
                .iter()
                .zip(&closed)
                .enumerate()
                .map(|(m, (r, c))| {
                    json!({
                        "m": m,
                        "recurrence": r.to_string(),
                        "closed_form": c.to_string(),
                    })
                })
                .collect();
            let passed = rec == closed;
            let value = json!({
                "s2": s2.to_string(),
                "values": rows,
                "passed": passed,
            });
            emit(&value, &out)?;
            Ok(passed)
        }
    }
}

/// Recomputes the table rows of a y^(n+m)-image family through the
/// seed-row recurrence, the row extension and the double binomial sum and
/// compares all three against the rule's own coefficients.
fn cross_check_table(
    params: &Value,
    rule: &OperatorRule,
    max_n: i64,
    max_m: i64,
) -> Result<bool, Error> {
    let family = rb_family_from_json(params)?;
    match family {
        RBFamily::R1General { .. }
        | RBFamily::R1Q0EqQ1 { .. }
        | RBFamily::R1Q0Run { .. }
        | RBFamily::R1Q0EqQ2 { .. }
        | RBFamily::R1Q1EqQ2 { .. }
        | RBFamily::Fibonacci { .. } => {}
        _ => {
            return Err(Error::InvalidFamilyParams(
                "--cross-check applies only to the y^(n+m)-image families".into(),
            ))
        }
    }
    if max_n < 1 {
        return Ok(true);
    }
    let (max_n, max_m) = (max_n as usize, max_m as usize);
    // seeds straight off the operator's own first row
    let row_of = |m: i64| rule.coeff_of(Monomial::new(1, m));
    let seeds = (row_of(0), row_of(1), row_of(2));
    let row = r1_alpha_row(&seeds.0, &seeds.1, &seeds.2, max_n + max_m)?;
    let table = r1_extend(&row, &seeds.0, max_n, max_m)?;
    for n in 1..=max_n {
        for m in 0..=max_m {
            let direct = rule.coeff_of(Monomial::new(n as i64, m as i64));
            let recurred = &table[n - 1][m];
            if direct != *recurred {
                eprintln!("cross-check mismatch at ({n},{m}): rule {direct}, recurrence {recurred}");
                return Ok(false);
            }
            if n + m + 1 <= row.len() {
                let summed = alpha_sum_formula(&row, n - 1, m);
                if summed != direct {
                    eprintln!("cross-check mismatch at ({n},{m}): rule {direct}, sum formula {summed}");
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
