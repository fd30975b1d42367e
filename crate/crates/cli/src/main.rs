//! `sympair` command line: orbit enumeration, trace-bound verification with
//! an optional matrix-level oracle cross-check, graded tensor products, and
//! descendant classification of σ-fixed semisimple elements.
//!
//! Exit codes are a contract: 0 success, 1 verification failure, 2 usage or
//! input error, 3 σ-check failure, 4 semisimplicity failure, 5 incomplete
//! factorization.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sympair::descend::{classify_descendant, factor_min_poly, Factorization};
use sympair::orbits::{key_lemma_reports_of, summarize};
use sympair::{
    check_sigma_fixed, enumerate_orbits, is_semisimple, minimal_polynomial, oracle, ClassifyError,
    DescendantPair, EpsilonForm, KeyLemmaReport, Parity, Rational, RationalMatrix, RationalPoly,
    SignedOrbit, DEFAULT_KRONECKER_DEGREE,
};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NOT_SIGMA_FIXED: u8 = 3;
const EXIT_NOT_SEMISIMPLE: u8 = 4;
const EXIT_FACTORIZATION_INCOMPLETE: u8 = 5;

/// Default level up to which `verify` cross-checks against the matrix oracle;
/// overridden by --max-oracle-n or the SYMPAIR_MAX_ORACLE_N variable.
const DEFAULT_MAX_ORACLE_N: u32 = 4;

#[derive(Parser)]
#[command(
    name = "sympair",
    version,
    about = "Exact verification for the symmetric pair (GL_{n+k}, GL_n x GL_k): \
             orbit trace bounds, graded sl2 tensor calculus, and descendant classification",
    after_help = "Environment:\n  SYMPAIR_MAX_ORACLE_N  default bound for the oracle cross-check in `verify`\n\n\
                  Matrix files: first line `rows cols`, then row-major entries as `p/q` or\n\
                  integer tokens. Factor files: one monic polynomial per line as\n\
                  comma-separated rational coefficients, lowest degree first."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// List all nilpotent orbit types (balanced signed partitions) for a level n
    Enumerate {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check the trace bound T < 0 for every orbit at levels 1..=n
    Verify {
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Cross-check against the matrix-level oracle (on by default up to
        /// the oracle bound)
        #[arg(long, overrides_with = "no_oracle")]
        oracle: bool,
        /// Disable the oracle cross-check
        #[arg(long, overrides_with = "oracle")]
        no_oracle: bool,
        /// Largest level at which the oracle runs
        #[arg(long)]
        max_oracle_n: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decompose a graded tensor product V(l1,w1) ⊗ V(l2,w2)
    Tensor {
        lambda1: u32,
        #[arg(allow_hyphen_values = true)]
        w1: Parity,
        lambda2: u32,
        #[arg(allow_hyphen_values = true)]
        w2: Parity,
    },
    /// Classify the descendant of a σ-fixed semisimple element read from a matrix file
    Descend {
        /// Matrix file (`rows cols` header, then entries)
        matrix: PathBuf,
        /// Signature sizes n,k of ε = diag(Id_n, −Id_k)
        #[arg(long, value_parser = parse_eps)]
        eps: (u32, u32),
        /// Factor file: one monic polynomial per line, comma-separated
        /// rational coefficients, lowest degree first
        #[arg(long)]
        factors: Option<PathBuf>,
        /// Degree bound for the built-in Kronecker factor search
        #[arg(long, default_value_t = DEFAULT_KRONECKER_DEGREE)]
        max_kronecker_degree: usize,
    },
    /// Summary table: orbit count, max T, and pass flag per level
    Report {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_n: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn parse_eps(s: &str) -> Result<(u32, u32), String> {
    let (n, k) = s
        .split_once(',')
        .ok_or_else(|| "expected n,k (for example --eps 2,2)".to_string())?;
    let n: u32 = n.trim().parse().map_err(|e| format!("bad n: {e}"))?;
    let k: u32 = k.trim().parse().map_err(|e| format!("bad k: {e}"))?;
    if n < 1 || k < 1 {
        return Err("n and k must be >= 1".into());
    }
    Ok((n, k))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cmd: Cmd) -> Result<ExitCode> {
    match cmd {
        Cmd::Enumerate { n, format } => cmd_enumerate(n, format),
        Cmd::Verify {
            n,
            oracle,
            no_oracle,
            max_oracle_n,
            format,
        } => cmd_verify(n, oracle, no_oracle, max_oracle_n, format),
        Cmd::Tensor {
            lambda1,
            w1,
            lambda2,
            w2,
        } => cmd_tensor(lambda1, w1, lambda2, w2),
        Cmd::Descend {
            matrix,
            eps,
            factors,
            max_kronecker_degree,
        } => cmd_descend(&matrix, eps, factors.as_deref(), max_kronecker_degree),
        Cmd::Report { max_n, format } => cmd_report(max_n, format),
    }
}

fn orbit_json(orbit: &SignedOrbit) -> Value {
    Value::Array(
        orbit
            .parts()
            .iter()
            .map(|&(r, w)| json!([r, w.sign()]))
            .collect(),
    )
}

fn cmd_enumerate(n: u32, format: Format) -> Result<ExitCode> {
    let orbits = enumerate_orbits(n);
    match format {
        Format::Text => {
            for o in &orbits {
                println!("{o}");
            }
        }
        Format::Json => {
            let arr: Vec<Value> = orbits.iter().map(orbit_json).collect();
            println!("{}", serde_json::to_string(&arr)?);
        }
        Format::Csv => {
            println!("orbit");
            for o in &orbits {
                println!("\"{o}\"");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

struct VerifyRow {
    n: u32,
    report: KeyLemmaReport,
    oracle_trace: Option<Rational>,
}

impl VerifyRow {
    fn oracle_matches(&self) -> bool {
        self.oracle_trace
            .as_ref()
            .is_none_or(|t| *t == self.report.trace_value)
    }
}

fn cmd_verify(
    n: u32,
    oracle_flag: bool,
    no_oracle: bool,
    max_oracle_n: Option<u32>,
    format: Format,
) -> Result<ExitCode> {
    // Oracle auto-enabled by default; --oracle and --no-oracle override each
    // other, so after clap resolution `no_oracle` is authoritative.
    let with_oracle = oracle_flag || !no_oracle;
    let oracle_bound = max_oracle_n
        .or_else(|| {
            std::env::var("SYMPAIR_MAX_ORACLE_N")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(DEFAULT_MAX_ORACLE_N);

    let mut rows = Vec::new();
    for level in 1..=n {
        let orbits = enumerate_orbits(level);
        let reports = key_lemma_reports_of(&orbits);
        let oracle_traces = if with_oracle && level <= oracle_bound {
            Some(oracle::traces_of(&orbits).context("oracle trace computation failed")?)
        } else {
            None
        };
        for (idx, report) in reports.into_iter().enumerate() {
            rows.push(VerifyRow {
                n: level,
                oracle_trace: oracle_traces.as_ref().map(|ts| ts[idx].clone()),
                report,
            });
        }
    }

    let all_passed = rows.iter().all(|r| r.report.passed);
    let all_matched = rows.iter().all(VerifyRow::oracle_matches);

    match format {
        Format::Text => {
            for r in &rows {
                let oracle_col = r
                    .oracle_trace
                    .as_ref()
                    .map_or_else(|| "-".to_string(), Rational::to_string);
                println!(
                    "n={} orbit={} T={} trace={} oracle={} passed={}",
                    r.n, r.report.orbit, r.report.t, r.report.trace_value, oracle_col, r.report.passed
                );
            }
        }
        Format::Json => {
            let arr: Vec<Value> = rows.iter().map(verify_row_json).collect();
            println!("{}", serde_json::to_string(&arr)?);
        }
        Format::Csv => {
            println!("n,orbit,t,trace_value,oracle_trace,passed");
            for r in &rows {
                let oracle_col = r
                    .oracle_trace
                    .as_ref()
                    .map_or_else(String::new, Rational::to_string);
                println!(
                    "{},\"{}\",{},{},{},{}",
                    r.n, r.report.orbit, r.report.t, r.report.trace_value, oracle_col, r.report.passed
                );
            }
        }
    }

    if !all_passed {
        eprintln!("verification FAILED: an orbit violates T < 0");
        return Ok(ExitCode::from(EXIT_VERIFY_FAILED));
    }
    if !all_matched {
        eprintln!("verification FAILED: oracle trace mismatch");
        return Ok(ExitCode::from(EXIT_VERIFY_FAILED));
    }
    Ok(ExitCode::SUCCESS)
}

fn verify_row_json(row: &VerifyRow) -> Value {
    json!({
        "n": row.n,
        "orbit": orbit_json(&row.report.orbit),
        "t": row.report.t.to_string(),
        "trace_value": row.report.trace_value.to_string(),
        "oracle_trace": row.oracle_trace.as_ref().map(Rational::to_string),
        "passed": row.report.passed,
    })
}

fn cmd_tensor(lambda1: u32, w1: Parity, lambda2: u32, w2: Parity) -> Result<ExitCode> {
    let product = sympair::tensor(
        sympair::GradedIrrep::new(lambda1, w1),
        sympair::GradedIrrep::new(lambda2, w2),
    );
    println!("{product}");
    Ok(ExitCode::SUCCESS)
}

fn descendant_json(pair: &DescendantPair) -> Value {
    match pair {
        DescendantPair::Diagonal { ext_degree, size } => json!({
            "tag": "diagonal",
            "ext_degree": ext_degree,
            "size": size,
        }),
        DescendantPair::Galois {
            e_degree,
            l_degree,
            size,
            l_min_poly,
        } => json!({
            "tag": "galois",
            "e_degree": e_degree,
            "l_degree": l_degree,
            "size": size,
            "l_min_poly": l_min_poly.to_coeff_line(),
        }),
        DescendantPair::Linear { plus_dim, minus_dim } => json!({
            "tag": "linear",
            "plus_dim": plus_dim,
            "minus_dim": minus_dim,
        }),
    }
}

fn cmd_descend(
    matrix_path: &std::path::Path,
    (n, k): (u32, u32),
    factors_path: Option<&std::path::Path>,
    max_kronecker_degree: usize,
) -> Result<ExitCode> {
    let text = std::fs::read_to_string(matrix_path)
        .with_context(|| format!("cannot read {}", matrix_path.display()))?;
    let x = RationalMatrix::from_text(&text)
        .map_err(|e| anyhow!("{}: {e}", matrix_path.display()))?;
    let eps = EpsilonForm::new(n as usize, k as usize);
    if x.rows() != eps.size() || !x.is_square() {
        return Err(anyhow!(
            "matrix is {}x{}, but --eps {n},{k} needs {0}x{0}",
            x.rows(),
            x.cols(),
        ));
    }

    match check_sigma_fixed(&x, &eps) {
        Ok(true) => {}
        Ok(false) => {
            eprintln!("element is not σ-fixed: εxεx ≠ Id");
            return Ok(ExitCode::from(EXIT_NOT_SIGMA_FIXED));
        }
        Err(sympair::LinAlgError::Singular) => {
            return Err(anyhow!("matrix is singular; σ is only defined on GL"));
        }
        Err(e) => return Err(e.into()),
    }

    if !is_semisimple(&x)? {
        eprintln!("element is not semisimple: minimal polynomial is not squarefree");
        return Ok(ExitCode::from(EXIT_NOT_SEMISIMPLE));
    }

    let min_poly = minimal_polynomial(&x)?;
    let factors = match factors_path {
        Some(path) => read_factor_file(path)?,
        None => match factor_min_poly(&min_poly, max_kronecker_degree) {
            Factorization::Complete(factors) => factors,
            Factorization::NeedsUserFactorization { residual, .. } => {
                println!("residual: {}", residual.to_coeff_line());
                eprintln!(
                    "factorization incomplete: residual {residual} exceeds the \
                     Kronecker bound {max_kronecker_degree}; supply --factors"
                );
                return Ok(ExitCode::from(EXIT_FACTORIZATION_INCOMPLETE));
            }
        },
    };

    match classify_descendant(&x, &eps, &factors) {
        Ok(pairs) => {
            let arr: Vec<Value> = pairs.iter().map(descendant_json).collect();
            println!("{}", serde_json::to_string_pretty(&arr)?);
            Ok(ExitCode::SUCCESS)
        }
        Err(ClassifyError::NotSigmaFixed) => {
            eprintln!("element is not σ-fixed: εxεx ≠ Id");
            Ok(ExitCode::from(EXIT_NOT_SIGMA_FIXED))
        }
        Err(ClassifyError::NotSemisimple) => {
            eprintln!("element is not semisimple");
            Ok(ExitCode::from(EXIT_NOT_SEMISIMPLE))
        }
        Err(ClassifyError::IncompleteFactorization { residual }) => {
            println!("residual: {}", residual.to_coeff_line());
            eprintln!("factorization incomplete: residual {residual}");
            Ok(ExitCode::from(EXIT_FACTORIZATION_INCOMPLETE))
        }
        Err(other) => Err(anyhow!("invalid factorization: {other}")),
    }
}

fn read_factor_file(path: &std::path::Path) -> Result<Vec<RationalPoly>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let mut factors = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let poly = RationalPoly::parse_coeff_line(line)
            .map_err(|e| anyhow!("{}:{}: {e}", path.display(), lineno + 1))?;
        factors.push(poly);
    }
    if factors.is_empty() {
        return Err(anyhow!("{}: no polynomials found", path.display()));
    }
    Ok(factors)
}

fn cmd_report(max_n: u32, format: Format) -> Result<ExitCode> {
    let mut summaries = Vec::new();
    for level in 1..=max_n {
        let orbits = enumerate_orbits(level);
        let reports = key_lemma_reports_of(&orbits);
        summaries.push(summarize(level, &reports));
    }
    match format {
        Format::Text => {
            for s in &summaries {
                println!(
                    "n={} orbits={} max_t={} all_passed={}",
                    s.n, s.orbit_count, s.max_t, s.all_passed
                );
            }
        }
        Format::Json => {
            let arr: Vec<Value> = summaries
                .iter()
                .map(|s| {
                    json!({
                        "n": s.n,
                        "orbit_count": s.orbit_count,
                        "max_t": s.max_t.to_string(),
                        "all_passed": s.all_passed,
                    })
                })
                .collect();
            println!("{}", serde_json::to_string(&arr)?);
        }
        Format::Csv => {
            println!("n,orbit_count,max_t,all_passed");
            for s in &summaries {
                println!("{},{},{},{}", s.n, s.orbit_count, s.max_t, s.all_passed);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Harness self-test: a corrupted report (sign-flipped T) must fail.
    #[test]
    fn corrupted_row_fails_verification() {
        let orbit = SignedOrbit::from_parts(vec![(2, Parity::Plus)]).unwrap();
        let mut report = sympair::key_lemma_sum(&orbit);
        assert!(report.passed);
        report.t = -report.t.clone();
        report.passed = report.t < sympair::rint(0);
        let rows = [VerifyRow {
            n: 1,
            report,
            oracle_trace: None,
        }];
        assert!(!rows.iter().all(|r| r.report.passed));
    }

    #[test]
    fn oracle_mismatch_detected() {
        let orbit = SignedOrbit::from_parts(vec![(2, Parity::Plus)]).unwrap();
        let report = sympair::key_lemma_sum(&orbit);
        let row = VerifyRow {
            n: 1,
            oracle_trace: Some(&report.trace_value + &sympair::rint(1)),
            report,
        };
        assert!(!row.oracle_matches());
    }

    #[test]
    fn eps_parsing() {
        assert_eq!(parse_eps("2,2").unwrap(), (2, 2));
        assert_eq!(parse_eps(" 1, 3 ").unwrap(), (1, 3));
        assert!(parse_eps("0,1").is_err());
        assert!(parse_eps("2").is_err());
    }
}
