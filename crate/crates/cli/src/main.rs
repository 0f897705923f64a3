//! Command-line front end: divisor chains, reduction-map matrices, Smith
//! normal forms, Smith vectors, resultants, and a small benchmark table,
//! with text or JSON output.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage or
//! parse errors, 3 when an internal invariant breaks.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crtsmith::crtmap::{build_a, psi_matrix};
use crtsmith::cyclotomic::cyclotomic;
use crtsmith::divisors::{an_divisors, divisor_report, DivisorReport};
use crtsmith::resultants::{cyclotomic_resultant, det_psi_product, resultant, ResultantError};
use crtsmith::smithvec::{sv, verify_smith_vector, SmithVector};
use crtsmith::snf::snf;
use crtsmith::{IntMatrix, IntPolynomial, MonicFactorization};

#[derive(Parser)]
#[command(name = "crtsmith", version, about = "Exact cokernel data for the Chinese-remainder map on Z[X]/(X^n - 1)")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Divisor chain, cokernel structure, and determinant data for one n
    Divisors {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// The reduction-map matrix A_n in the text matrix format
    Matrix {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Smith normal form S, U, V of a matrix read from a file
    Snf { file: PathBuf },
    /// Construct the Smith vector of n and verify it
    Smithvec {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Resultant of the m-th and n-th cyclotomic polynomials, closed form
    /// next to the Sylvester oracle
    Resultant {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Determinant of the reduction map for monic factors listed in a file,
    /// one polynomial per line
    Detpsi { file: PathBuf },
    /// CSV timing table: closed-form chain vs elimination vs Smith vector
    Bench {
        #[arg(value_parser = clap::value_parser!(u64).range(1..=64))]
        n_max: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Divisors { n } => cmd_divisors(n, cli.format),
        Command::Matrix { n } => cmd_matrix(n, cli.format),
        Command::Snf { file } => cmd_snf(&file, cli.format),
        Command::Smithvec { n } => cmd_smithvec(n, cli.format),
        Command::Resultant { m, n } => cmd_resultant(m, n, cli.format),
        Command::Detpsi { file } => cmd_detpsi(&file, cli.format),
        Command::Bench { n_max } => cmd_bench(n_max),
    };
    ExitCode::from(code)
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
struct StatsJson {
    ones: u64,
    least_above_one: u64,
    least_multiplicity: u64,
    largest: u64,
    largest_multiplicity: u64,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
struct DivisorsJson {
    n: u64,
    divisors: Vec<String>,
    ratio_positions: Vec<(usize, u64)>,
    cokernel: Vec<String>,
    stats: Option<StatsJson>,
    det: String,
    gcd_product: String,
}

impl From<&DivisorReport> for DivisorsJson {
    fn from(r: &DivisorReport) -> Self {
        DivisorsJson {
            n: r.n,
            divisors: r.divisors.iter().map(ToString::to_string).collect(),
            ratio_positions: r.ratio_positions.clone(),
            cokernel: r.cokernel.iter().map(ToString::to_string).collect(),
            stats: r.stats.as_ref().map(|s| StatsJson {
                ones: s.ones,
                least_above_one: s.least_above_one,
                least_multiplicity: s.least_multiplicity,
                largest: s.largest,
                largest_multiplicity: s.largest_multiplicity,
            }),
            det: format!(
                "{}{}",
                if r.det_sign < 0 { "-" } else { "" },
                r.det_magnitude
            ),
            gcd_product: r.gcd_product.to_string(),
        }
    }
}

fn cmd_divisors(n: u64, format: OutputFormat) -> u8 {
    let report = divisor_report(n);
    match format {
        OutputFormat::Json => {
            println!("{}", serde_json::to_string(&DivisorsJson::from(&report)).expect("serializable"));
        }
        OutputFormat::Text => {
            let chain = report
                .divisors
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            println!("n = {n}");
            println!("divisors: {chain}");
            if report.cokernel.is_empty() {
                println!("cokernel: trivial");
            } else {
                let groups = report
                    .cokernel
                    .iter()
                    .map(|e| format!("Z/{e}"))
                    .collect::<Vec<_>>()
                    .join(" \u{2295} ");
                println!("cokernel: {groups}");
            }
            if !report.ratio_positions.is_empty() {
                let jumps = report
                    .ratio_positions
                    .iter()
                    .map(|(pos, p)| format!("{pos}:{p}"))
                    .collect::<Vec<_>>()
                    .join(" ");
                println!("prime jumps: {jumps}");
            }
            if let Some(stats) = &report.stats {
                println!("ones: {}", stats.ones);
                println!(
                    "least divisor above one: {} (multiplicity {})",
                    stats.least_above_one, stats.least_multiplicity
                );
                println!(
                    "largest divisor: {} (multiplicity {})",
                    stats.largest, stats.largest_multiplicity
                );
            }
            let sign = if report.det_sign < 0 { "-" } else { "" };
            println!("det: {sign}{}", report.det_magnitude);
            println!("gcd product: {}", report.gcd_product);
        }
    }
    0
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

impl From<&IntMatrix> for MatrixJson {
    fn from(m: &IntMatrix) -> Self {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect())
                .collect(),
        }
    }
}

fn cmd_matrix(n: u64, format: OutputFormat) -> u8 {
    let a = build_a(n);
    match format {
        OutputFormat::Text => println!("{a}"),
        OutputFormat::Json => {
            println!("{}", serde_json::to_string(&MatrixJson::from(&a)).expect("serializable"));
        }
    }
    0
}

#[derive(Serialize)]
struct SnfJson {
    s: MatrixJson,
    u: MatrixJson,
    v: MatrixJson,
}

fn cmd_snf(file: &PathBuf, format: OutputFormat) -> u8 {
    let text = match fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {}: {e}", file.display());
            return 2;
        }
    };
    let a: IntMatrix = match text.parse() {
        Ok(a) => a,
        Err(e) => {
            eprintln!("cannot parse {}: {e}", file.display());
            return 2;
        }
    };
    let result = snf(&a);
    if !result.certifies(&a) {
        eprintln!("internal error: transform certificate does not hold");
        return 3;
    }
    match format {
        OutputFormat::Text => {
            println!("S:\n{}", result.s());
            println!("U:\n{}", result.u());
            println!("V:\n{}", result.v());
        }
        OutputFormat::Json => {
            let doc = SnfJson {
                s: MatrixJson::from(result.s()),
                u: MatrixJson::from(result.u()),
                v: MatrixJson::from(result.v()),
            };
            println!("{}", serde_json::to_string(&doc).expect("serializable"));
        }
    }
    0
}

#[derive(Serialize)]
struct SmithVecJson<'a> {
    family: &'a SmithVector,
    verified: bool,
    basis_determinant: String,
    millis: f64,
}

fn cmd_smithvec(n: u64, format: OutputFormat) -> u8 {
    let start = Instant::now();
    let family = match sv(n) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("construction failed: {e}");
            return 1;
        }
    };
    let verdict = verify_smith_vector(&family);
    let millis = start.elapsed().as_secs_f64() * 1e3;
    match format {
        OutputFormat::Text => {
            println!("n = {n}");
            println!("{family}");
            println!(
                "verification: {} (basis determinant {})",
                if verdict.passed() { "pass" } else { "FAIL" },
                verdict.basis_determinant
            );
            println!("time: {millis:.3} ms");
            if !verdict.passed() {
                println!("{verdict}");
            }
        }
        OutputFormat::Json => {
            let doc = SmithVecJson {
                family: &family,
                verified: verdict.passed(),
                basis_determinant: verdict.basis_determinant.to_string(),
                millis,
            };
            println!("{}", serde_json::to_string(&doc).expect("serializable"));
        }
    }
    if verdict.passed() {
        0
    } else {
        1
    }
}

#[derive(Serialize)]
struct ResultantJson {
    m: u64,
    n: u64,
    closed_form: String,
    oracle: String,
    #[serde(rename = "match")]
    agree: bool,
}

fn cmd_resultant(m: u64, n: u64, format: OutputFormat) -> u8 {
    let oracle = resultant(&cyclotomic(m), &cyclotomic(n)).expect("cyclotomics are nonzero");
    let closed = match cyclotomic_resultant(m, n) {
        Ok(v) => v,
        // Equal indices share all their roots, so both routes give 0.
        Err(ResultantError::EqualIndices) => 0.into(),
        Err(e) => {
            eprintln!("internal error: {e}");
            return 3;
        }
    };
    let agree = closed == oracle;
    match format {
        OutputFormat::Text => {
            println!("closed form: {closed}");
            println!("oracle: {oracle}");
            println!("match: {}", if agree { "yes" } else { "NO" });
        }
        OutputFormat::Json => {
            let doc = ResultantJson {
                m,
                n,
                closed_form: closed.to_string(),
                oracle: oracle.to_string(),
                agree,
            };
            println!("{}", serde_json::to_string(&doc).expect("serializable"));
        }
    }
    if agree {
        0
    } else {
        3
    }
}

#[derive(Serialize)]
struct DetPsiJson {
    factors: Vec<String>,
    closed_form: String,
    oracle: String,
    #[serde(rename = "match")]
    agree: bool,
}

fn cmd_detpsi(file: &PathBuf, format: OutputFormat) -> u8 {
    let text = match fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {}: {e}", file.display());
            return 2;
        }
    };
    let mut factors = Vec::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        match line.parse::<IntPolynomial>() {
            Ok(p) => factors.push(p),
            Err(e) => {
                eprintln!("cannot parse factor: {e}");
                return 2;
            }
        }
    }
    let factorization = match MonicFactorization::new(factors) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("{e}");
            return 2;
        }
    };
    let closed = det_psi_product(&factorization);
    let oracle = psi_matrix(&factorization).det();
    let agree = closed == oracle;
    match format {
        OutputFormat::Text => {
            println!("closed form: {closed}");
            println!("oracle: {oracle}");
            println!("match: {}", if agree { "yes" } else { "NO" });
        }
        OutputFormat::Json => {
            let doc = DetPsiJson {
                factors: factorization.factors().iter().map(ToString::to_string).collect(),
                closed_form: closed.to_string(),
                oracle: oracle.to_string(),
                agree,
            };
            println!("{}", serde_json::to_string(&doc).expect("serializable"));
        }
    }
    if agree {
        0
    } else {
        3
    }
}

fn cmd_bench(n_max: u64) -> u8 {
    println!("n,closed_form_s,elimination_s,smith_vector_s");
    for n in 1..=n_max {
        let start = Instant::now();
        std::hint::black_box(an_divisors(n));
        let closed = start.elapsed().as_secs_f64();

        let a = build_a(n);
        let start = Instant::now();
        std::hint::black_box(snf(&a));
        let elimination = start.elapsed().as_secs_f64();

        let start = Instant::now();
        std::hint::black_box(sv(n).expect("construction verifies"));
        let vector = start.elapsed().as_secs_f64();

        println!("{n},{closed:.9},{elimination:.9},{vector:.9}");
    }
    0
}
