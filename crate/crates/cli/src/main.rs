//! `xhermite`: generation, verification scans, certificates and quadrature
//! artifacts for exceptional Hermite polynomials.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage errors.

mod check;
mod scan;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use xhermite::hermite::ExceptionalBasis;
use xhermite::l2lab::{density_demo, gram_matrix, TestFunction};
use xhermite::monodromy::veselov_scan;
use xhermite::partitions::PartitionFilter;
use xhermite::{Error, Partition};

pub const TOOL: &str = "xhermite";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "xhermite", version, about = "Exceptional Hermite polynomials: construction and verification")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Relative tolerance for numeric checks.
    #[arg(short = 't', long = "tol", global = true, default_value_t = 1e-8, value_parser = positive_f64)]
    pub tol: f64,
    /// Working precision in decimal digits (at least 32).
    #[arg(long, global = true, env = "XHERMITE_DIGITS", default_value_t = 64, value_parser = digits)]
    pub digits: usize,
    /// Write the artifact to this file instead of stdout.
    #[arg(short = 'o', long = "out", global = true)]
    pub out: Option<PathBuf>,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print H_lambda and H_{lambda,i} for admissible i <= max-index.
    Gen {
        #[arg(short = 'p', long = "partition", value_parser = partition, allow_hyphen_values = true)]
        partition: Partition,
        /// Also print H_{lambda,i} for admissible i up to this index.
        #[arg(long = "max-index")]
        max_index: Option<usize>,
    },
    /// Monodromy and membership certificate for one partition.
    Check {
        #[arg(short = 'p', long = "partition", value_parser = partition)]
        partition: Partition,
        /// Largest k for the eigenfunction checks (default |lambda| + 5).
        #[arg(short = 'k', long = "k-max")]
        k_max: Option<usize>,
    },
    /// Batch report over all partitions up to a size.
    Scan {
        #[arg(short = 'n', long = "max-size", value_parser = clap::value_parser!(u64).range(1..))]
        max_size: u64,
        #[arg(long, default_value = "all", value_parser = filter)]
        filter: PartitionFilter,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Gram matrix of the first admissible H_{lambda,i} in L^2(W_lambda).
    Ortho {
        #[arg(short = 'p', long = "partition", value_parser = partition)]
        partition: Partition,
        #[arg(short = 'k', long = "count", default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
    },
    /// Projection errors of f onto the exceptional spans of degree <= D.
    Density {
        #[arg(short = 'p', long = "partition", value_parser = partition)]
        partition: Partition,
        /// one, abs, exp, or a polynomial such as "x^2 - 1".
        #[arg(short = 'f', long = "function", default_value = "one", value_parser = function)]
        function: TestFunction,
        #[arg(short = 'D', long = "degrees", value_delimiter = ',', default_value = "0,4,8,12")]
        degrees: Vec<usize>,
    },
    /// Exact multiple-root scan.
    Veselov {
        #[arg(short = 'n', long = "max-size", value_parser = clap::value_parser!(u64).range(1..))]
        max_size: u64,
    },
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("tolerance must be positive, got {s}"))
    }
}

fn digits(s: &str) -> Result<usize, String> {
    let v: usize = s.parse().map_err(|e| format!("{e}"))?;
    if v >= 32 {
        Ok(v)
    } else {
        Err(format!("precision must be at least 32 digits, got {v}"))
    }
}

fn partition(s: &str) -> Result<Partition, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn filter(s: &str) -> Result<PartitionFilter, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn function(s: &str) -> Result<TestFunction, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure classes mapped onto exit codes.
pub enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotEven(_) | Error::InvalidPartition(_) | Error::InvalidArgument(_) | Error::Parse { .. } => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Check(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Check(format!("i/o error: {e}"))
    }
}

pub type CmdResult = Result<(), Failure>;

/// Writes the artifact to `--out` or stdout.
pub fn emit(common: &Common, body: &str) -> CmdResult {
    match &common.out {
        Some(path) => fs::write(path, body)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli);
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    let c = &cli.common;
    match &cli.command {
        Command::Gen { partition, max_index } => cmd_gen(c, partition, *max_index),
        Command::Check { partition, k_max } => check::cmd_check(c, partition, *k_max),
        Command::Scan {
            max_size,
            filter,
            jobs,
        } => scan::cmd_scan(c, *max_size as usize, *filter, *jobs),
        Command::Ortho { partition, count } => cmd_ortho(c, partition, *count as usize),
        Command::Density {
            partition,
            function,
            degrees,
        } => cmd_density(c, partition, function, degrees),
        Command::Veselov { max_size } => cmd_veselov(c, *max_size as usize),
    }
}

#[derive(Serialize)]
struct GenElement {
    i: usize,
    degree: usize,
    polynomial: String,
}

#[derive(Serialize)]
struct GenReport {
    tool: &'static str,
    version: &'static str,
    partition: Partition,
    k_set: Vec<usize>,
    h_lambda: String,
    elements: Vec<GenElement>,
}

fn cmd_gen(c: &Common, lam: &Partition, max_index: Option<usize>) -> CmdResult {
    let basis = ExceptionalBasis::new(lam);
    let mut elements = Vec::new();
    for i in max_index.into_iter().flat_map(|m| 0..=m).filter(|&i| basis.is_admissible(i)) {
        let p = basis.element(i)?;
        elements.push(GenElement {
            i,
            degree: p.degree().unwrap_or(0),
            polynomial: p.to_string(),
        });
    }
    let report = GenReport {
        tool: TOOL,
        version: VERSION,
        partition: lam.clone(),
        k_set: basis.kset().as_slice().to_vec(),
        h_lambda: basis.h_lambda().to_string(),
        elements,
    };
    let body = match c.format.unwrap_or(Format::Text) {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut s = String::from("name,i,degree,polynomial\n");
            s.push_str(&format!("H_lambda,,{},\"{}\"\n", lam.size(), report.h_lambda));
            for e in &report.elements {
                s.push_str(&format!("H_lambda_i,{},{},\"{}\"\n", e.i, e.degree, e.polynomial));
            }
            s
        }
        Format::Text => {
            let mut s = format!("H_lambda = {}\n", report.h_lambda);
            for e in &report.elements {
                s.push_str(&format!("H_lambda,{} = {}\n", e.i, e.polynomial));
            }
            s
        }
    };
    emit(c, &body)
}

fn require_even(lam: &Partition) -> CmdResult {
    if lam.is_even() {
        Ok(())
    } else {
        Err(Error::NotEven(lam.to_string()).into())
    }
}

fn cmd_ortho(c: &Common, lam: &Partition, count: usize) -> CmdResult {
    require_even(lam)?;
    let g = gram_matrix(lam, count)?;
    let body = match c.format.unwrap_or(Format::Csv) {
        Format::Csv => g.to_csv(),
        Format::Json => to_json(&g),
        Format::Text => {
            let mut s = format!("partition {}  indices {:?}\n", g.lam, g.indices);
            for row in &g.matrix {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:>24.16e}")).collect();
                s.push_str(&cells.join(" "));
                s.push('\n');
            }
            s
        }
    };
    emit(c, &body)?;
    if !g.converged {
        eprintln!(
            "warning: quadrature did not converge at {} nodes (relative change {:e})",
            g.quadrature_nodes_used, g.rel_change
        );
    }
    eprintln!(
        "max_offdiag_rel = {:e} ({} nodes)",
        g.max_offdiag_rel, g.quadrature_nodes_used
    );
    if g.max_offdiag_rel > c.tol {
        return Err(Failure::Check(format!(
            "max_offdiag_rel {:e} exceeds tolerance {:e}",
            g.max_offdiag_rel, c.tol
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct DensityOutput<'a> {
    tool: &'static str,
    version: &'static str,
    function: String,
    #[serde(flatten)]
    report: &'a xhermite::l2lab::DensityReport,
}

fn cmd_density(c: &Common, lam: &Partition, f: &TestFunction, degrees: &[usize]) -> CmdResult {
    require_even(lam)?;
    let r = density_demo(lam, &|x| f.eval(x), degrees)?;
    let body = match c.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&DensityOutput {
            tool: TOOL,
            version: VERSION,
            function: f.to_string(),
            report: &r,
        }),
        Format::Csv | Format::Text => {
            let mut s = String::from("D,error\n");
            for p in &r.points {
                s.push_str(&format!("{},{:.17e}\n", p.degree, p.error));
            }
            s
        }
    };
    emit(c, &body)?;
    if !r.converged {
        eprintln!("warning: quadrature did not converge at {} nodes", r.quadrature_nodes_used);
    }
    let last = r.points.last().expect("degrees nonempty");
    eprintln!("final error = {:e} at D = {} (||f|| = {:e})", last.error, last.degree, r.f_norm);
    if !r.is_non_increasing() {
        return Err(Failure::Check(format!("error sequence increases: {:?}", r.errors())));
    }
    Ok(())
}

fn cmd_veselov(c: &Common, max_size: usize) -> CmdResult {
    let rows = veselov_scan(max_size)?;
    let body = match c.format.unwrap_or(Format::Text) {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut s = String::from(
                "partition,origin_multiplicity,factors,has_multiple_root,multiple_root_off_origin,all_triangular,worst_nu\n",
            );
            for r in &rows {
                s.push_str(&format!(
                    "\"{}\",{},\"{}\",{},{},{},{}\n",
                    r.partition,
                    r.origin_multiplicity,
                    scan::factor_text(&r.factors),
                    r.has_multiple_root,
                    r.multiple_root_off_origin,
                    r.all_triangular,
                    r.worst_nu.map_or(String::new(), |v| v.to_string())
                ));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in &rows {
                s.push_str(&format!(
                    "{:<20} origin m={:<3} factors {:<24} {}\n",
                    r.partition.to_string(),
                    r.origin_multiplicity,
                    scan::factor_text(&r.factors),
                    if r.multiple_root_off_origin {
                        "MULTIPLE ROOT OFF ORIGIN"
                    } else if r.has_multiple_root {
                        "multiple root at origin"
                    } else {
                        "simple"
                    }
                ));
            }
            s
        }
    };
    emit(c, &body)?;
    let off: Vec<String> = rows
        .iter()
        .filter(|r| r.multiple_root_off_origin)
        .map(|r| r.partition.to_string())
        .collect();
    if !off.is_empty() {
        eprintln!("counterexample: multiple roots away from the origin for {}", off.join(" "));
    }
    if let Some(r) = rows.iter().find(|r| !r.all_triangular) {
        return Err(Failure::Check(format!("non-triangular multiplicity for {}", r.partition)));
    }
    Ok(())
}
