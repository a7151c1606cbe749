use rayon::prelude::*;
use serde::Serialize;
use xhermite::monodromy::{check_dg, default_truncation, laurent_potential, veselov_row, ConstraintSystem};
use xhermite::mp::Precision;
use xhermite::partitions::{enumerate, PartitionFilter};
use xhermite::Partition;

use crate::{emit, to_json, CmdResult, Common, Failure, Format, TOOL, VERSION};

#[derive(Serialize)]
pub struct ScanRow {
    pub partition: Partition,
    pub size: usize,
    pub origin_multiplicity: usize,
    pub factors: Vec<(usize, usize)>,
    pub has_multiple_root: bool,
    pub multiple_root_off_origin: bool,
    pub all_triangular: bool,
    pub worst_nu: Option<usize>,
    pub constraint_count: usize,
    pub dg_pass: bool,
    pub passed: bool,
    pub error: Option<String>,
}

#[derive(Serialize)]
struct ScanReport {
    tool: &'static str,
    version: &'static str,
    max_size: usize,
    tolerance: f64,
    precision_digits: usize,
    rows: Vec<ScanRow>,
    flagged: Vec<String>,
    off_origin: Vec<String>,
    failures: Vec<String>,
}

pub fn factor_text(f: &[(usize, usize)]) -> String {
    f.iter()
        .map(|(d, m)| format!("{d}^{m}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn row(lam: &Partition, tol: f64, prec: Precision) -> ScanRow {
    let v = match veselov_row(lam) {
        Ok(v) => v,
        Err(e) => return failed(lam, e.to_string()),
    };
    let numeric = (|| -> xhermite::Result<(usize, bool)> {
        let sys = ConstraintSystem::new(lam, prec)?;
        let mut dg = true;
        for p in sys.profiles() {
            let s = laurent_potential(lam, p, default_truncation(p.nu), prec)?;
            dg &= check_dg(&s, p.nu, tol)?.passed;
        }
        Ok((sys.constraint_count(), dg))
    })();
    let (constraint_count, dg_pass, error) = match numeric {
        Ok((n, dg)) => (n, dg, None),
        Err(e) => (0, false, Some(e.to_string())),
    };
    let passed = error.is_none() && dg_pass && v.all_triangular && constraint_count == lam.size();
    ScanRow {
        partition: lam.clone(),
        size: lam.size(),
        origin_multiplicity: v.origin_multiplicity,
        factors: v.factors,
        has_multiple_root: v.has_multiple_root,
        multiple_root_off_origin: v.multiple_root_off_origin,
        all_triangular: v.all_triangular,
        worst_nu: v.worst_nu,
        constraint_count,
        dg_pass,
        passed,
        error,
    }
}

fn failed(lam: &Partition, error: String) -> ScanRow {
    ScanRow {
        partition: lam.clone(),
        size: lam.size(),
        origin_multiplicity: 0,
        factors: Vec::new(),
        has_multiple_root: false,
        multiple_root_off_origin: false,
        all_triangular: false,
        worst_nu: None,
        constraint_count: 0,
        dg_pass: false,
        passed: false,
        error: Some(error),
    }
}

/// One row per partition; rows are computed in parallel and collected in
/// enumeration order.
pub fn scan_rows(max_size: usize, filter: PartitionFilter, tol: f64, prec: Precision) -> Vec<ScanRow> {
    enumerate(max_size, filter).par_iter().map(|l| row(l, tol, prec)).collect()
}

pub fn cmd_scan(c: &Common, max_size: usize, filter: PartitionFilter, jobs: Option<usize>) -> CmdResult {
    let prec = Precision::from_digits(c.digits);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(Failure::Usage("--jobs must be positive".into()));
        }
        builder = builder.num_threads(j);
    }
    let pool = builder
        .build()
        .map_err(|e| Failure::Check(format!("thread pool: {e}")))?;
    let rows = pool.install(|| scan_rows(max_size, filter, c.tol, prec));

    let flagged = rows
        .iter()
        .filter(|r| r.has_multiple_root)
        .map(|r| r.partition.to_string())
        .collect();
    let off_origin: Vec<String> = rows
        .iter()
        .filter(|r| r.multiple_root_off_origin)
        .map(|r| r.partition.to_string())
        .collect();
    let failures: Vec<String> = rows
        .iter()
        .filter(|r| !r.passed)
        .map(|r| match &r.error {
            Some(e) => format!("{}: {e}", r.partition),
            None => format!("{}: check failed", r.partition),
        })
        .collect();
    let report = ScanReport {
        tool: TOOL,
        version: VERSION,
        max_size,
        tolerance: c.tol,
        precision_digits: c.digits,
        rows,
        flagged,
        off_origin: off_origin.clone(),
        failures: failures.clone(),
    };
    let body = match c.format.unwrap_or(Format::Text) {
        Format::Json => to_json(&report),
        Format::Csv => csv(&report.rows),
        Format::Text => text(&report),
    };
    emit(c, &body)?;
    if !off_origin.is_empty() {
        eprintln!("counterexample: multiple roots away from the origin for {}", off_origin.join(" "));
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(failures.join("; ")))
    }
}

fn csv(rows: &[ScanRow]) -> String {
    let mut s = String::from(
        "partition,size,origin_multiplicity,factors,has_multiple_root,multiple_root_off_origin,all_triangular,worst_nu,constraint_count,dg_pass,passed\n",
    );
    for r in rows {
        s.push_str(&format!(
            "\"{}\",{},{},\"{}\",{},{},{},{},{},{},{}\n",
            r.partition,
            r.size,
            r.origin_multiplicity,
            factor_text(&r.factors),
            r.has_multiple_root,
            r.multiple_root_off_origin,
            r.all_triangular,
            r.worst_nu.map_or(String::new(), |v| v.to_string()),
            r.constraint_count,
            r.dg_pass,
            r.passed
        ));
    }
    s
}

fn text(report: &ScanReport) -> String {
    let mut s = String::new();
    for r in &report.rows {
        s.push_str(&format!(
            "{:<20} origin m={:<3} factors {:<24} nu<={:<2} constraints {:<3} DG {:<4} {}\n",
            r.partition.to_string(),
            r.origin_multiplicity,
            factor_text(&r.factors),
            r.worst_nu.unwrap_or(0),
            r.constraint_count,
            if r.dg_pass { "pass" } else { "FAIL" },
            if r.passed { "ok" } else { "FAILED" }
        ));
    }
    s.push_str(&format!(
        "{} partitions, {} with multiple roots, {} off the origin, {} failures\n",
        report.rows.len(),
        report.flagged.len(),
        report.off_origin.len(),
        report.failures.len()
    ));
    s
}
