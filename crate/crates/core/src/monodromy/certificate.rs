use serde::Serialize;

use super::constraints::ConstraintSystem;
use super::dg::{check_dg, default_truncation, laurent_potential};
use super::eigen::{check_eigen_laurent, eigenfunction_residual};
use crate::error::Result;
use crate::partitions::Partition;

#[derive(Debug, Clone, Serialize)]
pub struct RootCertificate {
    pub xi_re: f64,
    pub xi_im: f64,
    pub m: usize,
    pub nu: usize,
    #[serde(rename = "M")]
    pub constraint_orders: Vec<usize>,
    /// Residuals of `c_{-2} - nu(nu+1)` and `c_{-1}, c_1, ..., c_{2nu-1}`, in that order.
    pub dg_residuals: Vec<f64>,
    pub dg_pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenCheck {
    pub k: usize,
    pub exact_zero: bool,
    pub laurent_pass: bool,
}

/// Trivial-monodromy evidence for one partition.
#[derive(Debug, Clone, Serialize)]
pub struct MonodromyCertificate {
    pub partition: Partition,
    pub roots: Vec<RootCertificate>,
    pub eigen_checks: Vec<EigenCheck>,
    pub constraint_count: usize,
}

impl MonodromyCertificate {
    /// Names of the failed conditions; empty when everything holds.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for r in &self.roots {
            if !r.dg_pass {
                out.push(format!(
                    "DG conditions at xi = {:e}{:+e}i (nu = {})",
                    r.xi_re, r.xi_im, r.nu
                ));
            }
        }
        for e in &self.eigen_checks {
            if !e.exact_zero {
                out.push(format!("eigenfunction residual nonzero for k = {}", e.k));
            }
            if !e.laurent_pass {
                out.push(format!("eigenfunction Laurent conditions fail for k = {}", e.k));
            }
        }
        if self.constraint_count != self.partition.size() {
            out.push(format!(
                "constraint count {} != |lambda| = {}",
                self.constraint_count,
                self.partition.size()
            ));
        }
        out
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }
}

/// Runs the DG check at every root and the eigenfunction checks for all
/// admissible `k <= k_max`.
pub fn monodromy_certificate(sys: &ConstraintSystem, tol: f64, k_max: usize) -> Result<MonodromyCertificate> {
    let lam = sys.partition();
    let prec = sys.precision();
    let mut roots = Vec::with_capacity(sys.num_roots());
    for p in sys.profiles() {
        let series = laurent_potential(lam, p, default_truncation(p.nu), prec)?;
        let rep = check_dg(&series, p.nu, tol)?;
        let (xi_re, xi_im) = p.xi_f64();
        roots.push(RootCertificate {
            xi_re: clean(xi_re),
            xi_im: clean(xi_im),
            m: p.m,
            nu: p.nu,
            constraint_orders: p.constraint_orders.iter().copied().collect(),
            dg_residuals: rep.conditions.iter().map(|c| c.residual).collect(),
            dg_pass: rep.passed,
        });
    }
    let ks = lam.k_sequence();
    let mut eigen_checks = Vec::new();
    for k in (0..=k_max).filter(|&k| !ks.contains(k)) {
        let exact_zero = eigenfunction_residual(lam, k)?.is_zero();
        let laurent_pass = check_eigen_laurent(sys, k, tol)?.passed;
        eigen_checks.push(EigenCheck {
            k,
            exact_zero,
            laurent_pass,
        });
    }
    Ok(MonodromyCertificate {
        partition: lam.clone(),
        roots,
        eigen_checks,
        constraint_count: sys.constraint_count(),
    })
}

// Coordinates below 1e-40 are rounding residue of a multiprecision zero.
fn clean(v: f64) -> f64 {
    if v.abs() < 1e-40 {
        0.0
    } else {
        v
    }
}
