//! Differential constraints `(p F_i)^{(j)}(xi_i) = 0`, `j in M_i`, with
//! `F_i = prod_{j != i} (x - xi_j)^{-m_j} exp(-x^2/2)`.

use serde::Serialize;

use super::roots::{root_profiles_with, RootProfile};
use super::series::{gaussian_series, inverse, mul};
use crate::error::{Error, Result};
use crate::exactpoly::ExactPoly;
use crate::hermite::h_lambda;
use crate::mp::{taylor_shift, MpComplex, Precision};
use crate::partitions::Partition;

/// How constraint residuals are normalized before comparison with `tol`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum ConstraintScale {
    /// Each residual is divided by `sum_k |p_k| |L_j(x^k)|`, the size of the
    /// monomial contributions before cancellation, plus `sqrt(eps)` times the
    /// cofactor scale so a functional that kills every monomial of `p` does
    /// not divide roundoff by roundoff.
    #[default]
    Reference,
    /// Each residual is divided by `|F_i(xi_i)| j! sum_k |p_k| (1 + |xi_i|)^k`,
    /// the leading-term factor of the constraint.
    Cofactor,
}

/// Taylor data of `F_i` about one root.
#[derive(Debug, Clone)]
struct RootExpansion {
    profile: RootProfile,
    /// Taylor coefficients of `F_i` about `xi_i`.
    cofactor: Vec<MpComplex>,
}

/// All roots of `H_lambda` with their constraint sets and cofactor series.
#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    lam: Partition,
    prec: Precision,
    roots: Vec<RootExpansion>,
    order: usize,
}

/// `(p F_i)^{(j)}(xi_i)` for one root and one order.
#[derive(Debug, Clone)]
pub struct ConstraintValue {
    pub root: usize,
    pub order: usize,
    pub value: MpComplex,
}

impl ConstraintSystem {
    pub fn new(lam: &Partition, prec: Precision) -> Result<Self> {
        let profiles = if lam.is_empty() {
            Vec::new()
        } else {
            root_profiles_with(lam, prec)?
        };
        let order = profiles
            .iter()
            .map(|p| p.max_order() + 2 * p.nu + 6)
            .max()
            .unwrap_or(0);
        let h = h_lambda(lam).monic();
        let roots = profiles
            .into_iter()
            .map(|p| {
                let cofactor = cofactor_series(&h, &p, order + 1, prec)?;
                Ok(RootExpansion { profile: p, cofactor })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            lam: lam.clone(),
            prec,
            roots,
            order,
        })
    }

    pub fn partition(&self) -> &Partition {
        &self.lam
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn profiles(&self) -> impl Iterator<Item = &RootProfile> {
        self.roots.iter().map(|r| &r.profile)
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    /// `sum |M_i|`, which equals `sum m_i = |lambda|`.
    pub fn constraint_count(&self) -> usize {
        self.roots.iter().map(|r| r.profile.constraint_orders.len()).sum()
    }

    /// Highest Taylor order available from [`Self::product_series`].
    pub fn series_order(&self) -> usize {
        self.order
    }

    /// `F_i(xi_i)`.
    pub fn cofactor_at_root(&self, root: usize) -> MpComplex {
        self.roots[root].cofactor[0].clone()
    }

    /// Taylor coefficients of `p F_i` about `xi_i`, orders `0..n`.
    pub fn product_series(&self, p: &ExactPoly, root: usize, n: usize) -> Result<Vec<MpComplex>> {
        if n > self.order + 1 {
            return Err(Error::Truncation {
                have: self.order as i64,
                need: n as i64 - 1,
            });
        }
        let r = &self.roots[root];
        let shifted = taylor_shift(p.coeffs(), &r.profile.xi, self.prec);
        Ok(mul(&shifted, &r.cofactor, n, self.prec))
    }

    /// Every constraint value `(p F_i)^{(j)}(xi_i) = j! [t^j](p F_i)`.
    pub fn evaluate(&self, p: &ExactPoly) -> Result<Vec<ConstraintValue>> {
        let mut out = Vec::with_capacity(self.lam.size());
        for (i, r) in self.roots.iter().enumerate() {
            let n = r.profile.max_order() + 1;
            let s = self.product_series(p, i, n)?;
            for &j in &r.profile.constraint_orders {
                out.push(ConstraintValue {
                    root: i,
                    order: j,
                    value: &s[j] * &factorial(j, self.prec),
                });
            }
        }
        Ok(out)
    }

    fn scales(&self, p: &ExactPoly, mode: ConstraintScale) -> Result<Vec<f64>> {
        let coeffs: Vec<f64> = p.to_f64_coeffs().iter().map(|c| c.abs()).collect();
        let cofactor = self.cofactor_scales(&coeffs);
        if mode == ConstraintScale::Cofactor {
            return Ok(cofactor);
        }
        let mut per_monomial = Vec::with_capacity(coeffs.len());
        for k in 0..coeffs.len() {
            per_monomial.push(self.evaluate(&ExactPoly::monomial(crate::exactpoly::rat(1), k))?);
        }
        let noise = self.prec.epsilon().sqrt();
        Ok(cofactor
            .iter()
            .enumerate()
            .map(|(idx, f)| {
                let s: f64 = coeffs
                    .iter()
                    .zip(&per_monomial)
                    .map(|(c, vals)| c * vals[idx].value.abs_f64())
                    .sum();
                s + noise * f
            })
            .collect())
    }

    fn cofactor_scales(&self, coeffs: &[f64]) -> Vec<f64> {
        let mut out = Vec::new();
        for r in &self.roots {
            let f0 = r.cofactor[0].abs_f64();
            let base = 1.0 + r.profile.xi.abs_f64();
            let size: f64 = coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * base.powi(k as i32))
                .sum();
            for &j in &r.profile.constraint_orders {
                let fact: f64 = (1..=j).map(|v| v as f64).product();
                out.push(f0 * fact * size);
            }
        }
        out
    }
}

fn factorial(j: usize, prec: Precision) -> MpComplex {
    (1..=j as i64).fold(MpComplex::one(prec), |acc, v| &acc * &MpComplex::from_i64(v, prec))
}

/// Taylor series of `F_i` about `xi_i` from the monic `H_lambda`: the shifted
/// polynomial loses its first `m_i` (vanishing) coefficients, is inverted,
/// and multiplied by the Gaussian series.
fn cofactor_series(h_monic: &ExactPoly, p: &RootProfile, n: usize, prec: Precision) -> Result<Vec<MpComplex>> {
    let shifted = taylor_shift(h_monic.coeffs(), &p.xi, prec);
    let scale = shifted.iter().map(MpComplex::abs_f64).fold(0.0, f64::max);
    let dropped = shifted[..p.m].iter().map(MpComplex::abs_f64).fold(0.0, f64::max);
    if dropped > 1e-20 * scale {
        return Err(Error::Precision(format!(
            "H_lambda does not vanish to order {} at {:?} (residual {dropped:e})",
            p.m, p.xi
        )));
    }
    let rest = &shifted[p.m..];
    Ok(mul(&inverse(rest, n, prec), &gaussian_series(&p.xi, n, prec), n, prec))
}

/// Per-constraint residual report.
#[derive(Debug, Clone, Serialize)]
pub struct ConstraintResidual {
    pub root: usize,
    pub order: usize,
    pub residual: f64,
    pub scale: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstraintDecision {
    pub member: bool,
    pub max_ratio: f64,
    pub tol: f64,
    pub mode: ConstraintScale,
    pub residuals: Vec<ConstraintResidual>,
}

/// Numeric membership test: `p` is accepted when every constraint residual
/// is within `tol` of its scale.
pub fn constraint_membership(
    sys: &ConstraintSystem,
    p: &ExactPoly,
    tol: f64,
    mode: ConstraintScale,
) -> Result<ConstraintDecision> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tol = {tol}")));
    }
    let values = sys.evaluate(p)?;
    let scales = sys.scales(p, mode)?;
    let residuals: Vec<ConstraintResidual> = values
        .iter()
        .zip(&scales)
        .map(|(v, &scale)| {
            let residual = v.value.abs_f64();
            let ratio = if residual == 0.0 {
                0.0
            } else if scale > 0.0 {
                residual / scale
            } else {
                f64::INFINITY
            };
            ConstraintResidual {
                root: v.root,
                order: v.order,
                residual,
                scale,
                ratio,
            }
        })
        .collect();
    let max_ratio = residuals.iter().map(|r| r.ratio).fold(0.0, f64::max);
    Ok(ConstraintDecision {
        member: max_ratio <= tol,
        max_ratio,
        tol,
        mode,
        residuals,
    })
}
