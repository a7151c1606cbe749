use serde::Serialize;

use super::constraints::ConstraintSystem;
use super::potential_of;
use crate::error::Result;
use crate::exactpoly::{rat, ExactPoly, RationalFunction};
use crate::hermite::{h_lambda, h_lambda_i};
use crate::partitions::Partition;

/// Coefficient of `exp(-x^2/2)` in `L_lambda psi - (2k+1) psi` for
/// `psi = (H_{lambda,k} / H_lambda) exp(-x^2/2)`.
///
/// With `R = H_{lambda,k} / H_lambda` this is
/// `-R'' + 2x R' + (U_rat + 2l) R - 2k R`; the `+R` produced by
/// differentiating the Gaussian cancels one unit of the eigenvalue.
pub fn eigenfunction_residual(lam: &Partition, k: usize) -> Result<RationalFunction> {
    let hk = h_lambda_i(lam, k)?;
    let h = h_lambda(lam);
    let r = RationalFunction::new(hk, h.clone())?;
    let d1 = r.derivative();
    let d2 = d1.derivative();
    let two_x = RationalFunction::from_poly(ExactPoly::from_ints(&[0, 2]));
    let shift = rat(2 * lam.len() as i64 - 2 * k as i64);
    let coeff = &potential_of(&h) + &RationalFunction::from_poly(ExactPoly::constant(shift));
    Ok(&(&(&two_x * &d1) - &d2) + &(&coeff * &r))
}

/// Per-root outcome of [`check_eigen_laurent`].
#[derive(Debug, Clone, Serialize)]
pub struct EigenRootCheck {
    pub root: usize,
    pub nu: usize,
    /// Lowest order whose coefficient exceeds `tol * scale`.
    pub leading_order: Option<usize>,
    /// `(order, |coefficient| / scale)` at every order in `M_i`.
    pub residuals: Vec<(usize, f64)>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenLaurentReport {
    pub k: usize,
    pub roots: Vec<EigenRootCheck>,
    pub passed: bool,
}

/// Expands `H_{lambda,k} F_i` (a constant multiple of `(x - xi_i)^{m_i} psi_{lambda,k}`)
/// about every root and checks that it starts at order `>= nu(nu-1)/2` with
/// vanishing coefficients at the odd offsets `1, 3, ..., 2nu - 1`.
pub fn check_eigen_laurent(sys: &ConstraintSystem, k: usize, tol: f64) -> Result<EigenLaurentReport> {
    let hk = h_lambda_i(sys.partition(), k)?;
    let mut roots = Vec::with_capacity(sys.num_roots());
    for (i, profile) in sys.profiles().enumerate() {
        // the second exponent puts the leading order at max M + 2, inside the window
        let s = sys.product_series(&hk, i, sys.series_order() + 1)?;
        let scale = s.iter().map(|c| c.abs_f64()).fold(0.0, f64::max);
        let rel = |c: &crate::mp::MpComplex| if scale > 0.0 { c.abs_f64() / scale } else { 0.0 };
        let leading_order = s.iter().position(|c| rel(c) > tol);
        let residuals: Vec<(usize, f64)> = profile
            .constraint_orders
            .iter()
            .map(|&j| (j, rel(&s[j])))
            .collect();
        let low = profile.nu * (profile.nu - 1) / 2;
        let pass = residuals.iter().all(|&(_, r)| r <= tol) && leading_order.is_some_and(|o| o >= low);
        roots.push(EigenRootCheck {
            root: i,
            nu: profile.nu,
            leading_order,
            residuals,
            pass,
        });
    }
    let passed = roots.iter().all(|r| r.pass);
    Ok(EigenLaurentReport { k, roots, passed })
}
