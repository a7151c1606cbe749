//! Laurent expansion of the potential about a root and the
//! Duistermaat–Grünbaum conditions `c_{-2} = nu(nu+1)`, `c_{2j-1} = 0` for `0 <= j <= nu`.

use serde::Serialize;

use super::series::{inverse, mul, LaurentSeries};
use super::{potential, RootProfile};
use crate::error::{Error, Result};
use crate::exactpoly::{rat, ExactPoly};
use crate::mp::{taylor_shift, MpComplex, Precision};
use crate::partitions::Partition;

/// Truncation order `max M + 2 nu + 6` used when callers do not choose one.
pub fn default_truncation(nu: usize) -> i64 {
    (nu * (nu + 3) / 2 - 1 + 2 * nu + 6) as i64
}

/// Laurent expansion of the full potential `x^2 + 2l + U_rat` about the root
/// of `profile`, carried through `(x - xi)^order`.
pub fn laurent_potential(
    lam: &Partition,
    profile: &RootProfile,
    order: i64,
    prec: Precision,
) -> Result<LaurentSeries> {
    if lam.is_empty() {
        return Err(Error::NoRoots(lam.to_string()));
    }
    let need = 2 * profile.nu as i64 + 1;
    if order < need {
        return Err(Error::Truncation { have: order, need });
    }
    if order > 8 * prec.digits() as i64 {
        return Err(Error::Precision(format!(
            "order {order} exceeds the budget of {} digits",
            prec.digits()
        )));
    }
    let u = potential(lam);
    let num = u.numerator();
    let den = u.denominator();
    let pole = den.factor_multiplicity(&profile.factor)?;
    let xi = &profile.xi;

    let num_s = taylor_shift(num.coeffs(), xi, prec);
    let den_s = taylor_shift(den.coeffs(), xi, prec);
    let den_scale = den_s.iter().map(MpComplex::abs_f64).fold(0.0, f64::max);
    let dropped = den_s[..pole].iter().map(MpComplex::abs_f64).fold(0.0, f64::max);
    let tail = &den_s[pole..];

    // rational part: t^{-pole} * num_s / tail
    let n_terms = (order + pole as i64 + 1) as usize;
    let quotient = mul(&num_s, &inverse(tail, n_terms, prec), n_terms, prec);
    let start = -(pole as i64);
    let mut coeffs = quotient;

    // x^2 + 2l = (xi^2 + 2l) + 2 xi t + t^2
    let osc = taylor_shift(ExactPoly::new(vec![rat(2 * lam.len() as i64), rat(0), rat(1)]).coeffs(), xi, prec);
    for (k, c) in osc.iter().enumerate() {
        let idx = (k as i64 - start) as usize;
        if idx < coeffs.len() {
            coeffs[idx] = &coeffs[idx] + c;
        }
    }

    let scale = coeffs.iter().map(MpComplex::abs_f64).fold(0.0, f64::max);
    let tail0 = tail[0].abs_f64();
    let mut bound = prec.epsilon() * scale * (n_terms as f64).powi(2);
    if tail0 > 0.0 {
        bound += dropped / tail0 * scale;
    }
    if bound > 10f64.powi(-((prec.digits() / 2) as i32)) * scale.max(1.0) || dropped > 1e-20 * den_scale {
        return Err(Error::Precision(format!(
            "Laurent coefficients about {xi:?} carry error {bound:e}; raise precision"
        )));
    }
    Ok(LaurentSeries::new(xi.clone(), start, coeffs, bound, prec))
}

/// One Duistermaat–Grünbaum condition and its residual.
#[derive(Debug, Clone, Serialize)]
pub struct DgCondition {
    /// Laurent order tested (`-2` or an odd order `2j - 1`).
    pub order: i64,
    pub target: f64,
    pub value_re: f64,
    pub value_im: f64,
    /// `|c_order - target|`.
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DgReport {
    pub nu: usize,
    pub scale: f64,
    pub tol: f64,
    pub conditions: Vec<DgCondition>,
    pub passed: bool,
}

/// Checks `|c_{-2} - nu(nu+1)| <= tol * scale` and `|c_{2j-1}| <= tol * scale`
/// for `j = 0..=nu`, with `scale = max |c_j|` over orders `-2..=2nu-1`.
pub fn check_dg(series: &LaurentSeries, nu: usize, tol: f64) -> Result<DgReport> {
    if nu == 0 || !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("nu = {nu}, tol = {tol}")));
    }
    let top = 2 * nu as i64 - 1;
    series.require_order(top)?;
    if series.start_order > -2 {
        return Err(Error::InvalidArgument(format!(
            "series starts at order {}, expected a double pole",
            series.start_order
        )));
    }
    let scale = series.max_abs(-2, top);
    let mut conditions = Vec::with_capacity(nu + 2);
    let mut push = |order: i64, target: f64| {
        let (re, im) = series.coeff_f64(order).expect("order within truncation");
        let c = series.coeff(order).expect("order within truncation");
        let t = MpComplex::from_f64(target, 0.0, series.precision);
        let residual = (&c - &t).abs_f64();
        conditions.push(DgCondition {
            order,
            target,
            value_re: re,
            value_im: im,
            residual,
            pass: residual <= tol * scale,
        });
    };
    push(-2, (nu * (nu + 1)) as f64);
    for j in 0..=nu as i64 {
        push(2 * j - 1, 0.0);
    }
    let passed = conditions.iter().all(|c| c.pass);
    Ok(DgReport {
        nu,
        scale,
        tol,
        conditions,
        passed,
    })
}
