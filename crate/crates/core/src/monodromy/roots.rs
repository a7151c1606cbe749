use std::collections::BTreeSet;

use nalgebra::{Complex, DMatrix, Schur};
use num_traits::Zero;

use super::{constraint_orders, triangular_nu};
use crate::error::{Error, Result};
use crate::exactpoly::{squarefree, ExactPoly, Rational};
use crate::hermite::h_lambda;
use crate::mp::{eval_exact, MpComplex, Precision};
use crate::partitions::Partition;

/// One distinct root of `H_lambda` with its exact multiplicity data.
#[derive(Debug, Clone)]
pub struct RootProfile {
    pub xi: MpComplex,
    /// Set when the root is rational (linear square-free factor).
    pub exact: Option<Rational>,
    pub m: usize,
    pub nu: usize,
    pub constraint_orders: BTreeSet<usize>,
    /// Monic square-free factor of `H_lambda` vanishing at `xi`.
    pub factor: ExactPoly,
}

impl RootProfile {
    pub fn xi_f64(&self) -> (f64, f64) {
        self.xi.to_f64_pair()
    }

    /// Largest constraint order, `nu(nu+3)/2 - 1`.
    pub fn max_order(&self) -> usize {
        *self.constraint_orders.last().expect("nu >= 1")
    }
}

/// Root profiles of `H_lambda` at the default 64-digit precision.
pub fn root_profiles(lam: &Partition) -> Result<Vec<RootProfile>> {
    root_profiles_with(lam, Precision::default())
}

/// Exact multiplicities from the square-free decomposition; numeric roots of
/// each square-free factor from companion-matrix eigenvalues refined by
/// Newton's method in multiprecision.
pub fn root_profiles_with(lam: &Partition, prec: Precision) -> Result<Vec<RootProfile>> {
    if lam.is_empty() {
        return Err(Error::NoRoots(lam.to_string()));
    }
    let h = h_lambda(lam);
    let sf = squarefree(&h)?;
    let mut profiles = Vec::new();
    for (factor, m) in &sf.parts {
        let nu = triangular_nu(*m)?;
        let orders = constraint_orders(nu);
        for (xi, exact) in factor_roots(factor, prec)? {
            profiles.push(RootProfile {
                xi,
                exact,
                m: *m,
                nu,
                constraint_orders: orders.clone(),
                factor: factor.clone(),
            });
        }
    }
    let total: usize = profiles.iter().map(|p| p.m).sum();
    if total != lam.size() {
        return Err(Error::Invariant(format!(
            "multiplicities of {lam} sum to {total}, expected {}",
            lam.size()
        )));
    }
    check_separation(&profiles, prec)?;
    profiles.sort_by(|a, b| {
        let (ar, ai) = a.xi_f64();
        let (br, bi) = b.xi_f64();
        ar.total_cmp(&br).then(ai.total_cmp(&bi))
    });
    Ok(profiles)
}

fn separation_tolerance(prec: Precision) -> f64 {
    10f64.powi(-((prec.digits() / 2) as i32))
}

fn check_separation(profiles: &[RootProfile], prec: Precision) -> Result<()> {
    let tol = separation_tolerance(prec);
    for (i, a) in profiles.iter().enumerate() {
        for b in &profiles[i + 1..] {
            let d = (&a.xi - &b.xi).abs_f64();
            let scale = a.xi.abs_f64().max(b.xi.abs_f64()).max(1.0);
            if d <= tol * scale {
                return Err(Error::RootAmbiguity {
                    separation: d,
                    tolerance: tol * scale,
                });
            }
        }
    }
    Ok(())
}

fn factor_roots(factor: &ExactPoly, prec: Precision) -> Result<Vec<(MpComplex, Option<Rational>)>> {
    let deg = factor.degree().unwrap_or(0);
    if deg == 0 {
        return Ok(Vec::new());
    }
    if deg == 1 {
        // monic: x + c
        let r = -factor.coeff(0);
        return Ok(vec![(MpComplex::from_rational(&r, prec), Some(r))]);
    }
    let zero_root = factor.coeff(0).is_zero();
    let mut out = Vec::with_capacity(deg);
    let work = if zero_root {
        // x divides a square-free factor exactly once
        out.push((MpComplex::zero(prec), Some(Rational::zero())));
        factor.exact_div(&ExactPoly::x())?
    } else {
        factor.clone()
    };
    if work.degree() == Some(1) {
        let r = -work.coeff(0) / work.coeff(1);
        out.push((MpComplex::from_rational(&r, prec), Some(r)));
        return Ok(out);
    }
    let guesses = companion_eigenvalues(&work);
    let deriv = work.derivative(1);
    for (re, im) in guesses {
        let x = newton_refine(&work, &deriv, MpComplex::from_f64(re, im, prec), prec)
            .ok_or(Error::RootRefinement { degree: deg })?;
        out.push((x, None));
    }
    Ok(out)
}

fn companion_eigenvalues(p: &ExactPoly) -> Vec<(f64, f64)> {
    let p = p.monic();
    let n = p.degree().expect("nonconstant");
    let c = p.to_f64_coeffs();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i];
    }
    // unshifted QR can cycle on companion matrices of even polynomials
    match Schur::try_new(m, f64::EPSILON, 50 * n) {
        Some(s) => s.complex_eigenvalues().iter().map(|z| (z.re, z.im)).collect(),
        None => aberth(&c),
    }
}

/// Aberth–Ehrlich iteration on monic coefficients (ascending).
fn aberth(c: &[f64]) -> Vec<(f64, f64)> {
    let n = c.len() - 1;
    let radius = c[..n].iter().map(|v| v.abs()).fold(0.0, f64::max) + 1.0;
    let r0 = radius.min(c[0].abs().powf(1.0 / n as f64).max(0.5));
    let mut z: Vec<Complex<f64>> = (0..n)
        .map(|k| Complex::from_polar(r0, (2.0 * std::f64::consts::PI * k as f64 + 0.7) / n as f64))
        .collect();
    let eval = |x: Complex<f64>| {
        let mut f = Complex::new(0.0, 0.0);
        let mut df = Complex::new(0.0, 0.0);
        for &a in c.iter().rev() {
            df = df * x + f;
            f = f * x + a;
        }
        (f, df)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (f, df) = eval(z[i]);
            if f.norm() == 0.0 {
                continue;
            }
            let ratio = f / df;
            let sum: Complex<f64> = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = ratio / (Complex::new(1.0, 0.0) - ratio * sum);
            z[i] -= w;
            moved = moved.max(w.norm() / z[i].norm().max(1.0));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z.iter().map(|v| (v.re, v.im)).collect()
}

fn newton_refine(
    p: &ExactPoly,
    dp: &ExactPoly,
    mut x: MpComplex,
    prec: Precision,
) -> Option<MpComplex> {
    let target = prec.epsilon() * 256.0;
    let floor = separation_tolerance(prec);
    let mut prev = f64::INFINITY;
    for _ in 0..200 {
        let f = eval_exact(p.coeffs(), &x, prec);
        let df = eval_exact(dp.coeffs(), &x, prec);
        if df.is_zero() {
            return None;
        }
        let step = &f / &df;
        x = &x - &step;
        let s = step.abs_f64();
        let scale = x.abs_f64().max(1.0);
        // stalled at the rounding floor counts as converged once well below half precision
        if s <= target * scale || (s >= prev && s <= floor * floor.sqrt() * scale) {
            return Some(x);
        }
        prev = s;
    }
    None
}
