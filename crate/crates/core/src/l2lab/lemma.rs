//! Approximation of a polynomial `q` in `L^2(R, e^{-x^2})` by `(1 + x^{2m}) p`
//! through the even/odd split `q = q0 + x q1(x^2) + x^2 q2(x^2)` and two
//! least-squares problems on the half line with weights `y^{1/2} e^{-y}` and
//! `y^{3/2} e^{-y}`.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::{doubling, gauss_laguerre, horner};
use crate::error::{Error, Result};
use crate::exactpoly::{ExactPoly, Rational};

/// Degree ceiling for each half-line polynomial in [`lemma_d2_construct`].
pub const LEMMA_MAX_DEGREE: usize = 160;

/// `p_j(y) = sum_k c_k Lhat_k(y)` with `Lhat_k` orthonormal for `y^alpha e^{-y}`.
#[derive(Debug, Clone, Serialize)]
pub struct HalfLineFit {
    pub alpha: f64,
    pub coefficients: Vec<f64>,
    /// `||t - (1 + y^m) p_j||` in `L^2(y^alpha e^{-y})`.
    pub error: f64,
}

impl HalfLineFit {
    fn zero(alpha: f64) -> Self {
        Self {
            alpha,
            coefficients: Vec::new(),
            error: 0.0,
        }
    }

    pub fn eval(&self, y: f64) -> f64 {
        let mut sum = 0.0;
        laguerre_values(self.alpha, self.coefficients.len(), y, |k, v| sum += self.coefficients[k] * v);
        sum
    }

    /// Monomial coefficients in `y` (ascending).
    pub fn monomial_coeffs(&self) -> Vec<f64> {
        let n = self.coefficients.len();
        let mut out = vec![0.0; n];
        let (mut prev, mut cur) = (Vec::new(), vec![1.0 / gamma(self.alpha + 1.0).sqrt()]);
        for k in 0..n {
            for (o, c) in out.iter_mut().zip(&cur) {
                *o += self.coefficients[k] * c;
            }
            let (a, b, b_next) = laguerre_ab(self.alpha, k);
            let mut next = vec![0.0; cur.len() + 1];
            for (i, c) in cur.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= a * c;
            }
            for (i, c) in prev.iter().enumerate() {
                next[i] -= b * c;
            }
            next.iter_mut().for_each(|c| *c /= b_next);
            prev = std::mem::replace(&mut cur, next);
        }
        out
    }
}

fn gamma(x: f64) -> f64 {
    statrs::function::gamma::gamma(x)
}

// (a_k, b_k, b_{k+1}) of the orthonormal Laguerre recurrence
fn laguerre_ab(alpha: f64, k: usize) -> (f64, f64, f64) {
    let kf = k as f64;
    (
        2.0 * kf + alpha + 1.0,
        (kf * (kf + alpha)).sqrt(),
        ((kf + 1.0) * (kf + 1.0 + alpha)).sqrt(),
    )
}

fn laguerre_values(alpha: f64, n: usize, y: f64, mut visit: impl FnMut(usize, f64)) {
    let mut prev = 0.0;
    let mut cur = 1.0 / gamma(alpha + 1.0).sqrt();
    for k in 0..n {
        visit(k, cur);
        let (a, b, b_next) = laguerre_ab(alpha, k);
        let next = ((y - a) * cur - b * prev) / b_next;
        prev = cur;
        cur = next;
    }
}

/// Least squares for `target ~ (1 + y^m) p` with `deg p <= degree`; the Gauss
/// rule integrates the squared residual exactly.
fn fit_half_line(target: &ExactPoly, m: usize, alpha: f64, degree: usize) -> Result<HalfLineFit> {
    if target.is_zero() {
        return Ok(HalfLineFit::zero(alpha));
    }
    let t = target.to_f64_coeffs();
    let top = (t.len() - 1).max(m + degree);
    let rule = gauss_laguerre(top + 2, alpha)?;
    let rows = rule.len();
    let cols = degree + 1;
    let mut a = DMatrix::<f64>::zeros(rows, cols);
    let mut b = DVector::<f64>::zeros(rows);
    for (r, (&y, &w)) in rule.nodes.iter().zip(&rule.weights).enumerate() {
        let s = w.sqrt();
        let factor = (1.0 + y.powi(m as i32)) * s;
        b[r] = horner(&t, y) * s;
        laguerre_values(alpha, cols, y, |k, v| a[(r, k)] = v * factor);
    }
    let svd = a.clone().svd(true, true);
    let c = svd
        .solve(&b, 1e-14 * svd.singular_values.max())
        .map_err(|e| Error::Invariant(format!("least squares failed: {e}")))?;
    let error = (&b - &a * &c).norm();
    Ok(HalfLineFit {
        alpha,
        coefficients: c.iter().copied().collect(),
        error,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaD2Result {
    pub m: usize,
    /// Degree of each half-line polynomial.
    pub degree: usize,
    pub q0: f64,
    /// `p1`, fitted with weight `y^{1/2} e^{-y}`.
    pub odd: HalfLineFit,
    /// `p2`, fitted with weight `y^{3/2} e^{-y}`.
    pub even: HalfLineFit,
    /// `sqrt(|odd|^2 + |even|^2)` from the half-line problems.
    pub split_error: f64,
    /// `||q - (1 + x^{2m}) p||` measured by Gauss–Hermite quadrature.
    pub error: f64,
    pub quadrature_nodes_used: usize,
    pub target_eps: Option<f64>,
    /// `false` when the degree ceiling was reached before the target.
    pub reached_target: bool,
    #[serde(skip)]
    q1: Vec<f64>,
    #[serde(skip)]
    g2: Vec<f64>,
}

impl LemmaD2Result {
    /// `p(x) = q0 + x p1(x^2) + x^2 p2(x^2)`.
    pub fn eval_p(&self, x: f64) -> f64 {
        let y = x * x;
        self.q0 + x * self.odd.eval(y) + y * self.even.eval(y)
    }

    /// Monomial coefficients of `p` in `x` (ascending).
    pub fn p_coefficients(&self) -> Vec<f64> {
        let odd = self.odd.monomial_coeffs();
        let even = self.even.monomial_coeffs();
        let len = (2 * odd.len()).max(2 * even.len() + 1).max(1);
        let mut out = vec![0.0; len];
        out[0] = self.q0;
        for (k, c) in odd.iter().enumerate() {
            out[2 * k + 1] += c;
        }
        for (k, c) in even.iter().enumerate() {
            out[2 * k + 2] += c;
        }
        out
    }

    /// `q(x) - (1 + x^{2m}) p(x)`, evaluated through the split so that exact
    /// cancellations stay exact.
    pub fn residual(&self, x: f64) -> f64 {
        residual(x, self.m, &self.q1, &self.g2, &self.odd, &self.even)
    }
}

fn residual(x: f64, m: usize, q1: &[f64], g2: &[f64], odd: &HalfLineFit, even: &HalfLineFit) -> f64 {
    let y = x * x;
    let factor = 1.0 + y.powi(m as i32);
    let r1 = horner(q1, y) - factor * odd.eval(y);
    let r2 = horner(g2, y) - factor * even.eval(y);
    x * r1 + y * r2
}

struct Split {
    q0: Rational,
    q1: ExactPoly,
    g2: ExactPoly,
}

// q = q0 + x q1(x^2) + x^2 q2(x^2); g2 = q2 - q0 y^{m-1}
fn split(q: &ExactPoly, m: usize) -> Split {
    let c = q.coeffs();
    let q0 = q.coeff(0);
    let q1 = ExactPoly::new(c.iter().skip(1).step_by(2).cloned().collect());
    let q2 = ExactPoly::new(c.iter().skip(2).step_by(2).cloned().collect());
    let g2 = &q2 - &ExactPoly::monomial(q0.clone(), m - 1);
    Split { q0, q1, g2 }
}

/// Fits both half-line polynomials at a fixed degree and measures the error.
pub fn lemma_d2_with_degree(q: &ExactPoly, m: usize, degree: usize) -> Result<LemmaD2Result> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    let s = split(q, m);
    let odd = fit_half_line(&s.q1, m, 0.5, degree)?;
    let even = fit_half_line(&s.g2, m, 1.5, degree)?;
    finish(&s, m, degree, odd, even, None)
}

fn finish(
    s: &Split,
    m: usize,
    degree: usize,
    odd: HalfLineFit,
    even: HalfLineFit,
    target_eps: Option<f64>,
) -> Result<LemmaD2Result> {
    let q1 = s.q1.to_f64_coeffs();
    let g2 = s.g2.to_f64_coeffs();
    let d = doubling(|rule| {
        let v: f64 = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&x, &w)| w * residual(x, m, &q1, &g2, &odd, &even).powi(2))
            .sum();
        (vec![v], vec![v])
    })?;
    let split_error = odd.error.hypot(even.error);
    let error = d.values[0].max(0.0).sqrt();
    Ok(LemmaD2Result {
        m,
        degree,
        q0: num_traits::ToPrimitive::to_f64(&s.q0).unwrap_or(f64::NAN),
        odd,
        even,
        split_error,
        error,
        quadrature_nodes_used: d.nodes,
        target_eps,
        reached_target: target_eps.is_none_or(|t| error <= t),
        q1,
        g2,
    })
}

/// Raises the half-line degree until the measured error is at most
/// `target_eps`; at [`LEMMA_MAX_DEGREE`] returns the best fit with
/// `reached_target = false`.
pub fn lemma_d2_construct(q: &ExactPoly, m: usize, target_eps: f64) -> Result<LemmaD2Result> {
    if m == 0 || !(target_eps > 0.0) {
        return Err(Error::InvalidArgument(format!("m = {m}, target = {target_eps}")));
    }
    let s = split(q, m);
    let mut best: Option<(usize, HalfLineFit, HalfLineFit)> = None;
    for degree in 0..=LEMMA_MAX_DEGREE {
        let odd = fit_half_line(&s.q1, m, 0.5, degree)?;
        let even = fit_half_line(&s.g2, m, 1.5, degree)?;
        let e = odd.error.hypot(even.error);
        if e <= target_eps {
            let r = finish(&s, m, degree, odd, even, Some(target_eps))?;
            if r.reached_target {
                return Ok(r);
            }
            continue;
        }
        if best.as_ref().is_none_or(|(_, o, v)| e < o.error.hypot(v.error)) {
            best = Some((degree, odd, even));
        }
    }
    let (degree, odd, even) = best.expect("at least one degree tried");
    finish(&s, m, degree, odd, even, Some(target_eps))
}
