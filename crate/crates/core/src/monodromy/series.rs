use crate::error::{Error, Result};
use crate::mp::{MpComplex, Precision};

/// Truncated Laurent expansion `sum_{j >= start_order} c_j (x - center)^j`.
#[derive(Debug, Clone)]
pub struct LaurentSeries {
    pub center: MpComplex,
    pub start_order: i64,
    /// `coefficients[n]` multiplies `(x - center)^(start_order + n)`.
    pub coefficients: Vec<MpComplex>,
    /// Highest order carried.
    pub truncation_order: i64,
    /// Absolute error estimate for every carried coefficient.
    pub coeff_error_bound: f64,
    pub precision: Precision,
}

impl LaurentSeries {
    pub fn new(
        center: MpComplex,
        start_order: i64,
        coefficients: Vec<MpComplex>,
        coeff_error_bound: f64,
        precision: Precision,
    ) -> Self {
        let truncation_order = start_order + coefficients.len() as i64 - 1;
        Self {
            center,
            start_order,
            coefficients,
            truncation_order,
            coeff_error_bound,
            precision,
        }
    }

    /// Coefficient of `(x - center)^order`; zero below the start, `None` past truncation.
    pub fn coeff(&self, order: i64) -> Option<MpComplex> {
        if order > self.truncation_order {
            return None;
        }
        if order < self.start_order {
            return Some(MpComplex::zero(self.precision));
        }
        Some(self.coefficients[(order - self.start_order) as usize].clone())
    }

    /// Coefficient as an `(re, im)` pair of `f64`.
    pub fn coeff_f64(&self, order: i64) -> Option<(f64, f64)> {
        self.coeff(order).map(|c| c.to_f64_pair())
    }

    /// Largest `|c_j|` for `lo <= j <= hi`.
    pub fn max_abs(&self, lo: i64, hi: i64) -> f64 {
        (lo..=hi)
            .filter_map(|j| self.coeff(j))
            .map(|c| c.abs_f64())
            .fold(0.0, f64::max)
    }

    pub(crate) fn require_order(&self, need: i64) -> Result<()> {
        if self.truncation_order < need {
            return Err(Error::Truncation {
                have: self.truncation_order,
                need,
            });
        }
        Ok(())
    }
}

/// First `n` coefficients of `a * b`.
pub(crate) fn mul(a: &[MpComplex], b: &[MpComplex], n: usize, prec: Precision) -> Vec<MpComplex> {
    (0..n)
        .map(|k| {
            let mut acc = MpComplex::zero(prec);
            for i in 0..=k.min(a.len().saturating_sub(1)) {
                if let Some(bj) = b.get(k - i) {
                    acc = &acc + &(&a[i] * bj);
                }
            }
            acc
        })
        .collect()
}

/// First `n` coefficients of `1 / a`; `a[0]` must be nonzero.
pub(crate) fn inverse(a: &[MpComplex], n: usize, prec: Precision) -> Vec<MpComplex> {
    let inv0 = a[0].recip();
    let mut out: Vec<MpComplex> = Vec::with_capacity(n);
    out.push(inv0.clone());
    for k in 1..n {
        let mut acc = MpComplex::zero(prec);
        for i in 1..=k.min(a.len() - 1) {
            acc = &acc + &(&a[i] * &out[k - i]);
        }
        out.push(-&(&acc * &inv0));
    }
    out
}

/// Taylor coefficients of `exp(-x^2/2)` about `center`, up to `t^(n-1)`,
/// from `exp(-c^2/2) * exp(-c t) * exp(-t^2/2)`.
pub(crate) fn gaussian_series(center: &MpComplex, n: usize, prec: Precision) -> Vec<MpComplex> {
    let half = MpComplex::from_rational(&crate::exactpoly::ratio(1, 2), prec);
    let base = (-&(&(center * center) * &half)).exp(prec);
    let neg_c = -center;
    let mut lin = Vec::with_capacity(n);
    let mut term = MpComplex::one(prec);
    for k in 0..n {
        if k > 0 {
            term = &(&term * &neg_c) / &MpComplex::from_i64(k as i64, prec);
        }
        lin.push(term.clone());
    }
    let mut quad = vec![MpComplex::zero(prec); n];
    let neg_half = -&half;
    let mut term = MpComplex::one(prec);
    let mut k = 0;
    while 2 * k < n {
        if k > 0 {
            term = &(&term * &neg_half) / &MpComplex::from_i64(k as i64, prec);
        }
        quad[2 * k] = term.clone();
        k += 1;
    }
    mul(&lin, &quad, n, prec)
        .into_iter()
        .map(|c| &c * &base)
        .collect()
}
