//! Multiprecision complex numbers on top of binary `dashu` floats.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::{IBig, UBig};
use num_bigint::{BigInt, Sign};

use crate::exactpoly::Rational;

pub type Float = FBig<HalfEven, 2>;

/// Working precision, tracked both in decimal digits and in mantissa bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    digits: usize,
    bits: usize,
}

impl Precision {
    /// Decimal digits; 32 guard bits are added on top.
    pub fn from_digits(digits: usize) -> Self {
        let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 32;
        Self { digits, bits }
    }

    pub fn digits(&self) -> usize {
        self.digits
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    /// Unit roundoff `2^-bits` as `f64` (zero is never returned for sane precisions).
    pub fn epsilon(&self) -> f64 {
        2f64.powi(-(self.bits.min(1000) as i32))
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self::from_digits(64)
    }
}

fn ibig(b: &BigInt) -> IBig {
    let (sign, mag) = b.to_bytes_le();
    let u = IBig::from(UBig::from_le_bytes(&mag));
    if sign == Sign::Minus {
        -u
    } else {
        u
    }
}

pub fn float_from_int(n: i64, prec: Precision) -> Float {
    Float::from(IBig::from(n)).with_precision(prec.bits).value()
}

pub fn float_from_rational(r: &Rational, prec: Precision) -> Float {
    let n = Float::from(ibig(r.numer())).with_precision(prec.bits).value();
    if r.denom() == &BigInt::from(1) {
        return n;
    }
    let d = Float::from(ibig(r.denom())).with_precision(prec.bits).value();
    n / d
}

pub fn float_from_f64(x: f64, prec: Precision) -> Float {
    Float::try_from(x)
        .expect("finite f64")
        .with_precision(prec.bits)
        .value()
}

pub fn float_to_f64(x: &Float) -> f64 {
    x.to_f64().value()
}

/// Complex number with multiprecision real and imaginary parts.
#[derive(Clone, PartialEq)]
pub struct MpComplex {
    pub re: Float,
    pub im: Float,
}

impl MpComplex {
    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn zero(prec: Precision) -> Self {
        Self::from_i64(0, prec)
    }

    pub fn one(prec: Precision) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(n: i64, prec: Precision) -> Self {
        Self::new(float_from_int(n, prec), float_from_int(0, prec))
    }

    pub fn from_rational(r: &Rational, prec: Precision) -> Self {
        Self::new(float_from_rational(r, prec), float_from_int(0, prec))
    }

    pub fn from_f64(re: f64, im: f64, prec: Precision) -> Self {
        Self::new(float_from_f64(re, prec), float_from_f64(im, prec))
    }

    pub fn re_f64(&self) -> f64 {
        float_to_f64(&self.re)
    }

    pub fn im_f64(&self) -> f64 {
        float_to_f64(&self.im)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re_f64(), self.im_f64())
    }

    /// Modulus rounded to `f64`.
    pub fn abs_f64(&self) -> f64 {
        self.re_f64().hypot(self.im_f64())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn scale_f(&self, s: &Float) -> Self {
        Self::new(&self.re * s, &self.im * s)
    }

    pub fn norm_sqr(&self) -> Float {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        Self::new(&self.re / &n, -(&self.im / &n))
    }

    pub fn is_zero(&self) -> bool {
        self.re == Float::ZERO && self.im == Float::ZERO
    }

    /// `exp(z)` by argument halving and a Taylor series.
    pub fn exp(&self, prec: Precision) -> Self {
        let mag = self.abs_f64();
        let halvings = if mag > 0.25 { (mag / 0.25).log2().ceil() as u32 } else { 0 };
        let scale = float_from_f64(0.5f64.powi(halvings as i32), prec);
        let z = self.scale_f(&scale);
        let mut term = Self::one(prec);
        let mut sum = Self::one(prec);
        let tiny = prec.epsilon();
        for k in 1..10_000 {
            term = &(&term * &z) / &Self::from_i64(k, prec);
            sum = &sum + &term;
            if term.abs_f64() < tiny * sum.abs_f64() {
                break;
            }
        }
        for _ in 0..halvings {
            sum = &sum * &sum;
        }
        sum
    }
}

impl fmt::Debug for MpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:e} {:+e}i)", self.re_f64(), self.im_f64())
    }
}

impl Add for &MpComplex {
    type Output = MpComplex;
    fn add(self, rhs: &MpComplex) -> MpComplex {
        MpComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &MpComplex {
    type Output = MpComplex;
    fn sub(self, rhs: &MpComplex) -> MpComplex {
        MpComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &MpComplex {
    type Output = MpComplex;
    fn mul(self, rhs: &MpComplex) -> MpComplex {
        MpComplex::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &MpComplex {
    type Output = MpComplex;
    fn div(self, rhs: &MpComplex) -> MpComplex {
        let n = rhs.norm_sqr();
        MpComplex::new(
            (&self.re * &rhs.re + &self.im * &rhs.im) / &n,
            (&self.im * &rhs.re - &self.re * &rhs.im) / &n,
        )
    }
}

impl Neg for &MpComplex {
    type Output = MpComplex;
    fn neg(self) -> MpComplex {
        MpComplex::new(-self.re.clone(), -self.im.clone())
    }
}

/// Coefficients of `p(center + t)` in powers of `t`, from exact coefficients of `p`.
pub fn taylor_shift(coeffs: &[Rational], center: &MpComplex, prec: Precision) -> Vec<MpComplex> {
    let mut a: Vec<MpComplex> = coeffs.iter().map(|c| MpComplex::from_rational(c, prec)).collect();
    let n = a.len();
    // repeated synthetic division by (x - center)
    for k in 0..n {
        for j in (k..n - 1).rev() {
            let t = &a[j + 1] * center;
            a[j] = &a[j] + &t;
        }
    }
    a
}

/// Horner evaluation of an exact polynomial at a multiprecision point.
pub fn eval_exact(coeffs: &[Rational], x: &MpComplex, prec: Precision) -> MpComplex {
    coeffs.iter().rev().fold(MpComplex::zero(prec), |acc, c| {
        &(&acc * x) + &MpComplex::from_rational(c, prec)
    })
}
