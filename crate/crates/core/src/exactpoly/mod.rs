//! Exact univariate polynomials and rational functions over `Q`.
//!
//! Coefficients are [`BigRational`] values stored low to high. Every
//! constructor strips trailing zeros, so the zero polynomial is the empty
//! coefficient vector and [`ExactPoly::degree`] returns `None` for it.

mod rational;
mod squarefree;
mod text;
mod wronskian;

pub use rational::RationalFunction;
pub use squarefree::{squarefree, SquareFreeDecomposition};
pub use text::{parse_rational, render_rational};
pub use wronskian::wronskian;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational number.
pub type Rational = BigRational;

/// Convenience constructor for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Convenience constructor for `n / d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Univariate polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactPoly {
    coeffs: Vec<Rational>,
}

impl ExactPoly {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = Self { coeffs };
        p.normalize();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `c * x^n`.
    pub fn monomial(c: Rational, n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    /// `x - root`.
    pub fn linear_root(root: &Rational) -> Self {
        Self::new(vec![-root.clone(), Rational::one()])
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^n`, zero past the degree.
    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient, i.e. the order of the root at 0.
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    /// Multiplies by `x^n`.
    pub fn shift_up(&self, n: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal derivative of the given order.
    pub fn derivative(&self, order: usize) -> Self {
        if order == 0 {
            return self.clone();
        }
        if self.coeffs.len() <= order {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(order)
            .map(|(n, c)| {
                let falling: BigInt = ((n - order + 1)..=n).map(BigInt::from).product();
                c * Rational::from_integer(falling)
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation in `f64` of the coefficient-wise rounded polynomial.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.to_f64_coeffs()
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c)
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// Euclidean division: returns `(q, r)` with `self = q * d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = d.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if sd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Division that must leave no remainder.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Invariant(format!(
                "inexact polynomial division: remainder {r}"
            )));
        }
        Ok(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            // b is nonzero, so div_rem cannot fail
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Multiplicity of `xi` as a root (0 if `p(xi) != 0`).
    pub fn root_order(&self, xi: &Rational) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("root order of the zero polynomial"));
        }
        let lin = Self::linear_root(xi);
        let mut p = self.clone();
        let mut order = 0;
        loop {
            let (q, r) = p.div_rem(&lin)?;
            if !r.is_zero() {
                return Ok(order);
            }
            p = q;
            order += 1;
        }
    }

    /// Number of times the nonconstant `factor` divides `self`.
    pub fn factor_multiplicity(&self, factor: &Self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("factor multiplicity of the zero polynomial"));
        }
        if factor.is_constant() {
            return Err(Error::InvalidArgument("factor must be nonconstant".into()));
        }
        let mut p = self.clone();
        let mut e = 0;
        loop {
            let (q, r) = p.div_rem(factor)?;
            if !r.is_zero() {
                return Ok(e);
            }
            p = q;
            e += 1;
        }
    }

    /// Largest absolute coefficient, as `f64`.
    pub fn max_abs_coeff_f64(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::render(self))
    }
}

impl fmt::Debug for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactPoly({self})")
    }
}

impl std::str::FromStr for ExactPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        text::parse(s)
    }
}

fn zip_coeffs(a: &ExactPoly, b: &ExactPoly, f: impl Fn(&Rational, &Rational) -> Rational) -> ExactPoly {
    let n = a.coeffs.len().max(b.coeffs.len());
    let zero = Rational::zero();
    let coeffs = (0..n)
        .map(|i| f(a.coeffs.get(i).unwrap_or(&zero), b.coeffs.get(i).unwrap_or(&zero)))
        .collect();
    ExactPoly::new(coeffs)
}

impl Add for &ExactPoly {
    type Output = ExactPoly;
    fn add(self, rhs: &ExactPoly) -> ExactPoly {
        zip_coeffs(self, rhs, |a, b| a + b)
    }
}

impl Sub for &ExactPoly {
    type Output = ExactPoly;
    fn sub(self, rhs: &ExactPoly) -> ExactPoly {
        zip_coeffs(self, rhs, |a, b| a - b)
    }
}

impl Mul for &ExactPoly {
    type Output = ExactPoly;
    fn mul(self, rhs: &ExactPoly) -> ExactPoly {
        if self.is_zero() || rhs.is_zero() {
            return ExactPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ExactPoly::new(out)
    }
}

impl Neg for &ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        ExactPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ExactPoly {
            type Output = ExactPoly;
            fn $m(self, rhs: ExactPoly) -> ExactPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&ExactPoly> for ExactPoly {
            type Output = ExactPoly;
            fn $m(self, rhs: &ExactPoly) -> ExactPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<ExactPoly> for &ExactPoly {
            type Output = ExactPoly;
            fn $m(self, rhs: ExactPoly) -> ExactPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        -&self
    }
}

/// Ring operation selector for [`poly_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(a: &ExactPoly, b: &ExactPoly, op: ArithOp) -> ExactPoly {
    match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
    }
}

/// Derivative of the given order; see [`ExactPoly::derivative`].
pub fn derivative(p: &ExactPoly, order: usize) -> ExactPoly {
    p.derivative(order)
}

/// Order of `xi` as a root (positive) or pole (negative) of `f`.
pub fn order_at(f: &RationalFunction, xi: &Rational) -> Result<i64> {
    f.order_at(xi)
}
