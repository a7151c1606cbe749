use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{ExactPoly, Rational};
use crate::error::{Error, Result};

/// Quotient of two polynomials, kept reduced with a monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: ExactPoly,
    den: ExactPoly,
}

impl RationalFunction {
    pub fn new(num: ExactPoly, den: ExactPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g)?;
        let den = den.exact_div(&g)?;
        let lc = den.leading_coeff().expect("nonzero denominator").recip();
        Ok(Self {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn zero() -> Self {
        Self {
            num: ExactPoly::zero(),
            den: ExactPoly::one(),
        }
    }

    pub fn from_poly(p: ExactPoly) -> Self {
        Self {
            num: p,
            den: ExactPoly::one(),
        }
    }

    pub fn numerator(&self) -> &ExactPoly {
        &self.num
    }

    pub fn denominator(&self) -> &ExactPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn derivative(&self) -> Self {
        // (n/d)' = (n'd - nd') / d^2
        let num = &(&self.num.derivative(1) * &self.den) - &(&self.num * &self.den.derivative(1));
        Self::new(num, &self.den * &self.den).expect("nonzero denominator")
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Order of `xi` as a root (positive) or pole (negative).
    pub fn order_at(&self, xi: &Rational) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("order of the zero rational function"));
        }
        let n = self.num.root_order(xi)? as i64;
        let d = self.den.root_order(xi)? as i64;
        Ok(n - d)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl From<ExactPoly> for RationalFunction {
    fn from(p: ExactPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).expect("nonzero")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        &self + &rhs
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: RationalFunction) -> RationalFunction {
        &self - &rhs
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        &self * &rhs
    }
}
