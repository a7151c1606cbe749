use num_traits::One;

use super::{ExactPoly, Rational};
use crate::error::{Error, Result};

/// `p = constant * prod(factor^multiplicity)` with monic, square-free,
/// pairwise coprime factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFreeDecomposition {
    pub constant: Rational,
    pub parts: Vec<(ExactPoly, usize)>,
}

impl SquareFreeDecomposition {
    pub fn reconstruct(&self) -> ExactPoly {
        self.parts
            .iter()
            .fold(ExactPoly::constant(self.constant.clone()), |acc, (f, m)| {
                &acc * &f.pow(*m as u32)
            })
    }

    /// Product of the distinct factors (the radical, made monic).
    pub fn radical(&self) -> ExactPoly {
        self.parts
            .iter()
            .fold(ExactPoly::one(), |acc, (f, _)| &acc * f)
    }

    pub fn max_multiplicity(&self) -> usize {
        self.parts.iter().map(|(_, m)| *m).max().unwrap_or(0)
    }
}

/// Yun's square-free decomposition over `Q`.
pub fn squarefree(p: &ExactPoly) -> Result<SquareFreeDecomposition> {
    let constant = p
        .leading_coeff()
        .cloned()
        .ok_or(Error::ZeroPolynomial("square-free decomposition"))?;
    let f = p.monic();
    let mut parts = Vec::new();
    if f.is_constant() {
        return Ok(SquareFreeDecomposition { constant, parts });
    }
    let df = f.derivative(1);
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0)?;
    let c = df.exact_div(&a0)?;
    let mut d = &c - &b.derivative(1);
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&d);
        b = b.exact_div(&a)?;
        let c = d.exact_div(&a)?;
        d = &c - &b.derivative(1);
        if !a.is_constant() {
            parts.push((a, i));
        }
        i += 1;
    }
    debug_assert!(b.leading_coeff().is_some_and(|c| c.is_one()));
    Ok(SquareFreeDecomposition { constant, parts })
}
