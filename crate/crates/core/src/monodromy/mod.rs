//! Trivial-monodromy analysis of the potential attached to a partition.
//!
//! The potential is `U_lambda = x^2 + 2l - 2 (log H_lambda)''`. Root
//! multiplicities of `H_lambda` come from an exact square-free decomposition;
//! only the location of each root is numeric. Expansions about roots are
//! carried out in multiprecision complex arithmetic.

mod certificate;
mod constraints;
mod dg;
mod eigen;
mod roots;
mod series;
mod veselov;

pub use certificate::{monodromy_certificate, EigenCheck, MonodromyCertificate, RootCertificate};
pub use constraints::{
    constraint_membership, ConstraintDecision, ConstraintScale, ConstraintSystem, ConstraintValue,
};
pub use dg::{check_dg, default_truncation, laurent_potential, DgCondition, DgReport};
pub use eigen::{check_eigen_laurent, eigenfunction_residual, EigenLaurentReport};
pub use roots::{root_profiles, root_profiles_with, RootProfile};
pub use series::LaurentSeries;
pub use veselov::{veselov_row, veselov_scan, VeselovRow};

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exactpoly::{rat, ExactPoly, RationalFunction};
use crate::hermite::h_lambda;
use crate::partitions::Partition;

/// Default relative tolerance for numeric checks.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Solves `m = nu (nu + 1) / 2` in positive integers.
pub fn triangular_nu(m: usize) -> Result<usize> {
    if m == 0 {
        return Err(Error::NonTriangular(0));
    }
    // 8m + 1 = (2 nu + 1)^2
    let disc = 8 * m + 1;
    let mut r = (disc as f64).sqrt() as usize;
    while r * r > disc {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= disc {
        r += 1;
    }
    if r * r != disc {
        return Err(Error::NonTriangular(m));
    }
    Ok((r - 1) / 2)
}

/// `M = {j < nu(nu-1)/2} ∪ {2j - 1 + nu(nu-1)/2 : j = 1..=nu}`.
pub fn constraint_orders(nu: usize) -> BTreeSet<usize> {
    let low = nu * nu.saturating_sub(1) / 2;
    (0..low).chain((1..=nu).map(|j| 2 * j - 1 + low)).collect()
}

/// The non-oscillator part `U_lambda - x^2 - 2l = -2 (H'' H - H'^2) / H^2`, reduced.
pub fn potential(lam: &Partition) -> RationalFunction {
    potential_of(&h_lambda(lam))
}

pub(crate) fn potential_of(h: &ExactPoly) -> RationalFunction {
    let d1 = h.derivative(1);
    let num = &(&h.derivative(2) * h) - &(&d1 * &d1);
    RationalFunction::new(num.scale(&rat(-2)), h * h).expect("H_lambda is nonzero")
}

/// Evaluates the full potential `x^2 + 2l + rational part` at a real point.
pub fn full_potential_f64(lam: &Partition, x: f64) -> f64 {
    x * x + 2.0 * lam.len() as f64 + potential(lam).eval_f64(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn orders() {
        let v = |nu| constraint_orders(nu).into_iter().collect::<Vec<_>>();
        assert_eq!(v(2), vec![0, 2, 4]);
        assert_eq!(v(1), vec![1]);
        assert_eq!(v(3), vec![0, 1, 2, 4, 6, 8]);
        for nu in 1..10 {
            let m = constraint_orders(nu);
            assert_eq!(m.len(), nu * (nu + 1) / 2);
            assert_eq!(*m.last().unwrap(), nu * (nu + 3) / 2 - 1);
        }
    }

    #[test]
    fn triangular() {
        assert_eq!(triangular_nu(1).unwrap(), 1);
        assert_eq!(triangular_nu(3).unwrap(), 2);
        assert_eq!(triangular_nu(6).unwrap(), 3);
        assert_eq!(triangular_nu(55).unwrap(), 10);
        assert_eq!(triangular_nu(2), Err(Error::NonTriangular(2)));
        assert_eq!(triangular_nu(5), Err(Error::NonTriangular(5)));
        assert!(triangular_nu(0).is_err());
    }

    #[test]
    fn potential_examples() {
        let six_over_x2 = RationalFunction::new(ExactPoly::from_ints(&[6]), ExactPoly::from_ints(&[0, 0, 1])).unwrap();
        assert_eq!(potential(&lam(&[2, 1])), six_over_x2);
        assert!(potential(&Partition::empty()).is_zero());
        let two_over_x2 = RationalFunction::new(ExactPoly::from_ints(&[2]), ExactPoly::from_ints(&[0, 0, 1])).unwrap();
        assert_eq!(potential(&lam(&[1])), two_over_x2);
        assert!((full_potential_f64(&lam(&[2, 1]), 1.0) - 11.0).abs() < 1e-14);
    }

    #[test]
    fn potential_poles_are_double_at_roots() {
        // -2 (log H)'' = sum 2 m_i / (x - xi_i)^2, so the denominator is rad(H)^2
        for parts in [&[1, 1][..], &[2, 2], &[3, 1], &[2, 1, 1]] {
            let l = lam(parts);
            let sf = crate::exactpoly::squarefree(&h_lambda(&l)).unwrap();
            let rad = sf.radical();
            assert_eq!(potential(&l).denominator(), &(&rad * &rad), "{l}");
        }
    }
}
