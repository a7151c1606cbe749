//! Hermite polynomials, their Wronskians `H_lambda`, `H_{lambda,i}`, and the
//! exceptional subspace `U_lambda = span{H_{lambda,i} : i not in K_lambda}`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::RwLock;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactpoly::{rat, render_rational, wronskian, ExactPoly, Rational};
use crate::partitions::{KSet, Partition};

/// Physicists' Hermite polynomial `H_n`, via `H_{n+1} = 2x H_n - 2n H_{n-1}`.
pub fn hermite(n: usize) -> ExactPoly {
    let two_x = ExactPoly::from_ints(&[0, 2]);
    let mut prev = ExactPoly::one();
    if n == 0 {
        return prev;
    }
    let mut cur = two_x.clone();
    for k in 1..n {
        let next = &(&two_x * &cur) - &prev.scale(&rat(2 * k as i64));
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

fn hermite_family(ks: &KSet) -> Vec<ExactPoly> {
    ks.ascending().into_iter().map(hermite).collect()
}

/// `H_lambda = Wr[H_{k_l}, ..., H_{k_1}]` (indices ascending left to right).
pub fn h_lambda(lam: &Partition) -> ExactPoly {
    wronskian(&hermite_family(&lam.k_sequence()))
}

/// `H_{lambda,i} = Wr[H_{k_l}, ..., H_{k_1}, H_i]` for `i` not in `K_lambda`.
pub fn h_lambda_i(lam: &Partition, i: usize) -> Result<ExactPoly> {
    let ks = lam.k_sequence();
    if ks.contains(i) {
        return Err(Error::IndexInKSet {
            index: i,
            kset: ks.as_slice().to_vec(),
        });
    }
    let mut fs = hermite_family(&ks);
    fs.push(hermite(i));
    Ok(wronskian(&fs))
}

/// `deg H_{lambda,i} = |lambda| + i - l`.
pub fn basis_degree(lam: &Partition, i: usize) -> usize {
    lam.size() + i - lam.len()
}

/// Complement of the degree sequence `I_lambda` in `N_0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeSequence {
    pub lam: Partition,
    pub gaps: BTreeSet<usize>,
}

impl DegreeSequence {
    pub fn is_gap(&self, d: usize) -> bool {
        self.gaps.contains(&d)
    }

    /// Codimension of `U_lambda`, equal to `|gaps|`.
    pub fn codimension(&self) -> usize {
        self.gaps.len()
    }
}

/// `{n < |lambda| - l} ∪ {k_j + |lambda| - l}`.
pub fn degree_sequence(lam: &Partition) -> DegreeSequence {
    let shift = lam.size() - lam.len();
    let gaps = (0..shift)
        .chain(lam.k_sequence().as_slice().iter().map(|k| k + shift))
        .collect();
    DegreeSequence {
        lam: lam.clone(),
        gaps,
    }
}

/// Lazily populated exceptional basis `{H_{lambda,i}}` for one partition.
///
/// The cache admits concurrent readers; population takes the write lock.
pub struct ExceptionalBasis {
    lam: Partition,
    ks: KSet,
    h: ExactPoly,
    cache: RwLock<BTreeMap<usize, ExactPoly>>,
}

impl ExceptionalBasis {
    pub fn new(lam: &Partition) -> Self {
        Self {
            lam: lam.clone(),
            ks: lam.k_sequence(),
            h: h_lambda(lam),
            cache: RwLock::new(BTreeMap::new()),
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.lam
    }

    pub fn kset(&self) -> &KSet {
        &self.ks
    }

    /// `H_lambda`.
    pub fn h_lambda(&self) -> &ExactPoly {
        &self.h
    }

    pub fn is_admissible(&self, i: usize) -> bool {
        !self.ks.contains(i)
    }

    /// Index `i` with `deg H_{lambda,i} = d`, if `d` is not a gap.
    pub fn index_for_degree(&self, d: usize) -> Option<usize> {
        let shift = self.lam.size() - self.lam.len();
        let i = d.checked_sub(shift)?;
        self.is_admissible(i).then_some(i)
    }

    pub fn element(&self, i: usize) -> Result<ExactPoly> {
        if let Some(p) = self.cache.read().expect("basis cache poisoned").get(&i) {
            return Ok(p.clone());
        }
        let p = h_lambda_i(&self.lam, i)?;
        self.cache
            .write()
            .expect("basis cache poisoned")
            .entry(i)
            .or_insert_with(|| p.clone());
        Ok(p)
    }

    /// The first `count` admissible indices in increasing order.
    pub fn admissible_indices(&self, count: usize) -> Vec<usize> {
        (0..).filter(|&i| self.is_admissible(i)).take(count).collect()
    }

    /// Admissible `(i, H_{lambda,i})` with degree at most `max_degree`, by increasing degree.
    pub fn up_to_degree(&self, max_degree: usize) -> Result<Vec<(usize, ExactPoly)>> {
        (0..=max_degree)
            .filter_map(|d| self.index_for_degree(d))
            .map(|i| self.element(i).map(|p| (i, p)))
            .collect()
    }

    /// Exact membership test; see [`membership`].
    pub fn membership(&self, p: &ExactPoly) -> Result<Membership> {
        let mut rem = p.clone();
        let mut coefficients = Vec::new();
        while let Some(d) = rem.degree() {
            let Some(i) = self.index_for_degree(d) else {
                coefficients.sort_by_key(|(i, _)| *i);
                return Ok(Membership {
                    member: false,
                    coefficients,
                    obstruction_degree: Some(d),
                });
            };
            let b = self.element(i)?;
            let c = rem.leading_coeff().expect("nonzero") / b.leading_coeff().expect("nonzero basis");
            rem = &rem - &b.scale(&c);
            coefficients.push((i, c));
        }
        coefficients.sort_by_key(|(i, _)| *i);
        Ok(Membership {
            member: true,
            coefficients,
            obstruction_degree: None,
        })
    }
}

/// Result of the exact membership solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    /// `(i, c_i)` with `p = sum c_i H_{lambda,i}` when `member`; the partial
    /// solve up to the obstruction otherwise.
    pub coefficients: Vec<(usize, Rational)>,
    /// Leading degree of the unreducible remainder; always a gap degree.
    pub obstruction_degree: Option<usize>,
}

impl Membership {
    /// Recombines the certificate over the given basis.
    pub fn recombine(&self, basis: &ExceptionalBasis) -> Result<ExactPoly> {
        self.coefficients.iter().try_fold(ExactPoly::zero(), |acc, (i, c)| {
            Ok(&acc + &basis.element(*i)?.scale(c))
        })
    }

    pub fn certificate(&self, lam: &Partition, p: &ExactPoly) -> MembershipCertificate {
        MembershipCertificate {
            partition: lam.clone(),
            polynomial: p.to_string(),
            member: self.member,
            coefficients: self
                .coefficients
                .iter()
                .map(|(i, c)| (*i, render_rational(c)))
                .collect(),
            obstruction_degree: self.obstruction_degree,
        }
    }
}

/// JSON face of [`Membership`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MembershipCertificate {
    pub partition: Partition,
    pub polynomial: String,
    pub member: bool,
    pub coefficients: Vec<(usize, String)>,
    pub obstruction_degree: Option<usize>,
}

/// Decides `p ∈ U_lambda` by back-substitution over the basis elements, whose
/// degrees are pairwise distinct.
pub fn membership(lam: &Partition, p: &ExactPoly) -> Result<Membership> {
    ExceptionalBasis::new(lam).membership(p)
}

/// `H_lambda^2 p` together with its expansion over the exceptional basis.
/// Failure to be a member is reported as [`Error::Invariant`].
pub fn eta_squared_embed(basis: &ExceptionalBasis, p: &ExactPoly) -> Result<(ExactPoly, Membership)> {
    let h = basis.h_lambda();
    let q = &(h * h) * p;
    let m = basis.membership(&q)?;
    if !m.member {
        return Err(Error::Invariant(format!(
            "H_lambda^2 p not in U_lambda for lambda = {}, p = {p}, obstruction at degree {:?}",
            basis.partition(),
            m.obstruction_degree
        )));
    }
    debug_assert!(!m.coefficients.iter().any(|(_, c)| c.is_zero()) || q.is_zero());
    Ok((q, m))
}
