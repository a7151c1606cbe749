//! Integer partitions and the bijection `lambda <-> K_lambda`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Non-increasing sequence of positive integers. Trailing zeros are implicit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Validates the parts; unsorted or non-positive input is rejected.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not non-increasing")));
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of parts, `l`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|lambda|`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_even(&self) -> bool {
        is_even(self)
    }

    pub fn k_sequence(&self) -> KSet {
        k_sequence(self)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated parts, e.g. `2,1`; the empty string is the empty partition.
    /// Surrounding parentheses are tolerated.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(t)
            .trim();
        if t.is_empty() {
            return Ok(Self::empty());
        }
        let parts = t
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("cannot parse {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

impl serde::Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

/// Strictly decreasing positive integers `k_1 > ... > k_l > 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct KSet {
    ks: Vec<usize>,
}

impl KSet {
    pub fn new(ks: Vec<usize>) -> Result<Self> {
        if ks.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidKSet(format!("{ks:?} is not strictly decreasing")));
        }
        if ks.last() == Some(&0) {
            return Err(Error::InvalidKSet(format!("{ks:?} contains 0")));
        }
        Ok(Self { ks })
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.ks
    }

    pub fn contains(&self, k: usize) -> bool {
        self.ks.contains(&k)
    }

    pub fn len(&self) -> usize {
        self.ks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ks.is_empty()
    }

    /// The indices in ascending order, the canonical Wronskian argument order.
    pub fn ascending(&self) -> Vec<usize> {
        self.ks.iter().rev().copied().collect()
    }
}

impl fmt::Debug for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KSet{:?}", self.ks)
    }
}

/// `k_i = lambda_i + l - i`.
pub fn k_sequence(lam: &Partition) -> KSet {
    let l = lam.len();
    let ks = lam
        .parts
        .iter()
        .enumerate()
        .map(|(i, &p)| p + l - (i + 1))
        .collect();
    KSet { ks }
}

/// `lambda_i = k_i - l + i`.
pub fn inverse_k(ks: &KSet) -> Partition {
    let l = ks.len();
    let parts = ks
        .ks
        .iter()
        .enumerate()
        .map(|(i, &k)| k + i + 1 - l)
        .collect();
    Partition { parts }
}

/// Even length with `lambda_{2i-1} = lambda_{2i}`.
pub fn is_even(lam: &Partition) -> bool {
    lam.len() % 2 == 0 && lam.parts.chunks(2).all(|c| c[0] == c[1])
}

/// Which partitions [`enumerate`] keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PartitionFilter {
    #[default]
    All,
    Even,
}

impl FromStr for PartitionFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Self::All),
            "even" => Ok(Self::Even),
            other => Err(Error::InvalidArgument(format!("unknown filter {other:?}"))),
        }
    }
}

/// All partitions with `1 <= |lambda| <= max_size`, ordered by size and
/// then reverse-lexicographically by parts within each size
/// (`(3), (2,1), (1,1,1)`).
pub fn enumerate(max_size: usize, filter: PartitionFilter) -> Vec<Partition> {
    let mut out = Vec::new();
    for n in 1..=max_size {
        let mut cur = Vec::new();
        partitions_of(n, n, &mut cur, &mut out);
    }
    if filter == PartitionFilter::Even {
        out.retain(is_even);
    }
    out
}

fn partitions_of(rem: usize, max_part: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rem == 0 {
        out.push(Partition { parts: cur.clone() });
        return;
    }
    for p in (1..=max_part.min(rem)).rev() {
        cur.push(p);
        partitions_of(rem - p, p, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn k_sequence_examples() {
        assert_eq!(k_sequence(&lam(&[2, 1])).as_slice(), &[3, 1]);
        assert!(k_sequence(&Partition::empty()).is_empty());
        assert_eq!(k_sequence(&lam(&[1, 1])).as_slice(), &[2, 1]);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse_k(&KSet::new(vec![3, 1]).unwrap()), lam(&[2, 1]));
        assert_eq!(inverse_k(&KSet::new(vec![]).unwrap()), Partition::empty());
        assert_eq!(inverse_k(&KSet::new(vec![1]).unwrap()), lam(&[1]));
    }

    #[test]
    fn evenness() {
        assert!(is_even(&lam(&[1, 1])));
        assert!(!is_even(&lam(&[2, 1])));
        assert!(is_even(&lam(&[3, 3, 1, 1])));
        assert!(is_even(&Partition::empty()));
        assert!(!is_even(&lam(&[1, 1, 1])));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate(2, PartitionFilter::All), vec![lam(&[1]), lam(&[2]), lam(&[1, 1])]);
        assert_eq!(enumerate(2, PartitionFilter::Even), vec![lam(&[1, 1])]);
        assert!(enumerate(1, PartitionFilter::Even).is_empty());
        assert_eq!(
            enumerate(4, PartitionFilter::Even),
            vec![lam(&[1, 1]), lam(&[2, 2]), lam(&[1, 1, 1, 1])]
        );
    }

    #[test]
    fn rejects_malformed() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(KSet::new(vec![1, 3]).is_err());
        assert!(KSet::new(vec![2, 2]).is_err());
        assert!(KSet::new(vec![1, 0]).is_err());
        assert!("1,2".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
    }

    #[test]
    fn text_form() {
        assert_eq!("2,1".parse::<Partition>().unwrap(), lam(&[2, 1]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("(3, 3, 1, 1)".parse::<Partition>().unwrap(), lam(&[3, 3, 1, 1]));
        assert_eq!(lam(&[2, 1]).to_string(), "(2,1)");
    }
}
