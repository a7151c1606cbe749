//! Exact scan for multiple roots of `H_lambda`.

use serde::Serialize;

use super::triangular_nu;
use crate::error::Result;
use crate::exactpoly::{squarefree, ExactPoly};
use crate::hermite::h_lambda;
use crate::partitions::{enumerate, Partition, PartitionFilter};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VeselovRow {
    pub partition: Partition,
    /// Multiplicity of the root at the origin (0 if `H_lambda(0) != 0`).
    pub origin_multiplicity: usize,
    /// `(degree of square-free factor, multiplicity)` pairs.
    pub factors: Vec<(usize, usize)>,
    pub has_multiple_root: bool,
    /// A root of multiplicity > 1 away from the origin.
    pub multiple_root_off_origin: bool,
    pub all_triangular: bool,
    /// Largest `nu` over all roots; `None` for `lambda = ()`.
    pub worst_nu: Option<usize>,
}

pub fn veselov_row(lam: &Partition) -> Result<VeselovRow> {
    let h = h_lambda(lam);
    let origin_multiplicity = h.low_order().expect("H_lambda is nonzero");
    let sf = squarefree(&h)?;
    let x = ExactPoly::x();
    let mut factors = Vec::with_capacity(sf.parts.len());
    let mut off_origin = false;
    let mut all_triangular = true;
    let mut worst_nu = None;
    for (f, m) in &sf.parts {
        factors.push((f.degree().unwrap_or(0), *m));
        if *m > 1 && f != &x {
            off_origin = true;
        }
        match triangular_nu(*m) {
            Ok(nu) => worst_nu = worst_nu.max(Some(nu)),
            Err(_) => all_triangular = false,
        }
    }
    Ok(VeselovRow {
        partition: lam.clone(),
        origin_multiplicity,
        has_multiple_root: sf.max_multiplicity() > 1,
        multiple_root_off_origin: off_origin,
        all_triangular,
        worst_nu,
        factors,
    })
}

/// One row per partition with `1 <= |lambda| <= max_size`, in enumeration order.
pub fn veselov_scan(max_size: usize) -> Result<Vec<VeselovRow>> {
    enumerate(max_size, PartitionFilter::All)
        .iter()
        .map(veselov_row)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_scan() {
        let rows = veselov_scan(3).unwrap();
        assert_eq!(rows.len(), 6);
        let flagged: Vec<String> = rows
            .iter()
            .filter(|r| r.has_multiple_root)
            .map(|r| r.partition.to_string())
            .collect();
        assert_eq!(flagged, vec!["(2,1)"]);
        let r21 = rows.iter().find(|r| r.partition.parts() == [2, 1]).unwrap();
        assert_eq!(r21.origin_multiplicity, 3);
        assert_eq!(r21.worst_nu, Some(2));
        assert!(!r21.multiple_root_off_origin);
    }

    #[test]
    fn simple_cases() {
        let r = veselov_row(&Partition::new(vec![1]).unwrap()).unwrap();
        assert_eq!(r.origin_multiplicity, 1);
        assert!(!r.has_multiple_root);
        let r = veselov_row(&Partition::new(vec![1, 1]).unwrap()).unwrap();
        assert_eq!(r.origin_multiplicity, 0);
        assert_eq!(r.factors, vec![(2, 1)]);
        assert!(!r.has_multiple_root && r.all_triangular);
        let r = veselov_row(&Partition::empty()).unwrap();
        assert_eq!(r.worst_nu, None);
    }
}
