//! Quadrature experiments in `L^2(R, W_lambda)` with
//! `W_lambda = e^{-x^2} / H_lambda(x)^2` for even partitions.

mod lemma;
pub mod quadrature;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactpoly::ExactPoly;
use crate::hermite::{h_lambda, ExceptionalBasis};
use crate::partitions::Partition;

pub use lemma::{lemma_d2_construct, lemma_d2_with_degree, HalfLineFit, LemmaD2Result, LEMMA_MAX_DEGREE};
pub use quadrature::{gauss_hermite, gauss_laguerre, QuadratureRule};

/// First node count of the doubling sequence.
pub const QUAD_START: usize = 64;
/// Node ceiling; reaching it without agreement raises the warning flag.
pub const QUAD_MAX: usize = 4096;
/// Relative agreement required between successive node counts.
pub const QUAD_TOL: f64 = 1e-12;

/// `W_lambda(x) = e^{-x^2} / H_lambda(x)^2` for an even partition.
#[derive(Debug, Clone)]
pub struct WeightSpec {
    lam: Partition,
    h: Vec<f64>,
}

impl WeightSpec {
    pub fn new(lam: &Partition) -> Result<Self> {
        if !lam.is_even() {
            return Err(Error::NotEven(lam.to_string()));
        }
        Ok(Self {
            lam: lam.clone(),
            h: h_lambda(lam).to_f64_coeffs(),
        })
    }

    /// The classical Hermite weight `e^{-x^2}`.
    pub fn classical() -> Self {
        Self {
            lam: Partition::empty(),
            h: vec![1.0],
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.lam
    }

    pub fn h_eval(&self, x: f64) -> f64 {
        horner(&self.h, x)
    }

    /// `1 / H_lambda(x)^2`, the factor left after the Gauss–Hermite weight.
    pub fn reduced(&self, x: f64) -> f64 {
        let h = self.h_eval(x);
        1.0 / (h * h)
    }

    pub fn eval(&self, x: f64) -> f64 {
        (-x * x).exp() * self.reduced(x)
    }
}

pub fn weight_eval(spec: &WeightSpec, x: f64) -> f64 {
    spec.eval(x)
}

pub(crate) fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

/// A quadrature value with its convergence record.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Quadrature {
    pub value: f64,
    /// Relative change between the last two node counts.
    pub rel_change: f64,
    pub nodes: usize,
    /// `false` when the node ceiling was hit before agreement.
    pub converged: bool,
}

/// Result of [`doubling`]: values, worst relative change, nodes, converged.
pub(crate) struct Doubled {
    pub values: Vec<f64>,
    pub rel_change: f64,
    pub nodes: usize,
    pub converged: bool,
}

/// Runs `eval` on Gauss–Hermite rules of 64, 128, ... nodes until every
/// component agrees with the previous rule to `QUAD_TOL` relative to its
/// scale. `eval` returns `(values, scales)`.
pub(crate) fn doubling(eval: impl Fn(&QuadratureRule) -> (Vec<f64>, Vec<f64>)) -> Result<Doubled> {
    let mut n = QUAD_START;
    let mut prev: Option<Vec<f64>> = None;
    loop {
        let rule = gauss_hermite(n)?;
        let (values, scales) = eval(&rule);
        if let Some(p) = prev {
            let rel_change = values
                .iter()
                .zip(&p)
                .zip(&scales)
                .map(|((v, q), s)| if *s > 0.0 { (v - q).abs() / s } else { 0.0 })
                .fold(0.0, f64::max);
            if rel_change <= QUAD_TOL || n >= QUAD_MAX {
                return Ok(Doubled {
                    values,
                    rel_change,
                    nodes: n,
                    converged: rel_change <= QUAD_TOL,
                });
            }
        }
        prev = Some(values);
        n *= 2;
    }
}

/// `int f g W_lambda` by Gauss–Hermite with node doubling. Convergence is
/// judged relative to `max(|value|, int |f g| W_lambda)`, so integrals that
/// vanish by symmetry converge.
pub fn inner_product(spec: &WeightSpec, f: &dyn Fn(f64) -> f64, g: &dyn Fn(f64) -> f64) -> Result<Quadrature> {
    let d = doubling(|rule| {
        let mut sum = 0.0;
        let mut abs = 0.0;
        for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
            let t = w * f(x) * g(x) * spec.reduced(x);
            sum += t;
            abs += t.abs();
        }
        (vec![sum], vec![sum.abs().max(abs)])
    })?;
    Ok(Quadrature {
        value: d.values[0],
        rel_change: d.rel_change,
        nodes: d.nodes,
        converged: d.converged,
    })
}

/// Gram matrix of the first admissible exceptional polynomials.
#[derive(Debug, Clone, Serialize)]
pub struct GramReport {
    pub lam: Partition,
    pub indices: Vec<usize>,
    pub matrix: Vec<Vec<f64>>,
    /// `max |G_ij| / sqrt(G_ii G_jj)` over `i != j`.
    pub max_offdiag_rel: f64,
    pub quadrature_nodes_used: usize,
    pub rel_change: f64,
    pub converged: bool,
}

impl GramReport {
    /// Header row of indices, then one row per index; entries in `{:.17e}`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i");
        for i in &self.indices {
            out.push_str(&format!(",{i}"));
        }
        out.push('\n');
        for (i, row) in self.indices.iter().zip(&self.matrix) {
            out.push_str(&i.to_string());
            for v in row {
                out.push_str(&format!(",{v:.17e}"));
            }
            out.push('\n');
        }
        out
    }
}

pub fn gram_matrix(lam: &Partition, count: usize) -> Result<GramReport> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be positive".into()));
    }
    let spec = WeightSpec::new(lam)?;
    let basis = ExceptionalBasis::new(lam);
    let indices = basis.admissible_indices(count);
    let polys: Vec<Vec<f64>> = indices
        .iter()
        .map(|&i| basis.element(i).map(|p| p.to_f64_coeffs()))
        .collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..count).flat_map(|a| (a..count).map(move |b| (a, b))).collect();
    let d = doubling(|rule| {
        let mut sums = vec![0.0; pairs.len()];
        let mut abs = vec![0.0; pairs.len()];
        let mut vals = vec![0.0; count];
        for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
            let s = w * spec.reduced(x);
            for (v, c) in vals.iter_mut().zip(&polys) {
                *v = horner(c, x);
            }
            for (k, &(a, b)) in pairs.iter().enumerate() {
                let t = s * vals[a] * vals[b];
                sums[k] += t;
                abs[k] += t.abs();
            }
        }
        let scales = sums.iter().zip(&abs).map(|(s, a)| s.abs().max(*a)).collect();
        (sums, scales)
    })?;
    let mut matrix = vec![vec![0.0; count]; count];
    for (&(a, b), &v) in pairs.iter().zip(&d.values) {
        matrix[a][b] = v;
        matrix[b][a] = v;
    }
    if (0..count).any(|a| !(matrix[a][a] > 0.0)) {
        return Err(Error::Invariant(format!("Gram matrix of {lam} has a non-positive diagonal")));
    }
    let mut max_offdiag_rel: f64 = 0.0;
    for a in 0..count {
        for b in a + 1..count {
            max_offdiag_rel = max_offdiag_rel.max(matrix[a][b].abs() / (matrix[a][a] * matrix[b][b]).sqrt());
        }
    }
    Ok(GramReport {
        lam: lam.clone(),
        indices,
        matrix,
        max_offdiag_rel,
        quadrature_nodes_used: d.nodes,
        rel_change: d.rel_change,
        converged: d.converged,
    })
}

/// Functions accepted by [`density_demo`] from text.
#[derive(Debug, Clone, PartialEq)]
pub enum TestFunction {
    One,
    Abs,
    Exp,
    Poly(ExactPoly),
}

impl TestFunction {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Self::One => 1.0,
            Self::Abs => x.abs(),
            Self::Exp => x.exp(),
            Self::Poly(p) => p.eval_f64(x),
        }
    }
}

impl FromStr for TestFunction {
    type Err = Error;

    /// `one`, `abs`, `exp` or a polynomial such as `x^2 - 1`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "one" => Ok(Self::One),
            "abs" => Ok(Self::Abs),
            "exp" => Ok(Self::Exp),
            other => other.parse().map(Self::Poly).map_err(|_| Error::Parse {
                input: s.to_string(),
                reason: "expected one, abs, exp or a polynomial in x".into(),
            }),
        }
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::One => f.write_str("one"),
            Self::Abs => f.write_str("abs"),
            Self::Exp => f.write_str("exp"),
            Self::Poly(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct DensityPoint {
    #[serde(rename = "D")]
    pub degree: usize,
    pub error: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DensityReport {
    pub lam: Partition,
    pub points: Vec<DensityPoint>,
    /// `||f||` in `L^2(W_lambda)`.
    pub f_norm: f64,
    /// Errors at or below this level are reported as 0.
    pub noise_floor: f64,
    pub quadrature_nodes_used: usize,
    pub converged: bool,
}

impl DensityReport {
    pub fn errors(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.error).collect()
    }

    pub fn is_non_increasing(&self) -> bool {
        self.points.windows(2).all(|w| w[1].error <= w[0].error + self.noise_floor)
    }
}

/// Relative level below which projection errors are indistinguishable from zero.
pub const DENSITY_NOISE: f64 = 1e-12;

/// Best-approximation errors `||f - P_D f||` onto `span{H_{lambda,i} : deg <= D}`
/// for each cap `D`, using modified Gram–Schmidt with one reorthogonalization
/// pass in the discrete inner product of the Gauss–Hermite rule.
pub fn density_demo(lam: &Partition, f: &dyn Fn(f64) -> f64, degrees: &[usize]) -> Result<DensityReport> {
    if degrees.is_empty() || degrees.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(format!("degree caps {degrees:?} must be strictly increasing")));
    }
    let spec = WeightSpec::new(lam)?;
    let basis = ExceptionalBasis::new(lam);
    let elements: Vec<(usize, Vec<f64>)> = basis
        .up_to_degree(*degrees.last().expect("nonempty"))?
        .into_iter()
        .map(|(_, p)| (p.degree().unwrap_or(0), p.to_f64_coeffs()))
        .collect();
    let d = doubling(|rule| {
        let scale: Vec<f64> = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&x, &w)| (w * spec.reduced(x)).sqrt())
            .collect();
        let fv: Vec<f64> = rule.nodes.iter().zip(&scale).map(|(&x, s)| f(x) * s).collect();
        let f_norm = norm(&fv);
        let mut q: Vec<Vec<f64>> = Vec::new();
        let mut next = 0;
        let mut out = Vec::with_capacity(degrees.len() + 1);
        for &cap in degrees {
            while next < elements.len() && elements[next].0 <= cap {
                let v: Vec<f64> = rule
                    .nodes
                    .iter()
                    .zip(&scale)
                    .map(|(&x, s)| horner(&elements[next].1, x) * s)
                    .collect();
                let n0 = norm(&v);
                let mut r = v;
                orthogonalize(&mut r, &q);
                let n1 = norm(&r);
                if n1 > 1e-13 * n0 {
                    r.iter_mut().for_each(|c| *c /= n1);
                    q.push(r);
                }
                next += 1;
            }
            let mut r = fv.clone();
            orthogonalize(&mut r, &q);
            out.push(norm(&r));
        }
        out.push(f_norm);
        let scales = vec![f_norm; out.len()];
        (out, scales)
    })?;
    let f_norm = *d.values.last().expect("norm appended");
    let noise_floor = DENSITY_NOISE * f_norm;
    let points = degrees
        .iter()
        .zip(&d.values)
        .map(|(&degree, &e)| DensityPoint {
            degree,
            error: if e <= noise_floor { 0.0 } else { e },
        })
        .collect();
    Ok(DensityReport {
        lam: lam.clone(),
        points,
        f_norm,
        noise_floor,
        quadrature_nodes_used: d.nodes,
        converged: d.converged,
    })
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

// two MGS passes against orthonormal columns
fn orthogonalize(r: &mut [f64], q: &[Vec<f64>]) {
    for _ in 0..2 {
        for col in q {
            let c = dot(col, r);
            r.iter_mut().zip(col).for_each(|(a, b)| *a -= c * b);
        }
    }
}

/// Constants of the completeness argument with `2m = |lambda|`:
/// `A = sup (1 + x^{2m}) / H_lambda` and `B = sup H_lambda / (1 + x^{2m})`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ChainConstants {
    pub m: usize,
    pub a: f64,
    pub b: f64,
}

/// Estimates `A` and `B` on a dense grid in `x = tan(theta)` together with
/// the limits at infinity. Both are finite only because the degrees match.
pub fn chain_constants(lam: &Partition) -> Result<ChainConstants> {
    let spec = WeightSpec::new(lam)?;
    if lam.is_empty() {
        return Err(Error::InvalidArgument("the empty partition has no matching m".into()));
    }
    let m = lam.size() / 2;
    let lead = *spec.h.last().expect("nonzero");
    let mut a = 1.0 / lead;
    let mut b = lead;
    let n = 20_000;
    for k in 1..n {
        let theta = std::f64::consts::PI * (k as f64 / n as f64 - 0.5);
        let x = theta.tan();
        let r = (1.0 + x.powi(2 * m as i32)) / spec.h_eval(x);
        a = a.max(r);
        b = b.max(1.0 / r);
    }
    Ok(ChainConstants { m, a, b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite::hermite;

    fn lam(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn weight_examples() {
        let w = WeightSpec::new(&lam(&[1, 1])).unwrap();
        assert_eq!(w.eval(0.0), 1.0 / 16.0);
        assert_eq!(weight_eval(&WeightSpec::classical(), 0.0), 1.0);
        let x: f64 = 20.0;
        let ratio = w.eval(x) / ((-x * x).exp() / (64.0 * x.powi(4)));
        assert!((ratio - 1.0).abs() < 1e-2);
        assert!(matches!(WeightSpec::new(&lam(&[2, 1])), Err(Error::NotEven(_))));
        assert!(WeightSpec::new(&Partition::empty()).is_ok());
    }

    #[test]
    fn classical_inner_products() {
        let s = WeightSpec::classical();
        let h1 = hermite(1);
        let h2 = hermite(2);
        let f1 = |x: f64| h1.eval_f64(x);
        let f2 = |x: f64| h2.eval_f64(x);
        let q = inner_product(&s, &f1, &f1).unwrap();
        assert!((q.value - 2.0 * std::f64::consts::PI.sqrt()).abs() < 1e-13);
        assert!(q.converged && q.nodes == 128);
        let q = inner_product(&s, &f1, &f2).unwrap();
        assert!(q.value.abs() < 1e-13 && q.converged);
    }

    #[test]
    fn exceptional_pair_is_orthogonal() {
        let l = lam(&[1, 1]);
        let s = WeightSpec::new(&l).unwrap();
        let a = crate::hermite::h_lambda_i(&l, 0).unwrap();
        let b = crate::hermite::h_lambda_i(&l, 3).unwrap();
        let fa = |x: f64| a.eval_f64(x);
        let fb = |x: f64| b.eval_f64(x);
        let ab = inner_product(&s, &fa, &fb).unwrap();
        let aa = inner_product(&s, &fa, &fa).unwrap();
        let bb = inner_product(&s, &fb, &fb).unwrap();
        assert!(ab.value.abs() / (aa.value * bb.value).sqrt() < 1e-10);
    }

    #[test]
    fn gram_examples() {
        let g = gram_matrix(&lam(&[1, 1]), 5).unwrap();
        assert_eq!(g.indices, vec![0, 3, 4, 5, 6]);
        assert!(g.max_offdiag_rel < 1e-10, "{}", g.max_offdiag_rel);
        assert!(g.converged);

        let g = gram_matrix(&Partition::empty(), 5).unwrap();
        let sp = std::f64::consts::PI.sqrt();
        let mut norm = sp;
        for n in 0..5 {
            assert!((g.matrix[n][n] / norm - 1.0).abs() < 1e-13);
            norm *= 2.0 * (n + 1) as f64;
        }
        assert!(g.max_offdiag_rel < 1e-13);

        let g = gram_matrix(&lam(&[2, 2]), 4).unwrap();
        assert!(g.max_offdiag_rel < 1e-10);
        assert!(gram_matrix(&lam(&[2, 1]), 3).is_err());
    }

    #[test]
    fn gram_csv_layout() {
        let g = gram_matrix(&lam(&[1, 1]), 2).unwrap();
        let csv = g.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "i,0,3");
        assert!(lines[1].starts_with("0,"));
        assert_eq!(lines[2].split(',').count(), 3);
    }

    #[test]
    fn density_examples() {
        let l = lam(&[1, 1]);
        let h3 = crate::hermite::h_lambda_i(&l, 3).unwrap();
        let r = density_demo(&l, &|x| h3.eval_f64(x), &[3, 5, 7]).unwrap();
        assert_eq!(r.errors(), vec![0.0, 0.0, 0.0]);

        let h = h_lambda(&l);
        let f = &(&h * &h) * &ExactPoly::x();
        let r = density_demo(&l, &|x| f.eval_f64(x), &[5, 7]).unwrap();
        assert_eq!(r.errors(), vec![0.0, 0.0]);

        let r = density_demo(&l, &|x| x * x, &[0, 4, 8, 12]).unwrap();
        assert!(r.is_non_increasing());
        assert!(r.points[0].error > 0.0);
        assert!(density_demo(&l, &|_| 1.0, &[4, 4]).is_err());
    }

    #[test]
    fn test_function_parsing() {
        assert_eq!("one".parse::<TestFunction>().unwrap(), TestFunction::One);
        let p: TestFunction = "x^2 - 1".parse().unwrap();
        assert_eq!(p.eval(3.0), 8.0);
        assert_eq!(p.to_string(), "-1 + x^2");
        assert!("sinh".parse::<TestFunction>().is_err());
    }

    #[test]
    fn chain_constants_for_pair() {
        let c = chain_constants(&lam(&[1, 1])).unwrap();
        assert_eq!(c.m, 1);
        assert!((c.a - 0.25).abs() < 1e-6);
        assert!((c.b - 8.0).abs() < 1e-6);
    }
}
