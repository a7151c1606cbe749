//! Gauss rules from three-term recurrences: Jacobi-matrix eigenvalues by
//! implicit QL, Newton polish on the orthonormal recurrence, Christoffel
//! weights.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};

/// Nodes in increasing order and positive weights.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Recurrence `x p_k = b_{k+1} p_{k+1} + a_k p_k + b_k p_{k-1}` for the
/// orthonormal polynomials of a weight with total mass `mu0`.
trait Recurrence {
    fn a(&self, k: usize) -> f64;
    fn b(&self, k: usize) -> f64;
    fn mu0(&self) -> f64;
}

struct Hermite;

impl Recurrence for Hermite {
    fn a(&self, _k: usize) -> f64 {
        0.0
    }
    fn b(&self, k: usize) -> f64 {
        (k as f64 / 2.0).sqrt()
    }
    fn mu0(&self) -> f64 {
        std::f64::consts::PI.sqrt()
    }
}

struct Laguerre(f64);

impl Recurrence for Laguerre {
    fn a(&self, k: usize) -> f64 {
        2.0 * k as f64 + self.0 + 1.0
    }
    fn b(&self, k: usize) -> f64 {
        (k as f64 * (k as f64 + self.0)).sqrt()
    }
    fn mu0(&self) -> f64 {
        statrs::function::gamma::gamma(self.0 + 1.0)
    }
}

const RESCALE: f64 = 1e150;

/// `(p_n(x), p_n'(x), p_{n-1}(x), ln s)` where the true values are the
/// returned ones times `exp(ln s)`.
fn eval_recurrence(r: &impl Recurrence, n: usize, x: f64) -> (f64, f64, f64, f64) {
    let mut p_prev = 0.0;
    let mut p = 1.0 / r.mu0().sqrt();
    let mut d_prev = 0.0;
    let mut d = 0.0;
    let mut ln_scale = 0.0;
    for k in 0..n {
        let b_next = r.b(k + 1);
        let t = x - r.a(k);
        let p_next = (t * p - r.b(k) * p_prev) / b_next;
        let d_next = (p + t * d - r.b(k) * d_prev) / b_next;
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
        if p.abs() > RESCALE || d.abs() > RESCALE {
            p /= RESCALE;
            p_prev /= RESCALE;
            d /= RESCALE;
            d_prev /= RESCALE;
            ln_scale += RESCALE.ln();
        }
    }
    (p, d, p_prev, ln_scale)
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `d` and
/// off-diagonal `e[0..n-1]` (implicit QL with Wilkinson shifts).
fn tridiagonal_eigenvalues(mut d: Vec<f64>, mut e: Vec<f64>) -> Result<Vec<f64>> {
    let n = d.len();
    e.resize(n, 0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::Invariant(format!("QL iteration stalled at index {l} of {n}")));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(f64::total_cmp);
    Ok(d)
}

fn gauss_rule(r: &impl Recurrence, n: usize) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::InvalidArgument("a Gauss rule needs at least one node".into()));
    }
    let diag: Vec<f64> = (0..n).map(|k| r.a(k)).collect();
    let off: Vec<f64> = (1..n).map(|k| r.b(k)).collect();
    let guesses = tridiagonal_eigenvalues(diag, off)?;
    let b_n = r.b(n);
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for g in guesses {
        let mut x = g;
        for _ in 0..8 {
            let (p, d, _, _) = eval_recurrence(r, n, x);
            let step = p / d;
            x -= step;
            if step.abs() <= 4.0 * f64::EPSILON * x.abs().max(1.0) {
                break;
            }
        }
        // Christoffel–Darboux: 1 / sum_{k<n} p_k(x)^2 = 1 / (b_n p_n'(x) p_{n-1}(x))
        let (_, d, p_prev, ln_scale) = eval_recurrence(r, n, x);
        let w = (-2.0 * ln_scale - (b_n * d * p_prev).abs().ln()).exp();
        nodes.push(x);
        weights.push(w);
    }
    if nodes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Invariant(format!("Gauss rule with {n} nodes has coincident nodes")));
    }
    Ok(QuadratureRule { nodes, weights })
}

type Cache = RwLock<HashMap<(usize, u64), Arc<QuadratureRule>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn cached(key: (usize, u64), build: impl FnOnce() -> Result<QuadratureRule>) -> Result<Arc<QuadratureRule>> {
    if let Some(r) = cache().read().expect("quadrature cache poisoned").get(&key) {
        return Ok(r.clone());
    }
    let rule = Arc::new(build()?);
    let mut w = cache().write().expect("quadrature cache poisoned");
    Ok(w.entry(key).or_insert(rule).clone())
}

/// `n`-point Gauss–Hermite rule for `int f(x) e^{-x^2} dx`.
pub fn gauss_hermite(n: usize) -> Result<Arc<QuadratureRule>> {
    // NaN bits never collide with a Laguerre alpha
    cached((n, f64::NAN.to_bits()), || gauss_rule(&Hermite, n))
}

/// `n`-point generalized Gauss–Laguerre rule for `int_0^inf f(y) y^alpha e^{-y} dy`.
pub fn gauss_laguerre(n: usize, alpha: f64) -> Result<Arc<QuadratureRule>> {
    if !(alpha > -1.0) {
        return Err(Error::InvalidArgument(format!("Laguerre alpha = {alpha} must exceed -1")));
    }
    cached((n, alpha.to_bits()), || gauss_rule(&Laguerre(alpha), n))
}
