//! Independent reference implementations used only by tests.

#![allow(dead_code)]

use num_traits::{One, Zero};
use rand::Rng;
use xhermite::exactpoly::rat;
use xhermite::{ExactPoly, ExceptionalBasis, Partition, Rational};

/// Hermite polynomial from the explicit sum `n! sum_m (-1)^m (2x)^{n-2m} / (m! (n-2m)!)`.
pub fn hermite_explicit(n: usize) -> ExactPoly {
    let fact = |k: usize| (1..=k).fold(Rational::one(), |a, v| a * rat(v as i64));
    let mut c = vec![Rational::zero(); n + 1];
    for m in 0..=n / 2 {
        let sign = if m % 2 == 0 { rat(1) } else { rat(-1) };
        let pow2 = (0..n - 2 * m).fold(Rational::one(), |a, _| a * rat(2));
        c[n - 2 * m] = sign * fact(n) * pow2 / (fact(m) * fact(n - 2 * m));
    }
    ExactPoly::new(c)
}

/// Determinant by full permutation expansion.
pub fn det_permutation(m: &[Vec<ExactPoly>]) -> ExactPoly {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = ExactPoly::zero();
    permute(&mut perm, 0, m, &mut total);
    total
}

fn permute(perm: &mut Vec<usize>, k: usize, m: &[Vec<ExactPoly>], total: &mut ExactPoly) {
    let n = perm.len();
    if k == n {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        let mut term = ExactPoly::one();
        for (row, &col) in perm.iter().enumerate() {
            term = &term * &m[row][col];
        }
        *total = if inversions % 2 == 0 { &*total + &term } else { &*total - &term };
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute(perm, k + 1, m, total);
        perm.swap(k, i);
    }
}

pub fn wronskian_oracle(fs: &[ExactPoly]) -> ExactPoly {
    if fs.is_empty() {
        return ExactPoly::one();
    }
    let m: Vec<Vec<ExactPoly>> = (0..fs.len())
        .map(|r| fs.iter().map(|f| f.derivative(r)).collect())
        .collect();
    det_permutation(&m)
}

/// Rank of a rational matrix by plain Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone() / rows[r][c].clone();
                for j in c..ncols {
                    let v = rows[r][j].clone() * f.clone();
                    rows[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// `p in U_lambda` iff appending `p` to the basis elements of degree `<= deg p`
/// leaves the rank unchanged.
pub fn span_membership(lam: &Partition, p: &ExactPoly) -> bool {
    let Some(d) = p.degree() else {
        return true;
    };
    let basis = ExceptionalBasis::new(lam);
    let elems: Vec<ExactPoly> = (0..=d + lam.len())
        .filter(|&i| basis.is_admissible(i))
        .map(|i| basis.element(i).unwrap())
        .filter(|e| e.degree().unwrap() <= d)
        .collect();
    let row = |e: &ExactPoly| (0..=d).map(|k| e.coeff(k)).collect::<Vec<_>>();
    let mut rows: Vec<Vec<Rational>> = elems.iter().map(row).collect();
    let r0 = rank(rows.clone());
    rows.push(row(p));
    rank(rows) == r0
}

pub fn random_poly(rng: &mut impl Rng, degree: usize, bound: i64) -> ExactPoly {
    let mut c: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-bound..=bound)).collect();
    if c[degree] == 0 {
        c[degree] = 1;
    }
    ExactPoly::from_ints(&c)
}

/// Random integer combination of basis elements of degree `<= degree`.
pub fn random_member(rng: &mut impl Rng, basis: &ExceptionalBasis, degree: usize) -> ExactPoly {
    let mut p = ExactPoly::zero();
    for (_, e) in basis.up_to_degree(degree).unwrap() {
        let c = rng.gen_range(-3..=3);
        p = &p + &e.scale(&rat(c));
    }
    if p.is_zero() {
        if let Some((_, e)) = basis.up_to_degree(degree).unwrap().pop() {
            p = e;
        }
    }
    p
}

pub fn lam(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}
