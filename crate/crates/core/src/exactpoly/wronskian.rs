use super::ExactPoly;

/// Wronskian `det[f_i^{(j)}]`, columns in the order given, rows by derivative order.
///
/// Evaluated with fraction-free Bareiss elimination over `Q[x]`; every
/// intermediate division is exact. Linearly dependent input yields zero and
/// an empty sequence yields the constant 1.
pub fn wronskian(fs: &[ExactPoly]) -> ExactPoly {
    let n = fs.len();
    if n == 0 {
        return ExactPoly::one();
    }
    let mut m: Vec<Vec<ExactPoly>> = (0..n)
        .map(|j| fs.iter().map(|f| f.derivative(j)).collect())
        .collect();
    bareiss_det(&mut m)
}

fn bareiss_det(m: &mut [Vec<ExactPoly>]) -> ExactPoly {
    let n = m.len();
    let mut negate = false;
    let mut prev = ExactPoly::one();
    for k in 0..n.saturating_sub(1) {
        let Some(piv) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return ExactPoly::zero();
        };
        if piv != k {
            m.swap(piv, k);
            negate = !negate;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let t = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t
                    .exact_div(&prev)
                    .expect("Bareiss step divides exactly by the previous pivot");
            }
            m[i][k] = ExactPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}
