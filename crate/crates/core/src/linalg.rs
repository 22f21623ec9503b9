//! Small dense linear-algebra helpers on plain `f64` slices.

use nalgebra::{DMatrix, DVector};

/// Euclidean inner product, summed left to right.
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut s = 0.0;
    for (x, y) in a.iter().zip(b) {
        s += x * y;
    }
    s
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[f64], t: f64) -> Vec<f64> {
    a.iter().map(|x| x * t).collect()
}

/// Lexicographic comparison of two equal-length vectors.
pub fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// Matrix whose columns are the given vectors.
pub fn columns(vectors: &[Vec<f64>], dim: usize) -> DMatrix<f64> {
    DMatrix::from_fn(dim, vectors.len(), |i, j| vectors[j][i])
}

/// Numerical rank with singular values below `rel_tol * sigma_max` treated as zero.
pub fn rank(m: &DMatrix<f64>, rel_tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().singular_values();
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * smax).count()
}

/// Generalized cross product of `p - 1` vectors in `R^p`: the cofactor vector,
/// orthogonal to every input.
pub fn cross(vectors: &[&[f64]], dim: usize) -> Vec<f64> {
    debug_assert_eq!(vectors.len() + 1, dim);
    let mut out = vec![0.0; dim];
    for (i, slot) in out.iter_mut().enumerate() {
        let minor = DMatrix::from_fn(dim - 1, dim - 1, |r, c| {
            let col = if c < i { c } else { c + 1 };
            vectors[r][col]
        });
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        *slot = sign * minor.determinant();
    }
    out
}

/// Nonnegative least squares `min ||A x - b||, x >= 0` (Lawson–Hanson active set).
///
/// Returns the minimizer and the residual norm.
pub fn nnls(a: &DMatrix<f64>, b: &DVector<f64>) -> (DVector<f64>, f64) {
    let n = a.ncols();
    let mut x = DVector::zeros(n);
    let mut passive = vec![false; n];
    let scale = a.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
    let tol = 1e-12 * scale * (b.norm() + 1.0) * n.max(1) as f64;
    let max_outer = 3 * n + 10;

    for _ in 0..max_outer {
        let w = a.transpose() * (b - a * &x);
        let candidate = (0..n)
            .filter(|&j| !passive[j])
            .max_by(|&i, &j| w[i].total_cmp(&w[j]));
        let Some(t) = candidate else { break };
        if w[t] <= tol {
            break;
        }
        passive[t] = true;

        loop {
            let idx: Vec<usize> = (0..n).filter(|&j| passive[j]).collect();
            let sub = DMatrix::from_fn(a.nrows(), idx.len(), |r, c| a[(r, idx[c])]);
            let z_sub = match sub.clone().svd(true, true).solve(b, 1e-14) {
                Ok(z) => z,
                Err(_) => break,
            };
            let mut z = DVector::zeros(n);
            for (k, &j) in idx.iter().enumerate() {
                z[j] = z_sub[k];
            }
            if idx.iter().all(|&j| z[j] > 0.0) {
                x = z;
                break;
            }
            let mut alpha = f64::INFINITY;
            for &j in &idx {
                if z[j] <= 0.0 {
                    let denom = x[j] - z[j];
                    if denom > 0.0 {
                        alpha = alpha.min(x[j] / denom);
                    }
                }
            }
            if !alpha.is_finite() {
                alpha = 0.0;
            }
            x = &x + (&z - &x) * alpha;
            for &j in &idx {
                if x[j] <= 1e-15 * scale {
                    x[j] = 0.0;
                    passive[j] = false;
                }
            }
            if !passive.iter().any(|&p| p) {
                break;
            }
        }
    }
    let residual = (a * &x - b).norm();
    (x, residual)
}
