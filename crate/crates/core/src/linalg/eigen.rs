use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Eigen-decomposition of a symmetric matrix.
#[derive(Clone, Debug)]
pub struct SymEigen {
    /// Sorted descending.
    pub values: Vec<f64>,
    /// Orthogonal; column `k` belongs to `values[k]`.
    pub vectors: Matrix,
}

const MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi eigen-decomposition of `(S + Sᵀ)/2`.
///
/// Each eigenvector is signed so its largest-magnitude entry is positive
/// (first such entry on ties), making the output deterministic.
pub fn sym_eigen(s: &Matrix) -> Result<SymEigen> {
    if !s.is_square() {
        return Err(Error::shape(format!("eigen-decomposition of {}x{}", s.rows(), s.cols())));
    }
    if !s.is_finite() {
        return Err(Error::NonFinite("sym_eigen"));
    }
    let p = s.rows();
    let mut a = s.symmetrized();
    let mut v = Matrix::identity(p);

    let total = a.frobenius_sq();
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..p)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum();
        if off <= (f64::EPSILON * f64::EPSILON) * total || off == 0.0 {
            break;
        }
        for i in 0..p {
            for j in i + 1..p {
                let aij = a[(i, j)];
                if aij == 0.0 {
                    continue;
                }
                let theta = (a[(j, j)] - a[(i, i)]) / (2.0 * aij);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                rotate(&mut a, &mut v, i, j, c, sn);
            }
        }
    }

    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by(|&x, &y| a[(y, y)].total_cmp(&a[(x, x)]).then(x.cmp(&y)));
    let values: Vec<f64> = order.iter().map(|&k| a[(k, k)]).collect();
    let mut vectors = Matrix::zeros(p, p);
    for (dst, &src) in order.iter().enumerate() {
        let col = v.col(src);
        let pivot = col
            .iter()
            .enumerate()
            .fold((0, 0.0f64), |best, (i, &x)| if x.abs() > best.1.abs() { (i, x) } else { best })
            .0;
        let sign = if col[pivot] < 0.0 { -1.0 } else { 1.0 };
        for i in 0..p {
            vectors[(i, dst)] = sign * col[i];
        }
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("sym_eigen"));
    }
    Ok(SymEigen { values, vectors })
}

/// Applies the Jacobi rotation zeroing `a[(i, j)]`: `A ← JᵀAJ`, `V ← VJ`.
fn rotate(a: &mut Matrix, v: &mut Matrix, i: usize, j: usize, c: f64, s: f64) {
    let p = a.rows();
    for k in 0..p {
        let (aki, akj) = (a[(k, i)], a[(k, j)]);
        a[(k, i)] = c * aki - s * akj;
        a[(k, j)] = s * aki + c * akj;
    }
    for k in 0..p {
        let (aik, ajk) = (a[(i, k)], a[(j, k)]);
        a[(i, k)] = c * aik - s * ajk;
        a[(j, k)] = s * aik + c * ajk;
    }
    for k in 0..p {
        let (vki, vkj) = (v[(k, i)], v[(k, j)]);
        v[(k, i)] = c * vki - s * vkj;
        v[(k, j)] = s * vki + c * vkj;
    }
}

/// Relative eigenvalue floor below which an SPD matrix counts as singular.
pub const SINGULAR_RATIO: f64 = 1e-12;

/// Symmetric inverse square root `V Λ^{-1/2} Vᵀ`.
pub fn inv_sqrt_sym(s: &Matrix) -> Result<Matrix> {
    let e = sym_eigen(s)?;
    let hi = e.values.first().copied().unwrap_or(0.0);
    let lo = e.values.last().copied().unwrap_or(0.0);
    if hi <= 0.0 || lo <= SINGULAR_RATIO * hi {
        let ratio = if hi > 0.0 { lo / hi } else { 0.0 };
        return Err(Error::Singular { mode: None, ratio });
    }
    let p = s.rows();
    let w: Vec<f64> = e.values.iter().map(|l| 1.0 / l.sqrt()).collect();
    let mut out = Matrix::zeros(p, p);
    for j in 0..p {
        for i in 0..=j {
            let mut acc = 0.0;
            for k in 0..p {
                acc += e.vectors[(i, k)] * w[k] * e.vectors[(j, k)];
            }
            out[(i, j)] = acc;
            out[(j, i)] = acc;
        }
    }
    Ok(out)
}
