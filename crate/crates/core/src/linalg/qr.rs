use crate::matrix::Matrix;

/// Householder QR of a square matrix, returning `(Q, R)` with `A = QR`.
pub fn qr(a: &Matrix) -> (Matrix, Matrix) {
    assert!(a.is_square(), "qr expects a square matrix");
    let p = a.rows();
    let mut r = a.clone();
    let mut q = Matrix::identity(p);
    for k in 0..p.saturating_sub(1) {
        let norm: f64 = (k..p).map(|i| r[(i, k)] * r[(i, k)]).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if r[(k, k)] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (k..p).map(|i| r[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm_sq: f64 = v.iter().map(|x| x * x).sum();
        if vnorm_sq == 0.0 {
            continue;
        }
        // R ← (I − 2vvᵀ/vᵀv) R
        for j in 0..p {
            let dot: f64 = (k..p).map(|i| v[i - k] * r[(i, j)]).sum();
            let f = 2.0 * dot / vnorm_sq;
            for i in k..p {
                r[(i, j)] -= f * v[i - k];
            }
        }
        // Q ← Q (I − 2vvᵀ/vᵀv)
        for i in 0..p {
            let dot: f64 = (k..p).map(|l| q[(i, l)] * v[l - k]).sum();
            let f = 2.0 * dot / vnorm_sq;
            for l in k..p {
                q[(i, l)] -= f * v[l - k];
            }
        }
    }
    for j in 0..p {
        for i in j + 1..p {
            r[(i, j)] = 0.0;
        }
    }
    (q, r)
}
