//! Orthogonal joint approximate diagonalization by cyclic Jacobi sweeps.
//!
//! Each Givens angle solves the two-index subproblem in closed form: the
//! angle comes from the dominant eigenvector of the 2×2 Gram matrix of the
//! vectors `(C_ii − C_jj, C_ij + C_ji)` accumulated over the whole family.

use crate::error::{Error, Result};
use crate::matrix::Matrix;

pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_MAX_SWEEPS: usize = 100;

#[derive(Clone, Debug)]
pub struct JointDiagResult {
    /// Orthogonal `W` such that every `W C_k Wᵀ` is as diagonal as possible.
    pub rotation: Matrix,
    pub sweeps: usize,
    pub final_off: f64,
    pub converged: bool,
    /// `Σ_k ‖diag(W C_k Wᵀ)‖²` before the first sweep and after every sweep.
    pub objective: Vec<f64>,
}

/// Jointly diagonalizes a family of symmetric matrices.
///
/// Inputs are symmetrized as `(C + Cᵀ)/2`. Convergence means a full sweep in
/// which every rotation had `|sin θ| < tol` (such rotations are skipped).
pub fn joint_diagonalize(mats: &[Matrix], tol: f64, max_sweeps: usize) -> Result<JointDiagResult> {
    let first = mats
        .first()
        .ok_or_else(|| Error::Argument("joint diagonalization of an empty family".into()))?;
    let p = first.rows();
    if p == 0 {
        return Err(Error::Argument("joint diagonalization of 0x0 matrices".into()));
    }
    for m in mats {
        if m.rows() != p || m.cols() != p {
            return Err(Error::shape(format!(
                "joint diagonalization family mixes {p}x{p} with {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        if !m.is_finite() {
            return Err(Error::NonFinite("joint_diagonalize"));
        }
    }

    let mut work: Vec<Matrix> = mats.iter().map(Matrix::symmetrized).collect();
    let mut v = Matrix::identity(p);
    let mut objective = vec![diag_mass(&work)];

    if p == 1 {
        let final_off = off_mass(&work);
        return Ok(JointDiagResult { rotation: v, sweeps: 0, final_off, converged: true, objective });
    }

    let mut converged = false;
    let mut sweeps = 0;
    while sweeps < max_sweeps {
        sweeps += 1;
        let mut rotated = false;
        for i in 0..p - 1 {
            for j in i + 1..p {
                let (mut g11, mut g22, mut g12) = (0.0, 0.0, 0.0);
                for c in &work {
                    let h1 = c[(i, i)] - c[(j, j)];
                    let h2 = c[(i, j)] + c[(j, i)];
                    g11 += h1 * h1;
                    g22 += h2 * h2;
                    g12 += h1 * h2;
                }
                let ton = g11 - g22;
                let toff = 2.0 * g12;
                let theta = 0.5 * toff.atan2(ton + (ton * ton + toff * toff).sqrt());
                let (s, c) = theta.sin_cos();
                if s.abs() < tol {
                    continue;
                }
                rotated = true;
                for m in work.iter_mut() {
                    givens(m, i, j, c, s);
                }
                for k in 0..p {
                    let (vi, vj) = (v[(k, i)], v[(k, j)]);
                    v[(k, i)] = c * vi + s * vj;
                    v[(k, j)] = -s * vi + c * vj;
                }
            }
        }
        objective.push(diag_mass(&work));
        if !rotated {
            converged = true;
            break;
        }
    }

    Ok(JointDiagResult {
        rotation: v.transpose(),
        sweeps,
        final_off: off_mass(&work),
        converged,
        objective,
    })
}

/// `A ← GᵀAG` with `G = [[c, −s], [s, c]]` acting on indices `(i, j)`.
fn givens(m: &mut Matrix, i: usize, j: usize, c: f64, s: f64) {
    let p = m.rows();
    for k in 0..p {
        let (a, b) = (m[(i, k)], m[(j, k)]);
        m[(i, k)] = c * a + s * b;
        m[(j, k)] = -s * a + c * b;
    }
    for k in 0..p {
        let (a, b) = (m[(k, i)], m[(k, j)]);
        m[(k, i)] = c * a + s * b;
        m[(k, j)] = -s * a + c * b;
    }
}

fn diag_mass(mats: &[Matrix]) -> f64 {
    mats.iter()
        .map(|m| (0..m.rows()).map(|i| m[(i, i)] * m[(i, i)]).sum::<f64>())
        .sum()
}

fn off_mass(mats: &[Matrix]) -> f64 {
    mats.iter()
        .map(|m| {
            let p = m.rows();
            let mut acc = 0.0;
            for j in 0..p {
                for i in 0..p {
                    if i != j {
                        acc += m[(i, j)] * m[(i, j)];
                    }
                }
            }
            acc
        })
        .sum()
}

/// `Σ_k ‖W C_k Wᵀ‖_F² − Σ_k ‖diag(W C_k Wᵀ)‖²`.
pub fn off_diag_mass(mats: &[Matrix], w: &Matrix) -> Result<f64> {
    let wt = w.transpose();
    let mut total = 0.0;
    for c in mats {
        let t = w.matmul(c)?.matmul(&wt)?;
        total += off_mass(std::slice::from_ref(&t));
    }
    Ok(total)
}
