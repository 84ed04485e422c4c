//! Minimum distance index of an estimated unmixing matrix.
//!
//! For a gain matrix `G = Φ̂Ω` the index is
//! `D(G) = (p−1)^{-1/2} inf_{C} ‖C G − I‖_F` over matrices `C` with exactly
//! one non-zero per row and column. For a fixed permutation the optimal scale
//! of row `i` is `G_{σ(i),i}/‖g_{σ(i)}‖²`, leaving
//! `D² = (p − max_σ Σ_i G²_{σ(i),i}/‖g_{σ(i)}‖²)/(p − 1)`; the maximum is
//! a linear assignment problem.

mod assignment;

pub use assignment::{max_weight_assignment, min_cost_assignment};

use crate::error::{Error, Result};
use crate::ica::UnmixingModel;
use crate::matrix::{kron_reversed, Matrix};

/// `Φ̂·Ω` for a full (vectorized) unmixing estimate and mixing matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct GainMatrix(Matrix);

impl GainMatrix {
    pub fn new(g: Matrix) -> Result<Self> {
        if !g.is_square() {
            return Err(Error::shape(format!("gain matrix must be square, got {}x{}", g.rows(), g.cols())));
        }
        if !g.is_finite() {
            return Err(Error::NonFinite("gain matrix"));
        }
        Ok(Self(g))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }
}

/// `(Φ̂_r ⊗ … ⊗ Φ̂_1)(Ω_r ⊗ … ⊗ Ω_1)`; with one matrix on each side this is `Φ̂Ω`.
pub fn kronecker_gain(phis: &[Matrix], mixers: &[Matrix]) -> Result<GainMatrix> {
    let phi = kron_reversed(phis);
    let omega = kron_reversed(mixers);
    GainMatrix::new(phi.matmul(&omega)?)
}

/// Gain of a fitted model against the per-mode mixing matrices used to
/// produce the data. Works for vector models too (their single `Φ̂` is
/// compared to the Kronecker product of the mixers).
pub fn model_gain(model: &UnmixingModel, mixers: &[Matrix]) -> Result<GainMatrix> {
    kronecker_gain(&model.phis, mixers)
}

/// Minimum distance index in `[0, 1]`.
pub fn mdi(g: &GainMatrix) -> Result<f64> {
    let g = g.matrix();
    let p = g.rows();
    if p < 2 {
        return Err(Error::Argument("minimum distance index needs p >= 2".into()));
    }
    let norms: Vec<f64> = (0..p).map(|k| (0..p).map(|j| g[(k, j)] * g[(k, j)]).sum()).collect();
    if let Some(k) = norms.iter().position(|&nk| nk == 0.0) {
        return Err(Error::ZeroRow(k));
    }
    let weights = Matrix::from_fn(p, p, |k, j| g[(k, j)] * g[(k, j)] / norms[k]);
    let assign = max_weight_assignment(&weights);
    let best: f64 = assign.iter().enumerate().map(|(i, &k)| weights[(k, i)]).sum();
    let d2 = ((p as f64 - best) / (p as f64 - 1.0)).clamp(0.0, 1.0);
    Ok(d2.sqrt())
}

/// `n (p − 1) D²`.
pub fn transformed_mdi(d: f64, n: usize, p: usize) -> f64 {
    n as f64 * (p as f64 - 1.0) * d * d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_separation_is_zero() {
        assert_eq!(mdi(&GainMatrix::new(Matrix::identity(4)).unwrap()).unwrap(), 0.0);
        let g = Matrix::from_rows(&[[0.0, -3.0, 0.0], [0.5, 0.0, 0.0], [0.0, 0.0, 7.0]]);
        assert_eq!(mdi(&GainMatrix::new(g).unwrap()).unwrap(), 0.0);
    }

    #[test]
    fn zero_row_is_an_error() {
        let g = Matrix::from_rows(&[[1.0, 0.0], [0.0, 0.0]]);
        assert!(matches!(mdi(&GainMatrix::new(g).unwrap()), Err(Error::ZeroRow(1))));
        assert!(mdi(&GainMatrix::new(Matrix::identity(1)).unwrap()).is_err());
    }

    #[test]
    fn transform_arithmetic() {
        assert_eq!(transformed_mdi(0.0, 1000, 12), 0.0);
        assert_eq!(transformed_mdi(1.0, 1000, 12), 11000.0);
    }

    #[test]
    fn inverse_mixing_gives_identity_gain() {
        let a = Matrix::from_rows(&[[2.0, 1.0], [0.5, 3.0]]);
        let b = Matrix::from_rows(&[[1.0, -1.0, 0.0], [0.0, 2.0, 1.0], [1.0, 0.0, 1.0]]);
        let phis = vec![a.inverse().unwrap(), b.inverse().unwrap()];
        let g = kronecker_gain(&phis, &[a, b]).unwrap();
        assert!(g.matrix().sub(&Matrix::identity(6)).unwrap().max_abs() < 1e-12);
    }
}
