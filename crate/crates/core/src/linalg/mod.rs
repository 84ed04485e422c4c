//! Symmetric eigen-decomposition, symmetric inverse square roots and the
//! Jacobi joint diagonalizer shared by every estimator.

mod eigen;
mod jointdiag;
mod qr;

pub use eigen::{inv_sqrt_sym, sym_eigen, SymEigen, SINGULAR_RATIO};
pub use jointdiag::{
    joint_diagonalize, off_diag_mass, JointDiagResult, DEFAULT_MAX_SWEEPS, DEFAULT_TOL,
};
pub use qr::qr;
