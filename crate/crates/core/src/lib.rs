//! Blind source separation for tensor-valued observations.
//!
//! Observations `X = μ + Z ⊙_1 Ω_1 ⋯ ⊙_r Ω_r` with independent standardized
//! entries in `Z` are unmixed one mode at a time: each mode is whitened by
//! its m-mode covariance and then rotated by jointly diagonalizing a family
//! of m-mode fourth-cumulant matrices (TJADE), or by the eigenvectors of a
//! single fourth-moment matrix (TFOBI).
//!
//! ```
//! use tjade::{tjade_fit, Sample, Variant};
//! # use rand::SeedableRng;
//! # let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
//! let z = tjade::simlab::SettingSpec::matrix_study().draw(2000, &mut rng).unwrap();
//! let model = tjade_fit(&z, Variant::One).unwrap();
//! assert_eq!(model.phis.len(), 2);
//! ```

pub mod cli;
pub mod error;
pub mod ica;
pub mod linalg;
pub mod matrix;
pub mod metrics;
pub mod simlab;
pub mod tensor;

pub use error::{Error, Result};
pub use ica::{
    fit, fobi_fit, jade_fit, tfobi_fit, tjade_fit, tjade_fit_with, JadeOptions, Method, Sample,
    UnmixingModel, Variant,
};
pub use matrix::Matrix;
pub use metrics::{mdi, transformed_mdi, GainMatrix};
pub use tensor::Tensor;
