//! Estimators for the tensor independent component model: TJADE (both
//! cumulant variants), TFOBI, and vector JADE / FOBI applied to vectorized
//! observations.

mod accum;
mod cumulant;
mod fit;
mod model;
mod sample;
mod standardize;

pub use cumulant::{cumulant_set, fobi_matrix, CumulantMatrixSet, Variant};
pub use fit::{
    estimate_rotation, fit, fobi_fit, jade_fit, jade_fit_with, tfobi_fit, tjade_fit, tjade_fit_with,
    JadeOptions,
};
pub use model::{
    canonicalize, element_kurtosis, face_means, Method, ModeDiagnostics, UnmixingModel,
};
pub use sample::Sample;
pub use standardize::{center, m_mode_covariance, standardize, tau_sq, xi_matrix};
