//! TJADE, TFOBI and their vectorized baselines.

use super::cumulant::{CumulantMatrixSet, ModeMoments, Variant};
use super::model::{canonicalize, Method, ModeDiagnostics, UnmixingModel};
use super::sample::Sample;
use super::standardize::{center, standardize, tau_sq};
use crate::error::{Error, Result};
use crate::linalg::{joint_diagonalize, sym_eigen, DEFAULT_MAX_SWEEPS, DEFAULT_TOL};
use crate::matrix::Matrix;
use crate::tensor::{rho, self_contract_into};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JadeOptions {
    pub variant: Variant,
    /// Jacobi stopping threshold on `|sin θ|`.
    pub tol: f64,
    pub max_sweeps: usize,
}

impl Default for JadeOptions {
    fn default() -> Self {
        Self { variant: Variant::One, tol: DEFAULT_TOL, max_sweeps: DEFAULT_MAX_SWEEPS }
    }
}

impl JadeOptions {
    pub fn with_variant(variant: Variant) -> Self {
        Self { variant, ..Self::default() }
    }
}

/// Rotation `Û_mᵀ` by joint diagonalization of a cumulant set. Row order is
/// whatever the solver produced; [`canonicalize`] fixes it.
pub fn estimate_rotation(set: &CumulantMatrixSet, opts: &JadeOptions) -> Result<(Matrix, ModeDiagnostics)> {
    let res = joint_diagonalize(&set.diagonalization_family(), opts.tol, opts.max_sweeps)?;
    let diag = ModeDiagnostics {
        converged: res.converged,
        sweeps: res.sweeps,
        final_off: res.final_off,
        degenerate: false,
    };
    Ok((res.rotation, diag))
}

struct Whitened {
    location: crate::tensor::Tensor,
    roots: Vec<Matrix>,
    data: Sample,
}

fn whiten(sample: &Sample) -> Result<Whitened> {
    let max_p = sample.dims().iter().copied().max().unwrap_or(1);
    if sample.n() <= max_p {
        return Err(Error::Argument(format!(
            "need more observations ({}) than the largest mode size ({max_p})",
            sample.n()
        )));
    }
    let (centered, location) = center(sample);
    let (data, roots) = standardize(&centered)?;
    Ok(Whitened { location, roots, data })
}

fn assemble(
    sample: &Sample,
    method: Method,
    variant: Option<Variant>,
    w: Whitened,
    rotations: Vec<(Matrix, ModeDiagnostics, f64)>,
) -> Result<UnmixingModel> {
    let mut phis = Vec::with_capacity(rotations.len());
    let mut diagnostics = Vec::with_capacity(rotations.len());
    let mut taus = Vec::with_capacity(rotations.len());
    for ((u, d, tau), root) in rotations.into_iter().zip(&w.roots) {
        phis.push(u.matmul(root)?);
        diagnostics.push(d);
        taus.push(tau);
    }
    let model = UnmixingModel {
        method,
        variant,
        dims: sample.dims().to_vec(),
        face_kurtosis: sample.dims().iter().map(|&p| vec![0.0; p]).collect(),
        phis,
        location: w.location,
        tau_sq: taus,
        diagnostics,
    };
    canonicalize(&model, sample)
}

/// TJADE with the default options and the given cumulant variant.
pub fn tjade_fit(sample: &Sample, variant: Variant) -> Result<UnmixingModel> {
    tjade_fit_with(sample, &JadeOptions::with_variant(variant))
}

/// TJADE: center, whiten every mode, jointly diagonalize each mode's
/// cumulant matrices, and combine `Φ̂_m = Û_mᵀ Σ̂_m^{-1/2}`.
pub fn tjade_fit_with(sample: &Sample, opts: &JadeOptions) -> Result<UnmixingModel> {
    jade_like(sample, opts, Method::Tjade)
}

fn jade_like(sample: &Sample, opts: &JadeOptions, method: Method) -> Result<UnmixingModel> {
    let w = whiten(sample)?;
    let mut rotations = Vec::with_capacity(sample.order());
    for m0 in 0..sample.order() {
        let mm = ModeMoments::compute(&w.data, m0);
        let tau = tau_sq(&mm.xi);
        if mm.p == 1 {
            rotations.push((Matrix::identity(1), trivial_diag(), tau));
            continue;
        }
        let set = CumulantMatrixSet::from_moments(&mm, m0 + 1, opts.variant);
        let (u, d) = estimate_rotation(&set, opts)?;
        rotations.push((u, d, tau));
    }
    assemble(sample, method, Some(opts.variant), w, rotations)
}

fn trivial_diag() -> ModeDiagnostics {
    ModeDiagnostics { converged: true, sweeps: 0, final_off: 0.0, degenerate: false }
}

/// TFOBI: rotations from the eigenvectors of the m-mode fourth-moment
/// matrices (descending eigenvalues).
pub fn tfobi_fit(sample: &Sample) -> Result<UnmixingModel> {
    fobi_like(sample, Method::Tfobi)
}

fn fobi_like(sample: &Sample, method: Method) -> Result<UnmixingModel> {
    let w = whiten(sample)?;
    let mut rotations = Vec::with_capacity(sample.order());
    for m0 in 0..sample.order() {
        let mm = ModeMoments::compute(&w.data, m0);
        let tau = tau_sq(&mm.xi);
        if mm.p == 1 {
            rotations.push((Matrix::identity(1), trivial_diag(), tau));
            continue;
        }
        let b = mm.fobi_matrix();
        let e = sym_eigen(&b)?;
        let degenerate = eigen_gaps_within_noise(&w.data, m0, &e.values, &e.vectors);
        let diag = ModeDiagnostics { degenerate, ..trivial_diag() };
        rotations.push((e.vectors.transpose(), diag, tau));
    }
    assemble(sample, method, None, w, rotations)
}

/// Flags adjacent eigenvalues of `B̂_m` whose gap is below twice the
/// combined standard error of the two eigenvalue estimates. The standard
/// error of `λ_k` uses the per-observation values `‖S_a v_k‖²/ρ_m`.
fn eigen_gaps_within_noise(std: &Sample, m0: usize, values: &[f64], vectors: &Matrix) -> bool {
    let dims = std.dims();
    let p = dims[m0];
    let rho = rho(dims, m0) as f64;
    let n = std.n() as f64;
    let mut s = vec![0.0; p * p];
    let mut sum = vec![0.0; p];
    let mut sum_sq = vec![0.0; p];
    for obs in std.observations() {
        self_contract_into(dims, obs, m0, &mut s);
        for k in 0..p {
            let v = vectors.col(k);
            let mut norm_sq = 0.0;
            for i in 0..p {
                let sv: f64 = (0..p).map(|j| s[i + j * p] * v[j]).sum();
                norm_sq += sv * sv;
            }
            let t = norm_sq / rho;
            sum[k] += t;
            sum_sq[k] += t * t;
        }
    }
    let se_sq: Vec<f64> = (0..p)
        .map(|k| {
            let mean = sum[k] / n;
            ((sum_sq[k] / n - mean * mean).max(0.0)) / n
        })
        .collect();
    (0..p - 1).any(|k| (values[k] - values[k + 1]).abs() < 2.0 * (se_sq[k] + se_sq[k + 1]).sqrt())
}

/// Vector JADE (variant one) on vectorized observations.
pub fn jade_fit(sample: &Sample) -> Result<UnmixingModel> {
    jade_fit_with(sample, &JadeOptions::default())
}

pub fn jade_fit_with(sample: &Sample, opts: &JadeOptions) -> Result<UnmixingModel> {
    jade_like(&as_vectors(sample), opts, Method::Vjade)
}

/// Vector FOBI on vectorized observations.
pub fn fobi_fit(sample: &Sample) -> Result<UnmixingModel> {
    fobi_like(&as_vectors(sample), Method::Vfobi)
}

fn as_vectors(sample: &Sample) -> Sample {
    if sample.order() == 1 {
        sample.clone()
    } else {
        sample.vectorized()
    }
}

/// Dispatches on the method tag.
pub fn fit(sample: &Sample, method: Method, opts: &JadeOptions) -> Result<UnmixingModel> {
    match method {
        Method::Tjade => tjade_fit_with(sample, opts),
        Method::Tfobi => tfobi_fit(sample),
        Method::Vjade => jade_fit_with(sample, opts),
        Method::Vfobi => fobi_fit(sample),
    }
}
