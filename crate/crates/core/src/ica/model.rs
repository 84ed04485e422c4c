use serde::{Deserialize, Serialize};

use super::cumulant::Variant;
use super::sample::Sample;
use crate::error::{Error, Result};
use crate::matrix::{kron_reversed, Matrix};
use crate::tensor::{linear_index, Tensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Tjade,
    Tfobi,
    Vjade,
    Vfobi,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Tjade, Method::Tfobi, Method::Vjade, Method::Vfobi];

    pub fn name(self) -> &'static str {
        match self {
            Method::Tjade => "tjade",
            Method::Tfobi => "tfobi",
            Method::Vjade => "vjade",
            Method::Vfobi => "vfobi",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unknown { kind: "method", name: s.to_string() })
    }

    /// Whether the method works on vectorized observations.
    pub fn is_vector(self) -> bool {
        matches!(self, Method::Vjade | Method::Vfobi)
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-mode fit diagnostics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModeDiagnostics {
    /// Joint diagonalization converged (always true for eigen-based rotations).
    pub converged: bool,
    pub sweeps: usize,
    /// Residual off-diagonal mass after rotation (0 for eigen-based rotations).
    pub final_off: f64,
    /// FOBI only: two eigenvalues of `B̂_m` are within sampling noise of each other.
    pub degenerate: bool,
}

/// Output of a fit: per-mode unmixing matrices plus location and summaries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnmixingModel {
    pub method: Method,
    /// Cumulant variant for the JADE methods.
    pub variant: Option<Variant>,
    pub dims: Vec<usize>,
    /// `Φ̂_m`, one per mode.
    pub phis: Vec<Matrix>,
    pub location: Tensor,
    /// `trace(Ξ̂_m)/p_m` per mode.
    pub tau_sq: Vec<f64>,
    /// Per mode, mean excess kurtosis of each m-mode face of the recovered
    /// components, aligned with the rows of `phis[m]`.
    pub face_kurtosis: Vec<Vec<f64>>,
    pub diagnostics: Vec<ModeDiagnostics>,
}

impl UnmixingModel {
    pub fn order(&self) -> usize {
        self.dims.len()
    }

    /// All modes converged.
    pub fn converged(&self) -> bool {
        self.diagnostics.iter().all(|d| d.converged)
    }

    pub fn degenerate(&self) -> bool {
        self.diagnostics.iter().any(|d| d.degenerate)
    }

    /// `Φ̂_r ⊗ … ⊗ Φ̂_1`, the unmixing matrix acting on vectorized observations.
    pub fn kron_unmixing(&self) -> Matrix {
        kron_reversed(&self.phis)
    }

    /// `(X − μ̂) ⊙_1 Φ̂_1 ⋯ ⊙_r Φ̂_r`.
    pub fn transform(&self, x: &Tensor) -> Result<Tensor> {
        if x.dims() != self.dims.as_slice() {
            return Err(Error::shape(format!(
                "model expects {:?}, got {:?}",
                self.dims,
                x.dims()
            )));
        }
        let centered: Vec<f64> =
            x.vectorize().iter().zip(self.location.vectorize()).map(|(a, b)| a - b).collect();
        Tensor::new(self.dims.clone(), centered)?.multi_mode_product(&self.phis)
    }

    pub fn transform_sample(&self, sample: &Sample) -> Result<Sample> {
        if sample.dims() != self.dims.as_slice() {
            return Err(Error::shape(format!(
                "model expects {:?}, got {:?}",
                self.dims,
                sample.dims()
            )));
        }
        let mu = self.location.vectorize();
        let mut data = sample.as_slice().to_vec();
        for obs in data.chunks_exact_mut(mu.len()) {
            for (x, m) in obs.iter_mut().zip(mu) {
                *x -= m;
            }
        }
        sample.with_data(data).multi_mode_product(&self.phis)
    }

    /// Inverse of [`UnmixingModel::transform`]: `Y ⊙_1 Φ̂_1^{-1} ⋯ + μ̂`.
    pub fn inverse_transform(&self, y: &Tensor) -> Result<Tensor> {
        let inv: Vec<Matrix> = self.phis.iter().map(Matrix::inverse).collect::<Result<_>>()?;
        let mut x = y.multi_mode_product(&inv)?;
        for (v, m) in x.as_mut_slice().iter_mut().zip(self.location.vectorize()) {
            *v += m;
        }
        Ok(x)
    }

    /// Row indices of `Φ̂_m` (1-based `m`) sorted by ascending face kurtosis.
    pub fn rows_by_ascending_kurtosis(&self, m: usize) -> Vec<usize> {
        let fk = &self.face_kurtosis[m - 1];
        let mut idx: Vec<usize> = (0..fk.len()).collect();
        idx.sort_by(|&a, &b| fk[a].total_cmp(&fk[b]).then(a.cmp(&b)));
        idx
    }
}

/// Excess kurtosis `m4/m2² − 3` of every element across the sample.
pub fn element_kurtosis(sample: &Sample) -> Tensor {
    let len = sample.len();
    let n = sample.n() as f64;
    let mut mean = vec![0.0; len];
    for obs in sample.observations() {
        for (m, x) in mean.iter_mut().zip(obs) {
            *m += x;
        }
    }
    mean.iter_mut().for_each(|m| *m /= n);
    let mut m2 = vec![0.0; len];
    let mut m4 = vec![0.0; len];
    for obs in sample.observations() {
        for k in 0..len {
            let d = obs[k] - mean[k];
            let d2 = d * d;
            m2[k] += d2;
            m4[k] += d2 * d2;
        }
    }
    let kurt = m2
        .iter()
        .zip(&m4)
        .map(|(&a, &b)| {
            let (a, b) = (a / n, b / n);
            if a > 0.0 {
                b / (a * a) - 3.0
            } else {
                0.0
            }
        })
        .collect();
    Tensor::new(sample.dims().to_vec(), kurt).expect("dims already validated")
}

/// Mean of the elements of each m-mode face, for every mode.
pub fn face_means(t: &Tensor) -> Vec<Vec<f64>> {
    let dims = t.dims();
    let r = dims.len();
    let mut sums: Vec<Vec<f64>> = dims.iter().map(|&p| vec![0.0; p]).collect();
    let mut idx = vec![0usize; r];
    for k in 0..t.len() {
        let mut rem = k;
        for (i, &p) in idx.iter_mut().zip(dims) {
            *i = rem % p;
            rem /= p;
        }
        debug_assert_eq!(linear_index(dims, &idx), k);
        let v = t.vectorize()[k];
        for m0 in 0..r {
            sums[m0][idx[m0]] += v;
        }
    }
    for (m0, s) in sums.iter_mut().enumerate() {
        let rho = t.rho(m0 + 1) as f64;
        s.iter_mut().for_each(|v| *v /= rho);
    }
    sums
}

/// Orders and signs the rows of every `Φ̂_m`: descending absolute face
/// kurtosis (ties by original row), then each row's largest-magnitude entry
/// made positive. `sample` is the data the model was fitted on.
pub fn canonicalize(model: &UnmixingModel, sample: &Sample) -> Result<UnmixingModel> {
    let y = model.transform_sample(sample)?;
    let faces = face_means(&element_kurtosis(&y));
    let mut out = model.clone();
    for (m0, fk) in faces.into_iter().enumerate() {
        let mut order: Vec<usize> = (0..fk.len()).collect();
        order.sort_by(|&a, &b| fk[b].abs().total_cmp(&fk[a].abs()).then(a.cmp(&b)));
        let mut phi = model.phis[m0].select_rows(&order);
        for i in 0..phi.rows() {
            let row = phi.row(i);
            let pivot = row
                .iter()
                .enumerate()
                .fold((0, 0.0f64), |best, (j, &x)| if x.abs() > best.1.abs() { (j, x) } else { best })
                .0;
            if row[pivot] < 0.0 {
                for j in 0..phi.cols() {
                    phi[(i, j)] = -phi[(i, j)];
                }
            }
        }
        out.phis[m0] = phi;
        out.face_kurtosis[m0] = order.iter().map(|&k| fk[k]).collect();
    }
    Ok(out)
}
