//! Limiting variances of the TJADE unmixing estimate under identity mixing,
//! computed from the analytic moments of a setting's cells.
//!
//! For one mode, write `p₂` for the number of cells in a face, `κ̄_k`, `β̄_k`
//! and `ω̄_k` for the face means of `E z⁴ − 3`, `E z⁴` and `Var z³`, and
//! `ρ_kk′` for the face covariance of the fourth moments. Then
//!
//! ```text
//! ASV(φ_kk)  = (β̄_k − 1) / (4 p₂)
//! ASV(φ_kk′) = [ζ_k + ζ_k′ + κ̄_k′⁴ − 2 κ̄_k κ̄_k′ ρ_kk′] / [p₂ (κ̄_k² + κ̄_k′²)²]
//! ζ_k        = κ̄_k² (ω̄_k − β̄_k²) + κ̄_k² (κ̄_k − 2)(p₂ − 1)
//! ```

use serde::Serialize;

use super::distributions::Moments;
use super::settings::SettingSpec;
use crate::error::{Error, Result};
use crate::tensor::rho;

/// Face-level moment summaries of one mode.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModeProfile {
    /// Cells per face (`p₂` for the first mode of a matrix).
    pub width: usize,
    pub kappa: Vec<f64>,
    pub beta: Vec<f64>,
    pub omega: Vec<f64>,
    /// Face covariance of the fourth moments, `p × p`, row-major.
    pub rho_cov: Vec<Vec<f64>>,
}

impl ModeProfile {
    pub fn p(&self) -> usize {
        self.kappa.len()
    }

    /// Builds the profile from per-face cell moments; `faces[k][l]` is the
    /// `l`-th cell of face `k`, with `l` the same position across faces.
    pub fn from_faces(faces: &[Vec<Moments>]) -> Result<Self> {
        let width = faces.first().map_or(0, |f| f.len());
        if width == 0 || faces.iter().any(|f| f.len() != width) {
            return Err(Error::shape("faces must be non-empty and of equal width"));
        }
        let w = width as f64;
        let mean = |f: &Vec<Moments>, g: &dyn Fn(&Moments) -> f64| f.iter().map(g).sum::<f64>() / w;
        let beta: Vec<f64> = faces.iter().map(|f| mean(f, &|m| m.m4)).collect();
        let kappa: Vec<f64> = faces.iter().map(|f| mean(f, &|m| m.m4 - 3.0)).collect();
        let omega: Vec<f64> = faces.iter().map(|f| mean(f, &|m| m.var_cube())).collect();
        let p = faces.len();
        let rho_cov = (0..p)
            .map(|k| {
                (0..p)
                    .map(|kk| {
                        let cross: f64 =
                            faces[k].iter().zip(&faces[kk]).map(|(a, b)| a.m4 * b.m4).sum::<f64>() / w;
                        cross - beta[k] * beta[kk]
                    })
                    .collect()
            })
            .collect();
        Ok(Self { width, kappa, beta, omega, rho_cov })
    }

    fn zeta(&self, k: usize) -> f64 {
        let kap = self.kappa[k];
        let p2 = self.width as f64;
        kap * kap * (self.omega[k] - self.beta[k] * self.beta[k]) + kap * kap * (kap - 2.0) * (p2 - 1.0)
    }
}

/// Profiles of every mode of a setting.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticProfile {
    pub dims: Vec<usize>,
    pub modes: Vec<ModeProfile>,
}

impl AsymptoticProfile {
    /// Mode `m` (1-based).
    pub fn mode(&self, m: usize) -> &ModeProfile {
        &self.modes[m - 1]
    }
}

/// Exact face summaries from the catalog moments of every cell.
pub fn asv_profile(setting: &SettingSpec) -> Result<AsymptoticProfile> {
    let moments: Vec<Moments> = setting.cells.iter().map(|d| d.moments()).collect::<Result<_>>()?;
    let dims = &setting.dims;
    let mut modes = Vec::with_capacity(dims.len());
    for (m0, &p) in dims.iter().enumerate() {
        let inner: usize = dims[..m0].iter().product();
        let width = rho(dims, m0);
        let mut faces = vec![Vec::with_capacity(width); p];
        // Cells of face k in increasing linear order: the position within a
        // face then lines up across faces.
        for (idx, m) in moments.iter().enumerate() {
            faces[(idx / inner) % p].push(*m);
        }
        modes.push(ModeProfile::from_faces(&faces)?);
    }
    Ok(AsymptoticProfile { dims: dims.clone(), modes })
}

/// Limiting variance of `√n (φ̂_kk − 1)` for mode `m` (1-based), row `k` (0-based).
pub fn asv_diag(profile: &AsymptoticProfile, m: usize, k: usize) -> f64 {
    let mp = profile.mode(m);
    (mp.beta[k] - 1.0) / (4.0 * mp.width as f64)
}

/// Limiting variance of `√n φ̂_kk′` for mode `m` (1-based), `k ≠ k′` (0-based).
pub fn asv_offdiag(profile: &AsymptoticProfile, m: usize, k: usize, kk: usize) -> Result<f64> {
    if k == kk {
        return Err(Error::Argument("off-diagonal variance needs k != k'".into()));
    }
    let mp = profile.mode(m);
    let (a, b) = (mp.kappa[k], mp.kappa[kk]);
    let denom = a * a + b * b;
    if denom == 0.0 {
        return Err(Error::UndefinedVariance { mode: m, k, l: kk });
    }
    let num = mp.zeta(k) + mp.zeta(kk) + b.powi(4) - 2.0 * a * b * mp.rho_cov[k][kk];
    Ok(num / (mp.width as f64 * denom * denom))
}

/// Vector JADE limiting variances from element moments, written out
/// independently of the face formulas above.
pub mod vector {
    use super::Moments;

    pub fn asv_diag(z: &Moments) -> f64 {
        (z.m4 - 1.0) / 4.0
    }

    /// `None` when both kurtoses vanish.
    pub fn asv_offdiag(zk: &Moments, zl: &Moments) -> Option<f64> {
        let (kk, kl) = (zk.m4 - 3.0, zl.m4 - 3.0);
        let d = kk * kk + kl * kl;
        if d == 0.0 {
            return None;
        }
        let var_k = zk.m6 - zk.m3 * zk.m3 - zk.m4 * zk.m4;
        let var_l = zl.m6 - zl.m3 * zl.m3 - zl.m4 * zl.m4;
        Some((kk * kk * var_k + kl * kl * var_l + kl.powi(4)) / (d * d))
    }
}

/// One line of an asymptotic-variance table; `value` is `None` for pairs
/// whose variance is undefined.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsvRow {
    pub mode: usize,
    pub k: usize,
    pub l: usize,
    pub value: Option<f64>,
}

/// Every `ASV(φ_kl)` of every mode, rows in (mode, k, l) order.
pub fn asv_table(profile: &AsymptoticProfile) -> Vec<AsvRow> {
    let mut rows = Vec::new();
    for m in 1..=profile.modes.len() {
        let p = profile.mode(m).p();
        for k in 0..p {
            for l in 0..p {
                let value = if k == l {
                    Some(asv_diag(profile, m, k))
                } else {
                    asv_offdiag(profile, m, k, l).ok()
                };
                rows.push(AsvRow { mode: m, k, l, value });
            }
        }
    }
    rows
}
