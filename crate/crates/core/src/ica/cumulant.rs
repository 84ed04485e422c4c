//! m-mode fourth-cumulant matrices.
//!
//! Every quantity here is a linear function of the second moments of the
//! entries of `S_a = X_a ⊙_{-m} X_a`. Only the unique entries `s_u`
//! (`u` = unordered index pair) are kept and `E[s_u s_v]` is accumulated once
//! per mode; both cumulant variants and the FOBI matrix are read off it.

use serde::{Deserialize, Serialize};

use super::accum::CompensatedSum;
use super::sample::Sample;
use super::standardize::mode_second_moment;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::tensor::{rho, self_contract_into};

/// Which m-mode generalization of the JADE cumulant matrices to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// `e_iᵀ S e_j · S` form; only `i ≤ j` is needed.
    #[default]
    #[serde(rename = "1")]
    One,
    /// `S E^{ij} S` form; all `p_m²` matrices.
    #[serde(rename = "2")]
    Two,
}

impl Variant {
    pub fn from_index(c: u8) -> Result<Self> {
        match c {
            1 => Ok(Variant::One),
            2 => Ok(Variant::Two),
            _ => Err(Error::Argument(format!("cumulant variant must be 1 or 2, got {c}"))),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Variant::One => 1,
            Variant::Two => 2,
        }
    }
}

#[inline]
fn pair(a: usize, b: usize) -> usize {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    hi * (hi + 1) / 2 + lo
}

/// Second moments of the entries of `S_a` for one mode of a standardized sample.
pub(crate) struct ModeMoments {
    pub p: usize,
    pub rho: usize,
    /// Packed upper triangle of `(1/(n ρ)) Σ_a s_u s_v`, `u ≤ v`.
    m: Vec<f64>,
    pub xi: Matrix,
}

impl ModeMoments {
    pub(crate) fn compute(standardized: &Sample, m0: usize) -> Self {
        let dims = standardized.dims();
        let p = dims[m0];
        let q = p * (p + 1) / 2;
        let mut s = vec![0.0; p * p];
        let mut su = vec![0.0; q];
        let mut acc = CompensatedSum::new(q * (q + 1) / 2);
        for obs in standardized.observations() {
            self_contract_into(dims, obs, m0, &mut s);
            for b in 0..p {
                for a in 0..=b {
                    su[pair(a, b)] = s[a + b * p];
                }
            }
            let chunk = acc.chunk_mut();
            let mut k = 0;
            for v in 0..q {
                let sv = su[v];
                for &uu in &su[..=v] {
                    chunk[k] += uu * sv;
                    k += 1;
                }
            }
            acc.end_observation();
        }
        let rho = rho(dims, m0);
        let denom = (standardized.n() * rho) as f64;
        let m = acc.finish().into_iter().map(|v| v / denom).collect();
        let xi = mode_second_moment(standardized, m0);
        Self { p, rho, m, xi }
    }

    /// `(1/(n ρ)) Σ_a (S_a)_{ab} (S_a)_{cd}`.
    #[inline]
    pub(crate) fn get(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        let (u, v) = (pair(a, b), pair(c, d));
        let (lo, hi) = if u <= v { (u, v) } else { (v, u) };
        self.m[hi * (hi + 1) / 2 + lo]
    }

    /// `B̂_m = (1/(n ρ)) Σ_a S_a S_a`.
    pub(crate) fn fobi_matrix(&self) -> Matrix {
        let p = self.p;
        let mut b = Matrix::zeros(p, p);
        for l in 0..p {
            for k in 0..=l {
                let v: f64 = (0..p).map(|j| self.get(k, j, j, l)).sum();
                b[(k, l)] = v;
                b[(l, k)] = v;
            }
        }
        b
    }

    pub(crate) fn cumulant_matrix(&self, variant: Variant, i: usize, j: usize) -> Matrix {
        let p = self.p;
        let rho = self.rho as f64;
        let xi = &self.xi;
        let delta = if i == j { 1.0 } else { 0.0 };
        let xixi = if i == j { Some(xi.matmul(xi).expect("square")) } else { None };
        let xixi_kl = |k: usize, l: usize| xixi.as_ref().map_or(0.0, |x| x[(k, l)]);
        match variant {
            Variant::One => Matrix::from_fn(p, p, |k, l| {
                self.get(i, j, k, l)
                    - delta * rho * xixi_kl(k, l)
                    - xi[(k, i)] * xi[(l, j)]
                    - xi[(k, j)] * xi[(l, i)]
            }),
            Variant::Two => Matrix::from_fn(p, p, |k, l| {
                self.get(k, i, j, l)
                    - delta * xixi_kl(k, l)
                    - rho * xi[(k, i)] * xi[(l, j)]
                    - xi[(k, j)] * xi[(l, i)]
            }),
        }
    }
}

/// The cumulant matrices `Ĉ^{ij}_{c,m}` of one mode.
#[derive(Clone, Debug)]
pub struct CumulantMatrixSet {
    /// 1-based.
    pub mode: usize,
    pub variant: Variant,
    pub p: usize,
    /// `(i, j)` (0-based) of each stored matrix; `i ≤ j` only for variant one.
    pub index: Vec<(usize, usize)>,
    pub matrices: Vec<Matrix>,
}

impl CumulantMatrixSet {
    pub(crate) fn from_moments(mm: &ModeMoments, mode: usize, variant: Variant) -> Self {
        let p = mm.p;
        let index: Vec<(usize, usize)> = match variant {
            Variant::One => (0..p).flat_map(|j| (0..=j).map(move |i| (i, j))).collect(),
            Variant::Two => (0..p).flat_map(|i| (0..p).map(move |j| (i, j))).collect(),
        };
        let matrices = index.iter().map(|&(i, j)| mm.cumulant_matrix(variant, i, j)).collect();
        Self { mode, variant, p, index, matrices }
    }

    /// `Ĉ^{ij}` with 0-based indices (for variant one `Ĉ^{ji} = Ĉ^{ij}`).
    pub fn get(&self, i: usize, j: usize) -> &Matrix {
        let key = match self.variant {
            Variant::One if i > j => (j, i),
            _ => (i, j),
        };
        let pos = self.index.iter().position(|&k| k == key).expect("index in range");
        &self.matrices[pos]
    }

    /// Symmetrized family whose summed squared diagonals equal the sum over
    /// all `p²` index pairs: for variant one each off-diagonal `(i, j)`
    /// matrix stands for both `(i, j)` and `(j, i)` and is scaled by `√2`.
    pub fn diagonalization_family(&self) -> Vec<Matrix> {
        self.index
            .iter()
            .zip(&self.matrices)
            .map(|(&(i, j), c)| {
                let c = c.symmetrized();
                if self.variant == Variant::One && i != j {
                    c.scale(std::f64::consts::SQRT_2)
                } else {
                    c
                }
            })
            .collect()
    }
}

/// Builds `Ĉ^{ij}_{c,m}` from a standardized sample (1-based `m`).
pub fn cumulant_set(standardized: &Sample, m: usize, variant: Variant) -> Result<CumulantMatrixSet> {
    if m == 0 || m > standardized.order() {
        return Err(Error::Argument(format!(
            "mode {m} out of range for order-{} observations",
            standardized.order()
        )));
    }
    let mm = ModeMoments::compute(standardized, m - 1);
    Ok(CumulantMatrixSet::from_moments(&mm, m, variant))
}

/// The m-mode FOBI matrix `B̂_m` of a standardized sample (1-based `m`).
pub fn fobi_matrix(standardized: &Sample, m: usize) -> Result<Matrix> {
    if m == 0 || m > standardized.order() {
        return Err(Error::Argument(format!("mode {m} out of range")));
    }
    Ok(ModeMoments::compute(standardized, m - 1).fobi_matrix())
}
