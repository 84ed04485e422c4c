//! Random mixing matrices for the simulation studies.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::qr;
use crate::matrix::Matrix;

/// Matrices with a larger condition number are redrawn.
pub const MAX_CONDITION: f64 = 1e6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MixingKind {
    Identity,
    /// Haar-distributed orthogonal matrices.
    #[serde(alias = "haar")]
    Orthogonal,
    /// Independent standard normal entries.
    #[serde(alias = "normal")]
    Gaussian,
    /// Independent `Uniform(−1, 1)` entries.
    Uniform,
}

impl MixingKind {
    pub const ALL: [MixingKind; 4] =
        [MixingKind::Identity, MixingKind::Orthogonal, MixingKind::Gaussian, MixingKind::Uniform];

    pub fn name(self) -> &'static str {
        match self {
            MixingKind::Identity => "identity",
            MixingKind::Orthogonal => "orthogonal",
            MixingKind::Gaussian => "gaussian",
            MixingKind::Uniform => "uniform",
        }
    }

    /// One matrix per mode.
    pub fn generate<R: Rng + ?Sized>(self, dims: &[usize], rng: &mut R) -> Vec<Matrix> {
        dims.iter().map(|&p| self.generate_one(p, rng)).collect()
    }

    pub fn generate_one<R: Rng + ?Sized>(self, p: usize, rng: &mut R) -> Matrix {
        match self {
            MixingKind::Identity => Matrix::identity(p),
            MixingKind::Orthogonal => haar_orthogonal(p, rng),
            MixingKind::Gaussian => {
                well_conditioned(p, rng, |r| r.sample::<f64, _>(StandardNormal))
            }
            MixingKind::Uniform => well_conditioned(p, rng, |r| r.random_range(-1.0..1.0)),
        }
    }
}

impl fmt::Display for MixingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MixingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "identity" => Ok(MixingKind::Identity),
            "orthogonal" | "haar" => Ok(MixingKind::Orthogonal),
            "gaussian" | "normal" => Ok(MixingKind::Gaussian),
            "uniform" => Ok(MixingKind::Uniform),
            _ => Err(Error::Unknown { kind: "mixing", name: s.to_string() }),
        }
    }
}

fn well_conditioned<R: Rng + ?Sized>(p: usize, rng: &mut R, mut entry: impl FnMut(&mut R) -> f64) -> Matrix {
    loop {
        let a = Matrix::from_fn(p, p, |_, _| entry(rng));
        if a.condition_number() <= MAX_CONDITION {
            return a;
        }
    }
}

/// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
/// signs of `diag(R)` folded into `Q`.
pub fn haar_orthogonal<R: Rng + ?Sized>(p: usize, rng: &mut R) -> Matrix {
    let g = Matrix::from_fn(p, p, |_, _| rng.sample::<f64, _>(StandardNormal));
    let (mut q, r) = qr(&g);
    for j in 0..p {
        if r[(j, j)] < 0.0 {
            for i in 0..p {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    q
}
