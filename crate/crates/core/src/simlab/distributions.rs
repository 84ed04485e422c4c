//! Catalog of source distributions, each standardized to mean 0 and
//! variance 1, with the analytic moments the asymptotic-variance formulas need.

use std::fmt;

use rand::Rng;
use rand_distr::{Distribution as _, Exp1, Gamma, InverseGaussian, StandardNormal, StudentT, Triangular};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A source distribution before standardization. Every draw is shifted and
/// scaled by the analytic mean and standard deviation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Distribution {
    /// `Uniform(−√3, √3)`.
    Uniform,
    /// `Triangular(−√6, √6, 0)`.
    Triangular,
    Normal,
    StudentT { df: f64 },
    /// Gamma with the given shape (the scale is removed by standardization).
    Gamma { shape: f64 },
    /// `Laplace(0, 1/√2)`.
    Laplace,
    ChiSquared { df: f64 },
    Exponential,
    InverseGaussian { mean: f64, shape: f64 },
}

/// Standardized moments `E z³`, `E z⁴`, `E z⁶`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Moments {
    pub m3: f64,
    pub m4: f64,
    pub m6: f64,
}

impl Moments {
    pub fn excess_kurtosis(&self) -> f64 {
        self.m4 - 3.0
    }

    /// `Var[z³] = E z⁶ − (E z³)²`.
    pub fn var_cube(&self) -> f64 {
        self.m6 - self.m3 * self.m3
    }
}

/// Standardized moments of a Gamma(k) variable from its cumulants
/// `κ_n = (n−1)! k^{1−n/2}`.
fn gamma_moments(k: f64) -> Moments {
    Moments {
        m3: 2.0 / k.sqrt(),
        m4: 3.0 + 6.0 / k,
        m6: 15.0 + 130.0 / k + 120.0 / (k * k),
    }
}

impl Distribution {
    /// The twelve sources of the 3×4 matrix study in vectorized (column-major) order.
    pub const MATRIX_STUDY: [Distribution; 12] = [
        Distribution::Uniform,
        Distribution::Triangular,
        Distribution::Normal,
        Distribution::StudentT { df: 10.0 },
        Distribution::Gamma { shape: 3.0 },
        Distribution::Laplace,
        Distribution::ChiSquared { df: 3.0 },
        Distribution::Gamma { shape: 1.2 },
        Distribution::Exponential,
        Distribution::ChiSquared { df: 1.5 },
        Distribution::ChiSquared { df: 1.2 },
        Distribution::InverseGaussian { mean: 1.0, shape: 1.0 },
    ];

    pub fn moments(&self) -> Result<Moments> {
        Ok(match *self {
            Distribution::Uniform => Moments { m3: 0.0, m4: 9.0 / 5.0, m6: 27.0 / 7.0 },
            Distribution::Triangular => Moments { m3: 0.0, m4: 12.0 / 5.0, m6: 54.0 / 7.0 },
            Distribution::Normal => Moments { m3: 0.0, m4: 3.0, m6: 15.0 },
            Distribution::StudentT { df } => {
                if df <= 6.0 {
                    return Err(Error::Argument(format!(
                        "t({df}) has no finite sixth moment"
                    )));
                }
                Moments {
                    m3: 0.0,
                    m4: 3.0 * (df - 2.0) / (df - 4.0),
                    m6: 15.0 * (df - 2.0) * (df - 2.0) / ((df - 4.0) * (df - 6.0)),
                }
            }
            Distribution::Gamma { shape } => gamma_moments(shape),
            Distribution::ChiSquared { df } => gamma_moments(df / 2.0),
            Distribution::Exponential => gamma_moments(1.0),
            Distribution::Laplace => Moments { m3: 0.0, m4: 6.0, m6: 90.0 },
            Distribution::InverseGaussian { mean, shape } => {
                let phi = mean / shape;
                Moments {
                    m3: 3.0 * phi.sqrt(),
                    m4: 3.0 + 15.0 * phi,
                    m6: 15.0 + 315.0 * phi + 945.0 * phi * phi,
                }
            }
        })
    }

    /// Analytic excess kurtosis of the standardized variable.
    pub fn excess_kurtosis(&self) -> f64 {
        match *self {
            Distribution::StudentT { df } if df > 4.0 => 6.0 / (df - 4.0),
            Distribution::StudentT { .. } => f64::INFINITY,
            d => d.moments().map(|m| m.excess_kurtosis()).unwrap_or(f64::NAN),
        }
    }

    /// Short label used in configs and CSV output.
    pub fn label(&self) -> String {
        match *self {
            Distribution::Uniform => "uniform".into(),
            Distribution::Triangular => "triangular".into(),
            Distribution::Normal => "normal".into(),
            Distribution::StudentT { df } => format!("t({df})"),
            Distribution::Gamma { shape } => format!("gamma({shape})"),
            Distribution::Laplace => "laplace".into(),
            Distribution::ChiSquared { df } => format!("chisq({df})"),
            Distribution::Exponential => "exp".into(),
            Distribution::InverseGaussian { mean, shape } => format!("invgauss({mean},{shape})"),
        }
    }

    /// Parses labels such as `normal`, `N`, `t(10)`, `gamma(1.2)`,
    /// `chisq(1.5)`, `invgauss(1,1)`.
    pub fn parse(s: &str) -> Result<Self> {
        let unknown = || Error::Unknown { kind: "distribution", name: s.to_string() };
        let t = s.trim();
        let (name, args) = match t.find('(') {
            Some(open) => {
                let close = t.strip_suffix(')').ok_or_else(unknown)?;
                let args: Vec<f64> = close[open + 1..]
                    .split(',')
                    .map(|a| a.trim().parse::<f64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| unknown())?;
                (&t[..open], args)
            }
            None => (t, Vec::new()),
        };
        let positive = |v: f64| if v > 0.0 && v.is_finite() { Ok(v) } else { Err(unknown()) };
        let d = match (name.to_ascii_lowercase().as_str(), args.as_slice()) {
            ("uniform" | "u", []) => Distribution::Uniform,
            ("triangular", []) => Distribution::Triangular,
            ("normal" | "n", []) => Distribution::Normal,
            ("laplace" | "l", []) => Distribution::Laplace,
            ("exp" | "exponential" | "e", []) => Distribution::Exponential,
            ("t", [df]) => Distribution::StudentT { df: positive(*df)? },
            ("gamma", [k]) => Distribution::Gamma { shape: positive(*k)? },
            ("chisq", [df]) => Distribution::ChiSquared { df: positive(*df)? },
            ("invgauss", [m, l]) => Distribution::InverseGaussian { mean: positive(*m)?, shape: positive(*l)? },
            _ => return Err(unknown()),
        };
        Ok(d)
    }

    /// A reusable standardized sampler.
    pub fn sampler(&self) -> Sampler {
        let kind = match *self {
            Distribution::Uniform => SamplerKind::Uniform,
            Distribution::Triangular => {
                let a = 6f64.sqrt();
                SamplerKind::Triangular(Triangular::new(-a, a, 0.0).expect("valid triangular"))
            }
            Distribution::Normal => SamplerKind::Normal,
            Distribution::StudentT { df } => SamplerKind::StudentT(
                StudentT::new(df).expect("positive df"),
                (df / (df - 2.0)).sqrt().recip(),
            ),
            Distribution::Gamma { shape } => gamma_kind(shape),
            Distribution::ChiSquared { df } => gamma_kind(df / 2.0),
            Distribution::Exponential => SamplerKind::Exponential,
            Distribution::Laplace => SamplerKind::Laplace,
            Distribution::InverseGaussian { mean, shape } => SamplerKind::InverseGaussian(
                InverseGaussian::new(mean, shape).expect("positive parameters"),
                mean,
                (mean * mean * mean / shape).sqrt(),
            ),
        };
        Sampler { kind }
    }
}

fn gamma_kind(shape: f64) -> SamplerKind {
    SamplerKind::Gamma(Gamma::new(shape, 1.0).expect("positive shape"), shape, shape.sqrt())
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for Distribution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

impl<'de> Deserialize<'de> for Distribution {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Distribution::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug)]
enum SamplerKind {
    Uniform,
    Triangular(Triangular<f64>),
    Normal,
    /// distribution, 1/sd
    StudentT(StudentT<f64>, f64),
    /// distribution, mean, sd
    Gamma(Gamma<f64>, f64, f64),
    Exponential,
    Laplace,
    /// distribution, mean, sd
    InverseGaussian(InverseGaussian<f64>, f64, f64),
}

/// Draws standardized values from one catalog distribution.
#[derive(Clone, Debug)]
pub struct Sampler {
    kind: SamplerKind,
}

impl Sampler {
    #[inline]
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match &self.kind {
            SamplerKind::Uniform => {
                let a = 3f64.sqrt();
                rng.random_range(-a..a)
            }
            SamplerKind::Triangular(d) => d.sample(rng),
            SamplerKind::Normal => rng.sample(StandardNormal),
            SamplerKind::StudentT(d, inv_sd) => d.sample(rng) * inv_sd,
            SamplerKind::Gamma(d, mean, sd) => (d.sample(rng) - mean) / sd,
            SamplerKind::Exponential => {
                let x: f64 = rng.sample(Exp1);
                x - 1.0
            }
            SamplerKind::Laplace => {
                let x: f64 = rng.sample(Exp1);
                let b = std::f64::consts::FRAC_1_SQRT_2;
                if rng.random::<bool>() {
                    x * b
                } else {
                    -x * b
                }
            }
            SamplerKind::InverseGaussian(d, mean, sd) => (d.sample(rng) - mean) / sd,
        }
    }
}

/// `n` standardized draws from `dist`.
pub fn sample_source<R: Rng + ?Sized>(dist: &Distribution, n: usize, rng: &mut R) -> Vec<f64> {
    let s = dist.sampler();
    (0..n).map(|_| s.draw(rng)).collect()
}
