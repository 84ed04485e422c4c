//! Source layouts: which distribution generates each tensor cell.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::distributions::Distribution;
use crate::error::{Error, Result};
use crate::ica::Sample;
use crate::tensor::linear_index;

/// Distribution per tensor cell, stored in vectorization order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SettingSpec {
    pub name: String,
    pub dims: Vec<usize>,
    pub cells: Vec<Distribution>,
}

impl SettingSpec {
    pub fn new(name: impl Into<String>, dims: Vec<usize>, cells: Vec<Distribution>) -> Result<Self> {
        let len: usize = dims.iter().product();
        if dims.is_empty() || dims.contains(&0) || cells.len() != len {
            return Err(Error::shape(format!(
                "setting with dims {dims:?} needs {len} cells, got {}",
                cells.len()
            )));
        }
        Ok(Self { name: name.into(), dims, cells })
    }

    /// Every cell drawn from the same distribution.
    pub fn iid(name: impl Into<String>, dims: Vec<usize>, dist: Distribution) -> Self {
        let len = dims.iter().product();
        Self { name: name.into(), dims, cells: vec![dist; len] }
    }

    /// 3×4 matrices whose twelve cells have excess kurtoses
    /// −1.2, −0.6, 0, 1, 2, 3, 4, 5, 6, 8, 10, 15, filled column by column.
    pub fn matrix_study() -> Self {
        Self {
            name: "matrix".into(),
            dims: vec![3, 4],
            cells: Distribution::MATRIX_STUDY.to_vec(),
        }
    }

    /// 3×3×2 tensors built from standardized normal, Laplace, exponential and
    /// uniform cells. Each face is a 3×3 matrix (rows: mode 1, columns:
    /// mode 2) for one level of mode 3.
    pub fn setting(k: usize) -> Result<Self> {
        let faces: [&str; 2] = match k {
            1 => ["NLE LLE EEE", "UUU ULL ULE"],
            2 => ["NLL LLL LLL", "UUU ULL ULL"],
            3 => ["EEN EEN NNN", "NNN NNN NNN"],
            _ => return Err(Error::Unknown { kind: "setting", name: format!("setting{k}") }),
        };
        let dims = vec![3, 3, 2];
        let mut cells = vec![Distribution::Normal; 18];
        for (f, face) in faces.iter().enumerate() {
            for (i, row) in face.split(' ').enumerate() {
                for (j, c) in row.chars().enumerate() {
                    cells[linear_index(&dims, &[i, j, f])] = Distribution::parse(&c.to_string())?;
                }
            }
        }
        Ok(Self { name: format!("setting{k}"), dims, cells })
    }

    /// Built-in layouts by name: `matrix`, `setting1`, `setting2`, `setting3`.
    pub fn by_name(name: &str) -> Result<Self> {
        match name.trim() {
            "matrix" | "matrix_study" => Ok(Self::matrix_study()),
            "setting1" => Self::setting(1),
            "setting2" => Self::setting(2),
            "setting3" => Self::setting(3),
            other => Err(Error::Unknown { kind: "setting", name: other.to_string() }),
        }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// `n` independent tensors with independent standardized cells.
    pub fn draw<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<Sample> {
        let samplers: Vec<_> = self.cells.iter().map(|d| d.sampler()).collect();
        let mut data = Vec::with_capacity(n * self.len());
        for _ in 0..n {
            data.extend(samplers.iter().map(|s| s.draw(rng)));
        }
        Sample::new(self.dims.clone(), data)
    }

    /// Analytic excess kurtosis of every cell, in vectorization order.
    pub fn kurtoses(&self) -> Vec<f64> {
        self.cells.iter().map(|d| d.excess_kurtosis()).collect()
    }
}

impl fmt::Display for SettingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_study_mode_means() {
        let s = SettingSpec::matrix_study();
        let k = s.kurtoses();
        let row = |i: usize| (0..4).map(|j| k[i + 3 * j]).sum::<f64>() / 4.0;
        let col = |j: usize| (0..3).map(|i| k[i + 3 * j]).sum::<f64>() / 3.0;
        assert!((row(0) - 2.95).abs() < 1e-12);
        assert!((row(1) - 4.1).abs() < 1e-12);
        assert!((row(2) - 6.0).abs() < 1e-12);
        let cols: Vec<f64> = (0..4).map(col).collect();
        for (c, want) in cols.iter().zip([-0.6, 2.0, 5.0, 11.0]) {
            assert!((c - want).abs() < 1e-12);
        }
    }

    #[test]
    fn setting_faces() {
        let s = SettingSpec::setting(1).unwrap();
        assert_eq!(s.cells[linear_index(&s.dims, &[0, 0, 0])], Distribution::Normal);
        assert_eq!(s.cells[linear_index(&s.dims, &[0, 1, 0])], Distribution::Laplace);
        assert_eq!(s.cells[linear_index(&s.dims, &[2, 2, 1])], Distribution::Exponential);
        let s3 = SettingSpec::setting(3).unwrap();
        let non_normal = s3.cells.iter().filter(|d| **d != Distribution::Normal).count();
        assert_eq!(non_normal, 4);
        assert!(SettingSpec::setting(4).is_err());
        assert!(SettingSpec::by_name("setting9").is_err());
    }
}
