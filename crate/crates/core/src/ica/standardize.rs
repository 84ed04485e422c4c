//! Centering and simultaneous m-mode whitening.

use super::accum::CompensatedSum;
use super::sample::Sample;
use crate::error::{Error, Result};
use crate::linalg::{inv_sqrt_sym, sym_eigen, SINGULAR_RATIO};
use crate::matrix::Matrix;
use crate::tensor::{rho, self_contract_into, Tensor};

/// Subtracts the elementwise sample mean; returns the centered sample and the mean.
pub fn center(sample: &Sample) -> (Sample, Tensor) {
    let len = sample.len();
    let mut acc = CompensatedSum::new(len);
    for obs in sample.observations() {
        for (a, &x) in acc.chunk_mut().iter_mut().zip(obs) {
            *a += x;
        }
        acc.end_observation();
    }
    let n = sample.n() as f64;
    let mean: Vec<f64> = acc.finish().into_iter().map(|s| s / n).collect();
    let mut data = sample.as_slice().to_vec();
    for obs in data.chunks_exact_mut(len) {
        for (x, mu) in obs.iter_mut().zip(&mean) {
            *x -= mu;
        }
    }
    let mean = Tensor::new(sample.dims().to_vec(), mean).expect("dims already validated");
    (sample.with_data(data), mean)
}

/// `(1/(n ρ_m)) Σ_i X_i ⊙_{-m} X_i` without any rank check.
pub(crate) fn mode_second_moment(sample: &Sample, m0: usize) -> Matrix {
    let dims = sample.dims();
    let p = dims[m0];
    let mut s = vec![0.0; p * p];
    let mut acc = CompensatedSum::new(p * p);
    for obs in sample.observations() {
        self_contract_into(dims, obs, m0, &mut s);
        for (a, v) in acc.chunk_mut().iter_mut().zip(&s) {
            *a += v;
        }
        acc.end_observation();
    }
    let denom = (sample.n() * rho(dims, m0)) as f64;
    let data = acc.finish().into_iter().map(|v| v / denom).collect();
    Matrix::from_col_major(p, p, data).expect("square buffer")
}

fn check_mode(sample: &Sample, m: usize) -> Result<usize> {
    if m == 0 || m > sample.order() {
        return Err(Error::Argument(format!(
            "mode {m} out of range for order-{} observations",
            sample.order()
        )));
    }
    Ok(m - 1)
}

/// m-mode covariance `Σ̂_m` of a centered sample (1-based `m`).
///
/// Fails with [`Error::Singular`] when the estimate is numerically rank deficient.
pub fn m_mode_covariance(centered: &Sample, m: usize) -> Result<Matrix> {
    let m0 = check_mode(centered, m)?;
    let cov = mode_second_moment(centered, m0);
    let e = sym_eigen(&cov).map_err(|e| e.with_mode(m))?;
    let hi = e.values[0];
    let lo = *e.values.last().unwrap();
    if hi <= 0.0 || lo <= SINGULAR_RATIO * hi {
        let ratio = if hi > 0.0 { lo / hi } else { 0.0 };
        return Err(Error::Singular { mode: Some(m), ratio });
    }
    Ok(cov)
}

/// Whitens a centered sample from all modes at once with the symmetric
/// inverse square roots of its m-mode covariances (all estimated from the
/// input, none re-estimated in between). Returns the whitened sample and the
/// `Σ̂_m^{-1/2}` in mode order.
pub fn standardize(centered: &Sample) -> Result<(Sample, Vec<Matrix>)> {
    let mut roots = Vec::with_capacity(centered.order());
    for m in 1..=centered.order() {
        let cov = m_mode_covariance(centered, m)?;
        roots.push(inv_sqrt_sym(&cov).map_err(|e| e.with_mode(m))?);
    }
    let whitened = centered.multi_mode_product(&roots)?;
    Ok((whitened, roots))
}

/// `Ξ̂_m = (1/(n ρ_m)) Σ_i X_i^{st} ⊙_{-m} X_i^{st}`.
pub fn xi_matrix(standardized: &Sample, m: usize) -> Result<Matrix> {
    let m0 = check_mode(standardized, m)?;
    let xi = mode_second_moment(standardized, m0);
    if xi.trace() <= 0.0 {
        return Err(Error::Singular { mode: Some(m), ratio: 0.0 });
    }
    Ok(xi)
}

/// `τ̂² = trace(Ξ̂_m) / p_m`.
pub fn tau_sq(xi: &Matrix) -> f64 {
    xi.trace() / xi.rows() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> Sample {
        // n = 3 observations of 2x2 matrices
        Sample::new(
            vec![2, 2],
            vec![1.0, -2.0, 0.5, 3.0, -1.0, 0.0, 2.0, 1.0, 0.0, 2.0, -2.5, -4.0],
        )
        .unwrap()
    }

    #[test]
    fn shift_is_recovered() {
        let base = toy();
        let (c, _) = center(&base);
        let shifted: Vec<f64> = c
            .observations()
            .flat_map(|o| o.iter().enumerate().map(|(k, v)| v + 10.0 * (k as f64 + 1.0)).collect::<Vec<_>>())
            .collect();
        let (c2, mu) = center(&c.with_data(shifted));
        assert_eq!(mu.vectorize().len(), 4);
        for (k, v) in mu.vectorize().iter().enumerate() {
            assert!((v - 10.0 * (k as f64 + 1.0)).abs() < 1e-12);
        }
        for (a, b) in c2.as_slice().iter().zip(c.as_slice()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn covariance_matches_hand_loop() {
        let (c, _) = center(&toy());
        for m in 1..=2 {
            let got = m_mode_covariance(&c, m).unwrap();
            let mut want = Matrix::zeros(2, 2);
            for obs in c.observations() {
                // obs is column-major 2x2: x[i + 2j]
                for j in 0..2 {
                    for k in 0..2 {
                        for other in 0..2 {
                            let (a, b) = if m == 1 {
                                (obs[j + 2 * other], obs[k + 2 * other])
                            } else {
                                (obs[other + 2 * j], obs[other + 2 * k])
                            };
                            want[(j, k)] += a * b / (3.0 * 2.0);
                        }
                    }
                }
            }
            assert!(got.sub(&want).unwrap().max_abs() < 1e-14);
        }
    }

    #[test]
    fn zero_sample_is_singular() {
        let z = Sample::new(vec![2, 2], vec![0.0; 8]).unwrap();
        assert!(matches!(m_mode_covariance(&z, 1), Err(Error::Singular { mode: Some(1), .. })));
        assert!(matches!(standardize(&z), Err(Error::Singular { mode: Some(1), .. })));
        assert!(matches!(xi_matrix(&z, 2), Err(Error::Singular { mode: Some(2), .. })));
    }

    #[test]
    fn whitened_data_is_unchanged() {
        // ±√2·I and ±√2·swap give Σ_1 = Σ_2 = I exactly
        let r2 = std::f64::consts::SQRT_2;
        let pattern = [1.0, 0.0, 0.0, 1.0, -1.0, 0.0, 0.0, -1.0, 0.0, 1.0, 1.0, 0.0, 0.0, -1.0, -1.0, 0.0];
        let s = Sample::new(vec![2, 2], pattern.iter().map(|v| v * r2).collect()).unwrap();
        let (c, mu) = center(&s);
        assert!(mu.vectorize().iter().all(|v| v.abs() < 1e-15));
        let (w, roots) = standardize(&c).unwrap();
        for r in &roots {
            assert!(r.sub(&Matrix::identity(2)).unwrap().max_abs() < 1e-14);
        }
        for (a, b) in w.as_slice().iter().zip(s.as_slice()) {
            assert!((a - b).abs() < 1e-14);
        }
    }
}
