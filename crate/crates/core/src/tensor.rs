//! Dense tensors and the multilinear primitives the estimators are built on.
//!
//! Storage is first-index-fastest, so [`Tensor::vectorize`] is the raw
//! buffer. Modes are 1-based everywhere in the public API.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tensor {
    dims: Vec<usize>,
    data: Vec<f64>,
}

impl Tensor {
    pub fn new(dims: Vec<usize>, data: Vec<f64>) -> Result<Self> {
        check_dims(&dims)?;
        let len: usize = dims.iter().product();
        if data.len() != len {
            return Err(Error::shape(format!(
                "buffer of length {} does not match dims {dims:?}",
                data.len()
            )));
        }
        Ok(Self { dims, data })
    }

    pub fn zeros(dims: &[usize]) -> Result<Self> {
        check_dims(dims)?;
        Ok(Self { dims: dims.to_vec(), data: vec![0.0; dims.iter().product()] })
    }

    /// Order-2 tensor with the same elements as `m`.
    pub fn from_matrix(m: &Matrix) -> Self {
        Self { dims: vec![m.rows(), m.cols()], data: m.as_slice().to_vec() }
    }

    /// Inverse of [`Tensor::vectorize`].
    pub fn reshape(vec: &[f64], dims: &[usize]) -> Result<Self> {
        Self::new(dims.to_vec(), vec.to_vec())
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn order(&self) -> usize {
        self.dims.len()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Number of m-mode vectors, `Π_{s≠m} p_s`.
    pub fn rho(&self, m: usize) -> usize {
        rho(&self.dims, m - 1)
    }

    /// Elements with the leftmost index cycling fastest.
    pub fn vectorize(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    /// Element at a 0-based multi-index.
    pub fn get(&self, idx: &[usize]) -> f64 {
        self.data[linear_index(&self.dims, idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: f64) {
        let k = linear_index(&self.dims, idx);
        self.data[k] = v;
    }

    /// `X ⊙_m A`: applies `A` to every m-mode vector.
    pub fn mode_product(&self, a: &Matrix, m: usize) -> Result<Tensor> {
        let m0 = self.check_mode(m)?;
        check_square(a, self.dims[m0], m)?;
        let mut out = vec![0.0; self.data.len()];
        mode_product_into(&self.dims, &self.data, a, m0, &mut out);
        Ok(Tensor { dims: self.dims.clone(), data: out })
    }

    /// `X ⊙_1 A_1 ⋯ ⊙_r A_r`.
    pub fn multi_mode_product(&self, mats: &[Matrix]) -> Result<Tensor> {
        if mats.len() != self.order() {
            return Err(Error::shape(format!(
                "{} matrices supplied for an order-{} tensor",
                mats.len(),
                self.order()
            )));
        }
        for (m0, a) in mats.iter().enumerate() {
            check_square(a, self.dims[m0], m0 + 1)?;
        }
        let mut cur = self.data.clone();
        let mut buf = vec![0.0; cur.len()];
        for (m0, a) in mats.iter().enumerate() {
            mode_product_into(&self.dims, &cur, a, m0, &mut buf);
            std::mem::swap(&mut cur, &mut buf);
        }
        Ok(Tensor { dims: self.dims.clone(), data: cur })
    }

    /// `X ⊙_{-m} Y`, the `p_m × p_m` matrix summing over all non-m indices.
    pub fn contract(&self, other: &Tensor, m: usize) -> Result<Matrix> {
        if self.dims != other.dims {
            return Err(Error::shape(format!(
                "cannot contract {:?} with {:?}",
                self.dims, other.dims
            )));
        }
        let m0 = self.check_mode(m)?;
        let p = self.dims[m0];
        let mut out = Matrix::zeros(p, p);
        contract_into(&self.dims, &self.data, &other.data, m0, out.as_mut_slice());
        Ok(out)
    }

    /// Cyclic m-flattening `X_(m)` of size `p_m × ρ_m`.
    ///
    /// Column `c` enumerates `(i_{m+1}, …, i_r, i_1, …, i_{m-1})` with
    /// `i_{m+1}` slowest, which gives
    /// `flatten(X ⊙ A, m) = A_m X_(m) (A_{m+1} ⊗ … ⊗ A_r ⊗ A_1 ⊗ … ⊗ A_{m-1})ᵀ`.
    pub fn flatten(&self, m: usize) -> Result<Matrix> {
        let m0 = self.check_mode(m)?;
        let r = self.order();
        let cycle: Vec<usize> = (m0 + 1..r).chain(0..m0).collect();
        let pm = self.dims[m0];
        let cols = rho(&self.dims, m0);
        let mut out = Matrix::zeros(pm, cols);
        let mut idx = vec![0usize; r];
        for c in 0..cols {
            let mut rem = c;
            for &mode in cycle.iter().rev() {
                idx[mode] = rem % self.dims[mode];
                rem /= self.dims[mode];
            }
            for i in 0..pm {
                idx[m0] = i;
                out[(i, c)] = self.data[linear_index(&self.dims, &idx)];
            }
        }
        Ok(out)
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum()
    }

    fn check_mode(&self, m: usize) -> Result<usize> {
        if m == 0 || m > self.order() {
            return Err(Error::Argument(format!(
                "mode {m} out of range for an order-{} tensor",
                self.order()
            )));
        }
        Ok(m - 1)
    }
}

fn check_dims(dims: &[usize]) -> Result<()> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::shape(format!("invalid tensor dims {dims:?}")));
    }
    Ok(())
}

fn check_square(a: &Matrix, p: usize, m: usize) -> Result<()> {
    if a.rows() != p || a.cols() != p {
        return Err(Error::shape(format!(
            "mode {m} has size {p} but matrix is {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    Ok(())
}

pub(crate) fn linear_index(dims: &[usize], idx: &[usize]) -> usize {
    debug_assert_eq!(dims.len(), idx.len());
    let mut k = 0;
    let mut stride = 1;
    for (&i, &p) in idx.iter().zip(dims) {
        debug_assert!(i < p);
        k += i * stride;
        stride *= p;
    }
    k
}

/// `Π_{s≠m0} p_s` with a 0-based mode.
pub(crate) fn rho(dims: &[usize], m0: usize) -> usize {
    dims.iter().enumerate().filter(|&(s, _)| s != m0).map(|(_, &p)| p).product()
}

/// (inner stride, mode size, outer count) for a 0-based mode.
#[inline]
pub(crate) fn mode_layout(dims: &[usize], m0: usize) -> (usize, usize, usize) {
    let inner: usize = dims[..m0].iter().product();
    let outer: usize = dims[m0 + 1..].iter().product();
    (inner, dims[m0], outer)
}

/// Raw-buffer m-mode product with a 0-based mode; `dst` is overwritten.
pub(crate) fn mode_product_into(dims: &[usize], src: &[f64], a: &Matrix, m0: usize, dst: &mut [f64]) {
    let (inner, p, outer) = mode_layout(dims, m0);
    let block = inner * p;
    for o in 0..outer {
        let s = &src[o * block..(o + 1) * block];
        let d = &mut dst[o * block..(o + 1) * block];
        for t in 0..inner {
            for i in 0..p {
                let mut acc = 0.0;
                for j in 0..p {
                    acc += a[(i, j)] * s[t + j * inner];
                }
                d[t + i * inner] = acc;
            }
        }
    }
}

/// Raw-buffer `X ⊙_{-m} Y` with a 0-based mode; `out` is a column-major
/// `p_m × p_m` buffer and is overwritten.
pub(crate) fn contract_into(dims: &[usize], x: &[f64], y: &[f64], m0: usize, out: &mut [f64]) {
    let (inner, p, outer) = mode_layout(dims, m0);
    let block = inner * p;
    out.iter_mut().for_each(|v| *v = 0.0);
    for o in 0..outer {
        let xs = &x[o * block..(o + 1) * block];
        let ys = &y[o * block..(o + 1) * block];
        for k in 0..p {
            let yk = &ys[k * inner..(k + 1) * inner];
            for j in 0..p {
                let xj = &xs[j * inner..(j + 1) * inner];
                let s: f64 = xj.iter().zip(yk).map(|(a, b)| a * b).sum();
                out[j + k * p] += s;
            }
        }
    }
}

/// Symmetric `X ⊙_{-m} X`; only the upper triangle is computed and mirrored.
pub(crate) fn self_contract_into(dims: &[usize], x: &[f64], m0: usize, out: &mut [f64]) {
    let (inner, p, outer) = mode_layout(dims, m0);
    let block = inner * p;
    out.iter_mut().for_each(|v| *v = 0.0);
    for o in 0..outer {
        let xs = &x[o * block..(o + 1) * block];
        for k in 0..p {
            let xk = &xs[k * inner..(k + 1) * inner];
            for j in 0..=k {
                let xj = &xs[j * inner..(j + 1) * inner];
                let s: f64 = xj.iter().zip(xk).map(|(a, b)| a * b).sum();
                out[j + k * p] += s;
            }
        }
    }
    for k in 0..p {
        for j in 0..k {
            out[k + j * p] = out[j + k * p];
        }
    }
}
