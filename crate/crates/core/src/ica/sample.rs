use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::tensor::{mode_product_into, Tensor};

/// `n` tensor observations with common dims, stored back to back: observation
/// `i` occupies `data[i*len..(i+1)*len]` in vectorized order.
#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    dims: Vec<usize>,
    n: usize,
    data: Vec<f64>,
}

impl Sample {
    pub fn new(dims: Vec<usize>, data: Vec<f64>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::shape(format!("invalid tensor dims {dims:?}")));
        }
        let len: usize = dims.iter().product();
        if !data.len().is_multiple_of(len) {
            return Err(Error::shape(format!(
                "buffer of length {} is not a whole number of {dims:?} tensors",
                data.len()
            )));
        }
        let n = data.len() / len;
        if n < 2 {
            return Err(Error::Argument(format!("a sample needs at least 2 observations, got {n}")));
        }
        Ok(Self { dims, n, data })
    }

    pub fn from_tensors(obs: &[Tensor]) -> Result<Self> {
        let first = obs.first().ok_or_else(|| Error::Argument("empty sample".into()))?;
        let dims = first.dims().to_vec();
        let mut data = Vec::with_capacity(obs.len() * first.len());
        for (i, t) in obs.iter().enumerate() {
            if t.dims() != dims.as_slice() {
                return Err(Error::shape(format!(
                    "observation {i} has dims {:?}, expected {dims:?}",
                    t.dims()
                )));
            }
            data.extend_from_slice(t.vectorize());
        }
        Self::new(dims, data)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn order(&self) -> usize {
        self.dims.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Elements per observation.
    pub fn len(&self) -> usize {
        self.data.len() / self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn observation(&self, i: usize) -> &[f64] {
        let len = self.len();
        &self.data[i * len..(i + 1) * len]
    }

    pub fn observations(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.len())
    }

    pub fn tensor(&self, i: usize) -> Tensor {
        Tensor::new(self.dims.clone(), self.observation(i).to_vec()).expect("consistent dims")
    }

    pub fn to_tensors(&self) -> Vec<Tensor> {
        (0..self.n).map(|i| self.tensor(i)).collect()
    }

    /// The same data as `Π p_m`-vectors (an order-1 sample).
    pub fn vectorized(&self) -> Sample {
        Sample { dims: vec![self.len()], n: self.n, data: self.data.clone() }
    }

    /// Applies `X ⊙_1 A_1 ⋯ ⊙_r A_r` to every observation.
    pub fn multi_mode_product(&self, mats: &[Matrix]) -> Result<Sample> {
        if mats.len() != self.order() {
            return Err(Error::shape(format!(
                "{} matrices supplied for order-{} observations",
                mats.len(),
                self.order()
            )));
        }
        for (m0, a) in mats.iter().enumerate() {
            if a.rows() != self.dims[m0] || a.cols() != self.dims[m0] {
                return Err(Error::shape(format!(
                    "mode {} has size {} but matrix is {}x{}",
                    m0 + 1,
                    self.dims[m0],
                    a.rows(),
                    a.cols()
                )));
            }
        }
        let len = self.len();
        let mut out = self.data.clone();
        let mut buf = vec![0.0; len];
        for obs in out.chunks_exact_mut(len) {
            for (m0, a) in mats.iter().enumerate() {
                mode_product_into(&self.dims, obs, a, m0, &mut buf);
                obs.copy_from_slice(&buf);
            }
        }
        Ok(Sample { dims: self.dims.clone(), n: self.n, data: out })
    }

    /// Multiplies every observation by a `len × len` matrix after vectorization.
    pub fn vector_transform(&self, a: &Matrix) -> Result<Sample> {
        let len = self.len();
        if a.rows() != len || a.cols() != len {
            return Err(Error::shape(format!("{}x{} matrix for {len}-vectors", a.rows(), a.cols())));
        }
        let mut data = Vec::with_capacity(self.data.len());
        for obs in self.observations() {
            data.extend(a.matvec(obs));
        }
        Ok(Sample { dims: self.dims.clone(), n: self.n, data })
    }

    pub(crate) fn with_data(&self, data: Vec<f64>) -> Sample {
        debug_assert_eq!(data.len(), self.data.len());
        Sample { dims: self.dims.clone(), n: self.n, data }
    }
}
