/// Observations summed naively per chunk before a compensated merge.
const CHUNK: usize = 64;

/// Vector of running sums: plain accumulation inside fixed-size chunks of
/// observations, Neumaier-compensated accumulation of the chunk totals.
/// The reduction order depends only on the observation order.
pub(crate) struct CompensatedSum {
    total: Vec<f64>,
    comp: Vec<f64>,
    chunk: Vec<f64>,
    pending: usize,
}

impl CompensatedSum {
    pub(crate) fn new(len: usize) -> Self {
        Self { total: vec![0.0; len], comp: vec![0.0; len], chunk: vec![0.0; len], pending: 0 }
    }

    /// Buffer for the current observation's contributions (add into it).
    #[inline]
    pub(crate) fn chunk_mut(&mut self) -> &mut [f64] {
        &mut self.chunk
    }

    #[inline]
    pub(crate) fn end_observation(&mut self) {
        self.pending += 1;
        if self.pending == CHUNK {
            self.flush();
        }
    }

    fn flush(&mut self) {
        for ((t, c), x) in self.total.iter_mut().zip(self.comp.iter_mut()).zip(self.chunk.iter_mut()) {
            let s = *t + *x;
            if t.abs() >= x.abs() {
                *c += (*t - s) + *x;
            } else {
                *c += (*x - s) + *t;
            }
            *t = s;
            *x = 0.0;
        }
        self.pending = 0;
    }

    pub(crate) fn finish(mut self) -> Vec<f64> {
        if self.pending > 0 {
            self.flush();
        }
        self.total.iter().zip(&self.comp).map(|(t, c)| t + c).collect()
    }
}
