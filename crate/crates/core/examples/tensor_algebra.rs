//! Mode products, cyclic flattening and contractions on a small 2×3×2 tensor.

use tjade::matrix::kron_reversed;
use tjade::{Matrix, Tensor};

fn main() -> tjade::Result<()> {
    let x = Tensor::new(vec![2, 3, 2], (0..12).map(|v| v as f64).collect())?;
    let a = Matrix::from_rows(&[[1.0, 1.0], [0.0, 2.0]]);
    let b = Matrix::from_rows(&[[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 3.0]]);
    let c = Matrix::from_rows(&[[2.0, -1.0], [1.0, 1.0]]);

    println!("X flattened along mode 2:\n{:?}", x.flatten(2)?);

    let y = x.multi_mode_product(&[a.clone(), b.clone(), c.clone()])?;
    let via_kron = kron_reversed(&[a, b, c]).matvec(x.vectorize());
    let gap = y.vectorize().iter().zip(&via_kron).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
    println!("vec(X ⊙ A) vs (C ⊗ B ⊗ A) vec X: max difference {gap:e}");

    let s = x.contract(&x, 1)?;
    println!("mode-1 contraction X ⊙_(-1) X:\n{s:?}");
    println!("its trace {} equals ‖X‖² = {}", s.trace(), x.frobenius_sq());
    Ok(())
}
