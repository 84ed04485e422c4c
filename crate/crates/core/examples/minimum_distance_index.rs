//! The minimum distance index of a few gain matrices.

use tjade::metrics::{mdi, transformed_mdi, GainMatrix};
use tjade::Matrix;

fn main() -> tjade::Result<()> {
    let cases = [
        ("identity", Matrix::identity(3)),
        ("scaled permutation", Matrix::from_rows(&[[0.0, 2.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 5.0]])),
        ("slightly off", Matrix::from_rows(&[[1.0, 0.05, 0.0], [0.0, 1.0, -0.02], [0.03, 0.0, 1.0]])),
        ("rotation by 45°", Matrix::from_rows(&[[1.0, 1.0, 0.0], [-1.0, 1.0, 0.0], [0.0, 0.0, 1.0]])),
        ("all ones", Matrix::from_fn(3, 3, |_, _| 1.0)),
    ];
    for (name, g) in cases {
        let d = mdi(&GainMatrix::new(g)?)?;
        println!("{name:>20}: MDI {d:.4}  n(p-1)MDI² at n=1000: {:.2}", transformed_mdi(d, 1000, 3));
    }
    Ok(())
}
