//! Recovers a hidden rotation from a family of matrices it diagonalizes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use tjade::linalg::{joint_diagonalize, DEFAULT_MAX_SWEEPS, DEFAULT_TOL};
use tjade::metrics::{mdi, GainMatrix};
use tjade::simlab::haar_orthogonal;
use tjade::Matrix;

fn main() -> tjade::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let p = 5;
    let v = haar_orthogonal(p, &mut rng);
    let family: Vec<Matrix> = (0..8)
        .map(|_| {
            let d: Vec<f64> = (0..p).map(|_| rng.sample(StandardNormal)).collect();
            let noise = Matrix::from_fn(p, p, |_, _| 1e-3 * rng.sample::<f64, _>(StandardNormal)).symmetrized();
            v.matmul(&Matrix::diag(&d)).unwrap().matmul(&v.transpose()).unwrap().add(&noise).unwrap()
        })
        .collect();

    let res = joint_diagonalize(&family, DEFAULT_TOL, DEFAULT_MAX_SWEEPS)?;
    println!("converged: {} after {} sweeps", res.converged, res.sweeps);
    println!("residual off-diagonal mass: {:.3e}", res.final_off);
    let gain = GainMatrix::new(res.rotation.matmul(&v)?)?;
    println!("distance of U V from a signed permutation (MDI): {:.3e}", mdi(&gain)?);
    Ok(())
}
