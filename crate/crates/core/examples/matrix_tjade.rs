//! TJADE on mixed 3×4 matrix observations with twelve different source kurtoses.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tjade::metrics::{mdi, model_gain, transformed_mdi};
use tjade::simlab::{MixingKind, SettingSpec};
use tjade::{tjade_fit, Variant};

fn main() -> tjade::Result<()> {
    let n = 8000;
    let setting = SettingSpec::matrix_study();
    let mut rng = ChaCha8Rng::seed_from_u64(2017);
    let z = setting.draw(n, &mut rng)?;
    let mixers = MixingKind::Gaussian.generate(&setting.dims, &mut rng);
    let x = z.multi_mode_product(&mixers)?;

    let model = tjade_fit(&x, Variant::One)?;
    for (m, (phi, fk)) in model.phis.iter().zip(&model.face_kurtosis).enumerate() {
        println!("mode {} unmixing matrix:\n{phi:?}", m + 1);
        println!("face kurtoses: {fk:.2?}");
    }
    let d = mdi(&model_gain(&model, &mixers)?)?;
    println!("MDI {d:.4}, transformed {:.1}", transformed_mdi(d, n, setting.len()));
    Ok(())
}
