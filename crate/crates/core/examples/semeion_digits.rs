//! TJADE on 16×16 handwritten digit images. Reads a semeion file when given
//! a path, otherwise builds synthetic digits. Prints the two components with
//! the lowest kurtosis and how well they separate the classes.
//! Usage: semeion_digits [semeion.data]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tjade::cli::{load_semeion, parse_semeion, write_semeion, SemeionRecord};
use tjade::ica::element_kurtosis;
use tjade::{tjade_fit, Sample, Tensor, Variant};

type Shape = fn(usize, usize) -> bool;

fn synthetic() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let shapes: [(u8, Shape); 3] = [
        (0, |r, c| (4..12).contains(&c) && (r == 3 || r == 12) || (3..13).contains(&r) && (c == 4 || c == 11)),
        (1, |_, c| c == 7 || c == 8),
        (7, |r, c| r + c == 16 || r == 3),
    ];
    let mut recs = Vec::new();
    for (label, shape) in shapes {
        for _ in 0..200 {
            let mut img = Tensor::zeros(&[16, 16]).unwrap();
            let shift = rng.random_range(0..3);
            for r in 0..16 {
                for c in 0..16 {
                    let on = shape(r, (c + shift).min(15)) != rng.random_bool(0.1);
                    img.set(&[r, c], on as u8 as f64);
                }
            }
            recs.push(SemeionRecord { image: img, label });
        }
    }
    write_semeion(&recs)
}

fn main() -> tjade::Result<()> {
    let (x, labels): (Sample, Vec<u8>) = match std::env::args().nth(1) {
        Some(path) => load_semeion(path.as_ref(), Some(&[0, 1, 7]))?,
        None => {
            let recs = parse_semeion(&synthetic())?;
            let images: Vec<Tensor> = recs.iter().map(|r| r.image.clone()).collect();
            (Sample::from_tensors(&images)?, recs.iter().map(|r| r.label).collect())
        }
    };
    let model = tjade_fit(&x, Variant::One)?;
    let scores = model.transform_sample(&x)?;
    let kurt = element_kurtosis(&scores);
    let mut order: Vec<usize> = (0..kurt.len()).collect();
    order.sort_by(|&a, &b| kurt.vectorize()[a].total_cmp(&kurt.vectorize()[b]));
    let picked = &order[..2];
    println!("{} images; lowest-kurtosis components {:?} (kurtosis {:.2}, {:.2})",
        x.n(), picked, kurt.vectorize()[picked[0]], kurt.vectorize()[picked[1]]);
    for digit in [0u8, 1, 7] {
        let rows: Vec<usize> = (0..x.n()).filter(|&i| labels[i] == digit).collect();
        let mean = |k: usize| rows.iter().map(|&i| scores.observation(i)[k]).sum::<f64>() / rows.len() as f64;
        println!("digit {digit}: mean scores ({:+.3}, {:+.3})", mean(picked[0]), mean(picked[1]));
    }
    Ok(())
}
