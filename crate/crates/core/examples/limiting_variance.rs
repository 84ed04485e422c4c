//! Limiting variances of the TJADE unmixing entries for a built-in setting,
//! checked against a Monte Carlo run with identity mixing. Pairs involving a
//! component whose mean face kurtosis is below 1 in absolute value approach
//! their limit slowly, so expect visible gaps there at moderate n.
//! Usage: limiting_variance [setting] [reps] [n]

use tjade::simlab::{asv_profile, asv_table, substream, SettingSpec};
use tjade::{tjade_fit, Matrix, Variant};

/// Rows reordered and signed so that row `k` estimates `e_kᵀ`.
fn align_to_identity(phi: &Matrix) -> Matrix {
    let p = phi.rows();
    let mut out = Matrix::zeros(p, p);
    for r in 0..p {
        let row = phi.row(r);
        let k = (0..p).max_by(|&a, &b| row[a].abs().total_cmp(&row[b].abs())).unwrap();
        for (j, v) in row.iter().enumerate() {
            out[(k, j)] = row[k].signum() * v;
        }
    }
    out
}

fn main() -> tjade::Result<()> {
    let mut args = std::env::args().skip(1);
    let setting = SettingSpec::by_name(&args.next().unwrap_or_else(|| "matrix".into()))?;
    let reps: usize = args.next().and_then(|r| r.parse().ok()).unwrap_or(300);
    let n: usize = args.next().and_then(|r| r.parse().ok()).unwrap_or(20_000);

    let table = asv_table(&asv_profile(&setting)?);
    let mut sums = vec![(0.0, 0.0); table.len()];
    for rep in 0..reps {
        let x = setting.draw(n, &mut substream(5, &setting.name, n, rep, 1))?;
        let model = tjade_fit(&x, Variant::One)?;
        let aligned: Vec<Matrix> = model.phis.iter().map(align_to_identity).collect();
        for (row, acc) in table.iter().zip(sums.iter_mut()) {
            let target = if row.k == row.l { 1.0 } else { 0.0 };
            let v = (aligned[row.mode - 1][(row.k, row.l)] - target) * (n as f64).sqrt();
            acc.0 += v;
            acc.1 += v * v;
        }
    }
    println!("{}: {reps} replications at n = {n}", setting.name);
    println!("mode,k,l      limit  simulated");
    for (row, (s, s2)) in table.iter().zip(sums) {
        let mean = s / reps as f64;
        let var = (s2 - reps as f64 * mean * mean) / (reps as f64 - 1.0);
        let limit = row.value.map_or("undefined".into(), |v| format!("{v:.3}"));
        println!("{},{},{}  {limit:>10}  {var:>9.3}", row.mode, row.k + 1, row.l + 1);
    }
    Ok(())
}
