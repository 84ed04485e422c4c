//! Tensor and vector estimators side by side on one setting and mixing.
//! Usage: method_comparison [setting] [reps]

use tjade::simlab::{run_experiment, ExperimentConfig, MixingKind, OneOrMany, SettingRef};
use tjade::Method;

fn main() -> tjade::Result<()> {
    let mut args = std::env::args().skip(1);
    let setting = args.next().unwrap_or_else(|| "matrix".into());
    let reps = args.next().and_then(|r| r.parse().ok()).unwrap_or(10);
    let cfg = ExperimentConfig {
        setting: OneOrMany::One(SettingRef::Name(setting.clone())),
        mixing: vec![MixingKind::Orthogonal],
        methods: Method::ALL.to_vec(),
        ns: vec![1000, 4000, 16000],
        reps,
        seed: 7,
        c: 1,
        timing: true,
    };
    let out = run_experiment(&cfg)?;
    println!("{setting}, orthogonal mixing, {reps} replications");
    println!("{:>6} {:>8} {:>10} {:>10}", "n", "method", "mean MDI", "mean tMDI");
    for row in &out.summary.rows {
        println!("{:>6} {:>8} {:>10.4} {:>10.1}", row.n, row.method, row.mean_mdi, row.mean_tmdi);
    }
    Ok(())
}
