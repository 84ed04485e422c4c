//! Runs a study from a JSON config and prints the per-cell summary.
//! Usage: simulation_study [config.json] [reps]

use tjade::simlab::{run_experiment, ExperimentConfig};

fn main() -> tjade::Result<()> {
    let mut args = std::env::args().skip(1);
    let text = match args.next() {
        Some(path) => std::fs::read_to_string(path)?,
        None => r#"{"setting": ["setting1", "setting2", "setting3"], "mixing": ["identity"],
                    "methods": ["tjade", "tfobi", "vjade", "vfobi"], "ns": [1000, 4000], "reps": 5}"#
            .to_string(),
    };
    let mut cfg = ExperimentConfig::from_json(&text)?;
    if let Some(r) = args.next().and_then(|r| r.parse().ok()) {
        cfg.reps = r;
    }
    let out = run_experiment(&cfg)?;
    out.write_summary(std::io::stdout().lock())?;
    Ok(())
}
