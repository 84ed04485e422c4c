//! Monte-Carlo comparison of the estimators.
//!
//! Each (setting, n, replication) triple owns an independent random stream,
//! so results do not depend on scheduling. Within a replication one source
//! sample is drawn and then mixed by every requested mixing kind; each
//! mixing kind draws one set of matrices shared by all methods.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::mixing::MixingKind;
use super::settings::SettingSpec;
use crate::error::{Error, Result};
use crate::ica::{fit, JadeOptions, Method, Variant};
use crate::metrics::{mdi, model_gain, transformed_mdi};

pub const RESULTS_HEADER: &str = "method,mixing,setting,n,rep,mdi,tmdi,converged,ms";
pub const SUMMARY_HEADER: &str = "setting,mixing,method,n,rows,mean_mdi,mean_tmdi,nonconverged,errors";

/// A built-in setting name or an explicit layout.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SettingRef {
    Name(String),
    Custom(SettingSpec),
}

impl SettingRef {
    pub fn resolve(&self) -> Result<SettingSpec> {
        match self {
            SettingRef::Name(n) => SettingSpec::by_name(n),
            SettingRef::Custom(s) => SettingSpec::new(s.name.clone(), s.dims.clone(), s.cells.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    pub fn to_vec(&self) -> Vec<T> {
        match self {
            OneOrMany::One(t) => vec![t.clone()],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

fn default_reps() -> usize {
    100
}

fn default_c() -> u8 {
    1
}

fn default_true() -> bool {
    true
}

/// Study description, read from JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub setting: OneOrMany<SettingRef>,
    pub mixing: Vec<MixingKind>,
    pub methods: Vec<Method>,
    pub ns: Vec<usize>,
    #[serde(default = "default_reps")]
    pub reps: usize,
    #[serde(default)]
    pub seed: u64,
    /// Cumulant variant used by the JADE methods.
    #[serde(default = "default_c")]
    pub c: u8,
    /// Record wall time per fit. Turn off for byte-identical reruns.
    #[serde(default = "default_true")]
    pub timing: bool,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)
            .map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.mixing.is_empty() || self.methods.is_empty() || self.ns.is_empty() {
            return Err(Error::Argument("mixing, methods and ns must be non-empty".into()));
        }
        if self.ns.iter().any(|&n| n < 2) {
            return Err(Error::Argument("every sample size must be at least 2".into()));
        }
        Variant::from_index(self.c)?;
        for s in self.setting.to_vec() {
            s.resolve()?;
        }
        Ok(())
    }

    pub fn settings(&self) -> Result<Vec<SettingSpec>> {
        self.setting.to_vec().iter().map(SettingRef::resolve).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FitStatus {
    Converged,
    NotConverged,
    /// The fit or the index computation returned an error or a non-finite value.
    Error,
}

impl FitStatus {
    pub fn label(self) -> &'static str {
        match self {
            FitStatus::Converged => "true",
            FitStatus::NotConverged => "false",
            FitStatus::Error => "error",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "true" => Some(FitStatus::Converged),
            "false" => Some(FitStatus::NotConverged),
            "error" => Some(FitStatus::Error),
            _ => None,
        }
    }
}

/// One fitted (method, mixing, setting, n, replication) cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub method: Method,
    pub mixing: MixingKind,
    pub setting: String,
    pub n: usize,
    pub rep: usize,
    /// NaN when `status` is `Error`.
    pub mdi: f64,
    pub tmdi: f64,
    pub status: FitStatus,
    pub ms: f64,
}

impl ExperimentResult {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.method,
            self.mixing,
            self.setting,
            self.n,
            self.rep,
            self.mdi,
            self.tmdi,
            self.status.label(),
            self.ms
        )
    }

    pub fn parse_csv_line(line: &str) -> Result<Self> {
        let f: Vec<&str> = line.split(',').collect();
        let bad = |what: &str| Error::Argument(format!("bad {what} in results line `{line}`"));
        if f.len() != 9 {
            return Err(bad("field count"));
        }
        Ok(Self {
            method: Method::parse(f[0])?,
            mixing: f[1].parse()?,
            setting: f[2].to_string(),
            n: f[3].parse().map_err(|_| bad("n"))?,
            rep: f[4].parse().map_err(|_| bad("rep"))?,
            mdi: f[5].parse().map_err(|_| bad("mdi"))?,
            tmdi: f[6].parse().map_err(|_| bad("tmdi"))?,
            status: FitStatus::parse(f[7]).ok_or_else(|| bad("converged"))?,
            ms: f[8].parse().map_err(|_| bad("ms"))?,
        })
    }
}

/// Per (setting, mixing, method, n) aggregate. Means are over rows that
/// produced a finite index, converged or not.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryRow {
    pub setting: String,
    pub mixing: MixingKind,
    pub method: Method,
    pub n: usize,
    pub rows: usize,
    pub mean_mdi: f64,
    pub mean_tmdi: f64,
    pub nonconverged: usize,
    pub errors: usize,
}

impl SummaryRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.setting,
            self.mixing,
            self.method,
            self.n,
            self.rows,
            self.mean_mdi,
            self.mean_tmdi,
            self.nonconverged,
            self.errors
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub rows: Vec<SummaryRow>,
}

impl Summary {
    pub fn from_results(results: &[ExperimentResult]) -> Self {
        let mut cells: BTreeMap<(String, MixingKind, Method, usize), Vec<&ExperimentResult>> = BTreeMap::new();
        let mut order = Vec::new();
        for r in results {
            let key = (r.setting.clone(), r.mixing, r.method, r.n);
            let e = cells.entry(key.clone()).or_default();
            if e.is_empty() {
                order.push(key);
            }
            e.push(r);
        }
        let rows = order
            .into_iter()
            .map(|key| {
                let rs = &cells[&key];
                let ok: Vec<_> = rs.iter().filter(|r| r.status != FitStatus::Error).collect();
                let mean = |f: &dyn Fn(&ExperimentResult) -> f64| {
                    if ok.is_empty() {
                        f64::NAN
                    } else {
                        ok.iter().map(|r| f(r)).sum::<f64>() / ok.len() as f64
                    }
                };
                SummaryRow {
                    setting: key.0.clone(),
                    mixing: key.1,
                    method: key.2,
                    n: key.3,
                    rows: rs.len(),
                    mean_mdi: mean(&|r| r.mdi),
                    mean_tmdi: mean(&|r| r.tmdi),
                    nonconverged: rs.iter().filter(|r| r.status == FitStatus::NotConverged).count(),
                    errors: rs.iter().filter(|r| r.status == FitStatus::Error).count(),
                }
            })
            .collect();
        Self { rows }
    }

    pub fn get(&self, setting: &str, mixing: MixingKind, method: Method, n: usize) -> Option<&SummaryRow> {
        self.rows
            .iter()
            .find(|r| r.setting == setting && r.mixing == mixing && r.method == method && r.n == n)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentOutput {
    pub results: Vec<ExperimentResult>,
    pub summary: Summary,
}

impl ExperimentOutput {
    pub fn write_results<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{RESULTS_HEADER}")?;
        for r in &self.results {
            writeln!(w, "{}", r.csv_line())?;
        }
        Ok(())
    }

    pub fn write_summary<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{SUMMARY_HEADER}")?;
        for r in &self.summary.rows {
            writeln!(w, "{}", r.csv_line())?;
        }
        Ok(())
    }
}

/// Random-stream domains.
const SOURCE_STREAM: u64 = 1;
const MIXING_STREAM: u64 = 2;

/// FNV-1a, used to give each named setting its own streams.
fn name_hash(s: &str) -> u64 {
    s.bytes().fold(0xcbf29ce484222325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

/// Independent generator for one (seed, setting, n, replication, domain).
pub fn substream(seed: u64, setting: &str, n: usize, rep: usize, domain: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&name_hash(setting).to_le_bytes());
    key[16..24].copy_from_slice(&(n as u64).to_le_bytes());
    key[24..32].copy_from_slice(&(rep as u64).to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(domain);
    rng
}

/// Stream for the mixing matrices of one mixing kind.
fn mixing_domain(kind: MixingKind) -> u64 {
    MIXING_STREAM + 16 * (kind as u64 + 1)
}

/// One replication of one setting at one sample size.
pub fn run_replication(
    setting: &SettingSpec,
    n: usize,
    rep: usize,
    cfg: &ExperimentConfig,
) -> Result<Vec<ExperimentResult>> {
    let opts = JadeOptions::with_variant(Variant::from_index(cfg.c)?);
    let z = setting.draw(n, &mut substream(cfg.seed, &setting.name, n, rep, SOURCE_STREAM))?;
    let p: usize = setting.dims.iter().product();
    let mut rows = Vec::with_capacity(cfg.mixing.len() * cfg.methods.len());
    for &kind in &cfg.mixing {
        let mut rng = substream(cfg.seed, &setting.name, n, rep, mixing_domain(kind));
        let mixers = kind.generate(&setting.dims, &mut rng);
        let x = z.multi_mode_product(&mixers)?;
        for &method in &cfg.methods {
            let start = Instant::now();
            let outcome = fit(&x, method, &opts).and_then(|model| {
                let d = mdi(&model_gain(&model, &mixers)?)?;
                Ok((d, model.converged()))
            });
            let ms = if cfg.timing { start.elapsed().as_secs_f64() * 1e3 } else { 0.0 };
            let (mdi_v, status) = match outcome {
                Ok((d, _)) if !d.is_finite() => (f64::NAN, FitStatus::Error),
                Ok((d, true)) => (d, FitStatus::Converged),
                Ok((d, false)) => (d, FitStatus::NotConverged),
                Err(_) => (f64::NAN, FitStatus::Error),
            };
            rows.push(ExperimentResult {
                method,
                mixing: kind,
                setting: setting.name.clone(),
                n,
                rep,
                mdi: mdi_v,
                tmdi: transformed_mdi(mdi_v, n, p),
                status,
                ms,
            });
        }
    }
    Ok(rows)
}

/// Runs every (setting, n, replication) in parallel; rows come back in
/// (setting, n, rep, mixing, method) order regardless of scheduling.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    cfg.validate()?;
    let settings = cfg.settings()?;
    let tasks: Vec<(usize, usize, usize)> = settings
        .iter()
        .enumerate()
        .flat_map(|(s, _)| {
            cfg.ns.iter().flat_map(move |&n| (0..cfg.reps).map(move |rep| (s, n, rep)))
        })
        .collect();
    let chunks: Vec<Vec<ExperimentResult>> = tasks
        .par_iter()
        .map(|&(s, n, rep)| run_replication(&settings[s], n, rep, cfg))
        .collect::<Result<_>>()?;
    let results: Vec<ExperimentResult> = chunks.into_iter().flatten().collect();
    let summary = Summary::from_results(&results);
    Ok(ExperimentOutput { results, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> ExperimentConfig {
        ExperimentConfig::from_json(
            r#"{"setting": "matrix", "mixing": ["identity", "orthogonal"],
                "methods": ["tjade", "vfobi"], "ns": [200], "reps": 2, "seed": 7, "timing": false}"#,
        )
        .unwrap()
    }

    #[test]
    fn row_count_and_order() {
        let out = run_experiment(&small()).unwrap();
        assert_eq!(out.results.len(), 2 * 2 * 2);
        assert_eq!(out.results[0].method, Method::Tjade);
        assert_eq!(out.results[1].method, Method::Vfobi);
        assert_eq!(out.results[2].mixing, MixingKind::Orthogonal);
        assert_eq!(out.results[4].rep, 1);
        assert_eq!(out.summary.rows.len(), 4);
    }

    #[test]
    fn csv_lines_roundtrip() {
        let out = run_experiment(&small()).unwrap();
        for r in &out.results {
            let back = ExperimentResult::parse_csv_line(&r.csv_line()).unwrap();
            assert_eq!(&back, r);
        }
    }

    #[test]
    fn config_errors_carry_a_line() {
        let err = ExperimentConfig::from_json("{\n\"setting\": \"matrix\",\n\"mixing\": [\"spin\"]\n}").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = ExperimentConfig::from_json(
            r#"{"setting": "matrix", "mixing": ["identity"], "methods": ["tjade"], "ns": [100], "c": 3}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Argument(_)));
    }

    #[test]
    fn streams_differ_by_every_coordinate() {
        use rand::Rng;
        let base = substream(1, "a", 10, 0, 1).random::<u64>();
        assert_ne!(base, substream(2, "a", 10, 0, 1).random::<u64>());
        assert_ne!(base, substream(1, "b", 10, 0, 1).random::<u64>());
        assert_ne!(base, substream(1, "a", 11, 0, 1).random::<u64>());
        assert_ne!(base, substream(1, "a", 10, 1, 1).random::<u64>());
        assert_ne!(base, substream(1, "a", 10, 0, 2).random::<u64>());
        assert_eq!(base, substream(1, "a", 10, 0, 1).random::<u64>());
    }
}
