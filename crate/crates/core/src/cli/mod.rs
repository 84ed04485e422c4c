//! Command implementations behind the `tjade` binary. Each command is a plain
//! function so it can be driven from tests and examples as well.

mod data;

pub use data::{
    parse_dims, parse_matrix_csv, parse_semeion, parse_tensor_csv, write_matrix_csv, write_semeion,
    write_tensor_csv, SemeionRecord, SEMEION_FIELDS, SEMEION_SIDE,
};

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ica::{element_kurtosis, fit, JadeOptions, Method, Sample, UnmixingModel, Variant};
use crate::matrix::Matrix;
use crate::metrics::{mdi, transformed_mdi, GainMatrix};
use crate::simlab::{asv_profile, asv_table, run_experiment, ExperimentConfig, ExperimentOutput, SettingSpec};
use crate::tensor::Tensor;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// Process exit code for an error: 2 for bad input, 3 for numerical trouble.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Singular { .. } | Error::NonFinite(_) | Error::ZeroRow(_) | Error::UndefinedVariance { .. } => {
            EXIT_NUMERIC
        }
        _ => EXIT_INPUT,
    }
}

pub const MODEL_SCHEMA: u32 = 1;

/// On-disk wrapper of a fitted model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub schema: u32,
    #[serde(flatten)]
    pub model: UnmixingModel,
}

pub fn model_to_json(model: &UnmixingModel) -> Result<String> {
    Ok(serde_json::to_string_pretty(&ModelFile { schema: MODEL_SCHEMA, model: model.clone() })?)
}

pub fn model_from_json(text: &str) -> Result<UnmixingModel> {
    let file: ModelFile =
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
    if file.schema != MODEL_SCHEMA {
        return Err(Error::Argument(format!("unsupported model schema {}", file.schema)));
    }
    Ok(file.model)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

/// `results.csv` → `results_summary.csv`.
pub fn summary_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}_summary.csv"))
}

#[derive(Clone, Debug)]
pub struct SimulateArgs {
    pub config: PathBuf,
    pub seed: u64,
    pub reps: Option<usize>,
    pub out: PathBuf,
}

/// Runs a study from a JSON config and writes the results CSV next to a
/// `_summary.csv` of per-cell means.
pub fn cmd_simulate(args: &SimulateArgs) -> Result<ExperimentOutput> {
    let mut cfg = ExperimentConfig::from_json(&read(&args.config)?)?;
    cfg.seed = args.seed;
    if let Some(r) = args.reps {
        cfg.reps = r;
    }
    let out = run_experiment(&cfg)?;
    out.write_results(fs::File::create(&args.out)?)?;
    out.write_summary(fs::File::create(summary_path(&args.out))?)?;
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DataFormat {
    Semeion,
    Csv,
}

#[derive(Clone, Debug)]
pub struct ApplyArgs {
    pub data: PathBuf,
    pub format: DataFormat,
    /// Required for CSV input.
    pub dims: Option<Vec<usize>>,
    pub method: Method,
    pub c: Variant,
    /// Semeion only: keep these digits.
    pub digits: Option<Vec<u8>>,
    pub out_prefix: PathBuf,
}

/// What `apply` produced; the same content is written to disk.
#[derive(Clone, Debug)]
pub struct ApplyOutput {
    pub model: UnmixingModel,
    pub scores: Sample,
    /// Excess kurtosis of every score element, in vectorized order.
    pub kurtosis: Tensor,
    pub labels: Option<Vec<u8>>,
    pub files: Vec<PathBuf>,
}

impl ApplyOutput {
    /// Vectorized indices of the `count` score elements with the lowest kurtosis.
    pub fn lowest_kurtosis(&self, count: usize) -> Vec<usize> {
        let k = self.kurtosis.vectorize();
        let mut idx: Vec<usize> = (0..k.len()).collect();
        idx.sort_by(|&a, &b| k[a].total_cmp(&k[b]).then(a.cmp(&b)));
        idx.truncate(count);
        idx
    }
}

/// Loads semeion records as a sample, optionally keeping only some digits.
pub fn load_semeion(path: &Path, digits: Option<&[u8]>) -> Result<(Sample, Vec<u8>)> {
    let recs = parse_semeion(&read(path)?)?;
    let keep: Vec<&SemeionRecord> =
        recs.iter().filter(|r| digits.is_none_or(|d| d.contains(&r.label))).collect();
    let labels = keep.iter().map(|r| r.label).collect();
    let images: Vec<Tensor> = keep.iter().map(|r| r.image.clone()).collect();
    Ok((Sample::from_tensors(&images)?, labels))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

/// Fits a model to a data file. Writes `<prefix>_scores.csv` (headerless,
/// one vectorized component tensor per row), `<prefix>_kurtosis.csv`,
/// `<prefix>_model.json` and, for semeion input, `<prefix>_labels.csv`.
pub fn cmd_apply(args: &ApplyArgs) -> Result<ApplyOutput> {
    let (sample, labels) = match args.format {
        DataFormat::Semeion => {
            let (s, l) = load_semeion(&args.data, args.digits.as_deref())?;
            (s, Some(l))
        }
        DataFormat::Csv => {
            let dims = args.dims.as_ref().ok_or_else(|| Error::Argument("--dims is required for csv data".into()))?;
            (parse_tensor_csv(&read(&args.data)?, dims)?, None)
        }
    };
    let model = fit(&sample, args.method, &JadeOptions::with_variant(args.c))?;
    let scores = model.transform_sample(&sample)?;
    let kurtosis = element_kurtosis(&scores);

    let mut files = Vec::new();
    let mut emit = |suffix: &str, body: String| -> Result<()> {
        let path = with_suffix(&args.out_prefix, suffix);
        fs::write(&path, body)?;
        files.push(path);
        Ok(())
    };
    emit("_scores.csv", write_tensor_csv(&scores))?;
    let mut kt = String::from("index,kurtosis\n");
    for (i, k) in kurtosis.vectorize().iter().enumerate() {
        kt.push_str(&format!("{i},{k}\n"));
    }
    emit("_kurtosis.csv", kt)?;
    emit("_model.json", model_to_json(&model)?)?;
    if let Some(l) = &labels {
        let body: String = l.iter().map(|d| format!("{d}\n")).collect();
        emit("_labels.csv", body)?;
    }
    Ok(ApplyOutput { model, scores, kurtosis, labels, files })
}

/// Reads an unmixing estimate: a model JSON (its full Kronecker unmixing
/// matrix) or a CSV matrix.
pub fn load_estimate(path: &Path) -> Result<Matrix> {
    let text = read(path)?;
    if path.extension().is_some_and(|e| e == "json") {
        Ok(model_from_json(&text)?.kron_unmixing())
    } else {
        parse_matrix_csv(&text)
    }
}

/// Minimum distance index of `estimate · mixing`, and its transform for
/// sample size `n`.
pub fn cmd_mdi(estimate: &Path, mixing: &Path, n: usize) -> Result<(f64, f64)> {
    let phi = load_estimate(estimate)?;
    let omega = parse_matrix_csv(&read(mixing)?)?;
    if phi.cols() != omega.rows() || !phi.is_square() || !omega.is_square() {
        return Err(Error::shape(format!(
            "estimate is {}x{} but mixing is {}x{}",
            phi.rows(),
            phi.cols(),
            omega.rows(),
            omega.cols()
        )));
    }
    let d = mdi(&GainMatrix::new(phi.matmul(&omega)?)?)?;
    Ok((d, transformed_mdi(d, n, phi.rows())))
}

/// Twelve significant digits.
pub fn format_sig12(v: f64) -> String {
    format!("{v:.11e}")
}

/// Resolves a built-in setting name, a JSON setting object, or an
/// experiment config (its first setting).
pub fn resolve_setting(spec: &str) -> Result<SettingSpec> {
    if let Ok(s) = SettingSpec::by_name(spec) {
        return Ok(s);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(Error::Unknown { kind: "setting", name: spec.to_string() });
    }
    let text = read(path)?;
    if let Ok(cfg) = ExperimentConfig::from_json(&text) {
        return cfg.settings()?.into_iter().next().ok_or_else(|| Error::Argument("config has no setting".into()));
    }
    let s: SettingSpec = serde_json::from_str(&text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
    SettingSpec::new(s.name, s.dims, s.cells)
}

/// CSV table `mode,k,l,asv`; pairs whose variance is undefined read `undefined`.
/// Indices are 1-based.
pub fn cmd_asv(setting: &SettingSpec) -> Result<String> {
    let table = asv_table(&asv_profile(setting)?);
    let mut out = String::from("mode,k,l,asv\n");
    for row in table {
        let v = row.value.map_or_else(|| "undefined".to_string(), |v| v.to_string());
        out.push_str(&format!("{},{},{},{}\n", row.mode, row.k + 1, row.l + 1, v));
    }
    Ok(out)
}
