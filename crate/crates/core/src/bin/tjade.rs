use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use tjade::cli::{
    cmd_apply, cmd_asv, cmd_mdi, cmd_simulate, exit_code, format_sig12, parse_dims, resolve_setting, ApplyArgs,
    DataFormat, SimulateArgs,
};
use tjade::{Method, Variant};

#[derive(Parser)]
#[command(name = "tjade", version, about = "Blind source separation for tensor-valued data")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Semeion,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a simulation study described by a JSON config.
    Simulate {
        config: PathBuf,
        #[arg(long)]
        seed: u64,
        /// Override the replication count of the config.
        #[arg(long)]
        reps: Option<usize>,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Fit an estimator to a data file and write scores, kurtoses and the model.
    Apply {
        data: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Tensor dims for csv input, e.g. 3,4.
        #[arg(long)]
        dims: Option<String>,
        #[arg(long, default_value = "tjade")]
        method: String,
        #[arg(long, default_value_t = 1)]
        c: u8,
        /// Semeion only: comma-separated digits to keep.
        #[arg(long)]
        digits: Option<String>,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Minimum distance index of an estimate (CSV matrix or model JSON) against a mixing matrix.
    Mdi {
        estimate: PathBuf,
        mixing: PathBuf,
        /// Sample size for the transformed index.
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Limiting variances of the unmixing entries for a setting name or JSON file.
    Asv { setting: String },
}

fn run(cli: Cli) -> tjade::Result<()> {
    match cli.cmd {
        Cmd::Simulate { config, seed, reps, out } => {
            let res = cmd_simulate(&SimulateArgs { config, seed, reps, out: out.clone() })?;
            let failed: usize = res.summary.rows.iter().map(|r| r.nonconverged + r.errors).sum();
            eprintln!("wrote {} rows to {} ({failed} non-converged or failed)", res.results.len(), out.display());
        }
        Cmd::Apply { data, format, dims, method, c, digits, out } => {
            let dims = dims.as_deref().map(parse_dims).transpose()?;
            let digits = digits
                .map(|d| {
                    d.split(',')
                        .map(|x| x.trim().parse::<u8>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| tjade::Error::Argument(format!("bad digits `{d}`")))
                })
                .transpose()?;
            let format = match format {
                Format::Semeion => DataFormat::Semeion,
                Format::Csv => DataFormat::Csv,
            };
            let args = ApplyArgs {
                data,
                format,
                dims,
                method: Method::parse(&method)?,
                c: Variant::from_index(c)?,
                digits,
                out_prefix: out,
            };
            let res = cmd_apply(&args)?;
            for f in &res.files {
                eprintln!("wrote {}", f.display());
            }
        }
        Cmd::Mdi { estimate, mixing, n } => {
            let (d, t) = cmd_mdi(&estimate, &mixing, n)?;
            println!("mdi,tmdi");
            println!("{},{}", format_sig12(d), format_sig12(t));
        }
        Cmd::Asv { setting } => print!("{}", cmd_asv(&resolve_setting(&setting)?)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
