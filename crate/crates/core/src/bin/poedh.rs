use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use poe_dh::harness::{
    self, format_dh_report, format_transform, load_model, save_model, HarnessError, Model,
    ValidationConfig, FIXTURES,
};
use poe_dh::liegroup::DEFAULT_EPS;
use poe_dh::{census, counts, dh_fk, dh_to_poe, poe_to_dh, ConversionOptions, PoeModel64};

const EXIT_INPUT: u8 = 2;
const EXIT_TOLERANCE: u8 = 3;

/// POE / D-H kinematics toolkit.
///
/// Model arguments accept a file path or `fixture:<name>`.
#[derive(Parser)]
#[command(name = "poedh", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert a POE model to D-H parameters and print the table.
    Convert {
        model: String,
        /// Write the D-H model to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Joint classification threshold.
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
    },
    /// Forward kinematics of a POE or D-H model.
    Fk {
        model: String,
        /// Joint values, comma separated (rad or mm per joint).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
        q: Vec<f64>,
    },
    /// Compare POE and D-H forward kinematics over random configurations.
    Validate {
        poe: String,
        /// D-H model to compare against; converted from the POE model if omitted.
        #[arg(long)]
        dh: Option<String>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sampling interval for every joint, as `lo,hi`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
        range: Option<Vec<f64>>,
        /// Per-configuration errors as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Max/mean summary as CSV.
        #[arg(long)]
        summary_csv: Option<PathBuf>,
        /// Exit with status 3 if either max error exceeds this.
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
    },
    /// Joint census and identifiable-parameter counts.
    Identify {
        model: String,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
    },
    /// List embedded models.
    Fixtures,
}

fn poe_of(model: Model) -> Result<PoeModel64, HarnessError> {
    match model {
        Model::Poe(m) => Ok(m),
        Model::Dh(_) => Err(HarnessError::ModelKind {
            expected: "poe",
            found: "dh",
        }),
    }
}

fn run(cli: Cli) -> Result<u8, HarnessError> {
    match cli.command {
        Command::Convert { model, out, eps } => {
            let poe = poe_of(load_model(&model)?)?;
            let dh = poe_to_dh(&poe, &ConversionOptions { eps })?;
            print!("{}", format_dh_report(&dh));
            if let Some(path) = out {
                save_model(&Model::Dh(dh), &path)?;
                println!("wrote {}", path.display());
            }
        }
        Command::Fk { model, q } => {
            let h = match load_model(&model)? {
                Model::Poe(m) => m.fk(&q)?,
                Model::Dh(m) => dh_fk(&m, &q)?,
            };
            print!("{}", format_transform(&h));
        }
        Command::Validate {
            poe,
            dh,
            samples,
            seed,
            range,
            csv,
            summary_csv,
            tolerance,
            eps,
        } => {
            let poe = poe_of(load_model(&poe)?)?;
            let dh = match dh {
                Some(src) => match load_model(&src)? {
                    Model::Dh(m) => m,
                    Model::Poe(_) => {
                        return Err(HarnessError::ModelKind {
                            expected: "dh",
                            found: "poe",
                        })
                    }
                },
                None => poe_to_dh(&poe, &ConversionOptions { eps })?,
            };
            let mut cfg = ValidationConfig {
                samples,
                seed,
                tolerance,
                ..Default::default()
            };
            if let Some(r) = range {
                let [lo, hi] = r[..] else {
                    return Err(HarnessError::InvalidConfig("--range takes `lo,hi`".into()));
                };
                cfg.joint_range = (lo, hi);
            }
            let report = harness::validate(&poe, &dh, &cfg)?;
            let s = &report.summary;
            println!("samples  {}", s.samples);
            println!("e_R rad  max {:.3e}  mean {:.3e}", s.max_e_r, s.mean_e_r);
            println!("e_t mm   max {:.3e}  mean {:.3e}", s.max_e_t, s.mean_e_t);
            if let Some(path) = csv {
                harness::write_csv(&report.records, &path)?;
            }
            if let Some(path) = summary_csv {
                harness::write_summary_csv(s, &path)?;
            }
            if let Some(tol) = tolerance {
                if !s.within(tol) {
                    eprintln!("tolerance {tol:e} exceeded");
                    return Ok(EXIT_TOLERANCE);
                }
                println!("within tolerance {tol:e}");
            }
        }
        Command::Identify { model, eps } => {
            let poe = match load_model(&model)? {
                Model::Poe(m) => m,
                Model::Dh(m) => dh_to_poe(&m),
            };
            print!("{}", counts(census(&poe, eps)?));
            println!();
        }
        Command::Fixtures => {
            for (name, description, _) in FIXTURES {
                println!("fixture:{name:<20} {description}");
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { EXIT_INPUT } else { 1 })
        }
    }
}
