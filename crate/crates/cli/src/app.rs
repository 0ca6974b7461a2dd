//! Command-line surface. Exit codes: 0 success, 1 configuration or I/O
//! error, 2 numerical failure.

use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use omm_core::calibration::{calibrate_cavity_mechanical_coupling, CalibrationOptions};
use omm_core::model::CALIBRATED_CAVITY_MECHANICAL_COUPLING;
use omm_core::sweep::{run_stability_map, run_sweep_serial, Execution, Provenance};
use omm_core::{run_point, run_sweep, Mode, PointStatus, SweepResult};

use crate::config::{parse_config, parse_pair, ConfigDocument, ConfigError};
use crate::presets;
use crate::table::{Format, Table};

#[derive(Debug, Parser)]
#[command(
    name = "omm",
    version,
    about = "Steady-state entanglement of a six-mode opto-magno-mechanical system"
)]
pub struct Cli {
    /// Worker threads for sweeps. Defaults to one per core.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write the table here instead of stdout.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a single configuration.
    Point {
        /// Configuration file; the built-in default point when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Mode pair such as `m1,m2`. Repeatable. Overrides the file's pairs.
        #[arg(long = "pair", value_parser = parse_pair)]
        pairs: Vec<(Mode, Mode)>,
        #[command(flatten)]
        output: Output,
    },
    /// Run the sweep described by a configuration file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long = "pair", value_parser = parse_pair)]
        pairs: Vec<(Mode, Mode)>,
        /// Evaluate points one after another on the calling thread.
        #[arg(long)]
        serial: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Stability only, over the axes of a configuration file.
    StabilityMap {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        serial: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Run a committed figure preset.
    ReproduceFig {
        /// Preset id, e.g. `fig4`.
        #[arg(required_unless_present = "list")]
        id: Option<String>,
        /// List the available presets.
        #[arg(long)]
        list: bool,
        /// Print the preset's configuration file instead of running it.
        #[arg(long)]
        print_config: bool,
        #[arg(long)]
        serial: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Rerun the calibration of g_A1b = g_A2b and print the selected value.
    CalibrateGab {
        /// Base configuration; the built-in default point when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = CalibrationOptions::default().points_per_decade)]
        points_per_decade: u32,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Config { path: String, source: ConfigError },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] omm_core::Error),
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use omm_core::Error as E;
        match self {
            CliError::Core(E::InvalidConfig(_) | E::Sweep(_) | E::Argument(_)) => 1,
            CliError::Core(_) | CliError::Numerical(_) => 2,
            _ => 1,
        }
    }
}

fn load(path: &Path) -> Result<ConfigDocument, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.into(),
        source,
    })?;
    parse_config(&text).map_err(|source| CliError::Config {
        path: path.display().to_string(),
        source,
    })
}

fn load_or_default(path: Option<&Path>) -> Result<ConfigDocument, CliError> {
    match path {
        Some(p) => load(p),
        None => presets::find("default")
            .expect("default preset is built in")
            .load()
            .map_err(|source| CliError::Config {
                path: "default".into(),
                source,
            }),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write {
            path: path.into(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            // A closed pipe (`omm ... | head`) is not an error worth reporting.
            let _ = stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush());
            Ok(())
        }
    }
}

/// Runs a figure preset and renders its table. Shared with the tests so that
/// what they compare is exactly what the command prints.
pub fn reproduce(id: &str, exec: Execution, format: Format) -> Result<String, CliError> {
    let preset = presets::find(id)
        .ok_or_else(|| CliError::Usage(format!("unknown preset `{id}`; see --list")))?;
    let doc = preset.load().map_err(|source| CliError::Config {
        path: id.into(),
        source,
    })?;
    let result = run(&doc, exec)?;
    Ok(Table::from_sweep(&result).render(format))
}

pub fn run(doc: &ConfigDocument, exec: Execution) -> Result<SweepResult, CliError> {
    let spec = doc.sweep_spec();
    let result = match exec {
        Execution::Serial => run_sweep_serial(&spec)?,
        Execution::Parallel => run_sweep(&spec)?,
    };
    warn_failed(&result);
    Ok(result)
}

fn warn_failed(result: &SweepResult) {
    let failed = result
        .points
        .iter()
        .filter(|p| p.status == PointStatus::Failed)
        .count();
    if failed > 0 {
        log::warn!(
            "{failed} of {} points failed; see the table footer",
            result.points.len()
        );
    }
}

fn execution(serial: bool) -> Execution {
    if serial {
        Execution::Serial
    } else {
        Execution::Parallel
    }
}

pub fn execute(cli: Cli) -> Result<(), CliError> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        // Fails only if a pool already exists, in which case that one is used.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match cli.command {
        Command::Point {
            config,
            pairs,
            output,
        } => {
            let doc = load_or_default(config.as_deref())?;
            let pairs = if !pairs.is_empty() {
                pairs
            } else if !doc.pairs.is_empty() {
                doc.pairs.clone()
            } else {
                vec![(Mode::Magnon1, Mode::Magnon2)]
            };
            let point = run_point(&doc.config, &pairs);
            if point.status == PointStatus::Failed {
                return Err(CliError::Numerical(
                    point
                        .error
                        .unwrap_or_else(|| "point evaluation failed".into()),
                ));
            }
            let table = Table::from_points(
                &[],
                &[point],
                &pairs,
                &Provenance::for_base(&doc.config),
                true,
            );
            emit(&table.render(output.format), output.out.as_deref())
        }
        Command::Sweep {
            config,
            pairs,
            serial,
            output,
        } => {
            let mut doc = load(&config)?;
            if !pairs.is_empty() {
                doc.pairs = pairs;
            }
            let result = run(&doc, execution(serial))?;
            emit(
                &Table::from_sweep(&result).render(output.format),
                output.out.as_deref(),
            )
        }
        Command::StabilityMap {
            config,
            serial,
            output,
        } => {
            let doc = load(&config)?;
            let result = run_stability_map(&doc.config, doc.axes.clone(), execution(serial))?;
            warn_failed(&result);
            emit(
                &Table::from_sweep(&result).render(output.format),
                output.out.as_deref(),
            )
        }
        Command::ReproduceFig {
            id,
            list,
            print_config,
            serial,
            output,
        } => {
            if list {
                let mut text = String::new();
                for p in presets::figures() {
                    text.push_str(&format!("{:<6} {}\n", p.id, p.description()));
                }
                return emit(&text, output.out.as_deref());
            }
            let id = id.expect("clap requires an id without --list");
            if print_config {
                let preset = presets::find(&id)
                    .ok_or_else(|| CliError::Usage(format!("unknown preset `{id}`")))?;
                return emit(preset.text, output.out.as_deref());
            }
            let text = reproduce(&id, execution(serial), output.format)?;
            emit(&text, output.out.as_deref())
        }
        Command::CalibrateGab {
            config,
            points_per_decade,
            output,
        } => {
            let doc = load_or_default(config.as_deref())?;
            let opts = CalibrationOptions {
                points_per_decade,
                ..CalibrationOptions::default()
            };
            let cal = calibrate_cavity_mechanical_coupling(&doc.config, &opts)?;
            let cell = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
            let table = Table {
                header: vec![
                    "g_Ab".into(),
                    "EN_m1_m2".into(),
                    "optimum_Delta_eff_a".into(),
                ],
                rows: cal
                    .candidates
                    .iter()
                    .map(|c| {
                        vec![
                            c.coupling.to_string(),
                            cell(c.e_n),
                            cell(c.optimum_detuning),
                        ]
                    })
                    .collect(),
                footer: vec![
                    format!("selected g_A1b = g_A2b = {} rad/s", cal.selected.coupling),
                    format!("built-in default = {CALIBRATED_CAVITY_MECHANICAL_COUPLING} rad/s"),
                ],
            };
            log::info!("selected g_Ab = {} rad/s", cal.selected.coupling);
            emit(&table.render(output.format), output.out.as_deref())
        }
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
