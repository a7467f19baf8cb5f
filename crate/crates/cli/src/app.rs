//! Command-line interface definition and dispatch.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::{output, run, CliError, Scenario, ScenarioConfig};
use clap::{Parser, Subcommand, ValueEnum};
use lgryd::coupling::{composite_totals, electronic_mf_totals, electronic_totals};
use lgryd::HalfInt;

#[derive(Parser, Debug)]
#[command(
    name = "lgryd",
    version,
    about = "LG-beam channels and Rabi frequencies for trapped Rydberg atoms"
)]
pub struct Cli {
    /// Scenario file (TOML, dotted keys). Defaults to the shipped scenario.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory, overriding compute.out_dir.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Gaussian-envelope truncation order.
    #[arg(long = "q-max", global = true)]
    pub q_max: Option<u32>,
    /// Topological charges, e.g. "1,2,3,4" or "-1,1".
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub l: Option<Vec<i32>>,
    /// Polarization components, e.g. "1" or "-1,1".
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub sigma: Option<Vec<i32>>,
    /// Format of the table written to stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Csv,
    /// No table on stdout; files only.
    None,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the channels allowed by the selection rules.
    Channels,
    /// Matrix elements and Rabi frequencies per channel, with totals.
    Rabi,
    /// Rabi frequency against topological charge, CSV plus SVG plot.
    Sweep,
    /// Dump a radial wavefunction R(r).
    Wavefunction {
        /// Principal quantum number, defaults to atom.n.
        #[arg(long)]
        n: Option<u32>,
        /// Orbital quantum number of the state.
        #[arg(long)]
        orbital: Option<u32>,
        /// Total angular momentum, defaults to atom.j (or l + 1/2 for another l).
        #[arg(long)]
        j: Option<f64>,
    },
    /// Run the verification suites.
    Verify,
}

fn load_config(cli: &Cli) -> Result<ScenarioConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => ScenarioConfig::load(path)?,
        None => {
            let local = Path::new("config/default.toml");
            if local.is_file() {
                ScenarioConfig::load(local)?
            } else {
                ScenarioConfig::shipped_default()
            }
        }
    };
    if let Some(q) = cli.q_max {
        cfg.beam.q_max = q;
    }
    if let Some(out) = &cli.out {
        cfg.compute.out_dir = out.display().to_string();
    }
    if let Some(ls) = &cli.l {
        if ls.is_empty() {
            return Err(CliError::Config {
                key: "--l".to_string(),
                message: "empty list".to_string(),
            });
        }
        cfg.beam.charge = ls[0];
        cfg.compute.l_sweep = ls.clone();
    }
    if let Some(s) = &cli.sigma {
        if let Some(&first) = s.first() {
            cfg.beam.sigma = first;
        }
    }
    cfg.validate()?;
    if let Some(s) = &cli.sigma {
        if let Some(bad) = s.iter().find(|s| !(-1..=1).contains(*s)) {
            return Err(CliError::Config {
                key: "--sigma".to_string(),
                message: format!("must be -1, 0 or 1, got {bad}"),
            });
        }
    }
    Ok(cfg)
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}

fn emit(cli: &Cli, stdout: &mut dyn Write, text: &str) -> Result<(), CliError> {
    if matches!(cli.format, Format::Csv) {
        stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io(Path::new("<stdout>"), e))?;
    }
    Ok(())
}

/// Runs one command, writing the main table to `stdout` and files to the
/// output directory.
pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let cfg = load_config(cli)?;
    let out_dir = PathBuf::from(&cfg.compute.out_dir);
    let mut scenario = Scenario::new(cfg.clone());
    if let Some(ls) = &cli.l {
        scenario.charges = ls.clone();
    }
    if let Some(s) = &cli.sigma {
        scenario.sigmas = s.clone();
    }
    match &cli.command {
        Command::Channels => {
            let csv = output::channels_csv(&run::run_channels(&scenario)?)?;
            let path = write_file(&out_dir, "channels.csv", &csv)?;
            emit(cli, stdout, &csv)?;
            eprintln!("wrote {}", path.display());
        }
        Command::Rabi => {
            let results = run::run_rabi(&scenario)?;
            let csv = output::rabi_csv(&results)?;
            let totals = output::totals_csv(
                &composite_totals(&results),
                &electronic_mf_totals(&results),
                &electronic_totals(&results),
            )?;
            let a = write_file(&out_dir, "rabi.csv", &csv)?;
            let b = write_file(&out_dir, "rabi_totals.csv", &totals)?;
            emit(cli, stdout, &csv)?;
            eprintln!("wrote {} and {}", a.display(), b.display());
        }
        Command::Sweep => {
            let rows = run::run_sweep(&cfg)?;
            let csv = output::sweep_csv(&rows)?;
            let a = write_file(&out_dir, "sweep.csv", &csv)?;
            let b = write_file(&out_dir, "sweep.svg", &output::sweep_svg(&rows, cfg.compute.log_scale))?;
            emit(cli, stdout, &csv)?;
            eprintln!("wrote {} and {}", a.display(), b.display());
        }
        Command::Wavefunction { n, orbital, j } => {
            let n = n.unwrap_or(cfg.atom.n);
            let l = orbital.unwrap_or(cfg.atom.l);
            let j = match j {
                Some(j) => HalfInt::from_f64(*j).map_err(|_| CliError::Config {
                    key: "--j".to_string(),
                    message: format!("{j} is not a half-integer"),
                })?,
                None if l == cfg.atom.l => HalfInt::from_f64(cfg.atom.j).expect("validated"),
                None => HalfInt::from_twice(2 * l as i32 + 1),
            };
            let (radii, values) = run::run_wavefunction(&cfg, n, l, j)?;
            let csv = output::wavefunction_csv(&radii, &values)?;
            let name = format!("wavefunction_n{n}_l{l}_j{}.csv", j.to_string().replace('/', "_"));
            let path = write_file(&out_dir, &name, &csv)?;
            emit(cli, stdout, &csv)?;
            eprintln!("wrote {}", path.display());
        }
        Command::Verify => {
            let reports = run::run_verify(&cfg);
            let mut text = String::new();
            for r in &reports {
                text.push_str(&format!("{r}\n"));
            }
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::io(Path::new("<stdout>"), e))?;
            write_file(&out_dir, "verify.txt", &text)?;
            let failed: Vec<&str> = reports.iter().filter(|r| !r.passed).map(|r| r.name).collect();
            if !failed.is_empty() {
                return Err(CliError::Verification(failed.join(", ")));
            }
        }
    }
    Ok(())
}
