//! Thin CLI over the library: coherence sweeps, NV time series, the
//! verification suite, and single-point tables.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage/config error,
//! 3 data-file error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use deutsch_dephasing::config::{self, FileConfig};
use deutsch_dephasing::env::{self, SpinBathSpec};
use deutsch_dephasing::error::Error;
use deutsch_dephasing::sweep;
use deutsch_dephasing::verify;

#[derive(Parser)]
#[command(name = "deutsch-dephasing", version, about)]
struct Cli {
    /// TOML config file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Default)]
struct CommonArgs {
    /// Functions to evaluate (f0..f3); default all four.
    #[arg(long, value_delimiter = ',')]
    functions: Vec<String>,
    /// Engines (classical, quantum-exponential); default both.
    #[arg(long, value_delimiter = ',')]
    engines: Vec<String>,
    #[arg(long)]
    grid_start: Option<f64>,
    #[arg(long)]
    grid_stop: Option<f64>,
    #[arg(long)]
    grid_count: Option<usize>,
    /// Output file; stdout when omitted.
    #[arg(long, short)]
    output: Option<String>,
}

#[derive(Args, Default)]
struct BathArgs {
    /// Bath table for both qubits; the bundled 32-spin table when omitted.
    #[arg(long)]
    bath: Option<String>,
    /// Bath table for qubit A only.
    #[arg(long)]
    bath_a: Option<String>,
    /// Bath table for qubit B only.
    #[arg(long)]
    bath_b: Option<String>,
    /// Magnetic field in tesla.
    #[arg(long)]
    magnetic_field_t: Option<f64>,
    /// Uniform nuclear polarization in [-1, 1].
    #[arg(long)]
    polarization: Option<f64>,
    /// Convert gamma_n with a 2 pi factor (angular convention).
    #[arg(long)]
    angular_zeeman: Option<bool>,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, default_value = "f0")]
    function: String,
    #[arg(long, default_value_t = 1.0)]
    c_a: f64,
    #[arg(long, default_value_t = 1.0)]
    c_b: f64,
    /// Defaults to c_a^2 when omitted.
    #[arg(long)]
    d2_a: Option<f64>,
    /// Defaults to c_b^2 when omitted.
    #[arg(long)]
    d2_b: Option<f64>,
    /// Emit sampled counts with this many shots.
    #[arg(long)]
    shots: Option<u64>,
    /// PRNG seed; required with --shots.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Two-cycle probability curves as a function of the coherence parameter c.
    SweepC(CommonArgs),
    /// NV spin-bath decoherence factors and probability curves over time.
    NvSweep {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        bath: BathArgs,
    },
    /// Run the cross-engine and algebraic consistency suite.
    Verify,
    /// Print the closed-form tables at one parameter point.
    Table(TableArgs),
}

fn common_to_flags(c: &CommonArgs) -> FileConfig {
    FileConfig {
        functions: (!c.functions.is_empty()).then(|| c.functions.clone()),
        engines: (!c.engines.is_empty()).then(|| c.engines.clone()),
        grid_start: c.grid_start,
        grid_stop: c.grid_stop,
        grid_count: c.grid_count,
        output: c.output.clone(),
        ..Default::default()
    }
}

fn load_bath(path: Option<&str>, polarization: f64, zeeman: f64) -> Result<SpinBathSpec, Error> {
    match path {
        None => env::nv32_bath(polarization, zeeman),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Parse {
                line: 0,
                msg: format!("cannot read '{p}': {e}"),
            })?;
            env::load_bath_table(&text, polarization, zeeman)
        }
    }
}

fn emit(output: Option<&str>, text: &str) -> Result<(), Error> {
    match output {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Parse {
            line: 0,
            msg: format!("cannot write '{path}': {e}"),
        }),
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let file_cfg = match &cli.config {
        None => FileConfig::default(),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
                line: 0,
                msg: format!("cannot read config '{}': {e}", path.display()),
            })?;
            FileConfig::from_toml(&text)?
        }
    };

    match cli.cmd {
        Cmd::SweepC(common) => {
            let cfg = config::resolve(&file_cfg, &common_to_flags(&common), (0.0, 1.0, 101))?;
            let csv = sweep::sweep_c(&cfg.functions, &cfg.engines, &cfg.grid)?;
            emit(cfg.output.as_deref(), &csv)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::NvSweep { common, bath } => {
            let mut flags = common_to_flags(&common);
            flags.bath = bath.bath.clone();
            flags.bath_a = bath.bath_a.clone();
            flags.bath_b = bath.bath_b.clone();
            flags.magnetic_field_t = bath.magnetic_field_t;
            flags.polarization = bath.polarization;
            flags.angular_zeeman = bath.angular_zeeman;
            let cfg = config::resolve(&file_cfg, &flags, (0.0, 10.0, 101))?;
            let zeeman = env::zeeman_frequency(cfg.magnetic_field_t, cfg.angular_zeeman);
            let bath_a = load_bath(cfg.bath_a.as_deref(), cfg.polarization, zeeman)?;
            let bath_b = load_bath(cfg.bath_b.as_deref(), cfg.polarization, zeeman)?;
            let csv = sweep::nv_sweep(&cfg.functions, &bath_a, &bath_b, &cfg.grid)?;
            emit(cfg.output.as_deref(), &csv)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify => {
            let checks = verify::run_all()?;
            let mut failed = false;
            for check in &checks {
                let status = if check.passed() { "PASS" } else { "FAIL" };
                println!(
                    "[{status}] {:<42} max error {:.3e} (tol {:.1e})",
                    check.name, check.max_err, check.tol
                );
                failed |= !check.passed();
            }
            Ok(if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Cmd::Table(args) => {
            let f = config::parse_function(&args.function)?;
            let shots = match (args.shots, args.seed) {
                (None, _) => None,
                (Some(0), _) => return Err(Error::validation("shots: must be > 0")),
                (Some(_), None) => {
                    return Err(Error::validation("seed: required when --shots is set"))
                }
                (Some(s), Some(seed)) => Some((s, seed)),
            };
            let d2_a = args.d2_a.unwrap_or(args.c_a * args.c_a);
            let d2_b = args.d2_b.unwrap_or(args.c_b * args.c_b);
            let text = sweep::table_report(f, args.c_a, args.c_b, d2_a, d2_b, shots)?;
            print!("{text}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err @ Error::Parse { .. }) => {
            eprintln!("error: {err}");
            ExitCode::from(3)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
