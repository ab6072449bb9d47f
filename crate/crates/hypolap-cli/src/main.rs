//! Command-line front end: run the verification suites, the stochastic
//! simulations, and the orbital tables; emit machine-readable reports.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage/config error.

use clap::{Args, Parser, Subcommand};
use hypolap::report::{orbital_table, simulate_suite, verify_suite};
use hypolap::tol::Tolerances;
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hypolap",
    about = "Identity suites, simulations, and orbital tables for the hypoelliptic Dirac machinery"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Preset name, or a name resolvable under HYPOLAP_PRESET_DIR
    #[arg(long, default_value = "sl2c_real")]
    preset: String,
    /// RNG seed
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Number of Monte-Carlo paths
    #[arg(long, default_value_t = 100_000)]
    n_paths: usize,
    /// θ grid (comma separated)
    #[arg(long, value_delimiter = ',', default_value = "0.0,0.7,1.2")]
    theta_grid: Vec<f64>,
    /// b grid (comma separated)
    #[arg(long, value_delimiter = ',', default_value = "0.5,1.0")]
    b_grid: Vec<f64>,
    /// t grid (comma separated)
    #[arg(long, value_delimiter = ',', default_value = "0.5,1.0,2.0")]
    t_grid: Vec<f64>,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<String>,
    /// Tolerance overrides KEY=VAL (repeatable)
    #[arg(long = "tol-override")]
    tol_override: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full identity suite for a preset; JSON report
    Verify(CommonArgs),
    /// Run the stochastic estimator suite; CSV of estimator rows
    Simulate {
        #[command(flatten)]
        common: CommonArgs,
        /// Restrict to a single named check (e.g. phan-11b, girsanov)
        #[arg(long)]
        check: Option<String>,
        /// Step size
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        /// Horizon
        #[arg(long, default_value_t = 1.0)]
        t: f64,
    },
    /// Orbital tables over the t grid with both routes; CSV
    Orbital(CommonArgs),
    /// List built-in presets or export one as JSON
    Preset {
        /// Preset to export; lists all when omitted
        name: Option<String>,
    },
}

fn parse_tols(overrides: &[String]) -> Result<Tolerances, String> {
    let mut tol = Tolerances::default();
    for ov in overrides {
        let (k, v) = ov
            .split_once('=')
            .ok_or_else(|| format!("bad --tol-override {ov}, expected KEY=VAL"))?;
        let val: f64 = v.parse().map_err(|_| format!("bad value in {ov}"))?;
        tol.apply_override(k.trim(), val)?;
    }
    Ok(tol)
}

fn emit(out: &Option<String>, content: &str) -> std::io::Result<()> {
    match out {
        Some(path) => {
            let mut f = std::fs::File::create(path)?;
            f.write_all(content.as_bytes())
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Verify(common) => {
            let tol = parse_tols(&common.tol_override)?;
            let rep = verify_suite(&common.preset, &tol).map_err(|e| e.to_string())?;
            emit(&common.out, &(rep.to_json() + "\n")).map_err(|e| e.to_string())?;
            Ok(rep.all_pass())
        }
        Command::Simulate { common, check, dt, t } => {
            let tol = parse_tols(&common.tol_override)?;
            let run_once = |seed: u64| {
                hypolap::report::simulate_suite_gridded(
                    seed,
                    common.n_paths,
                    dt,
                    t,
                    &common.b_grid,
                    &common.theta_grid,
                    &tol,
                )
                .map_err(|e| e.to_string())
            };
            let (mut rep, mut csv) = run_once(common.seed)?;
            // documented flake policy: rerun once with a fresh seed
            if !rep.all_pass() {
                let retry = run_once(common.seed.wrapping_add(0x5EED))?;
                rep = retry.0;
                csv = retry.1;
            }
            let filtered: Vec<String> = match &check {
                Some(c) => csv
                    .iter()
                    .enumerate()
                    .filter(|(i, row)| *i == 0 || row.starts_with(c.as_str()))
                    .map(|(_, row)| row.clone())
                    .collect(),
                None => csv,
            };
            let mut body = filtered.join("\n");
            body.push('\n');
            emit(&common.out, &body).map_err(|e| e.to_string())?;
            let ok = match &check {
                Some(c) => rep
                    .runs
                    .iter()
                    .filter(|r| r.id.starts_with(c.as_str()))
                    .all(|r| r.status == "pass"),
                None => rep.all_pass(),
            };
            Ok(ok)
        }
        Command::Orbital(common) => {
            let tol = parse_tols(&common.tol_override)?;
            let (rep, csv) =
                orbital_table(&common.preset, &common.t_grid, &tol).map_err(|e| e.to_string())?;
            let mut body = csv.join("\n");
            body.push('\n');
            emit(&common.out, &body).map_err(|e| e.to_string())?;
            Ok(rep.all_pass())
        }
        Command::Preset { name } => {
            match name {
                Some(n) => {
                    let spec = hypolap::report::load_preset(&n).map_err(|e| e.to_string())?;
                    let pf = hypolap::lie::to_preset_file(&spec);
                    println!("{}", serde_json::to_string_pretty(&pf).map_err(|e| e.to_string())?);
                }
                None => {
                    for p in hypolap::lie::available_presets() {
                        println!("{p}");
                    }
                }
            }
            Ok(true)
        }
    }
}
