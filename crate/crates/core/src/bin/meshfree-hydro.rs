use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use meshfree_hydro::harness::{convergence_study, run, RunConfig, DEFAULT_SIZES};
use meshfree_hydro::riemann::{solve_riemann, RiemannState};
use meshfree_hydro::scheme::SchemeKind;

#[derive(Parser)]
#[command(
    name = "meshfree-hydro",
    version,
    about = "1D meshfree Lagrangian shock-tube solver"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one shock tube and compare it with the exact solution.
    Run(RunArgs),
    /// Run several resolutions and fit the pressure-error order.
    Converge(ConvergeArgs),
    /// Write the exact Sod solution as a snapshot CSV.
    Riemann(RiemannArgs),
}

/// Options shared by `run` and `converge`. Anything given here overrides the config file.
#[derive(Args)]
struct Common {
    /// Plain-text `key = value` configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    scheme: Option<SchemeKind>,
    #[arg(long = "t-end")]
    t_end: Option<f64>,
    #[arg(long)]
    cfl: Option<f64>,
    /// Extra `key=value` settings, applied last.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    n: Option<usize>,
    /// Output directory for snapshots, log and report.
    #[arg(long)]
    out: PathBuf,
    /// Also write a snapshot every this many steps.
    #[arg(long = "snapshot-every")]
    snapshot_every: Option<usize>,
}

#[derive(Args)]
struct ConvergeArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated particle counts.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_SIZES)]
    sizes: Vec<usize>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RiemannArgs {
    #[arg(long, default_value_t = 0.2)]
    t: f64,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long)]
    out: PathBuf,
    #[arg(long = "x-min", default_value_t = -0.5, allow_negative_numbers = true)]
    x_min: f64,
    #[arg(long = "x-max", default_value_t = 0.5, allow_negative_numbers = true)]
    x_max: f64,
    #[arg(long, default_value_t = 1.4)]
    gamma: f64,
}

fn load(common: &Common) -> meshfree_hydro::Result<RunConfig> {
    let mut cfg = match &common.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    if let Some(s) = common.scheme {
        cfg.scheme = s;
    }
    if let Some(t) = common.t_end {
        cfg.controls.t_end = t;
    }
    if let Some(c) = common.cfl {
        cfg.controls.cfl = c;
    }
    for kv in &common.set {
        let (k, v) = kv.split_once('=').ok_or_else(|| {
            meshfree_hydro::Error::Config(format!("expected KEY=VALUE, got `{kv}`"))
        })?;
        cfg.set(k, v)?;
    }
    Ok(cfg)
}

fn execute(cli: Cli) -> meshfree_hydro::Result<()> {
    match cli.command {
        Command::Run(args) => {
            let mut cfg = load(&args.common)?;
            if let Some(n) = args.n {
                cfg.n_particles = n;
            }
            if let Some(k) = args.snapshot_every {
                cfg.snapshot_every = k;
            }
            cfg.out_dir = Some(args.out);
            let report = run(&cfg)?;
            print!("{}", report.to_text());
        }
        Command::Converge(args) => {
            let mut cfg = load(&args.common)?;
            cfg.out_dir = Some(args.out);
            let study = convergence_study(&cfg, &args.sizes)?;
            print!("{}", study.to_text());
        }
        Command::Riemann(args) => {
            if args.samples < 2 {
                return Err(meshfree_hydro::Error::Config(
                    "need at least 2 samples".into(),
                ));
            }
            let sol = solve_riemann(RiemannState::SOD_LEFT, RiemannState::SOD_RIGHT, args.gamma)?;
            sol.write_profile_csv(&args.out, args.t, args.x_min, args.x_max, args.samples)?;
            println!("p_star: {:.10e}", sol.p_star);
            println!("v_star: {:.10e}", sol.v_star);
            println!("rho_star_left: {:.10e}", sol.rho_star_left);
            println!("rho_star_right: {:.10e}", sol.rho_star_right);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
