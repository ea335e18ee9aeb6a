//! The `kwl` subcommands.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use kwl_core::oracle::{blowup_time, integrate_comparison};
use kwl_core::regimes::classify;
use kwl_core::solver::run;
use kwl_core::OdeProblem;

use crate::config::{load_params, load_sim, ParamsDoc};
use crate::output::{blowup_json, csv_float, verdict_json, write_series, write_trajectory};
use crate::scan::{run_with_threads, thread_count, Axis, ScanMode, ScanSpec};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "kwl", version, about = "Wave equations with kinetic boundary conditions: regimes, simulation, blow-up times")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a parameter set and print a one-line JSON verdict.
    Classify(ParamArgs),
    /// Run a simulation config; writes trajectory.csv and blowup.json.
    Simulate { config: PathBuf, out_dir: PathBuf },
    /// Classify (and optionally simulate) a two-parameter grid into CSV.
    Scan(ScanArgs),
    /// Blow-up time of y' = y^l - c, y(0) = psi0.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// JSON file with parameters; flags override its values.
    #[arg(long)]
    pub params: Option<PathBuf>,
    #[arg(long = "N")]
    pub dim: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,
    #[arg(long = "m_tilde", visible_alias = "m-tilde", allow_hyphen_values = true)]
    pub m_tilde: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<f64>,
    #[arg(long = "mu_tilde", visible_alias = "mu-tilde", allow_hyphen_values = true)]
    pub mu_tilde: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<f64>,
}

impl ParamArgs {
    pub fn doc(&self) -> Result<ParamsDoc, CliError> {
        let mut doc = match &self.params {
            Some(path) => load_params(path)?,
            None => ParamsDoc::default(),
        };
        let overrides = [
            (&mut doc.a, self.a),
            (&mut doc.b, self.b),
            (&mut doc.alpha, self.alpha),
            (&mut doc.beta, self.beta),
            (&mut doc.gamma, self.gamma),
            (&mut doc.delta, self.delta),
            (&mut doc.m_tilde, self.m_tilde),
            (&mut doc.m, self.m),
            (&mut doc.mu_tilde, self.mu_tilde),
            (&mut doc.mu, self.mu),
            (&mut doc.p, self.p),
            (&mut doc.q, self.q),
        ];
        for (slot, flag) in overrides {
            if flag.is_some() {
                *slot = flag;
            }
        }
        if self.dim.is_some() {
            doc.dim = self.dim;
        }
        Ok(doc)
    }
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub base: ParamArgs,
    /// First axis, `name:lo:hi:steps` (outer loop).
    #[arg(long)]
    pub axis1: String,
    /// Second axis, `name:lo:hi:steps` (inner loop).
    #[arg(long)]
    pub axis2: String,
    /// Also run a short simulation for every cell classified as blowing up (N = 2 only).
    #[arg(long)]
    pub simulate: bool,
    /// Output CSV path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub l: f64,
    #[arg(long)]
    pub c: f64,
    #[arg(long)]
    pub psi0: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Write the integrated trajectory (columns t, y) to this CSV.
    #[arg(long)]
    pub trajectory: Option<PathBuf>,
    /// Stopping threshold for the trajectory.
    #[arg(long, default_value_t = 1e6)]
    pub threshold: f64,
}

pub fn run_classify(args: &ParamArgs) -> Result<String, CliError> {
    let params = args.doc()?.resolve();
    let verdict = classify(&params)?;
    Ok(verdict_json(&verdict))
}

pub fn run_simulate(config: &Path, out_dir: &Path) -> Result<String, CliError> {
    let cfg = load_sim(config)?;
    let sim = run(&cfg)?;
    fs::create_dir_all(out_dir)?;
    write_trajectory(fs::File::create(out_dir.join("trajectory.csv"))?, &sim.trajectory)?;
    fs::write(out_dir.join("blowup.json"), blowup_json(&sim.blowup))?;
    let b = &sim.blowup;
    Ok(format!(
        "blew_up={} trigger={} t_detect={} steps={} rejected={}",
        b.blew_up,
        b.trigger.as_str(),
        b.t_detect.map(csv_float).unwrap_or_else(|| "none".into()),
        sim.accepted_steps,
        sim.rejected_steps
    ))
}

pub fn scan_spec(args: &ScanArgs) -> Result<ScanSpec, CliError> {
    let doc = args.base.doc()?;
    Ok(ScanSpec {
        base: doc.resolve(),
        tie_tildes: doc.ties(),
        axis1: args.axis1.parse::<Axis>()?,
        axis2: args.axis2.parse::<Axis>()?,
        mode: if args.simulate { ScanMode::ClassifyAndSimulate } else { ScanMode::ClassifyOnly },
    })
}

pub fn run_scan(args: &ScanArgs) -> Result<(), CliError> {
    let spec = scan_spec(args)?;
    let cells = run_with_threads(&spec, thread_count()?)?;
    match &args.out {
        Some(path) => spec.write_csv(fs::File::create(path)?, &cells),
        None => spec.write_csv(io::stdout().lock(), &cells),
    }
}

/// Decimal places implied by `tol`.
fn digits_for(tol: f64) -> usize {
    (-tol.log10()).ceil().clamp(1.0, 16.0) as usize
}

pub fn run_oracle(args: &OracleArgs) -> Result<String, CliError> {
    let prob = OdeProblem::new(args.l, args.c, args.psi0)?;
    let t_m = blowup_time(&prob, args.tol)?;
    if let Some(path) = &args.trajectory {
        let traj = integrate_comparison(&prob, args.threshold)?;
        write_series(fs::File::create(path)?, ["t", "y"], &traj)?;
    }
    Ok(format!("{t_m:.*}", digits_for(args.tol)))
}

pub fn dispatch(cli: &Cli) -> Result<(), CliError> {
    let line = match &cli.command {
        Command::Classify(args) => run_classify(args)?,
        Command::Simulate { config, out_dir } => run_simulate(config, out_dir)?,
        Command::Scan(args) => return run_scan(args),
        Command::Oracle(args) => run_oracle(args)?,
    };
    writeln!(io::stdout().lock(), "{line}")?;
    Ok(())
}

/// Parses the process arguments, runs the command and returns the exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("kwl: {e}");
            e.exit_code()
        }
    }
}
