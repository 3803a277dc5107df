use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use barrier_walk::experiment::config::{parse_list, Config};
use barrier_walk::experiment::sweep::{run_sweep, write_sweep_csv, SweepSpec};
use barrier_walk::experiment::verify::{run_verify, VerifyOptions};
use barrier_walk::experiment::{simulate, ExperimentSpec, Mode};
use barrier_walk::phase::{PhasePlan, Runtime};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "barrier-walk",
    version,
    about = "Quantum walk search with potential barriers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate one run and write its success-probability curve as CSV.
    Simulate(RunArgs),
    /// Continuous-time walk; same as `simulate --mode ctqw`.
    Ctqw(RunArgs),
    /// Run a grid over N and beta, one CSV row per point.
    Sweep(SweepArgs),
    /// Check unitarity, eigenvector, phase-matching, symmetry and full/reduced agreement.
    Verify(VerifyArgs),
    /// Print the correction phase, rotation angle and runtime for (N, beta).
    Plan(PlanArgs),
}

#[derive(Args)]
struct RunArgs {
    /// key = value file mirroring these flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    n: Option<String>,
    /// Magnitude of the staying amplitude beta (the phase i is implicit).
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    epsilon: Option<String>,
    /// Use the phase-matched coin and oracle (or corrected jumping rate).
    #[arg(long)]
    corrected: bool,
    #[arg(long)]
    steps: Option<String>,
    #[arg(long = "t-max")]
    t_max: Option<String>,
    #[arg(long)]
    marked: Option<String>,
    #[arg(long = "max-full-n")]
    max_full_n: Option<String>,
    /// Output CSV; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    mode: Option<String>,
    /// Comma-separated graph sizes.
    #[arg(long)]
    n: Option<String>,
    /// Comma-separated barrier magnitudes.
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    corrected: bool,
    #[arg(long)]
    steps: Option<String>,
    #[arg(long)]
    workers: Option<String>,
    #[arg(long = "max-full-n")]
    max_full_n: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated graph sizes.
    #[arg(long, default_value = "4,16,64")]
    n: String,
    /// Comma-separated barrier phases in radians.
    #[arg(long, default_value = "0,0.3,0.9272952180016122")]
    phi: String,
    #[arg(long, default_value_t = 200)]
    steps: usize,
    #[arg(long = "norm-steps", default_value_t = 1000)]
    norm_steps: usize,
    /// Debug: check phase matching with eta = 0 instead of the corrected phase.
    #[arg(long = "force-uncorrected-eta")]
    force_uncorrected_eta: bool,
}

#[derive(Args)]
struct PlanArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
}

enum Failure {
    Invalid(String),
    Io(String),
    Verify,
}

impl From<barrier_walk::Error> for Failure {
    fn from(e: barrier_walk::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn load_config(path: Option<&Path>) -> Result<Config, Failure> {
    let Some(path) = path else {
        return Ok(Config::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", path.display())))?;
    Config::parse(&text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn overlay(config: &mut Config, key: &str, value: &Option<String>) {
    if let Some(v) = value {
        config.set(key, v.clone());
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    match path {
        Some(p) => File::create(p)
            .map(|f| Box::new(BufWriter::new(f)) as Box<dyn Write>)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", p.display()))),
        None => Ok(Box::new(io::stdout().lock())),
    }
}

fn cmd_run(args: RunArgs, force_ctqw: bool) -> Result<(), Failure> {
    let mut config = load_config(args.config.as_deref())?;
    overlay(&mut config, "mode", &args.mode);
    if force_ctqw {
        if config.get("mode").is_some_and(|m| m != "ctqw") {
            return Err(Failure::Invalid(
                "the ctqw subcommand only runs mode ctqw".into(),
            ));
        }
        config.set("mode", Mode::Ctqw.as_str());
    }
    overlay(&mut config, "n", &args.n);
    overlay(&mut config, "beta", &args.beta);
    overlay(&mut config, "epsilon", &args.epsilon);
    overlay(&mut config, "steps", &args.steps);
    overlay(&mut config, "t-max", &args.t_max);
    overlay(&mut config, "marked", &args.marked);
    overlay(&mut config, "max-full-n", &args.max_full_n);
    if args.corrected {
        config.set("corrected", "true");
    }
    if let Some(out) = &args.out {
        config.set("out", out.to_string_lossy().into_owned());
    }
    let spec = ExperimentSpec::from_config(&config)?;
    // fail on an unwritable path before simulating
    let sink = open_output(spec.out.as_deref())?;
    let result = simulate(&spec)?;
    result
        .write_csv(sink)
        .map_err(|e| Failure::Io(e.to_string()))?;
    if spec.out.is_some() {
        println!("{}", result.summary());
    } else {
        eprintln!("{}", result.summary());
    }
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> Result<(), Failure> {
    let mut config = load_config(args.config.as_deref())?;
    overlay(&mut config, "mode", &args.mode);
    overlay(&mut config, "n", &args.n);
    overlay(&mut config, "beta", &args.beta);
    overlay(&mut config, "steps", &args.steps);
    overlay(&mut config, "workers", &args.workers);
    overlay(&mut config, "max-full-n", &args.max_full_n);
    if args.corrected {
        config.set("corrected", "true");
    }
    let spec = SweepSpec::from_config(&config)?;
    let out = args.out.or_else(|| config.get("out").map(PathBuf::from));
    let sink = open_output(out.as_deref())?;
    let rows = run_sweep(&spec)?;
    write_sweep_csv(sink, &rows).map_err(|e| Failure::Io(e.to_string()))?;
    for r in rows
        .iter()
        .filter(|r| r.backend.as_str() == "reduced-fallback")
    {
        eprintln!(
            "n={} beta={}: above full-space cap, used reduced model",
            r.n_vertices, r.beta
        );
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let opts = VerifyOptions {
        n_values: parse_list(&args.n).map_err(Failure::Invalid)?,
        phi_values: parse_list(&args.phi).map_err(Failure::Invalid)?,
        steps: args.steps,
        norm_steps: args.norm_steps,
        force_uncorrected_eta: args.force_uncorrected_eta,
    };
    let report = run_verify(&opts)?;
    for check in &report.checks {
        println!("{check}");
    }
    if report.passed() {
        Ok(())
    } else {
        for check in report.failures() {
            eprintln!("invariant violated: {}", check.name);
        }
        Err(Failure::Verify)
    }
}

fn cmd_plan(args: PlanArgs) -> Result<(), Failure> {
    let plan = PhasePlan::from_beta(args.n, args.beta)?;
    println!("n = {}", plan.n_vertices);
    println!("beta = {}", args.beta);
    println!("phi = {:?}", plan.phi);
    println!("theta = {:?}", plan.theta);
    match plan.eta {
        Some(eta) => println!("eta = {eta:?}"),
        None => println!("eta = none (blocked)"),
    }
    println!("sigma = {:?}", plan.sigma);
    match plan.t_star {
        Runtime::Steps {
            steps,
            exact,
            asymptotic,
        } => {
            println!("t_star = {steps}");
            println!("t_star_exact = {exact:?}");
            println!("t_star_asymptotic = {asymptotic:?}");
        }
        Runtime::Blocked => println!("t_star = inf"),
    }
    println!("delta = {:?}", plan.delta);
    if let Some(r) = plan.matching_residual() {
        println!("matching_residual = {r:e}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Simulate(args) => cmd_run(args, false),
        Command::Ctqw(args) => cmd_run(args, true),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Plan(args) => cmd_plan(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INVALID)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_IO)
        }
        Err(Failure::Verify) => ExitCode::from(EXIT_VERIFY_FAILED),
    }
}
