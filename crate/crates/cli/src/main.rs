use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use evobandit_cli::commands::{cmd_compare, cmd_run, load_settings, print_summary};
use evobandit_cli::config::Settings;
use evobandit_cli::verify::{print_table, run_checks, Level};
use evobandit_cli::{CliError, CliResult};
use evobandit_core::{Algorithm, MutationSchedule, ScheduleKind};

#[derive(Parser)]
#[command(
    name = "evobandit",
    version,
    about = "Thompson-sampling guided directed evolution experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate Bayesian regret over prior draws and write CSV curves.
    Run(RunArgs),
    /// Run the guided loop and baseline arms on matched seeds.
    Compare(RunArgs),
    /// Check the implementation against exact oracles and known laws.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Common {
    /// Master seed; falls back to the config file, then EVOBANDIT_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for running trials.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
    /// Run one trial instead of the configured number.
    #[arg(long)]
    single: bool,
    #[arg(long)]
    algorithm: Option<Algorithm>,
    /// Baseline mutation schedule.
    #[arg(long)]
    schedule: Option<ScheduleKind>,
    /// Scale of the baseline schedule.
    #[arg(long)]
    c: Option<f64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Level::Fast)]
    level: Level,
    #[command(flatten)]
    common: Common,
}

fn master_seed(flag: Option<u64>, file: Option<u64>) -> CliResult<u64> {
    if let Some(seed) = flag.or(file) {
        return Ok(seed);
    }
    match std::env::var("EVOBANDIT_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::Config(format!("EVOBANDIT_SEED is not an unsigned integer: {v:?}"))
        }),
        Err(_) => Ok(0),
    }
}

fn resolve(args: &RunArgs) -> CliResult<(Settings, u64)> {
    let mut settings = load_settings(args.config.as_deref())?;
    let e = &mut settings.experiment;
    if let Some(a) = args.algorithm {
        e.algorithm = a;
    }
    if args.schedule.is_some() || args.c.is_some() {
        let kind = args.schedule.unwrap_or(e.schedule.kind);
        let c = args.c.unwrap_or(e.schedule.c);
        e.schedule =
            MutationSchedule::new(kind, c).map_err(|err| CliError::Config(err.to_string()))?;
    }
    if let Some(out) = &args.out {
        settings.output_dir = out.clone();
    }
    if args.single {
        settings.n_trials = 1;
    }
    let seed = master_seed(args.common.seed, settings.seed)?;
    settings.experiment.seed = seed;
    for arm in &mut settings.arms {
        arm.config.seed = seed;
    }
    Ok((settings, seed))
}

fn with_jobs<T>(jobs: Option<usize>, f: impl FnOnce() -> CliResult<T> + Send) -> CliResult<T>
where
    T: Send,
{
    match jobs {
        None => f(),
        Some(0) => Err(CliError::Config("--jobs must be >= 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Runtime(e.to_string()))?
            .install(f),
    }
}

fn execute(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Run(args) => {
            let (settings, seed) = resolve(&args)?;
            let written = with_jobs(args.common.jobs, || cmd_run(&settings, seed))?;
            for path in written {
                println!("wrote {}", path.display());
            }
            Ok(())
        }
        Command::Compare(args) => {
            let (settings, seed) = resolve(&args)?;
            let summary = with_jobs(args.common.jobs, || cmd_compare(&settings, seed))?;
            print_summary(&summary);
            println!("wrote {}", settings.output_dir.display());
            Ok(())
        }
        Command::Verify(args) => {
            let seed = master_seed(args.common.seed, None)?;
            let results = with_jobs(args.common.jobs, || run_checks(args.level, seed))?;
            print_table(&results);
            let failed: Vec<&str> = results
                .iter()
                .filter(|r| r.hard && !r.passed)
                .map(|r| r.name)
                .collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::Verification(failed.join(", ")))
            }
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("evobandit: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
