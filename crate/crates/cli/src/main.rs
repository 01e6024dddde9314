//! Command-line front end: solve instances with the hill-climbing strategies
//! or the baselines, verify schedules, generate instances from two-column
//! benchmark data, and solve tiny instances exactly.
//!
//! Exit codes: 0 success, 1 solver-level refusal (for example the exhaustive
//! solver on an oversized instance), 2 usage or input-file errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::{Duration, Instant};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use famsched::baselines::{run_gad, run_mga, run_pils1, GaConfig};
use famsched::hillclimb::{self, StrategyConfig, Variant};
use famsched::model::{Instance, Schedule};
use famsched::{datagen, edds, io, oracle, Budget, RunReport, Termination};

#[derive(Parser)]
#[command(name = "famsched", version, about = "Single-machine scheduling with family setup times")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a solver on an instance file and report the result.
    Solve(SolveArgs),
    /// Evaluate a schedule file against an instance.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        /// Whitespace-separated job indices.
        #[arg(long)]
        schedule: PathBuf,
    },
    /// Build an instance from two-column (processing, deadline) data.
    Gen(GenArgs),
    /// Exact optimum by exhaustive enumeration (small instances only).
    Oracle {
        #[arg(long)]
        instance: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Win,
    WinSwap,
    Mw,
    MwSwap,
    Pils1,
    Gad,
    Mga,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::Win => "win",
            Algo::WinSwap => "win-swap",
            Algo::Mw => "mw",
            Algo::MwSwap => "mw-swap",
            Algo::Pils1 => "pils1",
            Algo::Gad => "gad",
            Algo::Mga => "mga",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StartKind {
    /// All jobs by non-decreasing deadline.
    Dd,
    /// Type blocks, ordered for minimum total setup.
    Sm,
    /// Type blocks, ordered for minimum tardiness then makespan.
    Tm,
}

impl StartKind {
    fn name(self) -> &'static str {
        match self {
            StartKind::Dd => "dd",
            StartKind::Sm => "sm",
            StartKind::Tm => "tm",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum)]
    algo: Algo,
    /// Starting solution (ignored by gad/mga, which start from random
    /// populations).
    #[arg(long, value_enum, default_value_t = StartKind::Dd)]
    start: StartKind,
    /// Wall-clock budget per run, in seconds.
    #[arg(long, default_value_t = 1200.0)]
    time_limit: f64,
    /// Base seed; repeat i runs with seed + i.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Reset radius of the hill-climbing strategies.
    #[arg(long, default_value_t = 4)]
    k_init: usize,
    /// Radius cap; defaults to the job count.
    #[arg(long)]
    k_max: Option<usize>,
    /// Take the best window improvement instead of the first.
    #[arg(long)]
    best_improvement: bool,
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    out: OutFormat,
    /// Independent repetitions; the summary keeps the best result.
    #[arg(long, default_value_t = 1)]
    repeats: u32,
    /// Worker threads for repeats (default: available parallelism).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct GenArgs {
    /// Two-column file: `processing_time deadline` per line.
    #[arg(long)]
    pairs: PathBuf,
    /// Setup-matrix file: a type count line, then the matrix rows.
    #[arg(long, conflicts_with = "random_setup")]
    setup: Option<PathBuf>,
    /// Generate a random symmetric metric matrix with this many types.
    #[arg(long, conflicts_with = "setup")]
    random_setup: Option<usize>,
    /// Smallest random off-diagonal setup time.
    #[arg(long, default_value_t = 30)]
    setup_min: u64,
    /// Largest random off-diagonal setup time (capped at twice the minimum).
    #[arg(long, default_value_t = 60)]
    setup_max: u64,
    /// Multiplier applied to processing times and deadlines.
    #[arg(long, default_value_t = 50)]
    scale: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error:#}");
            exit_code_for(&error)
        }
    }
}

/// Solver-level refusals (capacity guards) exit 1; bad usage or input exits 2.
fn exit_code_for(error: &anyhow::Error) -> ExitCode {
    match error.downcast_ref::<famsched::Error>() {
        Some(famsched::Error::TooManyTypeBlocks { .. })
        | Some(famsched::Error::TooManyJobsForExhaustiveSearch { .. }) => ExitCode::from(1),
        _ => ExitCode::from(2),
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve(args) => solve(args),
        Command::Verify { instance, schedule } => verify(&instance, &schedule),
        Command::Gen(args) => gen(args),
        Command::Oracle { instance } => run_oracle(&instance),
    }
}

fn load_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    io::parse_instance(&text).with_context(|| format!("cannot parse {}", path.display()))
}

// ---------------------------------------------------------------------------
// solve

#[derive(Serialize)]
struct SolveReport {
    instance: String,
    algo: &'static str,
    start: &'static str,
    config: ConfigEcho,
    runs: Vec<RunJson>,
    best: BestJson,
    wall_ms: u64,
}

#[derive(Serialize)]
struct ConfigEcho {
    time_limit_secs: f64,
    seed: u64,
    k_init: usize,
    k_max: Option<usize>,
    repeats: u32,
    first_improvement: bool,
}

#[derive(Serialize, Clone)]
struct RunJson {
    seed: u64,
    tardiness: u64,
    makespan: u64,
    total_setup: u64,
    feasible: bool,
    termination: &'static str,
    wall_ms: u64,
    trajectory: Vec<EventJson>,
    schedule: Vec<usize>,
}

#[derive(Serialize, Clone)]
struct EventJson {
    step: u64,
    elapsed_ms: u64,
    k: usize,
    tardiness: u64,
    makespan: u64,
}

#[derive(Serialize)]
struct BestJson {
    seed: u64,
    tardiness: u64,
    makespan: u64,
    total_setup: u64,
    feasible: bool,
    schedule: Vec<usize>,
}

fn run_json(instance: &Instance, seed: u64, report: &RunReport) -> RunJson {
    RunJson {
        seed,
        tardiness: report.objective.tardiness,
        makespan: report.objective.makespan,
        total_setup: instance.total_setup(&report.best).expect("result fits instance"),
        feasible: report.objective.is_feasible(),
        termination: match report.termination {
            Termination::TimeLimit => "time_limit",
            Termination::KExhausted => "k_exhausted",
        },
        wall_ms: report.wall.as_millis() as u64,
        trajectory: report
            .trajectory
            .iter()
            .map(|e| EventJson {
                step: e.step,
                elapsed_ms: e.elapsed.as_millis() as u64,
                k: e.k,
                tardiness: e.objective.tardiness,
                makespan: e.objective.makespan,
            })
            .collect(),
        schedule: report.best.order().iter().map(|j| j.0).collect(),
    }
}

fn start_schedule(instance: &Instance, kind: StartKind) -> Result<Schedule> {
    Ok(match kind {
        StartKind::Dd => edds::start_dd(instance),
        StartKind::Sm => edds::start_sm(instance)?,
        StartKind::Tm => edds::start_tm(instance)?,
    })
}

fn solve(args: SolveArgs) -> Result<()> {
    let begun = Instant::now();
    let instance = load_instance(&args.instance)?;
    let start = start_schedule(&instance, args.start)?;
    let time_limit = Duration::from_secs_f64(args.time_limit);
    let repeats = args.repeats.max(1) as usize;

    let one_run = |seed: u64| -> RunReport {
        match args.algo {
            Algo::Win | Algo::WinSwap | Algo::Mw | Algo::MwSwap => {
                let variant = match args.algo {
                    Algo::Win => Variant::Win,
                    Algo::WinSwap => Variant::WinSwap,
                    Algo::Mw => Variant::Mw,
                    _ => Variant::MwSwap,
                };
                let config = StrategyConfig {
                    variant,
                    k_init: args.k_init,
                    k_max: args.k_max,
                    time_limit,
                    first_improvement: !args.best_improvement,
                };
                hillclimb::run(&instance, &start, &config)
            }
            Algo::Pils1 => run_pils1(&instance, &start, Budget::Wall(time_limit), seed),
            Algo::Gad => run_gad(&instance, &GaConfig::new(seed), Budget::Wall(time_limit)),
            Algo::Mga => run_mga(&instance, &GaConfig::new(seed), Budget::Wall(time_limit)),
        }
    };

    // Fan the repeats out over a small worker pool; results keep their index.
    let mut reports: Vec<Option<RunReport>> = (0..repeats).map(|_| None).collect();
    let workers = args
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get()))
        .clamp(1, repeats);
    if workers == 1 {
        for (i, slot) in reports.iter_mut().enumerate() {
            *slot = Some(one_run(args.seed + i as u64));
        }
    } else {
        let next = AtomicUsize::new(0);
        let (tx, rx) = mpsc::channel();
        std::thread::scope(|scope| {
            for _ in 0..workers {
                let tx = tx.clone();
                let next = &next;
                let one_run = &one_run;
                scope.spawn(move || loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= repeats {
                        return;
                    }
                    let report = one_run(args.seed + i as u64);
                    tx.send((i, report)).expect("collector outlives workers");
                });
            }
        });
        drop(tx);
        for (i, report) in rx {
            reports[i] = Some(report);
        }
    }
    let runs: Vec<RunJson> = reports
        .into_iter()
        .enumerate()
        .map(|(i, r)| run_json(&instance, args.seed + i as u64, &r.expect("worker finished")))
        .collect();

    let best = runs
        .iter()
        .min_by_key(|r| (r.tardiness, r.makespan, r.seed))
        .expect("at least one run");
    let best = BestJson {
        seed: best.seed,
        tardiness: best.tardiness,
        makespan: best.makespan,
        total_setup: best.total_setup,
        feasible: best.feasible,
        schedule: best.schedule.clone(),
    };

    match args.out {
        OutFormat::Json => {
            let report = SolveReport {
                instance: args.instance.display().to_string(),
                algo: args.algo.name(),
                start: args.start.name(),
                config: ConfigEcho {
                    time_limit_secs: args.time_limit,
                    seed: args.seed,
                    k_init: args.k_init,
                    k_max: args.k_max,
                    repeats: args.repeats,
                    first_improvement: !args.best_improvement,
                },
                runs,
                best,
                wall_ms: begun.elapsed().as_millis() as u64,
            };
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
        OutFormat::Csv => {
            println!("instance,algo,start,seed,tardiness,makespan,total_setup,wall_ms");
            let wall_ms = runs
                .iter()
                .find(|r| r.seed == best.seed)
                .map_or(0, |r| r.wall_ms);
            println!(
                "{},{},{},{},{},{},{},{}",
                args.instance.display(),
                args.algo.name(),
                args.start.name(),
                best.seed,
                best.tardiness,
                best.makespan,
                best.total_setup,
                wall_ms,
            );
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// verify / gen / oracle

fn verify(instance_path: &Path, schedule_path: &Path) -> Result<()> {
    let instance = load_instance(instance_path)?;
    let text = std::fs::read_to_string(schedule_path)
        .with_context(|| format!("cannot read {}", schedule_path.display()))?;
    let order = io::parse_schedule_order(&text)
        .with_context(|| format!("cannot parse {}", schedule_path.display()))?;
    let schedule = Schedule::new(order).context("schedule is not a permutation")?;
    let evaluation = instance
        .evaluate(&schedule)
        .context("schedule does not fit the instance")?;
    let total_setup = instance.total_setup(&schedule)?;
    println!("makespan: {}", evaluation.makespan);
    println!("total_tardiness: {}", evaluation.total_tardiness);
    println!("feasible: {}", evaluation.is_feasible());
    println!("total_setup: {total_setup}");
    Ok(())
}

fn gen(args: GenArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.pairs)
        .with_context(|| format!("cannot read {}", args.pairs.display()))?;
    let pairs =
        io::parse_pairs(&text).with_context(|| format!("cannot parse {}", args.pairs.display()))?;
    let setup = match (&args.setup, args.random_setup) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            io::parse_setup_matrix(&text)
                .with_context(|| format!("cannot parse {}", path.display()))?
        }
        (None, Some(t)) => datagen::random_metric_setup(t, args.setup_min, args.setup_max, args.seed),
        _ => anyhow::bail!("pass exactly one of --setup or --random-setup"),
    };
    let instance = datagen::adapt_pairs(&pairs, setup, args.scale, args.seed)?;
    let text = io::write_instance(&instance);
    match &args.out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

#[derive(Serialize)]
struct OracleJson {
    tardiness: u64,
    makespan: u64,
    optimal_count: u64,
    schedule: Vec<usize>,
}

fn run_oracle(instance_path: &Path) -> Result<()> {
    let instance = load_instance(instance_path)?;
    let result = oracle::optimal(&instance)?;
    let json = OracleJson {
        tardiness: result.objective.tardiness,
        makespan: result.objective.makespan,
        optimal_count: result.optimal_count,
        schedule: result.schedule.order().iter().map(|j| j.0).collect(),
    };
    println!("{}", serde_json::to_string_pretty(&json)?);
    Ok(())
}
