use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use maxcut_core::{brute_force_maxcut, AnnealParams, Improvement, LinearSchedule, StopReason};
use maxcut_harness::format::{format_assignment, format_improvement};
use maxcut_harness::{
    emit_csv, fetch_instances, read_graph, run_suite, solve_graph, FetchMode, HarnessError, KnownBestTable, Manifest,
    OutputFiles, SuiteOptions,
};

/// Maximum cut by simulated annealing.
#[derive(Debug, Parser)]
#[command(name = "maxcut", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Anneal one instance file.
    Solve {
        instance: PathBuf,
        #[command(flatten)]
        run: RunFlags,
        /// Write the best assignment here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the improvement trace ("iteration objective" per line) here.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Stream improvements to stderr as they happen.
        #[arg(long)]
        progress: bool,
    },
    /// Anneal every instance in a directory and report CSV rows.
    Bench {
        dir: PathBuf,
        #[command(flatten)]
        run: RunFlags,
        /// Concurrent runs (default: available cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Reference values CSV (default: the bundled table).
        #[arg(long)]
        known_best: Option<PathBuf>,
        /// Write CSV here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write <instance>.cut and <instance>.trace files here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Download and checksum instance files listed in a manifest.
    Fetch {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        dest: PathBuf,
        /// Only validate files already present.
        #[arg(long)]
        offline: bool,
    },
    /// Solve a small instance (at most 24 vertices) exactly.
    Exact { instance: PathBuf },
}

#[derive(Debug, Args)]
struct RunFlags {
    #[arg(long, default_value_t = LinearSchedule::DEFAULT_HEAT_MAX)]
    heat_max: f64,
    #[arg(long, default_value_t = LinearSchedule::DEFAULT_HEAT_STEP)]
    heat_step: f64,
    /// Random seed (the base seed for `bench`).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Wall-clock budget per run, in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
}

impl RunFlags {
    fn params(&self) -> Result<AnnealParams, HarnessError> {
        let mut params = AnnealParams::new(LinearSchedule::new(self.heat_max, self.heat_step)?, self.seed);
        params.time_limit = self.time_limit;
        Ok(params)
    }
}

fn solve(
    instance: &Path,
    run: &RunFlags,
    out: Option<PathBuf>,
    trace: Option<PathBuf>,
    progress: bool,
) -> Result<ExitCode, HarnessError> {
    let mut params = run.params()?;
    params.report_improvements = progress;
    let graph = read_graph(instance)?;
    let name = maxcut_harness::runner::instance_name(instance);
    let known = KnownBestTable::bundled();
    let outputs = OutputFiles { assignment: out, trace };

    let mut stream = |e: Improvement| eprintln!("{}", format_improvement(&e));
    let report = solve_graph(&name, &graph, &params, Some(&known), &outputs, Some(&mut stream))?;

    let r = &report.record;
    let mut stdout = io::stdout().lock();
    let status = match report.run.stop_reason {
        StopReason::Completed => "completed",
        StopReason::TimeLimit => "time limit reached",
        StopReason::Cancelled => "cancelled",
    };
    let _ = writeln!(stdout, "instance {}", r.instance);
    let _ = writeln!(stdout, "vertices {} edges {}", graph.num_vertices(), graph.num_edges());
    let _ = writeln!(stdout, "best_objective {}", r.best_objective);
    if let (Some(known), Some(gap)) = (r.best_known, r.gap) {
        let _ = writeln!(stdout, "best_known {known} gap {gap}");
    }
    let _ = writeln!(stdout, "iterations {} accepted {}", r.iterations, report.run.accepted_moves);
    let _ = writeln!(stdout, "wall_time_s {:.3}", r.wall_time_s);
    let _ = writeln!(stdout, "status {status}");
    Ok(ExitCode::SUCCESS)
}

fn bench(
    dir: &Path,
    run: &RunFlags,
    jobs: Option<usize>,
    known_best: Option<PathBuf>,
    csv: Option<PathBuf>,
    out_dir: Option<PathBuf>,
) -> Result<ExitCode, HarnessError> {
    let known = match known_best {
        Some(path) => KnownBestTable::load(&path)?,
        None => KnownBestTable::bundled(),
    };
    let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let options = SuiteOptions { params: run.params()?, known: Some(&known), jobs, out_dir };
    let report = run_suite(dir, &options)?;

    for skipped in &report.skipped {
        eprintln!("skipped {}: {}", skipped.path.display(), skipped.reason);
    }
    let text = emit_csv(&report.records);
    match csv {
        Some(path) => std::fs::write(&path, text).map_err(|e| HarnessError::io(&path, e))?,
        None => print!("{text}"),
    }
    eprintln!("{}", report.summary);

    if report.failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        for failure in &report.failures {
            eprintln!("error: {failure}");
        }
        Ok(ExitCode::from(2))
    }
}

fn fetch(manifest: &Path, dest: &Path, offline: bool) -> Result<ExitCode, HarnessError> {
    let manifest = Manifest::load(manifest)?;
    let mode = if offline { FetchMode::Offline } else { FetchMode::Online };
    let report = fetch_instances(&manifest, dest, mode).map_err(|e| HarnessError::Fetch(e.to_string()))?;
    for (name, status) in &report.entries {
        println!("{name}: {status}");
    }
    Ok(if report.is_success() { ExitCode::SUCCESS } else { ExitCode::from(3) })
}

fn exact(instance: &Path) -> Result<ExitCode, HarnessError> {
    let graph = read_graph(instance)?;
    let result = brute_force_maxcut(&graph)?;
    println!("optimum {}", result.optimum);
    println!("{}", format_assignment(&result.witness));
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };

    let result = match cli.command {
        Command::Solve { instance, run, out, trace, progress } => solve(&instance, &run, out, trace, progress),
        Command::Bench { dir, run, jobs, known_best, csv, out_dir } => bench(&dir, &run, jobs, known_best, csv, out_dir),
        Command::Fetch { manifest, dest, offline } => fetch(&manifest, &dest, offline),
        Command::Exact { instance } => exact(&instance),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(e.exit_code() as u8)
    })
}
