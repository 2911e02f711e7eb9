//! Single-instance runs and directory suites.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::time::Instant;

use maxcut_core::{AnnealParams, AnnealRng, Annealer, Clock, Graph, Improvement, RunResult};
use rayon::prelude::*;

use crate::error::HarnessError;
use crate::format::{read_graph, write_assignment, write_trace};
use crate::known_best::KnownBestTable;
use crate::record::{BenchmarkRecord, SuiteSummary};

/// Monotonic wall clock started at construction.
#[derive(Debug, Clone, Copy)]
pub struct WallClock(Instant);

impl WallClock {
    pub fn start() -> Self {
        Self(Instant::now())
    }
}

impl Clock for WallClock {
    fn elapsed_secs(&self) -> f64 {
        self.0.elapsed().as_secs_f64()
    }
}

/// Where a run writes its best assignment and improvement trace.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OutputFiles {
    pub assignment: Option<PathBuf>,
    pub trace: Option<PathBuf>,
}

impl OutputFiles {
    /// `<dir>/<instance>.cut` and `<dir>/<instance>.trace`.
    pub fn in_dir(dir: &Path, instance: &str) -> Self {
        Self {
            assignment: Some(dir.join(format!("{instance}.cut"))),
            trace: Some(dir.join(format!("{instance}.trace"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstanceReport {
    pub record: BenchmarkRecord,
    pub run: RunResult,
}

/// File stem, used as the instance name for reference lookups.
pub fn instance_name(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn create(path: &Path) -> Result<File, HarnessError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| HarnessError::io(parent, e))?;
    }
    File::create(path).map_err(|e| HarnessError::io(path, e))
}

/// Anneals an already loaded graph, re-verifies the result and writes the output files.
pub fn solve_graph(
    name: &str,
    graph: &Graph,
    params: &AnnealParams,
    known: Option<&KnownBestTable>,
    outputs: &OutputFiles,
    observer: Option<&mut dyn FnMut(Improvement)>,
) -> Result<InstanceReport, HarnessError> {
    let clock = WallClock::start();
    let mut rng = AnnealRng::from_seed(params.seed);
    let mut annealer = Annealer::new(graph, params).clock(&clock);
    if let Some(obs) = observer {
        annealer = annealer.on_improvement(obs);
    }
    let run = annealer
        .run(&mut rng)
        .map_err(|source| HarnessError::Anneal { instance: name.to_owned(), source })?;

    let actual = graph.cut_value(&run.best_assignment).expect("assignment sized to the graph");
    let trace_end = run.improvement_trace.last().map_or(0, |e| e.objective);
    if actual != run.best_objective || trace_end != run.best_objective {
        return Err(HarnessError::Verification {
            instance: name.to_owned(),
            reported: run.best_objective,
            actual,
        });
    }

    if let Some(path) = &outputs.assignment {
        let file = create(path)?;
        write_assignment(&run.best_assignment, BufWriter::new(file)).map_err(|e| HarnessError::io(path, e))?;
    }
    if let Some(path) = &outputs.trace {
        let file = create(path)?;
        write_trace(&run.improvement_trace, BufWriter::new(file)).map_err(|e| HarnessError::io(path, e))?;
    }

    let best_known = known.and_then(|t| t.best_known(name));
    let record = BenchmarkRecord::new(name, params.seed, &params.schedule, &run, best_known);
    Ok(InstanceReport { record, run })
}

pub fn run_instance(
    path: &Path,
    params: &AnnealParams,
    known: Option<&KnownBestTable>,
    outputs: &OutputFiles,
) -> Result<InstanceReport, HarnessError> {
    let graph = read_graph(path)?;
    solve_graph(&instance_name(path), &graph, params, known, outputs, None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedFile {
    pub path: PathBuf,
    pub reason: String,
}

#[derive(Debug)]
pub struct SuiteReport {
    /// One record per parsable instance, ordered by file name.
    pub records: Vec<BenchmarkRecord>,
    pub skipped: Vec<SkippedFile>,
    /// Runs whose result failed re-verification.
    pub failures: Vec<HarnessError>,
    pub summary: SuiteSummary,
}

#[derive(Debug, Clone)]
pub struct SuiteOptions<'a> {
    /// The i-th parsable instance (in file-name order) runs with seed `params.seed + i`.
    pub params: AnnealParams,
    pub known: Option<&'a KnownBestTable>,
    pub jobs: usize,
    /// Write `<instance>.cut` and `<instance>.trace` here.
    pub out_dir: Option<PathBuf>,
}

/// Runs every instance file directly inside `dir`.
pub fn run_suite(dir: &Path, options: &SuiteOptions<'_>) -> Result<SuiteReport, HarnessError> {
    let mut paths = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| HarnessError::io(dir, e))? {
        let entry = entry.map_err(|e| HarnessError::io(dir, e))?;
        let path = entry.path();
        let hidden = entry.file_name().to_string_lossy().starts_with('.');
        if path.is_file() && !hidden {
            paths.push(path);
        }
    }
    paths.sort();

    let mut skipped = Vec::new();
    let mut instances = Vec::new();
    for path in paths {
        match read_graph(&path) {
            Ok(g) if g.num_vertices() == 0 => {
                skipped.push(SkippedFile { path, reason: "graph has no vertices".into() })
            }
            Ok(g) => instances.push((instance_name(&path), g)),
            Err(e) => skipped.push(SkippedFile { path, reason: e.to_string() }),
        }
    }
    if instances.is_empty() {
        return Err(HarnessError::EmptySuite(dir.to_owned()));
    }
    if let Some(out) = &options.out_dir {
        fs::create_dir_all(out).map_err(|e| HarnessError::io(out, e))?;
    }

    let run_one = |(i, (name, graph)): (usize, &(String, Graph))| {
        let mut params = options.params;
        params.seed = params.seed.wrapping_add(i as u64);
        let outputs = options.out_dir.as_deref().map(|d| OutputFiles::in_dir(d, name)).unwrap_or_default();
        solve_graph(name, graph, &params, options.known, &outputs, None)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs.max(1))
        .build()
        .map_err(|e| HarnessError::Pool(e.to_string()))?;
    let results: Vec<_> = pool.install(|| instances.par_iter().enumerate().map(run_one).collect());

    let mut records = Vec::new();
    let mut failures = Vec::new();
    for result in results {
        match result {
            Ok(report) => records.push(report.record),
            Err(e @ HarnessError::Verification { .. }) => failures.push(e),
            Err(e) => return Err(e),
        }
    }
    let summary = SuiteSummary::from_records(&records);
    Ok(SuiteReport { records, skipped, failures, summary })
}
