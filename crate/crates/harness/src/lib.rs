//! Benchmark harness for the `maxcut-core` annealer: instance and assignment
//! file formats, reference values for the standard benchmark sets, CSV
//! reporting, suite execution and checksummed instance downloads.

pub mod error;
pub mod fetch;
pub mod format;
pub mod known_best;
pub mod record;
pub mod runner;

pub use error::HarnessError;
pub use fetch::{fetch_instances, EntryStatus, FetchMode, FetchReport, Manifest};
pub use format::{parse_assignment, parse_graph, read_graph, write_assignment, write_graph, ParseError};
pub use known_best::{KnownBest, KnownBestTable};
pub use record::{emit_csv, parse_csv, BenchmarkRecord, SuiteSummary};
pub use runner::{run_instance, run_suite, solve_graph, InstanceReport, OutputFiles, SuiteOptions, SuiteReport};
