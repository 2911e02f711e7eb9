//! Weighted maximum cut by simulated annealing over single-vertex flips.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, wall clocks and the
//! command-line driver live in the `maxcut-harness` crate.
//!
//! ```
//! use maxcut_core::{anneal, AnnealParams, AnnealRng, Edge, Graph, LinearSchedule};
//!
//! let g = Graph::new(3, [Edge::new(0, 1, 1), Edge::new(1, 2, 1), Edge::new(0, 2, 1)]).unwrap();
//! let params = AnnealParams::new(LinearSchedule::new(100.0, 0.01).unwrap(), 7);
//! let run = anneal(&g, &params, &mut AnnealRng::from_seed(7)).unwrap();
//! assert_eq!(run.best_objective, 2);
//! assert_eq!(g.cut_value(&run.best_assignment).unwrap(), 2);
//! ```

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod anneal;
pub mod cutstate;
pub mod graph;
pub mod oracle;
pub mod rng;

pub use anneal::{
    acceptance_probability, anneal, iteration_count, AnnealError, AnnealParams, Annealer, Clock,
    Improvement, LinearSchedule, RunResult, ScheduleError, StopReason,
};
pub use cutstate::CutState;
pub use graph::{CutAssignment, Edge, Graph, GraphError, Neighbor};
pub use oracle::{brute_force_maxcut, ExactResult, OracleError, MAX_ORACLE_VERTICES};
pub use rng::AnnealRng;
