//! Shore assignment with eagerly maintained flip gains.

use alloc::vec::Vec;

use crate::graph::{CutAssignment, Graph, GraphError};

/// A cut over a borrowed graph.
///
/// Invariants, maintained by every [`flip`](CutState::flip):
/// `objective == graph.cut_value(assignment)` and, for every vertex `v`,
/// `gain[v]` is the exact change in cut value caused by moving `v` to the other shore.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutState<'g> {
    graph: &'g Graph,
    assignment: CutAssignment,
    gain: Vec<i64>,
    objective: i64,
}

impl<'g> CutState<'g> {
    /// All vertices on shore +1. Nothing is cut, so flipping `v` would cut every incident edge.
    pub fn init_all_one(graph: &'g Graph) -> Self {
        let n = graph.num_vertices();
        Self {
            graph,
            assignment: CutAssignment::all_one(n),
            gain: (0..n).map(|v| graph.incident_weight(v)).collect(),
            objective: 0,
        }
    }

    /// Builds the state from scratch for an arbitrary assignment.
    pub fn recompute(graph: &'g Graph, assignment: CutAssignment) -> Result<Self, GraphError> {
        let objective = graph.cut_value(&assignment)?;
        let sides = assignment.as_slice();
        let gain = (0..graph.num_vertices())
            .map(|v| {
                // an uncut edge becomes cut (+w), a cut edge becomes uncut (-w)
                graph
                    .neighbors(v)
                    .iter()
                    .map(|nb| {
                        if sides[nb.vertex as usize] == sides[v] {
                            nb.weight
                        } else {
                            -nb.weight
                        }
                    })
                    .sum()
            })
            .collect();
        Ok(Self { graph, assignment, gain, objective })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn assignment(&self) -> &CutAssignment {
        &self.assignment
    }

    pub fn objective(&self) -> i64 {
        self.objective
    }

    pub fn gains(&self) -> &[i64] {
        &self.gain
    }

    #[inline]
    pub fn gain(&self, v: usize) -> i64 {
        self.gain[v]
    }

    /// Moves `v` to the other shore in O(deg(v)). Panics if `v` is out of range.
    #[inline]
    pub fn flip(&mut self, v: usize) {
        let g = self.gain[v];
        self.objective += g;
        self.gain[v] = -g;
        let sides = self.assignment.sides_mut();
        let sv = -sides[v];
        sides[v] = sv;
        for nb in self.graph.neighbors(v) {
            let u = nb.vertex as usize;
            // +2w when u and v now share a shore, -2w when they now differ
            self.gain[u] += 2 * nb.weight * i64::from(sides[u] * sv);
        }
    }

    /// Checked variant of [`flip`](CutState::flip).
    pub fn try_flip(&mut self, v: usize) -> Result<(), GraphError> {
        if v >= self.graph.num_vertices() {
            return Err(GraphError::LengthMismatch { expected: self.graph.num_vertices(), found: v });
        }
        self.flip(v);
        Ok(())
    }

    pub fn into_assignment(self) -> CutAssignment {
        self.assignment
    }
}
