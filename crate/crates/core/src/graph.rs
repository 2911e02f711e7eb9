//! Immutable weighted undirected graphs and shore assignments.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Neg;

/// An undirected edge with 0-based endpoints and an integer weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: u32,
    pub v: u32,
    pub weight: i64,
}

impl Edge {
    pub const fn new(u: u32, v: u32, weight: i64) -> Self {
        Self { u, v, weight }
    }
}

/// One end of an incident edge, as seen from the other endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Neighbor {
    pub vertex: u32,
    pub weight: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    /// An edge endpoint is not below the vertex count.
    VertexOutOfRange { edge: usize, vertex: u64, num_vertices: usize },
    /// Self-loops can never be cut and are not part of the instance format.
    SelfLoop { edge: usize, vertex: u32 },
    /// More vertices than a `u32` index can address.
    TooManyVertices(usize),
    /// An assignment or vertex index does not match the graph.
    LengthMismatch { expected: usize, found: usize },
    /// A side value other than -1 or +1.
    InvalidSide { vertex: usize, value: i64 },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::VertexOutOfRange { edge, vertex, num_vertices } => write!(
                f,
                "edge {edge}: vertex {vertex} out of range for a graph with {num_vertices} vertices"
            ),
            Self::SelfLoop { edge, vertex } => write!(f, "edge {edge}: self-loop on vertex {vertex}"),
            Self::TooManyVertices(n) => write!(f, "{n} vertices exceed the supported maximum"),
            Self::LengthMismatch { expected, found } => {
                write!(f, "assignment has {found} entries, graph has {expected} vertices")
            }
            Self::InvalidSide { vertex, value } => {
                write!(f, "vertex {vertex}: side must be -1 or 1, got {value}")
            }
        }
    }
}

impl core::error::Error for GraphError {}

/// Weighted undirected multigraph stored as an edge list plus CSR adjacency.
///
/// Parallel edges are kept as distinct entries. Every edge appears once in the
/// adjacency of each endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    num_vertices: usize,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    adjacency: Vec<Neighbor>,
}

impl Graph {
    pub fn new<I>(num_vertices: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Edge>,
    {
        if num_vertices > u32::MAX as usize {
            return Err(GraphError::TooManyVertices(num_vertices));
        }
        let edges: Vec<Edge> = edges.into_iter().collect();
        let mut degree = vec![0usize; num_vertices];
        for (i, e) in edges.iter().enumerate() {
            for end in [e.u, e.v] {
                if end as usize >= num_vertices {
                    return Err(GraphError::VertexOutOfRange {
                        edge: i,
                        vertex: end as u64,
                        num_vertices,
                    });
                }
            }
            if e.u == e.v {
                return Err(GraphError::SelfLoop { edge: i, vertex: e.u });
            }
            degree[e.u as usize] += 1;
            degree[e.v as usize] += 1;
        }

        let mut offsets = Vec::with_capacity(num_vertices + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets[offsets.len() - 1] + d);
        }
        let mut fill = offsets[..num_vertices].to_vec();
        let mut adjacency = vec![Neighbor { vertex: 0, weight: 0 }; 2 * edges.len()];
        for e in &edges {
            adjacency[fill[e.u as usize]] = Neighbor { vertex: e.v, weight: e.weight };
            fill[e.u as usize] += 1;
            adjacency[fill[e.v as usize]] = Neighbor { vertex: e.u, weight: e.weight };
            fill[e.v as usize] += 1;
        }

        Ok(Self { num_vertices, edges, offsets, adjacency })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Incident edges of `v`; panics if `v` is out of range.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[Neighbor] {
        &self.adjacency[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Sum of the weights of the edges incident to `v`.
    pub fn incident_weight(&self, v: usize) -> i64 {
        self.neighbors(v).iter().map(|nb| nb.weight).sum()
    }

    /// Total weight of the edges whose endpoints lie on different shores.
    pub fn cut_value(&self, assignment: &CutAssignment) -> Result<i64, GraphError> {
        self.check_len(assignment.len())?;
        let sides = assignment.as_slice();
        Ok(self
            .edges
            .iter()
            .filter(|e| sides[e.u as usize] != sides[e.v as usize])
            .map(|e| e.weight)
            .sum())
    }

    pub(crate) fn check_len(&self, found: usize) -> Result<(), GraphError> {
        if found == self.num_vertices {
            Ok(())
        } else {
            Err(GraphError::LengthMismatch { expected: self.num_vertices, found })
        }
    }
}

/// Which shore each vertex lies on, stored as -1 / +1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CutAssignment(Vec<i8>);

impl CutAssignment {
    /// Every vertex on shore +1.
    pub fn all_one(n: usize) -> Self {
        Self(vec![1; n])
    }

    pub fn from_sides(sides: Vec<i8>) -> Result<Self, GraphError> {
        if let Some((vertex, &value)) = sides.iter().enumerate().find(|(_, &s)| s != 1 && s != -1) {
            return Err(GraphError::InvalidSide { vertex, value: value as i64 });
        }
        Ok(Self(sides))
    }

    /// Builds an assignment from a mask where bit `v` set means vertex `v` is on shore -1.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Self((0..n).map(|v| if mask >> v & 1 == 1 { -1 } else { 1 }).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn side(&self, v: usize) -> i8 {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<i8> {
        self.0
    }

    pub(crate) fn sides_mut(&mut self) -> &mut [i8] {
        &mut self.0
    }
}

impl Neg for CutAssignment {
    type Output = CutAssignment;

    fn neg(mut self) -> Self::Output {
        self.0.iter_mut().for_each(|s| *s = -*s);
        self
    }
}
