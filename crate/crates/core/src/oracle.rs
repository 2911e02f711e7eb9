//! Exact maximum cut by exhaustive enumeration, for small graphs only.

use core::fmt;

use crate::cutstate::CutState;
use crate::graph::{CutAssignment, Graph};

pub const MAX_ORACLE_VERTICES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub optimum: i64,
    /// Lexicographically smallest optimal assignment (-1 < +1) with vertex 0 on shore +1.
    pub witness: CutAssignment,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleError {
    TooLarge { num_vertices: usize },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::TooLarge { num_vertices } => write!(
                f,
                "exact solver handles at most {MAX_ORACLE_VERTICES} vertices, graph has {num_vertices}"
            ),
        }
    }
}

impl core::error::Error for OracleError {}

/// Walks all `2^(n-1)` cuts with vertex 0 pinned to shore +1 in Gray-code
/// order, so consecutive cuts differ by one [`CutState::flip`].
pub fn brute_force_maxcut(graph: &Graph) -> Result<ExactResult, OracleError> {
    let n = graph.num_vertices();
    if n > MAX_ORACLE_VERTICES {
        return Err(OracleError::TooLarge { num_vertices: n });
    }
    if n <= 1 {
        return Ok(ExactResult { optimum: 0, witness: CutAssignment::all_one(n) });
    }

    // bit j of a mask set <=> vertex j + 1 on shore -1
    let mut state = CutState::init_all_one(graph);
    let mut mask = 0u64;
    let mut best = (state.objective(), mask);
    for i in 1u64..1 << (n - 1) {
        let bit = i.trailing_zeros();
        state.flip(bit as usize + 1);
        mask ^= 1 << bit;
        let value = state.objective();
        if value > best.0 || (value == best.0 && lex_smaller(mask, best.1)) {
            best = (value, mask);
        }
    }
    Ok(ExactResult { optimum: best.0, witness: CutAssignment::from_mask(n, best.1 << 1) })
}

/// Whether `a` precedes `b` when read as side sequences starting at vertex 1.
fn lex_smaller(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    diff != 0 && a >> diff.trailing_zeros() & 1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::triangle;
    use crate::graph::Edge;
    use crate::rng::AnnealRng;
    use std::vec;
    use std::vec::Vec;

    /// Plain enumeration over all 2^n assignments with full cut evaluation.
    fn naive(graph: &Graph) -> (i64, Vec<CutAssignment>) {
        let n = graph.num_vertices();
        let mut best = i64::MIN;
        let mut witnesses = vec![];
        for m in 0u64..1 << n {
            let a = CutAssignment::from_mask(n, m);
            let v = graph.cut_value(&a).unwrap();
            if v > best {
                best = v;
                witnesses.clear();
            }
            if v == best {
                witnesses.push(a);
            }
        }
        (best, witnesses)
    }

    #[test]
    fn small_examples() {
        assert_eq!(brute_force_maxcut(&triangle(1, 1, 1)).unwrap().optimum, 2);
        let mut k4 = vec![];
        for u in 0..4 {
            for v in u + 1..4 {
                k4.push(Edge::new(u, v, 1));
            }
        }
        let r = brute_force_maxcut(&Graph::new(4, k4).unwrap()).unwrap();
        assert_eq!(r.optimum, 4);
        assert_eq!(r.witness.as_slice(), &[1, -1, -1, 1]);

        let neg = Graph::new(2, [Edge::new(0, 1, -3)]).unwrap();
        let r = brute_force_maxcut(&neg).unwrap();
        assert_eq!(r.optimum, 0);
        assert_eq!(r.witness, CutAssignment::all_one(2));
    }

    #[test]
    fn tiny_graphs() {
        assert_eq!(brute_force_maxcut(&Graph::new(0, []).unwrap()).unwrap().optimum, 0);
        assert_eq!(brute_force_maxcut(&Graph::new(1, []).unwrap()).unwrap().witness.as_slice(), &[1]);
    }

    #[test]
    fn too_large() {
        let g = Graph::new(25, []).unwrap();
        assert_eq!(brute_force_maxcut(&g), Err(OracleError::TooLarge { num_vertices: 25 }));
        assert!(brute_force_maxcut(&Graph::new(MAX_ORACLE_VERTICES, []).unwrap()).is_ok());
    }

    #[test]
    fn lex_order() {
        // vertex 1 on -1 beats vertex 1 on +1
        assert!(lex_smaller(0b01, 0b10));
        assert!(!lex_smaller(0b10, 0b01));
        assert!(!lex_smaller(0b11, 0b11));
    }

    #[test]
    fn gray_code_agrees_with_naive_enumeration() {
        let mut rng = AnnealRng::from_seed(2024);
        for _ in 0..100 {
            let mut edges = vec![];
            for u in 0..10u32 {
                for v in u + 1..10 {
                    if rng.vertex(2) == 0 {
                        edges.push(Edge::new(u, v, rng.vertex(15) as i64 - 5));
                    }
                }
            }
            let g = Graph::new(10, edges).unwrap();
            let exact = brute_force_maxcut(&g).unwrap();
            let (optimum, witnesses) = naive(&g);
            assert_eq!(exact.optimum, optimum);
            assert_eq!(g.cut_value(&exact.witness).unwrap(), optimum);
            let smallest = witnesses.into_iter().filter(|w| w.side(0) == 1).min().unwrap();
            assert_eq!(exact.witness, smallest);
        }
    }
}
