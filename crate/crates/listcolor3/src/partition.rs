//! The Case-4 partition: a greedy split of the 2-list vertices (set A) that
//! bounds how many binary choices the enumeration step needs.
//!
//! Scanning A in ascending id order, a vertex joins `X1` whenever it still
//! has at least two uncovered 3-list neighbors; its 3-list neighbors move
//! into `Y1` and the scan restarts. `X2` and `Y2` are the leftovers. The
//! construction forces the counting facts the enumeration bound rests on:
//! every `X1` pick covers two fresh vertices (`y1 >= 2*x1`), no leftover
//! 2-list vertex sees two uncovered 3-list vertices (each `X2` vertex has at
//! most one `Y2` neighbor), and every `Y2` vertex keeps its at-least-three
//! 2-list neighbors inside `X2`, which double-counts to `3*y2 <= x2`.

use std::collections::BTreeSet;

use crate::instance::{Instance, VertexId};
use thiserror::Error;

/// The quadruple `(X1, Y1, X2, Y2)`; each component is sorted ascending.
/// `X1 ∪ X2` are the 2-list vertices, `Y1 ∪ Y2` the 3-list vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub x1: Vec<VertexId>,
    pub y1: Vec<VertexId>,
    pub x2: Vec<VertexId>,
    pub y2: Vec<VertexId>,
}

impl Partition {
    /// Exponent of the enumeration: one binary choice per `X1` vertex and
    /// one per `Y2` vertex.
    pub fn enum_exponent(&self) -> u32 {
        (self.x1.len() + self.y2.len()) as u32
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("coverage shortfall: |Y1| = {y1} < 2 * |X1| = {x1}")]
    CoverageShortfall { y1: usize, x1: usize },
    #[error("vertex {vertex} in X2 has {count} neighbors in Y2")]
    X2VertexSeesTwoUncovered { vertex: VertexId, count: usize },
    #[error("vertex {vertex} in Y2 has only {count} neighbors in X2")]
    Y2VertexUndersupported { vertex: VertexId, count: usize },
    #[error("counting imbalance: 3 * |Y2| = {y2_tripled} > |X2| = {x2}")]
    CountingImbalance { y2_tripled: usize, x2: usize },
}

/// Runs the greedy construction and re-checks every partition invariant
/// against the raw adjacency before returning.
///
/// Expects the Case-4 structural conditions (every 3-list vertex has at most
/// three 3-list neighbors and at least three 2-list neighbors); a returned
/// error signals a caller bug, not an input condition.
pub fn build_partition(inst: &Instance) -> Result<Partition, PartitionError> {
    let a_all: Vec<VertexId> = inst
        .vertex_ids()
        .filter(|&v| inst.list(v).size() == 2)
        .collect();
    let b_all: Vec<VertexId> = inst
        .vertex_ids()
        .filter(|&v| inst.list(v).size() == 3)
        .collect();
    let b_set: BTreeSet<VertexId> = b_all.iter().copied().collect();

    let mut x1: Vec<VertexId> = Vec::new();
    let mut in_x1: BTreeSet<VertexId> = BTreeSet::new();
    let mut covered: BTreeSet<VertexId> = BTreeSet::new();
    'scan: loop {
        for &a in &a_all {
            if in_x1.contains(&a) {
                continue;
            }
            let fresh = inst
                .neighbors(a)
                .iter()
                .filter(|w| b_set.contains(w) && !covered.contains(w))
                .count();
            if fresh >= 2 {
                x1.push(a);
                in_x1.insert(a);
                for &w in inst.neighbors(a) {
                    if b_set.contains(&w) {
                        covered.insert(w);
                    }
                }
                continue 'scan;
            }
        }
        break;
    }

    let y1: Vec<VertexId> = covered.iter().copied().collect();
    let x2: Vec<VertexId> = a_all.iter().copied().filter(|a| !in_x1.contains(a)).collect();
    let y2: Vec<VertexId> = b_all.iter().copied().filter(|b| !covered.contains(b)).collect();
    let part = Partition { x1, y1, x2, y2 };

    if part.y1.len() < 2 * part.x1.len() {
        return Err(PartitionError::CoverageShortfall {
            y1: part.y1.len(),
            x1: part.x1.len(),
        });
    }
    let y2_set: BTreeSet<VertexId> = part.y2.iter().copied().collect();
    let x2_set: BTreeSet<VertexId> = part.x2.iter().copied().collect();
    for &a in &part.x2 {
        let count = inst.neighbors(a).iter().filter(|w| y2_set.contains(w)).count();
        if count > 1 {
            return Err(PartitionError::X2VertexSeesTwoUncovered { vertex: a, count });
        }
    }
    for &b in &part.y2 {
        let count = inst.neighbors(b).iter().filter(|w| x2_set.contains(w)).count();
        if count < 3 {
            return Err(PartitionError::Y2VertexUndersupported { vertex: b, count });
        }
    }
    if 3 * part.y2.len() > part.x2.len() {
        return Err(PartitionError::CountingImbalance {
            y2_tripled: 3 * part.y2.len(),
            x2: part.x2.len(),
        });
    }
    Ok(part)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{Color, ColorSet};

    fn set(colors: &[u8]) -> ColorSet {
        colors.iter().map(|&v| Color::new(v).unwrap()).collect()
    }

    #[test]
    fn single_covered_center_goes_to_y2() {
        // B = {4}; each of a1..a3 is adjacent only to 4, so nobody claims
        // two fresh 3-list neighbors and the center stays uncovered.
        let inst = Instance::build(
            &[1, 2, 3, 4],
            &[(1, 4), (2, 4), (3, 4)],
            &[
                (1, set(&[1, 2])),
                (2, set(&[1, 2])),
                (3, set(&[1, 2])),
                (4, ColorSet::ALL),
            ],
        )
        .unwrap()
        .expect_valid();
        let part = build_partition(&inst).unwrap();
        assert_eq!(part.x1, Vec::<VertexId>::new());
        assert_eq!(part.y1, Vec::<VertexId>::new());
        assert_eq!(part.x2, vec![1, 2, 3]);
        assert_eq!(part.y2, vec![4]);
        assert_eq!(part.enum_exponent(), 1);
    }

    #[test]
    fn two_fresh_neighbors_pull_a_vertex_into_x1() {
        // Vertex 1 sees two 3-list vertices; equality y1 = 2*x1.
        let inst = Instance::build(
            &[1, 2, 3, 4, 5, 6, 7, 8],
            &[
                (1, 7),
                (1, 8),
                // supports so vertices 7 and 8 both keep >= 3 2-list nbrs
                (2, 7),
                (3, 7),
                (4, 8),
                (5, 8),
                (6, 7),
                (6, 8),
            ],
            &[
                (1, set(&[1, 2])),
                (2, set(&[1, 2])),
                (3, set(&[1, 3])),
                (4, set(&[2, 3])),
                (5, set(&[1, 2])),
                (6, set(&[1, 3])),
                (7, ColorSet::ALL),
                (8, ColorSet::ALL),
            ],
        )
        .unwrap()
        .expect_valid();
        let part = build_partition(&inst).unwrap();
        assert_eq!(part.x1, vec![1]);
        assert_eq!(part.y1, vec![7, 8]);
        assert_eq!(part.y2, Vec::<VertexId>::new());
        assert!(part.y1.len() >= 2 * part.x1.len());
    }

    #[test]
    fn partition_components_cover_exactly_the_list_classes() {
        let inst = Instance::build(
            &[1, 2, 3, 4, 5, 6, 7],
            &[(1, 7), (2, 7), (3, 7), (4, 5), (4, 6)],
            &[
                (1, set(&[1, 2])),
                (2, set(&[2, 3])),
                (3, set(&[1, 3])),
                (4, set(&[1, 2])),
                (5, set(&[1, 2])),
                (6, set(&[2, 3])),
                (7, ColorSet::ALL),
            ],
        )
        .unwrap()
        .expect_valid();
        let part = build_partition(&inst).unwrap();
        let mut a: Vec<VertexId> = part.x1.iter().chain(&part.x2).copied().collect();
        a.sort_unstable();
        assert_eq!(a, vec![1, 2, 3, 4, 5, 6]);
        let mut b: Vec<VertexId> = part.y1.iter().chain(&part.y2).copied().collect();
        b.sort_unstable();
        assert_eq!(b, vec![7]);
    }
}
