//! The list-coloring instance model: colors, color lists, graphs, the
//! branching measure, and assignment verification.
//!
//! Instances are value-semantics objects. Vertex identifiers are stable:
//! every instance derived by deleting vertices or shrinking lists keeps the
//! identifiers of the instance it came from, so partial solutions lift back
//! without renumbering.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use thiserror::Error;

/// Stable vertex identifier. Derived instances reuse the ids of their parent.
pub type VertexId = u32;

/// One of the three palette colors.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color(u8);

impl Color {
    /// The full palette, in ascending order.
    pub const PALETTE: [Color; 3] = [Color(1), Color(2), Color(3)];

    /// Checked constructor; the value must lie in `1..=3`.
    pub fn new(value: u8) -> Option<Color> {
        (1..=3).contains(&value).then_some(Color(value))
    }

    pub fn value(self) -> u8 {
        self.0
    }
}

impl fmt::Debug for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A subset of the palette `{1,2,3}`, stored in three bits.
///
/// The empty set only ever appears transiently while reductions run; it
/// signals a contradiction.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ColorSet(u8);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);
    pub const ALL: ColorSet = ColorSet(0b111);

    pub fn singleton(c: Color) -> ColorSet {
        ColorSet(1 << (c.value() - 1))
    }

    pub fn pair(a: Color, b: Color) -> ColorSet {
        assert_ne!(a, b, "a pair needs two distinct colors");
        ColorSet(ColorSet::singleton(a).0 | ColorSet::singleton(b).0)
    }

    pub fn contains(self, c: Color) -> bool {
        self.0 & (1 << (c.value() - 1)) != 0
    }

    pub fn with(self, c: Color) -> ColorSet {
        ColorSet(self.0 | 1 << (c.value() - 1))
    }

    pub fn without(self, c: Color) -> ColorSet {
        ColorSet(self.0 & !(1 << (c.value() - 1)))
    }

    pub fn intersection(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & other.0)
    }

    pub fn size(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// The single member, when the set has size exactly 1.
    pub fn sole(self) -> Option<Color> {
        (self.size() == 1).then(|| Color(self.0.trailing_zeros() as u8 + 1))
    }

    /// Builds a set from its three-bit mask; bit `c - 1` encodes color `c`.
    pub fn from_bits(bits: u8) -> ColorSet {
        ColorSet(bits & 0b111)
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = Color> {
        Color::PALETTE.into_iter().filter(move |&c| self.contains(c))
    }
}

impl FromIterator<Color> for ColorSet {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        iter.into_iter().fold(ColorSet::EMPTY, ColorSet::with)
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// The branching measure `n3 + 0.5 * n2`, kept as an exact count of halves so
/// recurrence bookkeeping never accumulates floating-point error.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Measure {
    halves: u64,
}

impl Measure {
    pub const ZERO: Measure = Measure { halves: 0 };

    pub fn from_counts(n3: usize, n2: usize) -> Measure {
        Measure {
            halves: 2 * n3 as u64 + n2 as u64,
        }
    }

    /// Raw value in half-units; `value() == halves() / 2`.
    pub fn halves(self) -> u64 {
        self.halves
    }

    pub fn value(self) -> f64 {
        self.halves as f64 / 2.0
    }
}

impl Add for Measure {
    type Output = Measure;
    fn add(self, rhs: Measure) -> Measure {
        Measure {
            halves: self.halves + rhs.halves,
        }
    }
}

impl fmt::Debug for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// A total choice of colors, one per vertex of the instance it certifies.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    colors: BTreeMap<VertexId, Color>,
}

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn set(&mut self, v: VertexId, c: Color) {
        self.colors.insert(v, c);
    }

    pub fn get(&self, v: VertexId) -> Option<Color> {
        self.colors.get(&v).copied()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.colors.contains_key(&v)
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Pairs `(vertex, color)` in ascending vertex order.
    pub fn iter(&self) -> impl Iterator<Item = (VertexId, Color)> + '_ {
        self.colors.iter().map(|(&v, &c)| (v, c))
    }
}

impl FromIterator<(VertexId, Color)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (VertexId, Color)>>(iter: I) -> Self {
        Assignment {
            colors: iter.into_iter().collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct VertexData {
    list: ColorSet,
    /// Sorted ascending; symmetric with the neighbor's entry.
    nbrs: Vec<VertexId>,
}

/// An undirected graph together with a color list per vertex.
///
/// The adjacency relation is symmetric and irreflexive. All queries iterate
/// vertices in ascending id order, which keeps every downstream tie-break
/// deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Instance {
    verts: BTreeMap<VertexId, VertexData>,
}

/// Validation result of [`Instance::build`]. An input that contains an empty
/// list has a well-defined decision (not choosable), so it is reported as a
/// distinguished outcome rather than an error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuildOutcome {
    Valid(Instance),
    TriviallyUnchoosable { vertex: VertexId },
}

impl BuildOutcome {
    /// Unwraps the valid instance; panics on the trivially-unchoosable case.
    pub fn expect_valid(self) -> Instance {
        match self {
            BuildOutcome::Valid(inst) => inst,
            BuildOutcome::TriviallyUnchoosable { vertex } => {
                panic!("instance has an empty list at vertex {vertex}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("edge references undeclared vertex {0}")]
    UnknownEdgeVertex(VertexId),
    #[error("list record references undeclared vertex {0}")]
    UnknownListVertex(VertexId),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("assignment is missing vertex {0}")]
    MissingVertex(VertexId),
    #[error("assignment colors vertex {0} which is not in the instance")]
    ExtraVertex(VertexId),
    #[error("vertices {u} and {v} are adjacent and both colored {color}")]
    EdgeConflict { u: VertexId, v: VertexId, color: Color },
    #[error("vertex {vertex} is colored {color}, which is not in its list")]
    ColorNotInList { vertex: VertexId, color: Color },
}

impl Instance {
    pub fn empty() -> Instance {
        Instance::default()
    }

    /// Validates and builds an instance. Duplicate and reversed duplicate
    /// edges collapse to one; vertices without a list record default to the
    /// full palette.
    pub fn build(
        vertices: &[VertexId],
        edges: &[(VertexId, VertexId)],
        lists: &[(VertexId, ColorSet)],
    ) -> Result<BuildOutcome, BuildError> {
        let mut verts: BTreeMap<VertexId, VertexData> = vertices
            .iter()
            .map(|&v| {
                (
                    v,
                    VertexData {
                        list: ColorSet::ALL,
                        nbrs: Vec::new(),
                    },
                )
            })
            .collect();
        for &(v, list) in lists {
            match verts.get_mut(&v) {
                Some(data) => data.list = list,
                None => return Err(BuildError::UnknownListVertex(v)),
            }
        }
        for &(u, v) in edges {
            if u == v {
                return Err(BuildError::SelfLoop(u));
            }
            for w in [u, v] {
                if !verts.contains_key(&w) {
                    return Err(BuildError::UnknownEdgeVertex(w));
                }
            }
        }
        let mut inst = Instance { verts };
        for &(u, v) in edges {
            inst.add_edge(u, v);
        }
        if let Some((&vertex, _)) = inst.verts.iter().find(|(_, d)| d.list.is_empty()) {
            return Ok(BuildOutcome::TriviallyUnchoosable { vertex });
        }
        Ok(BuildOutcome::Valid(inst))
    }

    /// Convenience builder: vertices `1..=n`, each with list `list`.
    /// Panics on malformed edges; meant for fixtures, docs, and generators.
    pub fn from_edges(n: u32, edges: &[(VertexId, VertexId)], list: ColorSet) -> Instance {
        let vertices: Vec<VertexId> = (1..=n).collect();
        let lists: Vec<(VertexId, ColorSet)> = vertices.iter().map(|&v| (v, list)).collect();
        Instance::build(&vertices, edges, &lists)
            .expect("malformed fixture edges")
            .expect_valid()
    }

    /// The complete graph on vertices `1..=n`, each with list `list`.
    pub fn complete(n: u32, list: ColorSet) -> Instance {
        let mut edges = Vec::new();
        for u in 1..=n {
            for v in (u + 1)..=n {
                edges.push((u, v));
            }
        }
        Instance::from_edges(n, &edges, list)
    }

    pub(crate) fn add_vertex(&mut self, v: VertexId, list: ColorSet) {
        self.verts.entry(v).or_insert(VertexData {
            list,
            nbrs: Vec::new(),
        });
    }

    /// Inserts an undirected edge; returns false if it was already present.
    pub(crate) fn add_edge(&mut self, u: VertexId, v: VertexId) -> bool {
        assert_ne!(u, v, "self-loop");
        let unbrs = &mut self.verts.get_mut(&u).expect("unknown vertex").nbrs;
        match unbrs.binary_search(&v) {
            Ok(_) => return false,
            Err(pos) => unbrs.insert(pos, v),
        }
        let vnbrs = &mut self.verts.get_mut(&v).expect("unknown vertex").nbrs;
        let pos = vnbrs.binary_search(&u).unwrap_err();
        vnbrs.insert(pos, u);
        true
    }

    /// Deletes `v` and detaches it from all neighbors. Lists stay untouched.
    pub(crate) fn remove_vertex(&mut self, v: VertexId) {
        let data = self.verts.remove(&v).expect("unknown vertex");
        for w in data.nbrs {
            let nbrs = &mut self.verts.get_mut(&w).expect("dangling edge").nbrs;
            let pos = nbrs.binary_search(&v).expect("asymmetric adjacency");
            nbrs.remove(pos);
        }
    }

    pub(crate) fn shrink_list(&mut self, v: VertexId, c: Color) {
        let data = self.verts.get_mut(&v).expect("unknown vertex");
        data.list = data.list.without(c);
    }

    pub(crate) fn set_list(&mut self, v: VertexId, list: ColorSet) {
        self.verts.get_mut(&v).expect("unknown vertex").list = list;
    }

    pub fn num_vertices(&self) -> usize {
        self.verts.len()
    }

    pub fn num_edges(&self) -> usize {
        self.verts.values().map(|d| d.nbrs.len()).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.verts.contains_key(&v)
    }

    /// Vertex ids in ascending order.
    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.verts.keys().copied()
    }

    pub fn list(&self, v: VertexId) -> ColorSet {
        self.verts.get(&v).expect("unknown vertex").list
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.verts.get(&v).expect("unknown vertex").nbrs
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    pub fn max_list_size(&self) -> usize {
        self.verts.values().map(|d| d.list.size()).max().unwrap_or(0)
    }

    /// `counts[s]` is the number of vertices whose list has size `s`.
    pub fn list_size_counts(&self) -> [usize; 4] {
        let mut counts = [0usize; 4];
        for data in self.verts.values() {
            counts[data.list.size()] += 1;
        }
        counts
    }

    /// The measure `n3 + 0.5 * n2` of this instance.
    pub fn measure(&self) -> Measure {
        let counts = self.list_size_counts();
        Measure::from_counts(counts[3], counts[2])
    }

    /// Number of neighbors of `v` whose list has size 3.
    pub fn list3_neighbor_count(&self, v: VertexId) -> usize {
        self.neighbors(v)
            .iter()
            .filter(|&&w| self.list(w).size() == 3)
            .count()
    }

    /// Number of neighbors of `v` whose list has size 2.
    pub fn list2_neighbor_count(&self, v: VertexId) -> usize {
        self.neighbors(v)
            .iter()
            .filter(|&&w| self.list(w).size() == 2)
            .count()
    }

    /// Vertices that break the structural hypothesis the branching analysis
    /// relies on: degree at most 5, list of size 3, and fewer than three
    /// neighbors with lists of size 2. Empty means the hypothesis holds.
    pub fn check_hypothesis(&self) -> Vec<VertexId> {
        self.vertex_ids()
            .filter(|&v| {
                self.list(v).size() == 3
                    && self.degree(v) <= 5
                    && self.list2_neighbor_count(v) < 3
            })
            .collect()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.verts.values().map(|d| d.nbrs.len()).min()
    }

    /// The maximum-degree vertex, ties broken by lowest id.
    pub fn max_degree_vertex(&self) -> Option<(VertexId, usize)> {
        let mut best: Option<(VertexId, usize)> = None;
        for (&v, data) in &self.verts {
            let deg = data.nbrs.len();
            if best.is_none_or(|(_, bd)| deg > bd) {
                best = Some((v, deg));
            }
        }
        best
    }

    /// Checks that `a` colors exactly this instance's vertices, respects
    /// every list, and gives adjacent vertices distinct colors.
    pub fn verify_assignment(&self, a: &Assignment) -> Result<(), VerifyError> {
        for (v, _) in a.iter() {
            if !self.contains_vertex(v) {
                return Err(VerifyError::ExtraVertex(v));
            }
        }
        for v in self.vertex_ids() {
            let c = a.get(v).ok_or(VerifyError::MissingVertex(v))?;
            if !self.list(v).contains(c) {
                return Err(VerifyError::ColorNotInList { vertex: v, color: c });
            }
            for &w in self.neighbors(v) {
                if w > v && a.get(w) == Some(c) {
                    return Err(VerifyError::EdgeConflict { u: v, v: w, color: c });
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: u8) -> Color {
        Color::new(v).unwrap()
    }

    fn set(colors: &[u8]) -> ColorSet {
        colors.iter().map(|&v| c(v)).collect()
    }

    #[test]
    fn build_single_vertex_singleton_list() {
        let out = Instance::build(&[1], &[], &[(1, set(&[1]))]).unwrap();
        let inst = out.expect_valid();
        assert_eq!(inst.num_vertices(), 1);
        assert_eq!(inst.list(1), set(&[1]));
    }

    #[test]
    fn build_rejects_self_loop() {
        let err = Instance::build(&[1], &[(1, 1)], &[]).unwrap_err();
        assert_eq!(err, BuildError::SelfLoop(1));
    }

    #[test]
    fn build_collapses_duplicate_and_reversed_edges() {
        let inst = Instance::build(&[1, 2], &[(1, 2), (2, 1)], &[])
            .unwrap()
            .expect_valid();
        assert_eq!(inst.num_edges(), 1);
        assert_eq!(inst.neighbors(1), &[2]);
    }

    #[test]
    fn build_empty_list_is_trivially_unchoosable() {
        let out = Instance::build(&[1, 2], &[(1, 2)], &[(2, ColorSet::EMPTY)]).unwrap();
        assert_eq!(out, BuildOutcome::TriviallyUnchoosable { vertex: 2 });
    }

    #[test]
    fn build_rejects_unknown_vertices() {
        assert_eq!(
            Instance::build(&[1], &[(1, 2)], &[]).unwrap_err(),
            BuildError::UnknownEdgeVertex(2)
        );
        assert_eq!(
            Instance::build(&[1], &[], &[(7, ColorSet::ALL)]).unwrap_err(),
            BuildError::UnknownListVertex(7)
        );
    }

    #[test]
    fn measure_direct_formula() {
        // n3 = 4, n2 = 3 -> 5.5
        let mut lists: Vec<(VertexId, ColorSet)> = (1..=4).map(|v| (v, ColorSet::ALL)).collect();
        lists.extend((5..=7).map(|v| (v, set(&[1, 2]))));
        let inst = Instance::build(&[1, 2, 3, 4, 5, 6, 7], &[], &lists)
            .unwrap()
            .expect_valid();
        assert_eq!(inst.measure(), Measure::from_counts(4, 3));
        assert_eq!(inst.measure().value(), 5.5);
    }

    #[test]
    fn measure_empty_instance_is_zero() {
        assert_eq!(Instance::empty().measure(), Measure::ZERO);
    }

    #[test]
    fn measure_all_two_lists() {
        let inst = Instance::from_edges(6, &[], set(&[2, 3]));
        assert_eq!(inst.measure().value(), 3.0);
    }

    #[test]
    fn measure_is_additive_over_disjoint_union() {
        let a = Instance::from_edges(3, &[(1, 2)], ColorSet::ALL);
        let b = Instance::from_edges(4, &[(1, 2), (3, 4)], set(&[1, 2]));
        // Disjoint union by relabeling b's vertices to 11..=14.
        let verts: Vec<VertexId> = (1..=3).chain(11..=14).collect();
        let lists: Vec<(VertexId, ColorSet)> = (1..=3)
            .map(|v| (v, ColorSet::ALL))
            .chain((11..=14).map(|v| (v, set(&[1, 2]))))
            .collect();
        let union = Instance::build(&verts, &[(1, 2), (11, 12), (13, 14)], &lists)
            .unwrap()
            .expect_valid();
        assert_eq!(union.measure(), a.measure() + b.measure());
    }

    #[test]
    fn list3_neighbor_count_star() {
        let edges: Vec<(u32, u32)> = (2..=7).map(|leaf| (1, leaf)).collect();
        let inst = Instance::from_edges(7, &edges, ColorSet::ALL);
        assert_eq!(inst.list3_neighbor_count(1), 6);
    }

    #[test]
    fn list3_neighbor_count_isolated_vertex() {
        let inst = Instance::from_edges(1, &[], ColorSet::ALL);
        assert_eq!(inst.list3_neighbor_count(1), 0);
    }

    #[test]
    fn list3_neighbor_count_mixed_lists() {
        let inst = Instance::build(
            &[1, 2, 3, 4],
            &[(1, 2), (1, 3), (1, 4)],
            &[
                (1, ColorSet::ALL),
                (2, set(&[1, 2])),
                (3, set(&[1, 3])),
                (4, ColorSet::ALL),
            ],
        )
        .unwrap()
        .expect_valid();
        assert_eq!(inst.list3_neighbor_count(1), 1);
        assert_eq!(inst.list2_neighbor_count(1), 2);
    }

    #[test]
    fn hypothesis_vacuous_at_degree_six() {
        let inst = Instance::complete(7, ColorSet::ALL);
        assert!(inst.check_hypothesis().is_empty());
    }

    #[test]
    fn hypothesis_met_with_exactly_three_two_list_neighbors() {
        let inst = Instance::build(
            &[1, 2, 3, 4],
            &[(1, 2), (1, 3), (1, 4)],
            &[
                (1, ColorSet::ALL),
                (2, set(&[1, 2])),
                (3, set(&[1, 2])),
                (4, set(&[1, 2])),
            ],
        )
        .unwrap()
        .expect_valid();
        assert!(inst.check_hypothesis().is_empty());
    }

    #[test]
    fn hypothesis_violated_without_two_list_neighbors() {
        let inst = Instance::from_edges(4, &[(1, 2), (1, 3), (1, 4)], ColorSet::ALL);
        assert_eq!(inst.check_hypothesis(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn verify_accepts_proper_path() {
        let inst = Instance::from_edges(3, &[(1, 2), (2, 3)], set(&[1, 2]));
        let a: Assignment = [(1, c(1)), (2, c(2)), (3, c(1))].into_iter().collect();
        assert!(inst.verify_assignment(&a).is_ok());
    }

    #[test]
    fn verify_rejects_triangle_on_two_colors() {
        let inst = Instance::from_edges(3, &[(1, 2), (2, 3), (1, 3)], set(&[1, 2]));
        for bits in 0..8u8 {
            let a: Assignment = (1..=3)
                .map(|v| (v, c(if bits & (1 << (v - 1)) != 0 { 2 } else { 1 })))
                .collect();
            assert!(inst.verify_assignment(&a).is_err());
        }
    }

    #[test]
    fn verify_accepts_part_constant_tripartite_coloring() {
        // K_{3,3,3}: parts {1,2,3}, {4,5,6}, {7,8,9}.
        let mut edges = Vec::new();
        for u in 1..=9u32 {
            for v in (u + 1)..=9 {
                if (u - 1) / 3 != (v - 1) / 3 {
                    edges.push((u, v));
                }
            }
        }
        let inst = Instance::from_edges(9, &edges, ColorSet::ALL);
        let a: Assignment = (1..=9u32).map(|v| (v, c(((v - 1) / 3 + 1) as u8))).collect();
        assert!(inst.verify_assignment(&a).is_ok());
    }

    #[test]
    fn verify_reports_domain_mismatch() {
        let inst = Instance::from_edges(2, &[(1, 2)], ColorSet::ALL);
        let missing: Assignment = [(1, c(1))].into_iter().collect();
        assert_eq!(
            inst.verify_assignment(&missing),
            Err(VerifyError::MissingVertex(2))
        );
        let extra: Assignment = [(1, c(1)), (2, c(2)), (3, c(3))].into_iter().collect();
        assert_eq!(
            inst.verify_assignment(&extra),
            Err(VerifyError::ExtraVertex(3))
        );
    }

    #[test]
    fn colorset_iteration_is_ascending() {
        let s = set(&[3, 1]);
        let got: Vec<u8> = s.iter().map(Color::value).collect();
        assert_eq!(got, vec![1, 3]);
        assert_eq!(s.size(), 2);
        assert_eq!(s.without(c(1)).sole(), Some(c(3)));
    }
}
