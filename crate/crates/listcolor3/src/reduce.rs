//! Safe reduction rules, applied to exhaustion after every color commitment,
//! plus the replayable trace that lets deferred vertices pick up colors once
//! the rest of the graph is colored.
//!
//! Four rules run with fixed priority, lowest vertex id first within a rule:
//!
//! * R2 (contradiction): an empty list anywhere stops reduction.
//! * R1 (singleton propagation): a vertex with a one-color list commits to
//!   that color; the color is deleted from every neighbor's list and the
//!   vertex is removed.
//! * R3 (greedy-removable): a vertex whose list is larger than its degree can
//!   always be colored last, so it is removed now and completed during
//!   replay. Neighbor lists are untouched.
//! * R4 (free color): a vertex with a list color that appears in no
//!   neighbor's list can safely take it; the vertex is removed with that
//!   color and neighbor lists are untouched.
//!
//! Every rule removes exactly one vertex, so reduction terminates after at
//! most `n` steps.

use crate::instance::{Assignment, Color, ColorSet, Instance, VertexId};

/// One reduction step. `Deferred` snapshots the vertex's list and neighbor
/// set at removal time so replay does not depend on later deletions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Forced {
        vertex: VertexId,
        color: Color,
    },
    Deferred {
        vertex: VertexId,
        list: ColorSet,
        neighbors: Vec<VertexId>,
    },
    FreeColor {
        vertex: VertexId,
        color: Color,
    },
}

impl Step {
    pub fn vertex(&self) -> VertexId {
        match *self {
            Step::Forced { vertex, .. }
            | Step::Deferred { vertex, .. }
            | Step::FreeColor { vertex, .. } => vertex,
        }
    }
}

/// Ordered log of reduction steps; replayed in reverse to lift a partial
/// assignment of the reduced instance to the instance reduction started from.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    steps: Vec<Step>,
}

impl ReductionTrace {
    pub fn new() -> ReductionTrace {
        ReductionTrace::default()
    }

    pub fn from_steps(steps: Vec<Step>) -> ReductionTrace {
        ReductionTrace { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    fn push(&mut self, step: Step) {
        debug_assert!(
            self.steps.iter().all(|s| s.vertex() != step.vertex()),
            "vertex reduced twice"
        );
        self.steps.push(step);
    }
}

/// Result of running the rules to a fixpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReduceOutcome {
    /// No rule applies anymore. Unless `result` is empty it has no singleton
    /// list, no vertex with a list larger than its degree, and no free color.
    Reduced {
        result: Instance,
        trace: ReductionTrace,
    },
    /// Some list became empty; the instance reduction started from is not
    /// choosable along the commitments already made.
    Contradiction { trace: ReductionTrace },
}

impl ReduceOutcome {
    pub fn trace(&self) -> &ReductionTrace {
        match self {
            ReduceOutcome::Reduced { trace, .. } | ReduceOutcome::Contradiction { trace } => trace,
        }
    }

    pub fn is_contradiction(&self) -> bool {
        matches!(self, ReduceOutcome::Contradiction { .. })
    }
}

/// Commits color `c` to `v`: deletes `v` and removes `c` from every
/// neighbor's list. Neighbor lists may become empty; the caller must check.
///
/// Panics if `v` is not in the instance or `c` is not in its list.
pub fn assign_color(inst: &Instance, v: VertexId, c: Color) -> Instance {
    let mut out = inst.clone();
    assign_color_in_place(&mut out, v, c);
    out
}

fn assign_color_in_place(inst: &mut Instance, v: VertexId, c: Color) {
    assert!(
        inst.list(v).contains(c),
        "vertex {v} cannot take color {c}: list is {:?}",
        inst.list(v)
    );
    for w in inst.neighbors(v).to_vec() {
        inst.shrink_list(w, c);
    }
    inst.remove_vertex(v);
}

/// Applies the reduction rules until none fires, with priority
/// R2 > R1 > R3 > R4 and ascending vertex id within each rule.
pub fn reduce_fixpoint(inst: &Instance) -> ReduceOutcome {
    let mut cur = inst.clone();
    let mut trace = ReductionTrace::new();
    'rules: loop {
        // R2: any empty list is a contradiction.
        if cur.vertex_ids().any(|v| cur.list(v).is_empty()) {
            return ReduceOutcome::Contradiction { trace };
        }
        // R1: singleton propagation.
        for v in cur.vertex_ids().collect::<Vec<_>>() {
            if let Some(c) = cur.list(v).sole() {
                trace.push(Step::Forced { vertex: v, color: c });
                assign_color_in_place(&mut cur, v, c);
                continue 'rules;
            }
        }
        // R3: list larger than degree; colorable last, remove now.
        for v in cur.vertex_ids().collect::<Vec<_>>() {
            if cur.list(v).size() > cur.degree(v) {
                trace.push(Step::Deferred {
                    vertex: v,
                    list: cur.list(v),
                    neighbors: cur.neighbors(v).to_vec(),
                });
                cur.remove_vertex(v);
                continue 'rules;
            }
        }
        // R4: a color no neighbor can take is always safe.
        for v in cur.vertex_ids().collect::<Vec<_>>() {
            for c in cur.list(v).iter() {
                if cur.neighbors(v).iter().all(|&w| !cur.list(w).contains(c)) {
                    trace.push(Step::FreeColor { vertex: v, color: c });
                    cur.remove_vertex(v);
                    continue 'rules;
                }
            }
        }
        break;
    }
    ReduceOutcome::Reduced { result: cur, trace }
}

/// Replays `trace` in reverse over `partial`, which must color every vertex
/// the trace does not mention. Forced and free-color steps take their
/// recorded color; a deferred vertex takes the lowest recorded-list color
/// unused by its recorded neighbors.
///
/// Panics if a deferred vertex has no legal color; the reduction invariant
/// (list strictly larger than the recorded neighbor set) makes that a bug,
/// not an input condition.
pub fn replay_trace(trace: &ReductionTrace, partial: &Assignment) -> Assignment {
    let mut a = partial.clone();
    for step in trace.steps().iter().rev() {
        match step {
            Step::Forced { vertex, color } | Step::FreeColor { vertex, color } => {
                a.set(*vertex, *color);
            }
            Step::Deferred {
                vertex,
                list,
                neighbors,
            } => {
                let used: ColorSet = neighbors.iter().filter_map(|&w| a.get(w)).collect();
                let c = list
                    .iter()
                    .find(|&c| !used.contains(c))
                    .expect("deferred vertex has no legal color left; reduction invariant broken");
                a.set(*vertex, c);
            }
        }
    }
    a
}
