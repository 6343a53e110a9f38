//! Polynomial-time decision and solution extraction for instances whose
//! lists all have size 1 or 2, via implication-graph satisfiability.
//!
//! Each size-2 vertex contributes two choice literals, one per color; each
//! size-1 vertex contributes a single fixed literal. For every edge `(u,v)`
//! and every shared color `c` the clause "not (u=c and v=c)" becomes two
//! implications (one is its own contrapositive when an endpoint is fixed).
//! The instance is satisfiable iff no vertex has both of its choice literals
//! in the same strongly connected component; a witness falls out of the
//! component order.

use crate::instance::{Assignment, Instance, VertexId};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TwoListError {
    #[error("vertex {0} has a list of size 3; only sizes 1 and 2 are accepted")]
    OversizedList(VertexId),
    #[error("vertex {0} has an empty list")]
    EmptyList(VertexId),
}

/// Decides an all-lists-≤2 instance and returns a witness when one exists.
/// Deterministic: a fixed instance always yields the same assignment.
pub fn solve_two_list(inst: &Instance) -> Result<Option<Assignment>, TwoListError> {
    solve_counted(inst).map(|(a, _)| a)
}

/// Number of elementary implication-graph operations (literal creation, arc
/// insertion, search and extraction steps) a [`solve_two_list`] call performs
/// on this instance. Scales linearly in vertices plus edges.
pub fn two_list_work_bound(inst: &Instance) -> Result<u64, TwoListError> {
    solve_counted(inst).map(|(_, ops)| ops)
}

fn solve_counted(inst: &Instance) -> Result<(Option<Assignment>, u64), TwoListError> {
    let mut ops: u64 = 0;

    // Literal layout: vertices ascending, one literal per list color.
    let verts: Vec<VertexId> = inst.vertex_ids().collect();
    let mut lit_vertex: Vec<VertexId> = Vec::new();
    let mut lit_color = Vec::new();
    let mut base = std::collections::BTreeMap::new();
    for &v in &verts {
        let list = inst.list(v);
        match list.size() {
            0 => return Err(TwoListError::EmptyList(v)),
            3 => return Err(TwoListError::OversizedList(v)),
            _ => {}
        }
        base.insert(v, lit_vertex.len() as u32);
        for c in list.iter() {
            lit_vertex.push(v);
            lit_color.push(c);
            ops += 1;
        }
    }
    let n_lits = lit_vertex.len();

    // lit(v, c): index of the literal "v takes c". other(v, c): the literal
    // for v's other color (2-lists only).
    let lit = |v: VertexId, c| {
        let b = base[&v];
        if lit_color[b as usize] == c {
            b
        } else {
            b + 1
        }
    };
    let other = |v: VertexId, c| {
        let b = base[&v];
        if lit_color[b as usize] == c {
            b + 1
        } else {
            b
        }
    };

    let mut arcs: Vec<Vec<u32>> = vec![Vec::new(); n_lits];
    let mut conflict = false;
    for &u in &verts {
        for &w in inst.neighbors(u) {
            if w < u {
                continue;
            }
            for c in inst.list(u).intersection(inst.list(w)).iter() {
                match (inst.list(u).size(), inst.list(w).size()) {
                    (1, 1) => conflict = true,
                    (1, 2) => {
                        // u is fixed to c, so w must avoid it.
                        arcs[lit(w, c) as usize].push(other(w, c));
                        ops += 1;
                    }
                    (2, 1) => {
                        arcs[lit(u, c) as usize].push(other(u, c));
                        ops += 1;
                    }
                    (2, 2) => {
                        arcs[lit(u, c) as usize].push(other(w, c));
                        arcs[lit(w, c) as usize].push(other(u, c));
                        ops += 2;
                    }
                    _ => unreachable!("list sizes checked above"),
                }
            }
        }
    }
    if conflict {
        return Ok((None, ops));
    }

    let comp = tarjan_scc(&arcs, &mut ops);

    for &v in &verts {
        if inst.list(v).size() == 2 {
            let b = base[&v] as usize;
            if comp[b] == comp[b + 1] {
                return Ok((None, ops));
            }
        }
    }

    // Components come out of Tarjan in reverse topological order; sweeping
    // them ascending (ties by literal index) picks, for each vertex, the
    // choice no selected literal implies against.
    let mut order: Vec<u32> = (0..n_lits as u32).collect();
    order.sort_by_key(|&i| (comp[i as usize], i));
    let mut a = Assignment::new();
    for i in order {
        let v = lit_vertex[i as usize];
        if !a.contains_vertex(v) {
            a.set(v, lit_color[i as usize]);
            ops += 1;
        }
    }
    debug_assert!(inst.verify_assignment(&a).is_ok());
    Ok((Some(a), ops))
}

/// Iterative Tarjan; returns the component index per node. Components are
/// numbered so that every arc points into an equal or smaller component.
fn tarjan_scc(arcs: &[Vec<u32>], ops: &mut u64) -> Vec<u32> {
    const UNSET: u32 = u32::MAX;
    let n = arcs.len();
    let mut disc = vec![UNSET; n];
    let mut low = vec![0u32; n];
    let mut comp = vec![UNSET; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut frames: Vec<(u32, usize)> = Vec::new();
    let mut timer = 0u32;
    let mut n_comp = 0u32;

    for root in 0..n as u32 {
        if disc[root as usize] != UNSET {
            continue;
        }
        frames.push((root, 0));
        while let Some(&(v, cursor)) = frames.last() {
            let vi = v as usize;
            if cursor == 0 {
                disc[vi] = timer;
                low[vi] = timer;
                timer += 1;
                stack.push(v);
                on_stack[vi] = true;
                *ops += 1;
            }
            if cursor < arcs[vi].len() {
                frames.last_mut().unwrap().1 += 1;
                let w = arcs[vi][cursor] as usize;
                *ops += 1;
                if disc[w] == UNSET {
                    frames.push((w as u32, 0));
                } else if on_stack[w] {
                    low[vi] = low[vi].min(disc[w]);
                }
            } else {
                if low[vi] == disc[vi] {
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w as usize] = false;
                        comp[w as usize] = n_comp;
                        if w == v {
                            break;
                        }
                    }
                    n_comp += 1;
                }
                frames.pop();
                if let Some(&(p, _)) = frames.last() {
                    let pi = p as usize;
                    low[pi] = low[pi].min(low[vi]);
                }
            }
        }
    }
    comp
}
