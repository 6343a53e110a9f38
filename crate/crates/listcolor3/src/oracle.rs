//! Ground-truth brute force: exhaustive scans over the Cartesian product of
//! lists, used as the reference decision in differential tests.

use crate::instance::{Assignment, Color, ColorSet, Instance, VertexId};
use thiserror::Error;

/// Default cap on the candidate space, `2^24`.
pub const DEFAULT_ORACLE_CAP: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("candidate space {candidates} exceeds the cap {cap}")]
pub struct CapExceeded {
    pub candidates: u64,
    pub cap: u64,
}

/// Exhaustive list-coloring decision. Scans candidate assignments in
/// lexicographic vertex-id/color order and returns the first proper one, so
/// the witness is the lexicographically smallest solution.
pub fn brute_force(inst: &Instance, cap: u64) -> Result<Option<Assignment>, CapExceeded> {
    let mut candidates: u64 = 1;
    for v in inst.vertex_ids() {
        candidates = candidates.saturating_mul(inst.list(v).size().max(1) as u64);
    }
    if candidates > cap {
        return Err(CapExceeded { candidates, cap });
    }
    let verts: Vec<VertexId> = inst.vertex_ids().collect();
    let lists: Vec<Vec<Color>> = verts.iter().map(|&v| inst.list(v).iter().collect()).collect();
    let mut chosen: Vec<Color> = Vec::with_capacity(verts.len());
    Ok(search(inst, &verts, &lists, &mut chosen))
}

fn search(
    inst: &Instance,
    verts: &[VertexId],
    lists: &[Vec<Color>],
    chosen: &mut Vec<Color>,
) -> Option<Assignment> {
    let i = chosen.len();
    if i == verts.len() {
        return Some(
            verts
                .iter()
                .zip(chosen.iter())
                .map(|(&v, &c)| (v, c))
                .collect(),
        );
    }
    'colors: for &c in &lists[i] {
        for &w in inst.neighbors(verts[i]) {
            if let Ok(j) = verts[..i].binary_search(&w) {
                if chosen[j] == c {
                    continue 'colors;
                }
            }
        }
        chosen.push(c);
        if let Some(found) = search(inst, verts, lists, chosen) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

/// Exhaustive 3-colorability with the first vertex pinned to color 1
/// (color-class symmetry makes that lossless). Expects full lists.
pub fn brute_force_3color(inst: &Instance, cap: u64) -> Result<Option<Assignment>, CapExceeded> {
    assert!(
        inst.vertex_ids().all(|v| inst.list(v) == ColorSet::ALL),
        "brute_force_3color expects every list to be the full palette"
    );
    if inst.is_empty() {
        return Ok(Some(Assignment::new()));
    }
    let n = inst.num_vertices() as u32;
    let candidates = 3u64.checked_pow(n - 1).unwrap_or(u64::MAX);
    if candidates > cap {
        return Err(CapExceeded { candidates, cap });
    }
    let pinned = inst.vertex_ids().next().expect("nonempty");
    let mut pinned_inst = inst.clone();
    pinned_inst.set_list(pinned, ColorSet::singleton(Color::new(1).unwrap()));
    // The pinned instance's product is 3^(n-1); reuse the general scan.
    brute_force(&pinned_inst, cap)
}
