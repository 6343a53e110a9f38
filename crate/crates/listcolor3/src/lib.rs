//! Exact decision and search for list coloring with lists drawn from
//! `{1,2,3}`.
//!
//! The solver branches a pivot vertex's three colors, runs four safe
//! reduction rules to a fixpoint after every commitment, and switches to a
//! partition-then-enumerate step once no vertex has many fully-listed
//! neighbors; the enumeration's residuals all have lists of size at most two
//! and fall to a polynomial implication-graph solver. The branch tree is
//! instrumented: each node checks its measure-drop recurrence against the
//! base 1.3196, so the claimed leaf bound `1.3196^(n3 + 0.5 * n2)` is an
//! observable runtime invariant rather than a paper fact.
//!
//! ```
//! use listcolor3::{solve, ColorSet, Decision, Instance, SolveConfig};
//!
//! let k7 = Instance::complete(7, ColorSet::ALL);
//! let result = solve(&k7, &SolveConfig::default());
//! assert_eq!(result.decision, Decision::NotChoosable);
//! ```
//!
//! A narrative guide lives in the `book/` directory of the repository and is
//! mirrored (and doc-tested) under [`guide`].

pub mod gen;
mod guide;
pub mod instance;
pub mod oracle;
pub mod partition;
pub mod reduce;
pub mod solver;
pub mod twolist;

pub use gen::{differential_run, generate, DiffConfig, DiffReport, GenSpec, Generated, ListProfile};
pub use instance::{
    Assignment, BuildError, BuildOutcome, Color, ColorSet, Instance, Measure, VerifyError, VertexId,
};
pub use oracle::{brute_force, brute_force_3color, CapExceeded, DEFAULT_ORACLE_CAP};
pub use partition::{build_partition, Partition, PartitionError};
pub use reduce::{assign_color, reduce_fixpoint, replay_trace, ReduceOutcome, ReductionTrace, Step};
pub use solver::{
    branch_case4, bound_value, check_recurrence, select_case, solve, three_colorability,
    BranchStats, CaseCounts, CaseKind, CaseSelection, Decision, NodeCapExceeded, NodeKind,
    SolveConfig, SolveResult, BRANCH_BASE, RECURRENCE_EPSILON,
};
pub use twolist::{solve_two_list, two_list_work_bound, TwoListError};
