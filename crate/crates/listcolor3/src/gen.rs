//! Reproducible instance generation and the differential harness that runs
//! the solver against the brute-force oracle over a seeded corpus.
//!
//! All randomness comes from `ChaCha8Rng` seeded with the spec's 64-bit
//! seed, so a spec identifies its instance exactly, on every platform.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::instance::{Color, ColorSet, Instance, VertexId};
use crate::oracle::{brute_force, DEFAULT_ORACLE_CAP};
use crate::solver::{solve, BranchStats, Decision, SolveConfig};

/// How vertex lists are sampled.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ListProfile {
    /// Uniform over the seven nonempty subsets of the palette.
    UniformRandomNonempty,
    /// Every vertex gets the full palette.
    AllThree,
    /// A random 2-subset with probability `p2`, otherwise the full palette.
    TwoThreeMix { p2: f64 },
}

/// A reproducible instance description; identical specs produce identical
/// instances.
#[derive(Clone, Debug, PartialEq)]
pub struct GenSpec {
    pub n: u32,
    pub edge_probability: f64,
    pub list_profile: ListProfile,
    /// Post-process lists so every 3-list vertex of degree at most 5 gets
    /// three 2-list neighbors, where possible.
    pub repair_hypothesis: bool,
    /// Add random edges at deficient vertices until the minimum degree
    /// reaches this value.
    pub min_degree: Option<u32>,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub instance: Instance,
    /// True when some vertex still violates the hypothesis after repair ran
    /// out of 3-list neighbors to shrink.
    pub repair_incomplete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("min_degree {min_degree} is impossible with {n} vertices")]
    ImpossibleMinDegree { min_degree: u32, n: u32 },
    #[error("edge probability {0} is outside [0, 1]")]
    BadEdgeProbability(String),
}

/// Samples the instance described by `spec`. Vertices are `1..=n`.
pub fn generate(spec: &GenSpec) -> Result<Generated, GenError> {
    if !(0.0..=1.0).contains(&spec.edge_probability) {
        return Err(GenError::BadEdgeProbability(spec.edge_probability.to_string()));
    }
    if let Some(d) = spec.min_degree {
        if spec.n == 0 || d > spec.n - 1 {
            return Err(GenError::ImpossibleMinDegree {
                min_degree: d,
                n: spec.n,
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut inst = Instance::empty();
    for v in 1..=spec.n {
        inst.add_vertex(v, ColorSet::ALL);
    }
    for u in 1..=spec.n {
        for v in (u + 1)..=spec.n {
            if rng.random_bool(spec.edge_probability) {
                inst.add_edge(u, v);
            }
        }
    }
    if let Some(d) = spec.min_degree {
        loop {
            let deficient = inst.vertex_ids().find(|&v| inst.degree(v) < d as usize);
            let Some(v) = deficient else { break };
            let candidates: Vec<VertexId> = inst
                .vertex_ids()
                .filter(|&w| w != v && !inst.neighbors(v).contains(&w))
                .collect();
            let w = candidates[rng.random_range(0..candidates.len())];
            inst.add_edge(v, w);
        }
    }
    for v in 1..=spec.n {
        let list = match spec.list_profile {
            ListProfile::AllThree => ColorSet::ALL,
            ListProfile::UniformRandomNonempty => ColorSet::from_bits(rng.random_range(1..=7)),
            ListProfile::TwoThreeMix { p2 } => {
                if rng.random_bool(p2.clamp(0.0, 1.0)) {
                    random_two_subset(&mut rng)
                } else {
                    ColorSet::ALL
                }
            }
        };
        inst.set_list(v, list);
    }
    let mut repair_incomplete = false;
    if spec.repair_hypothesis {
        loop {
            let mut changed = false;
            for v in inst.check_hypothesis() {
                loop {
                    let violating = inst.list(v).size() == 3
                        && inst.degree(v) <= 5
                        && inst.list2_neighbor_count(v) < 3;
                    if !violating {
                        break;
                    }
                    let shrinkable = inst
                        .neighbors(v)
                        .iter()
                        .copied()
                        .find(|&u| inst.list(u).size() == 3);
                    match shrinkable {
                        Some(u) => {
                            inst.set_list(u, random_two_subset(&mut rng));
                            changed = true;
                        }
                        None => break,
                    }
                }
            }
            if !changed {
                break;
            }
        }
        repair_incomplete = !inst.check_hypothesis().is_empty();
    }
    Ok(Generated {
        instance: inst,
        repair_incomplete,
    })
}

fn random_two_subset(rng: &mut ChaCha8Rng) -> ColorSet {
    let dropped = Color::new(rng.random_range(1..=3)).unwrap();
    ColorSet::ALL.without(dropped)
}

/// Inputs of a differential run over a seeded corpus.
#[derive(Clone, Debug)]
pub struct DiffConfig {
    pub count: u32,
    pub n_min: u32,
    pub n_max: u32,
    pub seed: u64,
    /// Worker threads; results are identical for any worker count.
    pub workers: usize,
    /// Candidate-space cap for the oracle; instances above it are solved but
    /// not cross-checked.
    pub oracle_cap: u64,
    pub solve: SolveConfig,
}

impl DiffConfig {
    pub fn new(count: u32, n_range: (u32, u32), seed: u64) -> DiffConfig {
        DiffConfig {
            count,
            n_min: n_range.0,
            n_max: n_range.1,
            seed,
            workers: 1,
            oracle_cap: DEFAULT_ORACLE_CAP,
            solve: SolveConfig::default(),
        }
    }
}

/// One instance's outcome inside a differential report.
#[derive(Clone, Debug)]
pub struct InstanceRun {
    pub spec: GenSpec,
    pub repair_incomplete: bool,
    pub decision: Decision,
    pub stats: BranchStats,
    /// `None` when the oracle was skipped (candidate space above the cap).
    pub oracle_choosable: Option<bool>,
    /// Solver decision versus oracle decision; `None` when not compared.
    pub agree: Option<bool>,
    /// Both the solver's and the oracle's witnesses verified.
    pub witness_ok: bool,
    /// `leaves / base^mu_root`, recorded only for decided, violation-free
    /// runs (where the leaf bound is claimed).
    pub bound_ratio: Option<f64>,
}

impl InstanceRun {
    pub fn is_mismatch(&self) -> bool {
        self.agree == Some(false) || !self.witness_ok
    }
}

/// Aggregated differential report; runs are sorted by instance seed so
/// emission does not depend on worker scheduling.
#[derive(Clone, Debug, Default)]
pub struct DiffReport {
    pub runs: Vec<InstanceRun>,
}

impl DiffReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &InstanceRun> {
        self.runs.iter().filter(|r| r.is_mismatch())
    }

    pub fn mismatch_count(&self) -> usize {
        self.mismatches().count()
    }

    /// Largest observed `leaves / base^mu_root` over violation-free runs.
    pub fn max_bound_ratio(&self) -> Option<f64> {
        self.runs
            .iter()
            .filter_map(|r| r.bound_ratio)
            .fold(None, |acc, r| Some(acc.map_or(r, |a: f64| a.max(r))))
    }

    pub fn violation_free_count(&self) -> usize {
        self.runs.iter().filter(|r| r.bound_ratio.is_some()).count()
    }
}

/// Generates `count` instances (mixed list profiles, alternating hypothesis
/// repair), solves each, cross-checks the decision against the oracle, and
/// verifies every witness.
pub fn differential_run(cfg: &DiffConfig) -> DiffReport {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut specs = Vec::with_capacity(cfg.count as usize);
    for i in 0..cfg.count {
        let n = rng.random_range(cfg.n_min..=cfg.n_max.max(cfg.n_min));
        let edge_probability = 0.15 + 0.7 * rng.random::<f64>();
        let p2 = 0.3 + 0.4 * rng.random::<f64>();
        let list_profile = match i % 3 {
            0 => ListProfile::UniformRandomNonempty,
            1 => ListProfile::AllThree,
            _ => ListProfile::TwoThreeMix { p2 },
        };
        specs.push(GenSpec {
            n,
            edge_probability,
            list_profile,
            repair_hypothesis: i % 2 == 0,
            min_degree: None,
            seed: rng.next_u64(),
        });
    }

    let workers = cfg.workers.max(1).min(specs.len().max(1));
    let chunk_size = specs.len().div_ceil(workers.max(1)).max(1);
    let mut runs: Vec<InstanceRun> = if workers <= 1 {
        specs.iter().map(|s| run_one(s, cfg)).collect()
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = specs
                .chunks(chunk_size)
                .map(|chunk| scope.spawn(move || chunk.iter().map(|s| run_one(s, cfg)).collect::<Vec<_>>()))
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("worker panicked"))
                .collect()
        })
    };
    runs.sort_by_key(|r| r.spec.seed);
    DiffReport { runs }
}

fn run_one(spec: &GenSpec, cfg: &DiffConfig) -> InstanceRun {
    let generated = generate(spec).expect("differential specs are valid by construction");
    let inst = &generated.instance;
    let result = solve(inst, &cfg.solve);
    let oracle = brute_force(inst, cfg.oracle_cap).ok();
    let mut witness_ok = true;
    if let Some(w) = &result.witness {
        witness_ok &= inst.verify_assignment(w).is_ok();
    }
    let oracle_choosable = oracle.as_ref().map(|found| {
        if let Some(w) = found {
            witness_ok &= inst.verify_assignment(w).is_ok();
        }
        found.is_some()
    });
    let agree = match (result.decision, oracle_choosable) {
        (_, None) => None,
        (Decision::Aborted, Some(_)) => Some(false),
        (d, Some(o)) => Some((d == Decision::Choosable) == o),
    };
    let bound_ratio = (result.decision != Decision::Aborted && result.stats.violation_free())
        .then(|| result.stats.bound_ratio());
    InstanceRun {
        spec: spec.clone(),
        repair_incomplete: generated.repair_incomplete,
        decision: result.decision,
        stats: result.stats,
        oracle_choosable,
        agree,
        witness_ok,
        bound_ratio,
    }
}
