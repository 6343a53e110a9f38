//! Property tests over generated instances. Strategies produce generator
//! specs (seed plus shape knobs); everything downstream is deterministic.

use proptest::prelude::*;

use listcolor3::{
    generate, reduce_fixpoint, solve, solve_two_list, GenSpec, Instance, ListProfile,
    ReduceOutcome, SolveConfig, VertexId,
};

fn arb_spec(max_n: u32) -> impl Strategy<Value = GenSpec> {
    (2..=max_n, 0.0f64..=0.9, any::<u64>(), any::<bool>()).prop_map(|(n, p, seed, repair)| {
        GenSpec {
            n,
            edge_probability: p,
            list_profile: match seed % 3 {
                0 => ListProfile::UniformRandomNonempty,
                1 => ListProfile::AllThree,
                _ => ListProfile::TwoThreeMix { p2: 0.5 },
            },
            repair_hypothesis: repair,
            min_degree: None,
            seed,
        }
    })
}

fn two_listed(inst: &Instance) -> Instance {
    let verts: Vec<VertexId> = inst.vertex_ids().collect();
    let edges: Vec<(VertexId, VertexId)> = verts
        .iter()
        .flat_map(|&u| {
            inst.neighbors(u)
                .iter()
                .filter(move |&&w| w > u)
                .map(move |&w| (u, w))
                .collect::<Vec<_>>()
        })
        .collect();
    let lists: Vec<_> = verts
        .iter()
        .map(|&v| {
            let list = inst.list(v);
            let list = if list.size() == 3 {
                list.without(listcolor3::Color::new(1 + (v % 3) as u8).unwrap())
            } else {
                list
            };
            (v, list)
        })
        .collect();
    Instance::build(&verts, &edges, &lists).unwrap().expect_valid()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// Reduction fixpoints leave no rule applicable: no singleton list, no
    /// list larger than its vertex's degree, no color absent from a whole
    /// neighborhood.
    #[test]
    fn reduction_fixpoint_is_stable(spec in arb_spec(14)) {
        let inst = generate(&spec).unwrap().instance;
        if let ReduceOutcome::Reduced { result, trace } = reduce_fixpoint(&inst) {
            for v in result.vertex_ids() {
                let list = result.list(v);
                prop_assert!(list.size() >= 2);
                prop_assert!(list.size() <= result.degree(v));
                for c in list.iter() {
                    prop_assert!(result
                        .neighbors(v)
                        .iter()
                        .any(|&w| result.list(w).contains(c)));
                }
            }
            // Trace and residue tile the vertex set.
            let removed = trace.steps().len();
            prop_assert_eq!(removed + result.num_vertices(), inst.num_vertices());
        }
    }

    /// The solver is a pure function of (instance, config).
    #[test]
    fn solve_is_deterministic(spec in arb_spec(11)) {
        let inst = generate(&spec).unwrap().instance;
        let a = solve(&inst, &SolveConfig::default());
        let b = solve(&inst, &SolveConfig::default());
        prop_assert_eq!(a, b);
    }

    /// Disabling Case-4 pruning never changes the decision, only the tree.
    #[test]
    fn case4_pruning_toggle_preserves_the_decision(spec in arb_spec(11)) {
        let inst = generate(&spec).unwrap().instance;
        let pruned = solve(&inst, &SolveConfig::default());
        let full = solve(
            &inst,
            &SolveConfig { case4_pruning: false, ..SolveConfig::default() },
        );
        prop_assert_eq!(pruned.decision, full.decision);
        prop_assert!(full.stats.leaves >= pruned.stats.leaves);
    }

    /// Adding an edge can only lose solutions for two-list instances.
    #[test]
    fn two_list_unsat_is_monotone_under_edges(spec in arb_spec(12)) {
        let inst = two_listed(&generate(&spec).unwrap().instance);
        if solve_two_list(&inst).unwrap().is_none() {
            let verts: Vec<VertexId> = inst.vertex_ids().collect();
            'outer: for (i, &u) in verts.iter().enumerate() {
                for &w in &verts[i + 1..] {
                    if !inst.neighbors(u).contains(&w) {
                        let mut edges: Vec<(VertexId, VertexId)> = verts
                            .iter()
                            .flat_map(|&a| {
                                inst.neighbors(a)
                                    .iter()
                                    .filter(move |&&b| b > a)
                                    .map(move |&b| (a, b))
                                    .collect::<Vec<_>>()
                            })
                            .collect();
                        edges.push((u, w));
                        let lists: Vec<_> = verts.iter().map(|&v| (v, inst.list(v))).collect();
                        let bigger = Instance::build(&verts, &edges, &lists)
                            .unwrap()
                            .expect_valid();
                        prop_assert!(solve_two_list(&bigger).unwrap().is_none());
                        break 'outer;
                    }
                }
            }
        }
    }
}
