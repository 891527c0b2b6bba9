use nucleus_core::clique::enumerate_r_cliques;
use nucleus_core::forest::build_forest;
use nucleus_core::oracle::Oracle;
use nucleus_core::peel::{set_k, InvariantCheck, PeelOptions, Strategy as Access, TieBreak};
use nucleus_core::{Graph, NucleusForest};
use proptest::prelude::*;

const PAIRS: [(usize, usize); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n as u32 {
        for w in u + 1..n as u32 {
            if bits[k] {
                edges.push((u, w));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges).0
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2usize..=max_n, prop_oneof![Just(0.2), Just(0.4), Just(0.6), Just(0.8)]).prop_flat_map(|(n, p)| {
        proptest::collection::vec(proptest::bool::weighted(p), n * (n - 1) / 2)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

fn forest_sets(f: &NucleusForest) -> Vec<(u32, Vec<usize>)> {
    let mut sets: Vec<(u32, Vec<usize>)> = f
        .nodes
        .iter()
        .map(|n| {
            let members = f.member_cliques(n.id).unwrap();
            (n.k, members.into_iter().map(|i| i as usize).collect())
        })
        .collect();
    sets.sort();
    sets
}

fn check_structure(f: &NucleusForest, kappa: &[u32]) -> Result<(), TestCaseError> {
    let members: Vec<Vec<u32>> = (0..f.len()).map(|id| f.member_cliques(id).unwrap()).collect();
    for a in 0..f.len() {
        let node = &f.nodes[a];
        prop_assert_eq!(node.clique_count, members[a].len());
        prop_assert!(members[a].iter().all(|&i| kappa[i as usize] >= node.k));
        prop_assert!(node.own.iter().all(|&i| kappa[i as usize] == node.k));
        if let Some(p) = node.parent {
            prop_assert!(f.nodes[p].k < node.k);
            prop_assert!(f.nodes[p].clique_count > node.clique_count);
            prop_assert!(f.nodes[p].children.contains(&a));
        }
        for b in a + 1..f.len() {
            let common = members[a]
                .iter()
                .filter(|i| members[b].binary_search(i).is_ok())
                .count();
            let nested = f.is_ancestor(a, b) || f.is_ancestor(b, a);
            if nested {
                prop_assert!(common == members[a].len().min(members[b].len()));
            } else {
                prop_assert_eq!(common, 0, "unrelated nuclei {} and {} share an r-clique", a, b);
            }
        }
    }
    // Every clique with κ >= 1 has exactly one node where κ equals the level.
    for (i, &k) in kappa.iter().enumerate() {
        let owners = f.nodes.iter().filter(|n| n.own.contains(&(i as u32))).count();
        prop_assert_eq!(owners, usize::from(k > 0));
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kappa_and_forest_match_oracle(g in arb_graph(16)) {
        for (r, s) in PAIRS {
            let oracle = Oracle::new(&g, r, s).unwrap();
            let expected = oracle.result();
            let idx = enumerate_r_cliques(&g, r).unwrap();
            for strategy in [Access::OnDemand, Access::Materialized] {
                let opts = PeelOptions { strategy, check: InvariantCheck::Full, ..Default::default() };
                let ka = set_k(&g, &idx, s, &opts).unwrap();
                prop_assert_eq!(&ka.kappa, &expected.kappa, "kappa for ({},{})", r, s);
                let forest = build_forest(&g, &idx, &ka, &opts).unwrap();
                prop_assert_eq!(forest_sets(&forest), expected.nuclei.clone(), "nuclei for ({},{})", r, s);
                check_structure(&forest, &ka.kappa)?;
                for node in &forest.nodes {
                    prop_assert_eq!(g.induced_density(&node.vertices).unwrap(), node.density);
                }
                for k in 1..=ka.max_kappa {
                    let roots_at_k = forest
                        .nodes
                        .iter()
                        .filter(|n| n.k >= k && n.parent.is_none_or(|p| forest.nodes[p].k < k))
                        .count();
                    prop_assert_eq!(roots_at_k, oracle.nuclei(k).len());
                }
            }
        }
    }

    #[test]
    fn tie_breaks_do_not_change_kappa(g in arb_graph(20), seed in any::<u64>()) {
        for (r, s) in PAIRS {
            let idx = enumerate_r_cliques(&g, r).unwrap();
            let base = set_k(&g, &idx, s, &PeelOptions::default()).unwrap();
            let opts = PeelOptions { tie_break: TieBreak::Seeded(seed), check: InvariantCheck::Full, ..Default::default() };
            let shuffled = set_k(&g, &idx, s, &opts).unwrap();
            prop_assert_eq!(&base.kappa, &shuffled.kappa);
            let seq: Vec<u32> = shuffled.order.iter().map(|&i| shuffled.kappa[i as usize]).collect();
            prop_assert!(seq.windows(2).all(|w| w[0] <= w[1]));
            // The forest does not depend on the processing order either.
            let a = build_forest(&g, &idx, &base, &PeelOptions::default()).unwrap();
            let b = build_forest(&g, &idx, &shuffled, &PeelOptions::default()).unwrap();
            prop_assert_eq!(forest_sets(&a), forest_sets(&b));
        }
    }
}
