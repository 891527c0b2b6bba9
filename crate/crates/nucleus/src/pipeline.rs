//! Load, enumerate, peel and build the forest in one pass.

use std::time::Instant;

use nucleus_core::clique::{CliqueIndex, Orientation};
use nucleus_core::forest::build_forest_with;
use nucleus_core::graph::LabeledGraph;
use nucleus_core::peel::{peel, AnyContainment, CostPredictor, PeelOptions};
use nucleus_core::{Error, Graph, KappaAssignment, NucleusForest, MAX_CLIQUE};

/// Everything a decomposition run produces.
pub struct Decomposition {
    pub labels: Vec<u32>,
    pub graph: Graph,
    pub cliques: CliqueIndex,
    pub kappa: KappaAssignment,
    pub forest: NucleusForest,
    pub materialized: bool,
    pub seconds: f64,
}

impl Decomposition {
    pub fn predictor(&self) -> Result<CostPredictor, Error> {
        nucleus_core::peel::cost_predictor(&self.graph, &self.cliques, self.kappa.s)
    }
}

/// Worker count for clique enumeration: `NUCLEUS_THREADS` if set and
/// positive, otherwise the available parallelism.
pub fn thread_count() -> usize {
    std::env::var("NUCLEUS_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Enumerates r-cliques with up to `threads` workers. The result does not
/// depend on the thread count since the index sorts its tuples.
pub fn enumerate_parallel(g: &Graph, r: usize, threads: usize) -> Result<CliqueIndex, Error> {
    if !(1..=MAX_CLIQUE).contains(&r) {
        return Err(Error::UnsupportedCliqueSize(r));
    }
    let n = g.vertex_count();
    let orient = Orientation::new(g);
    let threads = threads.clamp(1, n.max(1));
    if threads == 1 {
        let mut flat = Vec::new();
        for v in 0..n as u32 {
            orient.cliques_rooted_at(v, r, &mut flat);
        }
        return CliqueIndex::from_tuples(n, r, flat);
    }
    // Interleaved roots spread high-degree vertices across workers.
    let parts: Vec<Vec<u32>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let orient = &orient;
                scope.spawn(move || {
                    let mut flat = Vec::new();
                    let mut v = t;
                    while v < n {
                        orient.cliques_rooted_at(v as u32, r, &mut flat);
                        v += threads;
                    }
                    flat
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("enumeration worker panicked"))
            .collect()
    });
    let mut flat = Vec::with_capacity(parts.iter().map(Vec::len).sum());
    for part in parts {
        flat.extend(part);
    }
    CliqueIndex::from_tuples(n, r, flat)
}

pub fn decompose(lg: LabeledGraph, r: usize, s: usize, opts: &PeelOptions) -> Result<Decomposition, Error> {
    if !(1 <= r && r < s && s <= MAX_CLIQUE) {
        return Err(Error::UnsupportedPair { r, s });
    }
    let start = Instant::now();
    let LabeledGraph { graph, labels, .. } = lg;
    let cliques = enumerate_parallel(&graph, r, thread_count())?;
    let (kappa, forest, materialized) = {
        let containment = AnyContainment::new(&graph, &cliques, s, opts.strategy, opts.memory_budget)?;
        let kappa = peel(&containment, graph.fingerprint(), opts);
        let forest = build_forest_with(&graph, &containment, &kappa)?;
        (kappa, forest, containment.is_materialized())
    };
    Ok(Decomposition {
        labels,
        graph,
        cliques,
        kappa,
        forest,
        materialized,
        seconds: start.elapsed().as_secs_f64(),
    })
}

pub fn strategy_name(materialized: bool) -> &'static str {
    if materialized {
        "materialized"
    } else {
        "on-demand"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nucleus_core::clique::enumerate_r_cliques;

    #[test]
    fn parallel_enumeration_matches_sequential() {
        let mut edges = Vec::new();
        for u in 0..40u32 {
            for w in u + 1..40 {
                if (u * 7 + w * 13) % 5 < 2 {
                    edges.push((u, w));
                }
            }
        }
        let g = Graph::from_edges(40, edges).0;
        for r in 1..=4 {
            let seq = enumerate_r_cliques(&g, r).unwrap();
            for threads in [1, 3, 8] {
                let par = enumerate_parallel(&g, r, threads).unwrap();
                assert!(seq.iter().eq(par.iter()), "r={r} threads={threads}");
            }
        }
    }

    #[test]
    fn rejects_bad_pairs() {
        let lg = LabeledGraph {
            graph: Graph::complete(3),
            labels: vec![0, 1, 2],
            stats: Default::default(),
        };
        assert!(matches!(
            decompose(lg, 3, 3, &PeelOptions::default()),
            Err(Error::UnsupportedPair { r: 3, s: 3 })
        ));
    }
}
