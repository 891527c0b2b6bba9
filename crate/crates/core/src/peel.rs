//! Generalized Matula–Beck peeling over r-cliques.
//!
//! Every r-clique starts with δ equal to the number of s-cliques containing
//! it. The unprocessed clique of minimum δ is repeatedly taken, its κ is set
//! to its current δ, and every s-clique around it that has no processed
//! member lowers the δ of its other members, but never below the value just
//! assigned. Minimum selection uses a bin-sorted array: cliques live in
//! contiguous bins by δ, a decrement swaps the clique to the front of its bin
//! and shifts the bin boundary.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::clique::{CliqueIndex, Containment, OnDemand, Supergraph, DEFAULT_MEMORY_BUDGET};
use crate::error::Error;
use crate::graph::{Fingerprint, Graph};

/// How s-cliques are reached during peeling and forest construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Materialize for s <= 3 when it fits the budget, otherwise on demand.
    #[default]
    Auto,
    /// Recompute containing s-cliques whenever a clique is visited.
    OnDemand,
    /// Store every s-clique; fails if over the memory budget.
    Materialized,
}

/// Choice among cliques that share the minimum δ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// Take the clique at the front of the minimum bin.
    #[default]
    BinOrder,
    /// Take a uniformly random clique of the minimum bin.
    Seeded(u64),
}

/// Runtime verification of the peeling invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InvariantCheck {
    #[default]
    Off,
    /// At every transition time, recount the unprocessed S-degree of every
    /// `stride`-th remaining clique and compare it with δ.
    Sampled { stride: usize },
    /// Same as `Sampled { stride: 1 }`.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeelOptions {
    pub strategy: Strategy,
    pub tie_break: TieBreak,
    pub check: InvariantCheck,
    pub memory_budget: u64,
}

impl Default for PeelOptions {
    fn default() -> Self {
        PeelOptions {
            strategy: Strategy::Auto,
            tie_break: TieBreak::BinOrder,
            check: InvariantCheck::Off,
            memory_budget: DEFAULT_MEMORY_BUDGET,
        }
    }
}

/// κ values of all r-cliques together with the order they were processed in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KappaAssignment {
    pub r: usize,
    pub s: usize,
    pub fingerprint: Fingerprint,
    /// κ per clique index.
    pub kappa: Vec<u32>,
    /// Clique indices in processing order; κ is non-decreasing along it.
    pub order: Vec<u32>,
    pub max_kappa: u32,
}

impl KappaAssignment {
    /// `(k, t_k)` for every κ value that occurs, ascending in k.
    pub fn transition_times(&self) -> Vec<(u32, usize)> {
        let seq: Vec<u32> = self.order.iter().map(|&i| self.kappa[i as usize]).collect();
        transition_times(&seq)
    }

    /// Number of cliques per κ value, indexed by κ.
    pub fn histogram(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.max_kappa as usize + 1];
        for &k in &self.kappa {
            counts[k as usize] += 1;
        }
        counts
    }
}

/// First position at which each value of a non-decreasing sequence occurs.
pub fn transition_times(kappa_in_order: &[u32]) -> Vec<(u32, usize)> {
    let mut out = Vec::new();
    for (t, &k) in kappa_in_order.iter().enumerate() {
        if t == 0 || kappa_in_order[t - 1] < k {
            out.push((k, t));
        }
    }
    out
}

/// Either containment strategy behind one type.
pub enum AnyContainment<'a> {
    OnDemand(OnDemand<'a>),
    Materialized(Supergraph<'a>),
}

impl<'a> AnyContainment<'a> {
    pub fn new(
        g: &'a Graph,
        cliques: &'a CliqueIndex,
        s: usize,
        strategy: Strategy,
        budget: u64,
    ) -> Result<AnyContainment<'a>, Error> {
        let lazy = OnDemand::new(g, cliques, s)?;
        match strategy {
            Strategy::OnDemand => Ok(AnyContainment::OnDemand(lazy)),
            Strategy::Materialized => Ok(AnyContainment::Materialized(Supergraph::build(g, cliques, s, budget)?)),
            Strategy::Auto if s <= 3 => match Supergraph::build(g, cliques, s, budget) {
                Ok(sg) => Ok(AnyContainment::Materialized(sg)),
                Err(Error::Capacity { .. }) => Ok(AnyContainment::OnDemand(lazy)),
                Err(e) => Err(e),
            },
            Strategy::Auto => Ok(AnyContainment::OnDemand(lazy)),
        }
    }

    pub fn is_materialized(&self) -> bool {
        matches!(self, AnyContainment::Materialized(_))
    }
}

impl Containment for AnyContainment<'_> {
    fn cliques(&self) -> &CliqueIndex {
        match self {
            AnyContainment::OnDemand(c) => c.cliques(),
            AnyContainment::Materialized(c) => c.cliques(),
        }
    }

    fn s(&self) -> usize {
        match self {
            AnyContainment::OnDemand(c) => c.s(),
            AnyContainment::Materialized(c) => c.s(),
        }
    }

    fn degree(&self, i: u32) -> u32 {
        match self {
            AnyContainment::OnDemand(c) => c.degree(i),
            AnyContainment::Materialized(c) => c.degree(i),
        }
    }

    fn for_each_container<F: FnMut(&[u32])>(&self, i: u32, f: F) {
        match self {
            AnyContainment::OnDemand(c) => c.for_each_container(i, f),
            AnyContainment::Materialized(c) => c.for_each_container(i, f),
        }
    }
}

/// Computes κ for every r-clique of `g` (the cliques in `cliques`) with
/// respect to s-cliques.
pub fn set_k(g: &Graph, cliques: &CliqueIndex, s: usize, opts: &PeelOptions) -> Result<KappaAssignment, Error> {
    let containment = AnyContainment::new(g, cliques, s, opts.strategy, opts.memory_budget)?;
    Ok(peel(&containment, g.fingerprint(), opts))
}

/// Bin-sorted array of cliques keyed by δ.
struct Bins {
    delta: Vec<u32>,
    /// Cliques sorted by δ; the prefix before the cursor is processed.
    vert: Vec<u32>,
    pos: Vec<usize>,
    /// `start[d]`: first position of bin d; `start[max + 1] == len`.
    start: Vec<usize>,
}

impl Bins {
    fn new(delta: Vec<u32>) -> Bins {
        let n = delta.len();
        let max = delta.iter().copied().max().unwrap_or(0) as usize;
        let mut start = vec![0usize; max + 2];
        for &d in &delta {
            start[d as usize + 1] += 1;
        }
        for d in 0..=max {
            start[d + 1] += start[d];
        }
        let mut fill = start.clone();
        let mut vert = vec![0u32; n];
        let mut pos = vec![0usize; n];
        for (i, &d) in delta.iter().enumerate() {
            let p = fill[d as usize];
            vert[p] = i as u32;
            pos[i] = p;
            fill[d as usize] += 1;
        }
        Bins {
            delta,
            vert,
            pos,
            start,
        }
    }

    fn swap(&mut self, p: usize, q: usize) {
        if p != q {
            self.vert.swap(p, q);
            self.pos[self.vert[p] as usize] = p;
            self.pos[self.vert[q] as usize] = q;
        }
    }

    /// Moves clique `i` from bin δ to bin δ−1.
    fn decrement(&mut self, i: u32) {
        let d = self.delta[i as usize] as usize;
        let front = self.start[d];
        self.swap(self.pos[i as usize], front);
        self.start[d] += 1;
        self.delta[i as usize] -= 1;
    }

    /// End (exclusive) of the bin holding the clique at position `p`.
    fn bin_end(&self, p: usize) -> usize {
        let d = self.delta[self.vert[p] as usize] as usize;
        self.start[d + 1]
    }
}

/// Peels the cliques of `c`. Panics if a requested invariant check fails.
pub fn peel<C: Containment>(c: &C, fingerprint: Fingerprint, opts: &PeelOptions) -> KappaAssignment {
    let n = c.cliques().len();
    let delta: Vec<u32> = (0..n as u32).map(|i| c.degree(i)).collect();
    let mut bins = Bins::new(delta);
    let mut processed = vec![false; n];
    let mut kappa = vec![0u32; n];
    let mut rng = match opts.tie_break {
        TieBreak::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        TieBreak::BinOrder => None,
    };
    let stride = match opts.check {
        InvariantCheck::Off => 0,
        InvariantCheck::Full => 1,
        InvariantCheck::Sampled { stride } => stride.max(1),
    };
    let mut last = None;

    for i in 0..n {
        if let Some(rng) = rng.as_mut() {
            let end = bins.bin_end(i);
            let pick = rng.gen_range(i..end);
            bins.swap(i, pick);
        }
        let current = bins.vert[i];
        let k = bins.delta[current as usize];
        if stride > 0 && last.is_none_or(|prev| prev < k) {
            check_transition(c, &bins, &processed, i, stride);
        }
        last = Some(k);
        kappa[current as usize] = k;
        c.for_each_container(current, |members| {
            if members.iter().any(|&m| processed[m as usize]) {
                return;
            }
            for &m in members {
                if m != current && bins.delta[m as usize] > k {
                    bins.decrement(m);
                }
            }
        });
        processed[current as usize] = true;
    }

    let order = bins.vert;
    assert!(
        order.windows(2).all(|w| kappa[w[0] as usize] <= kappa[w[1] as usize]),
        "kappa must be non-decreasing along the processing order"
    );
    KappaAssignment {
        r: c.r(),
        s: c.s(),
        fingerprint,
        max_kappa: kappa.iter().copied().max().unwrap_or(0),
        kappa,
        order,
    }
}

/// At a transition time, δ of every unprocessed clique equals the number of
/// s-cliques around it that have no processed member.
fn check_transition<C: Containment>(c: &C, bins: &Bins, processed: &[bool], from: usize, stride: usize) {
    for p in (from..bins.vert.len()).step_by(stride) {
        let i = bins.vert[p];
        let mut live = 0u32;
        c.for_each_container(i, |members| {
            if members.iter().all(|&m| !processed[m as usize]) {
                live += 1;
            }
        });
        assert_eq!(
            live, bins.delta[i as usize],
            "delta of clique {i} differs from its unprocessed S-degree at a transition time"
        );
    }
}

/// Σ_v ct_r(v)·d(v)^(s−r), saturating at `u64::MAX`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CostPredictor {
    pub value: u64,
    pub saturated: bool,
}

/// Work estimate for on-demand s-clique discovery.
pub fn cost_predictor(g: &Graph, cliques: &CliqueIndex, s: usize) -> Result<CostPredictor, Error> {
    let r = cliques.r();
    if !(r < s && s <= crate::MAX_CLIQUE) {
        return Err(Error::UnsupportedPair { r, s });
    }
    let mut total: u128 = 0;
    let mut saturated = false;
    for v in 0..g.vertex_count() as u32 {
        let count = cliques.per_vertex_count(v) as u128;
        if count == 0 {
            continue;
        }
        let term = (g.degree(v) as u128)
            .checked_pow((s - r) as u32)
            .and_then(|p| p.checked_mul(count));
        match term.and_then(|t| total.checked_add(t)) {
            Some(t) => total = t,
            None => {
                saturated = true;
                break;
            }
        }
    }
    if total > u64::MAX as u128 {
        saturated = true;
    }
    Ok(CostPredictor {
        value: if saturated { u64::MAX } else { total as u64 },
        saturated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clique::enumerate_r_cliques;

    fn run(g: &Graph, r: usize, s: usize) -> (CliqueIndex, KappaAssignment) {
        let idx = enumerate_r_cliques(g, r).unwrap();
        let opts = PeelOptions {
            check: InvariantCheck::Full,
            ..PeelOptions::default()
        };
        let ka = set_k(g, &idx, s, &opts).unwrap();
        (idx, ka)
    }

    #[test]
    fn k5_triangles_get_two() {
        let (idx, ka) = run(&Graph::complete(5), 3, 4);
        assert_eq!(idx.len(), 10);
        assert!(ka.kappa.iter().all(|&k| k == 2));
        assert_eq!(ka.transition_times(), [(2, 0)]);
    }

    #[test]
    fn shared_edge_pair() {
        let g = crate::clique::tests::shared_edge_k4s();
        let (_, ka) = run(&g, 3, 4);
        assert_eq!(ka.kappa, [1; 8]);
        let (idx, ka) = run(&g, 2, 3);
        let shared = idx.index_of(&[0, 1]).unwrap();
        assert_eq!(ka.kappa[shared as usize], 2);
        assert!(ka.kappa.iter().all(|&k| k == 2));
    }

    #[test]
    fn zero_degree_cliques_get_zero() {
        // Triangle plus a pendant edge.
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).0;
        let (idx, ka) = run(&g, 2, 3);
        assert_eq!(ka.kappa[idx.index_of(&[2, 3]).unwrap() as usize], 0);
        assert_eq!(ka.kappa[idx.index_of(&[0, 1]).unwrap() as usize], 1);
        assert_eq!(ka.transition_times(), [(0, 0), (1, 1)]);
        assert_eq!(ka.histogram(), [1, 3]);
    }

    #[test]
    fn transition_examples() {
        assert_eq!(transition_times(&[2; 10]), [(2, 0)]);
        assert_eq!(transition_times(&[0, 0, 1, 1, 1, 3]), [(0, 0), (1, 2), (3, 5)]);
        assert!(transition_times(&[]).is_empty());
    }

    #[test]
    fn predictor() {
        let tri = Graph::complete(3);
        let idx = enumerate_r_cliques(&tri, 3).unwrap();
        assert_eq!(
            cost_predictor(&tri, &idx, 4).unwrap(),
            CostPredictor {
                value: 6,
                saturated: false
            }
        );
        let star = Graph::from_edges(6, (1..6).map(|v| (0, v))).0;
        let idx = enumerate_r_cliques(&star, 3).unwrap();
        assert_eq!(cost_predictor(&star, &idx, 4).unwrap().value, 0);
        assert!(cost_predictor(&star, &idx, 3).is_err());
    }

    #[test]
    fn strategies_and_tie_breaks_agree() {
        let g = crate::clique::tests::shared_edge_k4s();
        for (r, s) in [(1, 2), (2, 3), (2, 4), (3, 4), (1, 4)] {
            let idx = enumerate_r_cliques(&g, r).unwrap();
            let base = set_k(
                &g,
                &idx,
                s,
                &PeelOptions {
                    strategy: Strategy::OnDemand,
                    ..Default::default()
                },
            )
            .unwrap();
            let stored = set_k(
                &g,
                &idx,
                s,
                &PeelOptions {
                    strategy: Strategy::Materialized,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(base.kappa, stored.kappa);
            for seed in 0..5 {
                let opts = PeelOptions {
                    tie_break: TieBreak::Seeded(seed),
                    check: InvariantCheck::Full,
                    ..Default::default()
                };
                assert_eq!(set_k(&g, &idx, s, &opts).unwrap().kappa, base.kappa);
            }
        }
    }

    #[test]
    fn materialized_over_budget_fails() {
        let g = Graph::complete(6);
        let idx = enumerate_r_cliques(&g, 2).unwrap();
        let opts = PeelOptions {
            strategy: Strategy::Materialized,
            memory_budget: 10,
            ..Default::default()
        };
        assert!(matches!(set_k(&g, &idx, 3, &opts), Err(Error::Capacity { .. })));
        // Auto falls back to on-demand.
        let opts = PeelOptions {
            memory_budget: 10,
            ..Default::default()
        };
        assert!(set_k(&g, &idx, 3, &opts).unwrap().kappa.iter().all(|&k| k == 4));
    }
}
