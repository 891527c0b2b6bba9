//! Analytics over forest views: density histograms, size/density scatters
//! and overlaps between unrelated nuclei.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::error::Error;
use crate::forest::{ForestView, NucleusForest};
use crate::graph::Density;

pub const DEFAULT_BINS: usize = 20;

/// Nucleus counts per equal-width density bin over `[0, 1]`.
///
/// A density on a bin boundary belongs to the upper bin, except 1.0 which
/// belongs to the last bin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityHistogram {
    pub counts: Vec<usize>,
}

impl DensityHistogram {
    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn width(&self) -> f64 {
        1.0 / self.counts.len() as f64
    }

    /// `(low, high)` edges of bin `i`.
    pub fn edges(&self, i: usize) -> (f64, f64) {
        let n = self.counts.len() as f64;
        (i as f64 / n, (i + 1) as f64 / n)
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

/// Bin index of `d` among `bins` equal-width bins.
pub fn bin_of(d: Density, bins: usize) -> usize {
    (d.scaled_floor(bins as u64) as usize).min(bins - 1)
}

pub fn density_histogram(f: &NucleusForest, view: &ForestView, bins: usize) -> Result<DensityHistogram, Error> {
    if bins == 0 {
        return Err(Error::InvalidParameter("histogram needs at least one bin"));
    }
    let mut counts = vec![0usize; bins];
    for id in view.forest_ids() {
        counts[bin_of(f.nodes[id].density, bins)] += 1;
    }
    Ok(DensityHistogram { counts })
}

/// `(size, density, forest id)` for every nucleus in the view, sorted by
/// size, then density, then id.
pub fn size_density_scatter(f: &NucleusForest, view: &ForestView) -> Vec<(usize, Density, usize)> {
    let mut points: Vec<_> = view
        .forest_ids()
        .map(|id| (f.nodes[id].size(), f.nodes[id].density, id))
        .collect();
    points.sort_unstable();
    points
}

/// Vertex overlap between two nuclei where neither contains the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapRecord {
    /// The denser nucleus (lower id on ties).
    pub node_a: usize,
    pub node_b: usize,
    pub overlap: usize,
    /// Size of the union of the two vertex sets.
    pub union: usize,
    pub density_a: Density,
    pub density_b: Density,
}

impl OverlapRecord {
    pub fn jaccard(&self) -> f64 {
        self.overlap as f64 / self.union as f64
    }
}

/// All non-ancestor pairs of nuclei in the view sharing at least
/// `min_overlap` vertices, ordered by the pair's (smaller id, larger id).
///
/// Pairs are found through a vertex-to-nuclei index, so only nuclei that
/// actually share a vertex are compared; ancestry is decided by DFS
/// intervals of the full forest.
pub fn overlap_analysis(f: &NucleusForest, view: &ForestView, min_overlap: usize) -> Result<Vec<OverlapRecord>, Error> {
    if min_overlap == 0 {
        return Err(Error::InvalidParameter("minimum overlap must be at least 1"));
    }
    let intervals = f.full_view().dfs_intervals();
    let related = |a: usize, b: usize| {
        let (ia, ib) = (intervals[a], intervals[b]);
        (ia.0 <= ib.0 && ib.0 < ia.1) || (ib.0 <= ia.0 && ia.0 < ib.1)
    };

    let n = f.fingerprint.vertices;
    let mut holders: Vec<Vec<u32>> = vec![Vec::new(); n];
    for id in view.forest_ids() {
        for &v in f.nodes[id].vertices.iter() {
            holders[v as usize].push(id as u32);
        }
    }
    let mut shared: HashMap<(u32, u32), usize> = HashMap::new();
    for list in &holders {
        for (i, &a) in list.iter().enumerate() {
            for &b in &list[i + 1..] {
                if !related(a as usize, b as usize) {
                    let key = if a < b { (a, b) } else { (b, a) };
                    *shared.entry(key).or_insert(0) += 1;
                }
            }
        }
    }
    let mut pairs: Vec<((u32, u32), usize)> = shared.into_iter().filter(|&(_, c)| c >= min_overlap).collect();
    pairs.sort_unstable();
    Ok(pairs
        .into_iter()
        .map(|((a, b), overlap)| {
            let (a, b) = (a as usize, b as usize);
            let (na, nb) = (&f.nodes[a], &f.nodes[b]);
            let (hi, lo) = if na.density >= nb.density { (na, nb) } else { (nb, na) };
            OverlapRecord {
                node_a: hi.id,
                node_b: lo.id,
                overlap,
                union: na.size() + nb.size() - overlap,
                density_a: hi.density,
                density_b: lo.density,
            }
        })
        .collect())
}

/// Count of parent-child links along which density decreases towards the
/// leaves.
pub fn density_inversions(f: &NucleusForest, view: &ForestView) -> usize {
    view.nodes
        .iter()
        .filter_map(|n| n.parent.map(|p| (view.nodes[p].node, n.node)))
        .filter(|&(p, c)| f.nodes[c].density < f.nodes[p].density)
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clique::enumerate_r_cliques;
    use crate::clique::tests::shared_edge_k4s;
    use crate::forest::build_forest;
    use crate::graph::Graph;
    use crate::peel::{set_k, PeelOptions};

    fn forest(g: &Graph, r: usize, s: usize) -> NucleusForest {
        let idx = enumerate_r_cliques(g, r).unwrap();
        let ka = set_k(g, &idx, s, &PeelOptions::default()).unwrap();
        build_forest(g, &idx, &ka, &PeelOptions::default()).unwrap()
    }

    #[test]
    fn histogram_boundaries() {
        assert_eq!(bin_of(Density::new(10, 5), 20), 19);
        assert_eq!(bin_of(Density::new(0, 5), 20), 0);
        // 0.5 sits on a boundary and goes up.
        assert_eq!(bin_of(Density::new(3, 4), 20), 10);
        assert_eq!(bin_of(Density::new(3, 4), 1), 0);
    }

    #[test]
    fn single_clique_histogram() {
        let f = forest(&Graph::complete(5), 3, 4);
        let h = density_histogram(&f, &f.full_view(), DEFAULT_BINS).unwrap();
        assert_eq!(h.counts[19], 1);
        assert_eq!(h.total(), 1);
        assert_eq!(h.edges(19), (0.95, 1.0));
        assert!(density_histogram(&f, &f.full_view(), 0).is_err());
        let empty = density_histogram(&f, &f.filter_by_size(10).unwrap(), DEFAULT_BINS).unwrap();
        assert_eq!(empty.total(), 0);
    }

    #[test]
    fn shared_edge_pair_metrics() {
        let f = forest(&shared_edge_k4s(), 3, 4);
        let h = density_histogram(&f, &f.filter_by_size(10).unwrap(), DEFAULT_BINS).unwrap();
        assert_eq!(h.total(), 0);
        let h = density_histogram(&f, &f.filter_by_size(4).unwrap(), DEFAULT_BINS).unwrap();
        assert_eq!(h.counts[19], 2);

        let overlaps = overlap_analysis(&f, &f.full_view(), 1).unwrap();
        assert_eq!(overlaps.len(), 1);
        let o = &overlaps[0];
        assert_eq!((o.node_a, o.node_b, o.overlap, o.union), (0, 1, 2, 6));
        assert_eq!(o.jaccard(), 2.0 / 6.0);
        assert_eq!((o.density_a.as_f64(), o.density_b.as_f64()), (1.0, 1.0));
        assert!(overlap_analysis(&f, &f.full_view(), 3).unwrap().is_empty());
        assert!(overlap_analysis(&f, &f.full_view(), 0).is_err());
    }

    #[test]
    fn chains_have_no_overlaps() {
        // Nested cores: K4 inside a wheel-ish 2-core inside a tree-ish 1-core.
        let g = Graph::from_edges(
            7,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (3, 4),
                (4, 0),
                (4, 5),
                (5, 6),
            ],
        )
        .0;
        let f = forest(&g, 1, 2);
        assert!(f.nodes.iter().all(|n| n.children.len() <= 1));
        assert!(overlap_analysis(&f, &f.full_view(), 1).unwrap().is_empty());
    }

    #[test]
    fn scatter_is_sorted() {
        let f = forest(&Graph::complete(5), 3, 4);
        let s = size_density_scatter(&f, &f.full_view());
        assert_eq!(s.len(), 1);
        assert_eq!((s[0].0, s[0].1.as_f64()), (5, 1.0));
    }
}
