//! Undirected simple graphs in compressed adjacency form.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;

use crate::error::Error;

/// Immutable undirected simple graph.
///
/// Vertices are `0..vertex_count()`. Every neighbor list is strictly
/// ascending, there are no self-loops or parallel edges, and adjacency is
/// symmetric.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.vertex_count())
            .field("m", &self.edge_count())
            .finish()
    }
}

/// Counts of input artifacts dropped while normalizing an edge list.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NormalizeStats {
    pub self_loops: usize,
    pub duplicates: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices from an arbitrary edge list.
    ///
    /// Self-loops are dropped, and reversed or repeated edges are merged.
    ///
    /// # Panics
    ///
    /// If an endpoint is `>= n`.
    pub fn from_edges<I>(n: usize, edges: I) -> (Graph, NormalizeStats)
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut stats = NormalizeStats::default();
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for (u, w) in edges {
            assert!((u as usize) < n && (w as usize) < n, "endpoint out of range");
            if u == w {
                stats.self_loops += 1;
                continue;
            }
            pairs.push(if u < w { (u, w) } else { (w, u) });
        }
        let before = pairs.len();
        pairs.sort_unstable();
        pairs.dedup();
        stats.duplicates = before - pairs.len();

        let mut degree = vec![0usize; n];
        for &(u, w) in &pairs {
            degree[u as usize] += 1;
            degree[w as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut neighbors = vec![0u32; 2 * pairs.len()];
        // Pairs are sorted by (low, high): each low endpoint receives its
        // higher neighbors in order, and each high endpoint receives its lower
        // neighbors in order before any higher one, so lists come out sorted.
        for &(u, w) in &pairs {
            neighbors[fill[w as usize]] = u;
            fill[w as usize] += 1;
        }
        for &(u, w) in &pairs {
            neighbors[fill[u as usize]] = w;
            fill[u as usize] += 1;
        }
        (Graph { offsets, neighbors }, stats)
    }

    pub fn empty() -> Graph {
        Graph {
            offsets: vec![0],
            neighbors: Vec::new(),
        }
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for w in u + 1..n as u32 {
                edges.push((u, w));
            }
        }
        Graph::from_edges(n, edges).0
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        let v = v as usize;
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: u32) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count() as u32)
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: u32, w: u32) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(w) {
            (u, w)
        } else {
            (w, u)
        };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// Every edge once, as `(low, high)` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.vertex_count() as u32).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&w| w > u)
                .map(move |w| (u, w))
        })
    }

    /// Stable identity of the graph: vertex count, edge count and an FNV-1a
    /// hash of the degree sequence.
    pub fn fingerprint(&self) -> Fingerprint {
        const PRIME: u64 = 0x0000_0100_0000_01b3;
        let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
        for v in 0..self.vertex_count() as u32 {
            for byte in (self.degree(v) as u64).to_le_bytes() {
                hash ^= byte as u64;
                hash = hash.wrapping_mul(PRIME);
            }
        }
        Fingerprint {
            vertices: self.vertex_count(),
            edges: self.edge_count(),
            degree_hash: hash,
        }
    }

    /// Edge density of the subgraph induced by `set`.
    pub fn induced_density(&self, set: &VertexSet) -> Result<Density, Error> {
        if set.len() < 2 {
            return Err(Error::UndefinedDensity(set.len()));
        }
        if set
            .as_slice()
            .last()
            .is_some_and(|&v| v as usize >= self.vertex_count())
        {
            return Err(Error::InvalidVertexSet(self.vertex_count()));
        }
        let mut mark = vec![false; self.vertex_count()];
        for &v in set.iter() {
            mark[v as usize] = true;
        }
        Ok(Density::new(
            self.induced_edges_marked(set.as_slice(), &mark),
            set.len(),
        ))
    }

    /// Counts edges with both endpoints in `members`, given a marker array
    /// that is `true` exactly on `members`.
    pub(crate) fn induced_edges_marked(&self, members: &[u32], mark: &[bool]) -> u64 {
        let mut edges = 0u64;
        for &v in members {
            edges += self.neighbors(v).iter().filter(|&&w| w > v && mark[w as usize]).count() as u64;
        }
        edges
    }

    /// Smallest-last (degeneracy) ordering, ties broken by smallest id.
    pub fn degeneracy_order(&self) -> DegeneracyOrder {
        let n = self.vertex_count();
        let mut degree: Vec<u32> = (0..n as u32).map(|v| self.degree(v) as u32).collect();
        let mut queue: BTreeSet<(u32, u32)> = (0..n as u32).map(|v| (degree[v as usize], v)).collect();
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut removal_degree = Vec::with_capacity(n);
        let mut degeneracy = 0;
        while let Some((d, v)) = queue.pop_first() {
            removed[v as usize] = true;
            order.push(v);
            removal_degree.push(d);
            degeneracy = degeneracy.max(d);
            for &w in self.neighbors(v) {
                let w_us = w as usize;
                if !removed[w_us] {
                    queue.remove(&(degree[w_us], w));
                    degree[w_us] -= 1;
                    queue.insert((degree[w_us], w));
                }
            }
        }
        let mut rank = vec![0u32; n];
        for (i, &v) in order.iter().enumerate() {
            rank[v as usize] = i as u32;
        }
        DegeneracyOrder {
            order,
            rank,
            removal_degree,
            degeneracy,
        }
    }
}

/// Identity of a graph used to detect artifacts computed on other inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub vertices: usize,
    pub edges: usize,
    pub degree_hash: u64,
}

/// Result of [`Graph::degeneracy_order`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyOrder {
    /// Vertices in removal order.
    pub order: Vec<u32>,
    /// Position of each vertex in `order`.
    pub rank: Vec<u32>,
    /// Degree of `order[i]` in the remaining graph when it was removed.
    pub removal_degree: Vec<u32>,
    pub degeneracy: u32,
}

/// Sorted, duplicate-free set of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<u32>);

impl VertexSet {
    /// Sorts and deduplicates arbitrary ids.
    pub fn new(mut members: Vec<u32>) -> VertexSet {
        members.sort_unstable();
        members.dedup();
        VertexSet(members)
    }

    /// Wraps ids that are already strictly ascending.
    pub fn from_sorted(members: Vec<u32>) -> Result<VertexSet, Error> {
        if members.windows(2).all(|w| w[0] < w[1]) {
            Ok(VertexSet(members))
        } else {
            Err(Error::InvalidVertexSet(usize::MAX))
        }
    }

    pub fn all(n: usize) -> VertexSet {
        VertexSet((0..n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &u32> {
        self.0.iter()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        let (mut i, mut j, mut count) = (0, 0, 0);
        let (a, b) = (&self.0, &other.0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }
}

/// Exact edge density `edges / C(size, 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Density {
    pub edges: u64,
    pub size: usize,
}

impl Density {
    pub fn new(edges: u64, size: usize) -> Density {
        debug_assert!(size >= 2);
        Density { edges, size }
    }

    /// Number of vertex pairs, `C(size, 2)`.
    pub fn pairs(&self) -> u64 {
        let s = self.size as u64;
        s * (s - 1) / 2
    }

    pub fn as_f64(&self) -> f64 {
        self.edges as f64 / self.pairs() as f64
    }

    /// `floor(density * parts)`, computed exactly.
    pub fn scaled_floor(&self, parts: u64) -> u64 {
        (self.edges as u128 * parts as u128 / self.pairs() as u128) as u64
    }
}

impl PartialOrd for Density {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Density {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        let lhs = self.edges as u128 * other.pairs() as u128;
        let rhs = other.edges as u128 * self.pairs() as u128;
        lhs.cmp(&rhs).then(self.size.cmp(&other.size))
    }
}

/// Accumulates an edge list with arbitrary 32-bit labels and compacts them
/// to `0..n` in first-seen order.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    ids: HashMap<u32, u32>,
    labels: Vec<u32>,
    edges: Vec<(u32, u32)>,
}

/// A graph together with the original label of every vertex.
#[derive(Debug, Clone)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: Vec<u32>,
    pub stats: NormalizeStats,
}

impl GraphBuilder {
    pub fn new() -> GraphBuilder {
        GraphBuilder::default()
    }

    fn intern(&mut self, label: u32) -> u32 {
        let next = self.labels.len() as u32;
        *self.ids.entry(label).or_insert_with(|| {
            self.labels.push(label);
            next
        })
    }

    pub fn add_edge(&mut self, u: u32, w: u32) {
        let u = self.intern(u);
        let w = self.intern(w);
        self.edges.push((u, w));
    }

    pub fn finish(self) -> LabeledGraph {
        let (graph, stats) = Graph::from_edges(self.labels.len(), self.edges);
        LabeledGraph {
            graph,
            labels: self.labels,
            stats,
        }
    }
}
