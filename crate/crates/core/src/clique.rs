//! Fixed-size clique enumeration and s-clique containment.
//!
//! r-cliques are listed by orienting every edge from lower to higher
//! degeneracy rank, so each clique is found exactly once from its
//! lowest-ranked vertex. The resulting [`CliqueIndex`] is sorted
//! lexicographically by vertex tuple, which fixes clique indices
//! independently of the enumeration order.
//!
//! The s-cliques containing an r-clique are reached through the
//! [`Containment`] trait, implemented both on demand ([`OnDemand`], which
//! extends the common neighborhood of the clique and never stores
//! s-cliques) and from a materialized [`Supergraph`].

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::error::Error;
use crate::graph::Graph;
use crate::MAX_CLIQUE;

type Key = [u32; MAX_CLIQUE];

fn key_of(tuple: &[u32]) -> Key {
    let mut key = [u32::MAX; MAX_CLIQUE];
    key[..tuple.len()].copy_from_slice(tuple);
    key
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Edges oriented from lower to higher degeneracy rank. Out-lists are
/// sorted by vertex id.
#[derive(Debug, Clone)]
pub struct Orientation {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Orientation {
    pub fn new(g: &Graph) -> Orientation {
        let rank = g.degeneracy_order().rank;
        let n = g.vertex_count();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::with_capacity(g.edge_count());
        offsets.push(0);
        for v in 0..n as u32 {
            let rv = rank[v as usize];
            targets.extend(g.neighbors(v).iter().copied().filter(|&w| rank[w as usize] > rv));
            offsets.push(targets.len());
        }
        Orientation { offsets, targets }
    }

    #[inline]
    pub fn out(&self, v: u32) -> &[u32] {
        &self.targets[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    /// Pushes every `size`-clique whose lowest-ranked vertex is `root` onto
    /// `out` as a sorted tuple.
    pub fn cliques_rooted_at(&self, root: u32, size: usize, out: &mut Vec<u32>) {
        debug_assert!((1..=MAX_CLIQUE).contains(&size));
        if size == 1 {
            out.push(root);
            return;
        }
        let mut prefix = [root; MAX_CLIQUE];
        let mut scratch: [Vec<u32>; MAX_CLIQUE - 1] = Default::default();
        scratch[0].extend_from_slice(self.out(root));
        self.extend(&mut prefix, 1, size, &mut scratch, out);
    }

    /// `scratch[0]` holds the candidates for position `len`; deeper levels
    /// use the remaining buffers.
    fn extend(
        &self,
        prefix: &mut [u32; MAX_CLIQUE],
        len: usize,
        size: usize,
        scratch: &mut [Vec<u32>],
        out: &mut Vec<u32>,
    ) {
        let (candidates, deeper) = scratch.split_first_mut().unwrap();
        for &w in candidates.iter() {
            prefix[len] = w;
            if len + 1 == size {
                let mut tuple = *prefix;
                tuple[..size].sort_unstable();
                out.extend_from_slice(&tuple[..size]);
            } else {
                let next = &mut deeper[0];
                next.clear();
                intersect_into(candidates, self.out(w), next);
                if !next.is_empty() {
                    self.extend(prefix, len + 1, size, deeper, out);
                }
            }
        }
    }
}

fn intersect_into(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}

/// All r-cliques of a graph with a dense index.
#[derive(Debug, Clone)]
pub struct CliqueIndex {
    r: usize,
    vertex_count: usize,
    flat: Vec<u32>,
    lookup: HashMap<Key, u32>,
    per_vertex: Vec<u64>,
}

impl CliqueIndex {
    /// Builds the index from unordered sorted tuples (flattened, stride `r`).
    pub fn from_tuples(vertex_count: usize, r: usize, flat: Vec<u32>) -> Result<CliqueIndex, Error> {
        if !(1..=MAX_CLIQUE).contains(&r) {
            return Err(Error::UnsupportedCliqueSize(r));
        }
        let flat = match r {
            1 => sort_tuples::<1>(flat),
            2 => sort_tuples::<2>(flat),
            3 => sort_tuples::<3>(flat),
            _ => sort_tuples::<4>(flat),
        };
        let mut per_vertex = vec![0u64; vertex_count];
        for &v in &flat {
            per_vertex[v as usize] += 1;
        }
        let mut lookup = HashMap::new();
        if r > 1 {
            lookup.reserve(flat.len() / r);
            for (i, tuple) in flat.chunks_exact(r).enumerate() {
                lookup.insert(key_of(tuple), i as u32);
            }
        }
        Ok(CliqueIndex {
            r,
            vertex_count,
            flat,
            lookup,
            per_vertex,
        })
    }

    #[inline]
    pub fn r(&self) -> usize {
        self.r
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.flat.len() / self.r
    }

    pub fn is_empty(&self) -> bool {
        self.flat.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Sorted vertex tuple of clique `i`.
    #[inline]
    pub fn vertices(&self, i: u32) -> &[u32] {
        let start = i as usize * self.r;
        &self.flat[start..start + self.r]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> {
        self.flat.chunks_exact(self.r)
    }

    /// Index of the clique with the given sorted tuple.
    #[inline]
    pub fn index_of(&self, tuple: &[u32]) -> Option<u32> {
        if tuple.len() != self.r {
            return None;
        }
        if self.r == 1 {
            let v = tuple[0];
            return ((v as usize) < self.vertex_count).then_some(v);
        }
        self.lookup.get(&key_of(tuple)).copied()
    }

    /// ct_r(v): number of cliques containing `v`.
    pub fn per_vertex_count(&self, v: u32) -> u64 {
        self.per_vertex[v as usize]
    }
}

fn sort_tuples<const N: usize>(flat: Vec<u32>) -> Vec<u32> {
    let mut tuples: Vec<[u32; N]> = flat.chunks_exact(N).map(|c| <[u32; N]>::try_from(c).unwrap()).collect();
    drop(flat);
    tuples.sort_unstable();
    tuples.into_flattened()
}

/// Enumerates every r-clique of `g`.
pub fn enumerate_r_cliques(g: &Graph, r: usize) -> Result<CliqueIndex, Error> {
    if !(1..=MAX_CLIQUE).contains(&r) {
        return Err(Error::UnsupportedCliqueSize(r));
    }
    let orient = Orientation::new(g);
    let mut flat = Vec::new();
    for v in 0..g.vertex_count() as u32 {
        orient.cliques_rooted_at(v, r, &mut flat);
    }
    CliqueIndex::from_tuples(g.vertex_count(), r, flat)
}

/// Number of `size`-cliques in `g`, without storing them.
pub fn count_cliques(g: &Graph, size: usize) -> Result<u64, Error> {
    if !(1..=MAX_CLIQUE).contains(&size) {
        return Err(Error::UnsupportedCliqueSize(size));
    }
    let orient = Orientation::new(g);
    let mut buf = Vec::new();
    let mut total = 0u64;
    for v in 0..g.vertex_count() as u32 {
        buf.clear();
        orient.cliques_rooted_at(v, size, &mut buf);
        total += (buf.len() / size) as u64;
    }
    Ok(total)
}

fn check_pair(r: usize, s: usize) -> Result<(), Error> {
    if r >= 1 && r < s && s <= MAX_CLIQUE {
        Ok(())
    } else {
        Err(Error::UnsupportedPair { r, s })
    }
}

/// Vertices adjacent to every member of `clique` (none of which belong to
/// it), ascending. Scans the neighborhood of the lowest-degree member.
pub fn common_neighbors(g: &Graph, clique: &[u32], out: &mut Vec<u32>) {
    out.clear();
    let Some(&pivot) = clique.iter().min_by_key(|&&v| g.degree(v)) else {
        return;
    };
    'candidates: for &w in g.neighbors(pivot) {
        for &v in clique {
            if v != pivot && !g.has_edge(v, w) {
                continue 'candidates;
            }
        }
        out.push(w);
    }
}

/// Calls `f` with every extension of `clique` by `extra` mutually adjacent
/// common neighbors, as a sorted s-tuple. Extensions are visited in
/// lexicographic order of the added vertices.
pub fn for_each_extension<F: FnMut(&[u32])>(g: &Graph, clique: &[u32], extra: usize, common: &[u32], mut f: F) {
    let size = clique.len() + extra;
    let mut emit = |added: &[u32]| {
        let mut tuple = [0u32; MAX_CLIQUE];
        tuple[..clique.len()].copy_from_slice(clique);
        tuple[clique.len()..size].copy_from_slice(added);
        tuple[..size].sort_unstable();
        f(&tuple[..size]);
    };
    match extra {
        0 => emit(&[]),
        1 => {
            for &w in common {
                emit(&[w]);
            }
        }
        2 => {
            for (i, &a) in common.iter().enumerate() {
                for &b in &common[i + 1..] {
                    if g.has_edge(a, b) {
                        emit(&[a, b]);
                    }
                }
            }
        }
        3 => {
            for (i, &a) in common.iter().enumerate() {
                for (j, &b) in common.iter().enumerate().skip(i + 1) {
                    if !g.has_edge(a, b) {
                        continue;
                    }
                    for &c in &common[j + 1..] {
                        if g.has_edge(a, c) && g.has_edge(b, c) {
                            emit(&[a, b, c]);
                        }
                    }
                }
            }
        }
        _ => unreachable!("extension by more than 3 vertices"),
    }
}

/// Number of ways to extend by `extra` mutually adjacent vertices of `common`.
fn count_extensions(g: &Graph, extra: usize, common: &[u32]) -> u64 {
    match extra {
        1 => common.len() as u64,
        _ => {
            let mut count = 0;
            for_each_extension(g, &[], extra, common, |_| count += 1);
            count
        }
    }
}

/// All s-cliques containing the r-clique `clique`.
pub fn s_cliques_containing(g: &Graph, clique: &[u32], s: usize) -> Result<Vec<Vec<u32>>, Error> {
    check_pair(clique.len(), s)?;
    let mut common = Vec::new();
    common_neighbors(g, clique, &mut common);
    let mut found = Vec::new();
    for_each_extension(g, clique, s - clique.len(), &common, |t| found.push(t.to_vec()));
    Ok(found)
}

/// S-degree of `clique` with respect to all s-cliques of `g`.
pub fn s_degree(g: &Graph, clique: &[u32], s: usize) -> Result<u64, Error> {
    check_pair(clique.len(), s)?;
    let mut common = Vec::new();
    common_neighbors(g, clique, &mut common);
    Ok(count_extensions(g, s - clique.len(), &common))
}

/// Positions of the r-subsets of an s-tuple, in lexicographic order.
fn subsets(r: usize, s: usize) -> Vec<[u8; MAX_CLIQUE]> {
    let mut all = Vec::new();
    for mask in 0u32..(1 << s) {
        if mask.count_ones() as usize == r {
            let mut pos = [0u8; MAX_CLIQUE];
            let mut k = 0;
            for bit in 0..s {
                if mask & (1 << bit) != 0 {
                    pos[k] = bit as u8;
                    k += 1;
                }
            }
            all.push(pos);
        }
    }
    all.sort_unstable();
    all
}

/// Access to the s-cliques containing each r-clique.
pub trait Containment {
    fn cliques(&self) -> &CliqueIndex;

    fn s(&self) -> usize;

    fn r(&self) -> usize {
        self.cliques().r()
    }

    /// Number of s-cliques containing clique `i`.
    fn degree(&self, i: u32) -> u32;

    /// Calls `f` once per s-clique containing clique `i`, with the indices
    /// of all C(s,r) r-cliques inside it (including `i`).
    fn for_each_container<F: FnMut(&[u32])>(&self, i: u32, f: F);
}

/// Containment computed on demand from the graph: nothing beyond the
/// r-clique index is stored.
#[derive(Debug, Clone)]
pub struct OnDemand<'a> {
    graph: &'a Graph,
    index: &'a CliqueIndex,
    s: usize,
    subsets: Vec<[u8; MAX_CLIQUE]>,
}

impl<'a> OnDemand<'a> {
    pub fn new(graph: &'a Graph, index: &'a CliqueIndex, s: usize) -> Result<OnDemand<'a>, Error> {
        check_pair(index.r(), s)?;
        Ok(OnDemand {
            graph,
            index,
            s,
            subsets: subsets(index.r(), s),
        })
    }

    pub fn graph(&self) -> &'a Graph {
        self.graph
    }
}

fn member_indices(index: &CliqueIndex, subsets: &[[u8; MAX_CLIQUE]], tuple: &[u32], out: &mut [u32; 6]) -> usize {
    let r = index.r();
    let mut sub = [0u32; MAX_CLIQUE];
    for (slot, pos) in out.iter_mut().zip(subsets) {
        for k in 0..r {
            sub[k] = tuple[pos[k] as usize];
        }
        *slot = index
            .index_of(&sub[..r])
            .expect("every r-subset of an s-clique is an indexed r-clique");
    }
    subsets.len()
}

impl Containment for OnDemand<'_> {
    fn cliques(&self) -> &CliqueIndex {
        self.index
    }

    fn s(&self) -> usize {
        self.s
    }

    fn degree(&self, i: u32) -> u32 {
        let mut common = Vec::new();
        common_neighbors(self.graph, self.index.vertices(i), &mut common);
        count_extensions(self.graph, self.s - self.index.r(), &common) as u32
    }

    fn for_each_container<F: FnMut(&[u32])>(&self, i: u32, mut f: F) {
        let clique = self.index.vertices(i);
        let mut common = Vec::new();
        common_neighbors(self.graph, clique, &mut common);
        let mut members = [0u32; 6];
        for_each_extension(self.graph, clique, self.s - clique.len(), &common, |tuple| {
            let count = member_indices(self.index, &self.subsets, tuple, &mut members);
            f(&members[..count]);
        });
    }
}

/// Default cap on supergraph storage: 8 GiB.
pub const DEFAULT_MEMORY_BUDGET: u64 = 8 << 30;

/// Materialized supergraph: one node per r-clique and one hyperlink per
/// s-clique joining its C(s,r) member r-cliques.
#[derive(Debug, Clone)]
pub struct Supergraph<'a> {
    index: &'a CliqueIndex,
    s: usize,
    arity: usize,
    links: Vec<u32>,
    incidence_offsets: Vec<usize>,
    incidence: Vec<u32>,
}

impl<'a> Supergraph<'a> {
    /// Bytes needed to materialize `link_count` hyperlinks over `node_count`
    /// nodes.
    pub fn estimated_bytes(node_count: usize, link_count: u64, r: usize, s: usize) -> u64 {
        let arity = binomial(s, r) as u64;
        // member lists + incidence lists (u32 each) + incidence offsets
        link_count * arity * 4 * 2 + (node_count as u64 + 1) * 8
    }

    /// Enumerates all s-cliques and stores them as hyperlinks, refusing if
    /// the estimated storage exceeds `budget` bytes.
    pub fn build(g: &Graph, index: &'a CliqueIndex, s: usize, budget: u64) -> Result<Supergraph<'a>, Error> {
        let r = index.r();
        check_pair(r, s)?;
        let link_count = count_cliques(g, s)?;
        let estimated = Supergraph::estimated_bytes(index.len(), link_count, r, s);
        if estimated > budget {
            return Err(Error::Capacity { estimated, budget });
        }
        let orient = Orientation::new(g);
        let mut tuples = Vec::with_capacity(link_count as usize * s);
        for v in 0..g.vertex_count() as u32 {
            orient.cliques_rooted_at(v, s, &mut tuples);
        }
        let tuples = CliqueIndex::from_tuples(g.vertex_count(), s, tuples)?.flat;
        let subsets = subsets(r, s);
        let arity = subsets.len();
        let mut links = Vec::with_capacity(tuples.len() / s * arity);
        let mut members = [0u32; 6];
        for tuple in tuples.chunks_exact(s) {
            let count = member_indices(index, &subsets, tuple, &mut members);
            links.extend_from_slice(&members[..count]);
        }
        let mut incidence_offsets = vec![0usize; index.len() + 1];
        for &m in &links {
            incidence_offsets[m as usize + 1] += 1;
        }
        for i in 0..index.len() {
            incidence_offsets[i + 1] += incidence_offsets[i];
        }
        let mut fill = incidence_offsets[..index.len()].to_vec();
        let mut incidence = vec![0u32; links.len()];
        for (link, group) in links.chunks_exact(arity).enumerate() {
            for &m in group {
                incidence[fill[m as usize]] = link as u32;
                fill[m as usize] += 1;
            }
        }
        Ok(Supergraph {
            index,
            s,
            arity,
            links,
            incidence_offsets,
            incidence,
        })
    }

    pub fn node_count(&self) -> usize {
        self.index.len()
    }

    pub fn link_count(&self) -> usize {
        self.links.len() / self.arity
    }

    /// Member r-clique indices of hyperlink `link`.
    pub fn link(&self, link: usize) -> &[u32] {
        &self.links[link * self.arity..(link + 1) * self.arity]
    }

    /// Hyperlinks incident to node `i`.
    pub fn incident(&self, i: u32) -> &[u32] {
        &self.incidence[self.incidence_offsets[i as usize]..self.incidence_offsets[i as usize + 1]]
    }
}

impl Containment for Supergraph<'_> {
    fn cliques(&self) -> &CliqueIndex {
        self.index
    }

    fn s(&self) -> usize {
        self.s
    }

    fn degree(&self, i: u32) -> u32 {
        self.incident(i).len() as u32
    }

    fn for_each_container<F: FnMut(&[u32])>(&self, i: u32, mut f: F) {
        for &link in self.incident(i) {
            f(self.link(link as usize));
        }
    }
}
