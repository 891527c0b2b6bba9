//! k-nuclei and their containment forest.
//!
//! The k-nuclei are the connected components of the supergraph restricted
//! to r-cliques with κ ≥ k, linked through s-cliques whose members all have
//! κ ≥ k. Levels are swept from the highest κ down. At level k only the
//! cliques with κ = k are activated and unioned with their qualifying
//! s-cliques; components reached this way that already carried a nucleus
//! become its children. Components that gain no new clique at level k are
//! the same nucleus as before and produce no node.

use alloc::vec;
use alloc::vec::Vec;

use crate::clique::{CliqueIndex, Containment};
use crate::error::Error;
use crate::graph::{Density, Fingerprint, Graph, VertexSet};
use crate::peel::{AnyContainment, KappaAssignment, PeelOptions};
use crate::unionfind::UnionFind;

const NONE: u32 = u32::MAX;

/// One k-(r,s)-nucleus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NucleusNode {
    pub id: usize,
    /// Largest k for which this set of cliques is a k-nucleus.
    pub k: u32,
    /// Member r-cliques with κ = k; the rest are in descendants.
    pub own: Vec<u32>,
    /// Total number of member r-cliques, descendants included.
    pub clique_count: usize,
    pub vertices: VertexSet,
    pub density: Density,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

impl NucleusNode {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// Laminar forest of all (r,s)-nuclei. Node ids follow creation order:
/// descending k, then first appearance in the processing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NucleusForest {
    pub r: usize,
    pub s: usize,
    pub fingerprint: Fingerprint,
    pub nodes: Vec<NucleusNode>,
    pub roots: Vec<usize>,
}

/// Builds the nucleus forest, reaching s-cliques through the strategy in
/// `opts`.
pub fn build_forest(
    g: &Graph,
    cliques: &CliqueIndex,
    ka: &KappaAssignment,
    opts: &PeelOptions,
) -> Result<NucleusForest, Error> {
    let containment = AnyContainment::new(g, cliques, ka.s, opts.strategy, opts.memory_budget)?;
    build_forest_with(g, &containment, ka)
}

pub fn build_forest_with<C: Containment>(g: &Graph, c: &C, ka: &KappaAssignment) -> Result<NucleusForest, Error> {
    let cliques = c.cliques();
    if ka.fingerprint != g.fingerprint()
        || ka.r != cliques.r()
        || ka.s != c.s()
        || ka.kappa.len() != cliques.len()
        || ka.order.len() != cliques.len()
    {
        return Err(Error::Mismatch);
    }
    let n = cliques.len();
    let kappa = &ka.kappa;
    let mut uf = UnionFind::new(n);
    let mut active = vec![false; n];
    // Current nucleus of a component, stored at its root.
    let mut top = vec![NONE; n];
    // Nucleus created at the current level for a root, valid while
    // `level_stamp[root] == k`.
    let mut level_node = vec![NONE; n];
    let mut level_stamp = vec![NONE; n];
    let mut nodes: Vec<NucleusNode> = Vec::new();
    let mut parent_of: Vec<u32> = Vec::new();

    let transitions = ka.transition_times();
    let mut end = n;
    for &(k, start) in transitions.iter().rev() {
        let fresh = &ka.order[start..end];
        end = start;
        if k == 0 {
            break;
        }
        for &i in fresh {
            active[i as usize] = true;
        }
        let mut absorbed: Vec<u32> = Vec::new();
        for &i in fresh {
            c.for_each_container(i, |members| {
                if members.iter().any(|&m| !active[m as usize]) {
                    return;
                }
                // Handle each s-clique once, from its first member with κ = k.
                if members.iter().find(|&&m| kappa[m as usize] == k) != Some(&i) {
                    return;
                }
                for &m in members {
                    let (a, b) = (uf.find(i), uf.find(m));
                    if a == b {
                        continue;
                    }
                    for root in [a, b] {
                        let t = core::mem::replace(&mut top[root as usize], NONE);
                        if t != NONE {
                            absorbed.push(t);
                        }
                    }
                    uf.union_roots(a, b);
                }
            });
        }
        let first_new = nodes.len();
        for &i in fresh {
            let root = uf.find(i);
            if level_stamp[root as usize] != k {
                level_stamp[root as usize] = k;
                level_node[root as usize] = nodes.len() as u32;
                nodes.push(NucleusNode {
                    id: nodes.len(),
                    k,
                    own: Vec::new(),
                    clique_count: 0,
                    vertices: VertexSet::default(),
                    density: Density::new(0, 2),
                    parent: None,
                    children: Vec::new(),
                });
                parent_of.push(NONE);
            }
            nodes[level_node[root as usize] as usize].own.push(i);
        }
        for t in absorbed {
            let root = uf.find(nodes[t as usize].own[0]);
            debug_assert_eq!(level_stamp[root as usize], k);
            let p = level_node[root as usize];
            parent_of[t as usize] = p;
            nodes[p as usize].children.push(t as usize);
        }
        for (id, node) in nodes.iter().enumerate().skip(first_new) {
            let root = uf.find(node.own[0]);
            top[root as usize] = id as u32;
        }
    }

    // Children were created before their parents, so filling in ascending
    // id order sees every child's vertex set first.
    let mut mark = vec![false; g.vertex_count()];
    let mut buf: Vec<u32> = Vec::new();
    for id in 0..nodes.len() {
        buf.clear();
        let mut clique_count = nodes[id].own.len();
        let mut children = core::mem::take(&mut nodes[id].children);
        children.sort_unstable();
        for &child in &children {
            clique_count += nodes[child].clique_count;
            for &v in nodes[child].vertices.iter() {
                if !mark[v as usize] {
                    mark[v as usize] = true;
                    buf.push(v);
                }
            }
        }
        for &i in &nodes[id].own {
            for &v in cliques.vertices(i) {
                if !mark[v as usize] {
                    mark[v as usize] = true;
                    buf.push(v);
                }
            }
        }
        let edges = g.induced_edges_marked(&buf, &mark);
        for &v in &buf {
            mark[v as usize] = false;
        }
        buf.sort_unstable();
        let node = &mut nodes[id];
        node.children = children;
        node.clique_count = clique_count;
        node.vertices = VertexSet::from_sorted(buf.clone()).expect("deduplicated");
        node.density = Density::new(edges, buf.len());
        node.parent = (parent_of[id] != NONE).then_some(parent_of[id] as usize);
    }
    for node in &mut nodes {
        node.own.sort_unstable();
    }
    let roots = (0..nodes.len()).filter(|&id| nodes[id].parent.is_none()).collect();
    Ok(NucleusForest {
        r: ka.r,
        s: ka.s,
        fingerprint: ka.fingerprint,
        nodes,
        roots,
    })
}

impl NucleusForest {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: usize) -> Result<&NucleusNode, Error> {
        self.nodes.get(id).ok_or(Error::UnknownNode(id))
    }

    /// Vertex set of nucleus `id`.
    pub fn nucleus_vertices(&self, id: usize) -> Result<&VertexSet, Error> {
        Ok(&self.node(id)?.vertices)
    }

    /// All member r-cliques of nucleus `id`, sorted.
    pub fn member_cliques(&self, id: usize) -> Result<Vec<u32>, Error> {
        self.node(id)?;
        let mut out = Vec::new();
        let mut stack = vec![id];
        while let Some(x) = stack.pop() {
            out.extend_from_slice(&self.nodes[x].own);
            stack.extend_from_slice(&self.nodes[x].children);
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Unfiltered view of the whole forest.
    pub fn full_view(&self) -> ForestView {
        let nodes = self
            .nodes
            .iter()
            .map(|n| ViewNode {
                node: n.id,
                parent: n.parent,
                children: n.children.clone(),
                chain: usize::from(n.parent.is_some()),
            })
            .collect();
        ForestView {
            nodes,
            roots: self.roots.clone(),
        }
    }

    /// View without nuclei on fewer than `min_vertices` vertices.
    pub fn filter_by_size(&self, min_vertices: usize) -> Result<ForestView, Error> {
        if min_vertices == 0 {
            return Err(Error::InvalidParameter("minimum nucleus size must be at least 1"));
        }
        let full = self.full_view();
        Ok(full.retain(|v| self.nodes[v.node].size() >= min_vertices))
    }

    /// Strict ancestor test by walking parent links.
    pub fn is_ancestor(&self, ancestor: usize, mut id: usize) -> bool {
        while let Some(p) = self.nodes[id].parent {
            if p == ancestor {
                return true;
            }
            id = p;
        }
        false
    }
}

/// A node of a derived view; `node` is the forest id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViewNode {
    pub node: usize,
    /// Index of the parent within the view.
    pub parent: Option<usize>,
    /// Indices of the children within the view.
    pub children: Vec<usize>,
    /// Number of forest edges the link to the parent stands for (0 for
    /// roots).
    pub chain: usize,
}

/// Read-only derivation of a forest: a subset of its nodes, each linked to
/// its nearest retained ancestor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestView {
    pub nodes: Vec<ViewNode>,
    pub roots: Vec<usize>,
}

impl ForestView {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn leaves(&self) -> usize {
        self.nodes.iter().filter(|n| n.children.is_empty()).count()
    }

    /// Forest ids of the nodes in the view.
    pub fn forest_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.nodes.iter().map(|n| n.node)
    }

    /// Keeps the nodes matching `keep`; each survivor is re-linked to its
    /// nearest surviving ancestor, summing chain lengths along the way.
    pub fn retain<F: Fn(&ViewNode) -> bool>(&self, keep: F) -> ForestView {
        let mut new_index = vec![usize::MAX; self.nodes.len()];
        let mut nodes = Vec::new();
        for (i, n) in self.nodes.iter().enumerate() {
            if keep(n) {
                new_index[i] = nodes.len();
                nodes.push(ViewNode {
                    node: n.node,
                    parent: None,
                    children: Vec::new(),
                    chain: 0,
                });
            }
        }
        for (i, n) in self.nodes.iter().enumerate() {
            if new_index[i] == usize::MAX {
                continue;
            }
            let mut chain = n.chain;
            let mut up = n.parent;
            while let Some(p) = up {
                if new_index[p] != usize::MAX {
                    break;
                }
                chain += self.nodes[p].chain;
                up = self.nodes[p].parent;
            }
            if let Some(p) = up {
                let me = new_index[i];
                nodes[me].parent = Some(new_index[p]);
                nodes[me].chain = chain;
                nodes[new_index[p]].children.push(me);
            }
        }
        for n in &mut nodes {
            n.children.sort_unstable();
        }
        let roots = (0..nodes.len()).filter(|&i| nodes[i].parent.is_none()).collect();
        ForestView { nodes, roots }
    }

    /// Collapses every maximal path of out-degree-1 nodes into a single link
    /// annotated with its length. Roots and branching nodes are kept.
    pub fn contract_chains(&self) -> ForestView {
        self.retain(|n| n.parent.is_none() || n.children.len() != 1)
    }

    /// DFS entry/exit numbers (by view index) for O(1) ancestor tests.
    pub fn dfs_intervals(&self) -> Vec<(usize, usize)> {
        let mut interval = vec![(0, 0); self.nodes.len()];
        let mut clock = 0;
        let mut stack: Vec<(usize, bool)> = self.roots.iter().rev().map(|&r| (r, false)).collect();
        while let Some((v, done)) = stack.pop() {
            if done {
                interval[v].1 = clock;
                continue;
            }
            interval[v].0 = clock;
            clock += 1;
            stack.push((v, true));
            for &c in self.nodes[v].children.iter().rev() {
                stack.push((c, false));
            }
        }
        interval
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clique::enumerate_r_cliques;
    use crate::clique::tests::shared_edge_k4s;
    use crate::peel::{set_k, InvariantCheck, Strategy};

    fn forest(g: &Graph, r: usize, s: usize) -> NucleusForest {
        let idx = enumerate_r_cliques(g, r).unwrap();
        let opts = PeelOptions {
            check: InvariantCheck::Full,
            ..Default::default()
        };
        let ka = set_k(g, &idx, s, &opts).unwrap();
        build_forest(g, &idx, &ka, &opts).unwrap()
    }

    #[test]
    fn k5_is_one_nucleus() {
        let f = forest(&Graph::complete(5), 3, 4);
        assert_eq!(f.len(), 1);
        let node = &f.nodes[0];
        assert_eq!((node.k, node.clique_count, node.size()), (2, 10, 5));
        assert_eq!(node.density.as_f64(), 1.0);
        assert_eq!(f.nucleus_vertices(0).unwrap().as_slice(), &[0, 1, 2, 3, 4]);
        assert_eq!(f.nucleus_vertices(1), Err(Error::UnknownNode(1)));
    }

    #[test]
    fn shared_edge_pair_splits_for_3_4() {
        let g = shared_edge_k4s();
        let f = forest(&g, 3, 4);
        assert_eq!(f.len(), 2);
        assert_eq!(f.roots, [0, 1]);
        let sets: Vec<&[u32]> = f.nodes.iter().map(|n| n.vertices.as_slice()).collect();
        assert_eq!(sets, [&[0, 1, 2, 3][..], &[0, 1, 4, 5][..]]);
        assert!(f
            .nodes
            .iter()
            .all(|n| n.k == 1 && n.density.as_f64() == 1.0 && n.clique_count == 4));

        let f = forest(&g, 2, 3);
        assert_eq!(f.len(), 1);
        assert_eq!(f.nodes[0].size(), 6);
        assert_eq!(f.nodes[0].k, 2);
    }

    #[test]
    fn nested_cores() {
        // Two K4s joined through the degree-2 vertex 8.
        let mut edges = vec![(3, 8), (8, 4)];
        for base in [0u32, 4] {
            for i in 0..4 {
                for j in i + 1..4 {
                    edges.push((base + i, base + j));
                }
            }
        }
        let g = Graph::from_edges(9, edges).0;
        let f = forest(&g, 1, 2);
        let summary: Vec<(u32, &[u32], Option<usize>)> =
            f.nodes.iter().map(|n| (n.k, n.vertices.as_slice(), n.parent)).collect();
        assert_eq!(
            summary,
            [
                (3, &[0, 1, 2, 3][..], Some(2)),
                (3, &[4, 5, 6, 7][..], Some(2)),
                (2, &[0, 1, 2, 3, 4, 5, 6, 7, 8][..], None),
            ]
        );
        assert_eq!(f.nodes[2].children, [0, 1]);
        assert_eq!(f.nodes[2].own, [8]);
        assert_eq!(f.member_cliques(2).unwrap(), (0..9).collect::<Vec<u32>>());
        assert!(f.is_ancestor(2, 0) && !f.is_ancestor(0, 2) && !f.is_ancestor(1, 0));
        assert_eq!(f.full_view().contract_chains(), f.full_view());
    }

    #[test]
    fn mismatched_assignment_is_rejected() {
        let g = shared_edge_k4s();
        let idx = enumerate_r_cliques(&g, 3).unwrap();
        let ka = set_k(&g, &idx, 4, &PeelOptions::default()).unwrap();
        let other = Graph::complete(6);
        let other_idx = enumerate_r_cliques(&other, 3).unwrap();
        assert_eq!(
            build_forest(&other, &other_idx, &ka, &PeelOptions::default()),
            Err(Error::Mismatch)
        );
        let edges = enumerate_r_cliques(&g, 2).unwrap();
        assert_eq!(
            build_forest(&g, &edges, &ka, &PeelOptions::default()),
            Err(Error::Mismatch)
        );
    }

    #[test]
    fn strategies_give_same_forest() {
        let g = shared_edge_k4s();
        let idx = enumerate_r_cliques(&g, 2).unwrap();
        let mut forests = Vec::new();
        for strategy in [Strategy::OnDemand, Strategy::Materialized] {
            let opts = PeelOptions {
                strategy,
                ..Default::default()
            };
            let ka = set_k(&g, &idx, 3, &opts).unwrap();
            forests.push(build_forest(&g, &idx, &ka, &opts).unwrap());
        }
        assert_eq!(forests[0].nodes.len(), forests[1].nodes.len());
        assert_eq!(forests[0].nodes[0].vertices, forests[1].nodes[0].vertices);
    }

    fn chain_view(len: usize) -> ForestView {
        let nodes = (0..len)
            .map(|i| ViewNode {
                node: i,
                parent: i.checked_sub(1),
                children: if i + 1 < len { vec![i + 1] } else { vec![] },
                chain: usize::from(i > 0),
            })
            .collect();
        ForestView { nodes, roots: vec![0] }
    }

    #[test]
    fn contraction_of_a_path() {
        let c = chain_view(4).contract_chains();
        assert_eq!(c.forest_ids().collect::<Vec<_>>(), [0, 3]);
        assert_eq!(c.nodes[1].parent, Some(0));
        assert_eq!(c.nodes[1].chain, 3);
        assert_eq!(c.leaves(), 1);
    }

    #[test]
    fn contraction_keeps_branching_trees() {
        let v = ForestView {
            nodes: vec![
                ViewNode {
                    node: 0,
                    parent: None,
                    children: vec![1, 2],
                    chain: 0,
                },
                ViewNode {
                    node: 1,
                    parent: Some(0),
                    children: vec![],
                    chain: 1,
                },
                ViewNode {
                    node: 2,
                    parent: Some(0),
                    children: vec![],
                    chain: 1,
                },
            ],
            roots: vec![0],
        };
        assert_eq!(v.contract_chains(), v);
        assert_eq!(v.dfs_intervals(), [(0, 3), (1, 2), (2, 3)]);
    }

    #[test]
    fn size_filter() {
        let f = forest(&Graph::complete(5), 3, 4);
        assert!(f.filter_by_size(10).unwrap().is_empty());
        assert_eq!(f.filter_by_size(1).unwrap(), f.full_view());
        assert!(f.filter_by_size(0).is_err());
    }
}
