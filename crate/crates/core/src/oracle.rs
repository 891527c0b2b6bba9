//! Exhaustive reference implementation for small graphs.
//!
//! Nothing here touches the enumeration, peeling or forest code: cliques
//! are found by checking every vertex tuple, and nuclei come from a literal
//! fixpoint that deletes s-cliques around under-supported r-cliques and then
//! splits the survivors into components linked by shared r-cliques.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::graph::Graph;

/// Largest graph the oracle accepts.
pub const ORACLE_LIMIT: usize = 30;

/// Brute-force view of the r-cliques and s-cliques of a graph.
#[derive(Debug, Clone)]
pub struct Oracle {
    pub r: usize,
    pub s: usize,
    /// r-cliques in lexicographic order.
    pub rcliques: Vec<Vec<u32>>,
    /// For each s-clique, the positions in `rcliques` of its r-subsets.
    pub scliques: Vec<Vec<usize>>,
}

/// κ per r-clique and all nuclei, as computed by [`Oracle`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub kappa: Vec<u32>,
    /// Distinct nuclei as `(largest k, sorted r-clique positions)`.
    pub nuclei: Vec<(u32, Vec<usize>)>,
}

fn tuples(g: &Graph, size: usize) -> Vec<Vec<u32>> {
    let n = g.vertex_count() as u32;
    let mut out = Vec::new();
    let mut current = vec![0u32; size];
    fn walk(g: &Graph, n: u32, depth: usize, from: u32, current: &mut [u32], out: &mut Vec<Vec<u32>>) {
        if depth == current.len() {
            let t = &current[..];
            let clique = (0..t.len()).all(|i| (i + 1..t.len()).all(|j| g.neighbors(t[i]).contains(&t[j])));
            if clique {
                out.push(t.to_vec());
            }
            return;
        }
        for v in from..n {
            current[depth] = v;
            walk(g, n, depth + 1, v + 1, current, out);
        }
    }
    walk(g, n, 0, 0, &mut current, &mut out);
    out
}

impl Oracle {
    pub fn new(g: &Graph, r: usize, s: usize) -> Result<Oracle, Error> {
        if g.vertex_count() > ORACLE_LIMIT {
            return Err(Error::OracleTooLarge {
                n: g.vertex_count(),
                limit: ORACLE_LIMIT,
            });
        }
        if !(1 <= r && r < s && s <= 4) {
            return Err(Error::UnsupportedPair { r, s });
        }
        let rcliques = tuples(g, r);
        let scliques = tuples(g, s)
            .into_iter()
            .map(|big| {
                let mut members = Vec::new();
                for (pos, small) in rcliques.iter().enumerate() {
                    if small.iter().all(|v| big.contains(v)) {
                        members.push(pos);
                    }
                }
                members
            })
            .collect();
        Ok(Oracle {
            r,
            s,
            rcliques,
            scliques,
        })
    }

    /// Indices of the s-cliques surviving repeated deletion of every
    /// s-clique that contains an r-clique of S-degree below `k`.
    fn survivors(&self, k: u32) -> Vec<usize> {
        let mut alive = vec![true; self.scliques.len()];
        loop {
            let mut degree = vec![0u32; self.rcliques.len()];
            for (i, members) in self.scliques.iter().enumerate() {
                if alive[i] {
                    for &m in members {
                        degree[m] += 1;
                    }
                }
            }
            let mut changed = false;
            for (i, members) in self.scliques.iter().enumerate() {
                if alive[i] && members.iter().any(|&m| degree[m] < k) {
                    alive[i] = false;
                    changed = true;
                }
            }
            if !changed {
                return (0..alive.len()).filter(|&i| alive[i]).collect();
            }
        }
    }

    /// The k-nuclei as sorted r-clique position lists, sorted.
    pub fn nuclei(&self, k: u32) -> Vec<Vec<usize>> {
        let alive = self.survivors(k);
        // Components of surviving s-cliques linked through shared r-cliques.
        let mut label = vec![usize::MAX; self.scliques.len()];
        let mut sets = Vec::new();
        for &start in &alive {
            if label[start] != usize::MAX {
                continue;
            }
            let id = sets.len();
            label[start] = id;
            let mut stack = vec![start];
            let mut members = Vec::new();
            while let Some(x) = stack.pop() {
                members.extend_from_slice(&self.scliques[x]);
                for &y in &alive {
                    if label[y] == usize::MAX && self.scliques[y].iter().any(|m| self.scliques[x].contains(m)) {
                        label[y] = id;
                        stack.push(y);
                    }
                }
            }
            members.sort_unstable();
            members.dedup();
            sets.push(members);
        }
        sets.sort();
        sets
    }

    /// Largest k for which each r-clique survives the degree fixpoint.
    pub fn kappa(&self) -> Vec<u32> {
        let mut kappa = vec![0u32; self.rcliques.len()];
        for k in 1.. {
            let alive = self.survivors(k);
            if alive.is_empty() {
                break;
            }
            for i in alive {
                for &m in &self.scliques[i] {
                    kappa[m] = k;
                }
            }
        }
        kappa
    }

    /// κ and every distinct nucleus labelled with the largest k it has.
    pub fn result(&self) -> OracleResult {
        let kappa = self.kappa();
        let top = kappa.iter().copied().max().unwrap_or(0);
        let mut best: BTreeMap<Vec<usize>, u32> = BTreeMap::new();
        for k in 1..=top {
            for set in self.nuclei(k) {
                let entry = best.entry(set).or_insert(k);
                *entry = (*entry).max(k);
            }
        }
        let mut nuclei: Vec<(u32, Vec<usize>)> = best.into_iter().map(|(set, k)| (k, set)).collect();
        nuclei.sort();
        OracleResult { kappa, nuclei }
    }
}

/// k-(r,s)-nuclei of `g` by literal fixpoint, as sets of r-clique tuples.
pub fn oracle_nuclei(g: &Graph, r: usize, s: usize, k: u32) -> Result<Vec<Vec<Vec<u32>>>, Error> {
    let o = Oracle::new(g, r, s)?;
    Ok(o.nuclei(k)
        .into_iter()
        .map(|set| set.into_iter().map(|p| o.rcliques[p].clone()).collect())
        .collect())
}

/// κ of every r-clique of `g`, in lexicographic tuple order.
pub fn oracle_kappa(g: &Graph, r: usize, s: usize) -> Result<Vec<u32>, Error> {
    Ok(Oracle::new(g, r, s)?.kappa())
}
