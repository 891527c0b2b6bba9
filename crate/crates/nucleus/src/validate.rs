//! Self-check of the engine against the exhaustive oracle.

use std::fmt::Write as _;

use nucleus_core::clique::enumerate_r_cliques;
use nucleus_core::forest::build_forest;
use nucleus_core::oracle::Oracle;
use nucleus_core::peel::{InvariantCheck, PeelOptions, Strategy, TieBreak};
use nucleus_core::{set_k, Error, Graph, NucleusForest};

pub const PAIRS: [(usize, usize); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

/// Seeded tie-break runs per graph and pair.
pub const TIE_BREAK_RUNS: u64 = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Default, Clone)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    fn push(&mut self, name: String, failure: Option<String>, detail: String) {
        let passed = failure.is_none();
        self.checks.push(Check {
            name,
            passed,
            detail: failure.unwrap_or(detail),
        });
    }

    pub fn lines(&self) -> impl Iterator<Item = String> + '_ {
        self.checks.iter().map(|c| {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                format!("{tag} {}", c.name)
            } else {
                format!("{tag} {}: {}", c.name, c.detail)
            }
        })
    }
}

/// `(k, member r-clique indices)` for every forest node, sorted.
pub fn forest_sets(f: &NucleusForest) -> Result<Vec<(u32, Vec<usize>)>, Error> {
    let mut sets = Vec::with_capacity(f.len());
    for node in &f.nodes {
        let members = f.member_cliques(node.id)?;
        sets.push((node.k, members.into_iter().map(|i| i as usize).collect()));
    }
    sets.sort();
    Ok(sets)
}

/// Pairwise laminarity and parent consistency; `None` if all hold.
pub fn laminarity_violation(f: &NucleusForest) -> Result<Option<String>, Error> {
    let members: Vec<Vec<u32>> = (0..f.len()).map(|id| f.member_cliques(id)).collect::<Result<_, _>>()?;
    for a in 0..f.len() {
        if let Some(p) = f.nodes[a].parent {
            if f.nodes[p].k >= f.nodes[a].k {
                return Ok(Some(format!(
                    "node {a} has k {} under parent k {}",
                    f.nodes[a].k, f.nodes[p].k
                )));
            }
        }
        for b in a + 1..f.len() {
            let common = members[a]
                .iter()
                .filter(|i| members[b].binary_search(i).is_ok())
                .count();
            let nested = f.is_ancestor(a, b) || f.is_ancestor(b, a);
            let ok = if nested {
                common == members[a].len().min(members[b].len())
            } else {
                common == 0
            };
            if !ok {
                return Ok(Some(format!("nodes {a} and {b} share {common} r-cliques")));
            }
        }
    }
    Ok(None)
}

fn nuclei_per_k(oracle: &Oracle, max_kappa: u32) -> String {
    let mut out = String::new();
    for k in 1..=max_kappa {
        if !out.is_empty() {
            out.push(' ');
        }
        let _ = write!(out, "k={k}:{}", oracle.nuclei(k).len());
    }
    if out.is_empty() {
        out.push_str("no nuclei");
    }
    out
}

/// Runs every check for each of `pairs` on `g`, appending to `report`.
/// Check names are prefixed with `label`.
pub fn validate_graph(
    g: &Graph,
    pairs: &[(usize, usize)],
    label: &str,
    seed: u64,
    report: &mut Report,
) -> Result<(), Error> {
    for &(r, s) in pairs {
        let oracle = Oracle::new(g, r, s)?;
        let expected = oracle.result();
        let idx = enumerate_r_cliques(g, r)?;
        let mut failure = None;
        let mut max_kappa = 0;
        for strategy in [Strategy::OnDemand, Strategy::Materialized] {
            let opts = PeelOptions {
                strategy,
                check: InvariantCheck::Full,
                ..Default::default()
            };
            let ka = set_k(g, &idx, s, &opts)?;
            max_kappa = ka.max_kappa;
            if ka.kappa != expected.kappa {
                failure.get_or_insert(format!("kappa differs from oracle ({strategy:?})"));
                continue;
            }
            let forest = build_forest(g, &idx, &ka, &opts)?;
            if forest_sets(&forest)? != expected.nuclei {
                failure.get_or_insert(format!("forest differs from oracle nuclei ({strategy:?})"));
            }
            if let Some(v) = laminarity_violation(&forest)? {
                failure.get_or_insert(v);
            }
        }
        report.push(
            format!("{label} ({r},{s}) oracle"),
            failure,
            nuclei_per_k(&oracle, max_kappa),
        );

        let mut failure = None;
        for run in 0..TIE_BREAK_RUNS {
            let opts = PeelOptions {
                tie_break: TieBreak::Seeded(seed.wrapping_add(run)),
                check: InvariantCheck::Full,
                ..Default::default()
            };
            let ka = set_k(g, &idx, s, &opts)?;
            if ka.kappa != expected.kappa {
                failure = Some(format!("kappa changed under tie-break seed {}", seed.wrapping_add(run)));
                break;
            }
        }
        report.push(format!("{label} ({r},{s}) tie-break"), failure, String::new());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shared_edge_pair_reports_two_nuclei() {
        let g = Graph::from_edges(
            6,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (0, 4),
                (0, 5),
                (1, 4),
                (1, 5),
                (4, 5),
            ],
        )
        .0;
        let mut report = Report::default();
        validate_graph(&g, &PAIRS, "pair", 7, &mut report).unwrap();
        assert!(report.passed());
        let line = report.lines().find(|l| l.contains("(3,4) oracle")).unwrap();
        assert_eq!(line, "PASS pair (3,4) oracle: k=1:2");
    }

    #[test]
    fn two_triangles() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).0;
        let mut report = Report::default();
        validate_graph(&g, &PAIRS, "tri", 1, &mut report).unwrap();
        assert!(report.passed());
        let line = report.lines().find(|l| l.contains("(2,3) oracle")).unwrap();
        assert!(line.ends_with("k=1:2"), "{line}");
    }

    #[test]
    fn oversize_graph_is_refused() {
        let g = Graph::complete(31);
        let mut report = Report::default();
        assert!(matches!(
            validate_graph(&g, &PAIRS, "big", 0, &mut report),
            Err(Error::OracleTooLarge { .. })
        ));
    }
}
