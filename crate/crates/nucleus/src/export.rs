//! Byte-stable output formats: κ and metrics CSV, forest JSON and Graphviz
//! DOT.
//!
//! Densities are written with six decimals everywhere except JSON, where
//! they are rounded to six decimals and written as plain numbers.

use std::io::{self, Write};

use nucleus_core::clique::CliqueIndex;
use nucleus_core::forest::{ForestView, NucleusForest};
use nucleus_core::graph::Density;
use nucleus_core::metrics::{DensityHistogram, OverlapRecord};
use nucleus_core::peel::KappaAssignment;
use serde::Serialize;

/// Blue (density 0) to red (density 1) in 11 equal steps, indexed by
/// `floor(density * 10)`.
pub const PALETTE: [&str; 11] = [
    "#0000ff", "#1a00e6", "#3300cc", "#4d00b3", "#660099", "#800080", "#990066", "#b3004d", "#cc0033", "#e6001a",
    "#ff0000",
];

/// Width in inches of the largest shape of a size bucket.
const MAX_WIDTH: f64 = 1.5;

pub fn palette_color(d: Density) -> &'static str {
    PALETTE[d.scaled_floor(10).min(10) as usize]
}

/// Size buckets: circle up to 10^2 vertices, hexagon up to 10^3, square up
/// to 10^4, triangle above.
pub fn shape_for(size: usize) -> (&'static str, Option<usize>) {
    match size {
        0..=100 => ("circle", Some(100)),
        101..=1_000 => ("hexagon", Some(1_000)),
        1_001..=10_000 => ("square", Some(10_000)),
        _ => ("triangle", None),
    }
}

pub fn fmt_density(d: Density) -> String {
    format!("{:.6}", d.as_f64())
}

fn rounded(d: Density) -> f64 {
    (d.as_f64() * 1e6).round() / 1e6
}

pub fn write_kappa_csv<W: Write>(
    mut out: W,
    cliques: &CliqueIndex,
    ka: &KappaAssignment,
    labels: &[u32],
) -> io::Result<()> {
    let header: Vec<String> = (1..=cliques.r()).map(|i| format!("v{i}")).collect();
    writeln!(out, "{},kappa", header.join(","))?;
    for (i, tuple) in cliques.iter().enumerate() {
        for &v in tuple {
            write!(out, "{},", labels[v as usize])?;
        }
        writeln!(out, "{}", ka.kappa[i])?;
    }
    Ok(())
}

pub fn write_histogram_csv<W: Write>(mut out: W, h: &DensityHistogram) -> io::Result<()> {
    writeln!(out, "bin_low,bin_high,count")?;
    for (i, count) in h.counts.iter().enumerate() {
        let (lo, hi) = h.edges(i);
        writeln!(out, "{lo:.6},{hi:.6},{count}")?;
    }
    Ok(())
}

pub fn write_scatter_csv<W: Write>(mut out: W, points: &[(usize, Density, usize)]) -> io::Result<()> {
    writeln!(out, "size,density")?;
    for &(size, d, _) in points {
        writeln!(out, "{size},{}", fmt_density(d))?;
    }
    Ok(())
}

pub fn write_overlaps_csv<W: Write>(mut out: W, records: &[OverlapRecord]) -> io::Result<()> {
    writeln!(out, "node_a,node_b,overlap,jaccard,density_hi,density_lo")?;
    for o in records {
        writeln!(
            out,
            "{},{},{},{:.6},{},{}",
            o.node_a,
            o.node_b,
            o.overlap,
            o.jaccard(),
            fmt_density(o.density_a),
            fmt_density(o.density_b)
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct JsonNode {
    id: usize,
    k: u32,
    size: usize,
    density: f64,
    parent: Option<usize>,
    children: Vec<usize>,
    chain: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<u32>>,
}

#[derive(Serialize)]
struct JsonForest {
    nodes: Vec<JsonNode>,
    roots: Vec<usize>,
}

/// Separates items with `", "` and keys from values with `": "`.
struct Spaced;

impl serde_json::ser::Formatter for Spaced {
    fn begin_array_value<W: ?Sized + Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        if first {
            Ok(())
        } else {
            writer.write_all(b", ")
        }
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        if first {
            Ok(())
        } else {
            writer.write_all(b", ")
        }
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        writer.write_all(b": ")
    }
}

/// Forest view as JSON. Ids are forest node ids; `chain` is the number of
/// forest edges the link to the parent stands for.
pub fn write_forest_json<W: Write>(
    mut out: W,
    f: &NucleusForest,
    view: &ForestView,
    labels: Option<&[u32]>,
) -> io::Result<()> {
    let nodes = view
        .nodes
        .iter()
        .map(|v| {
            let node = &f.nodes[v.node];
            JsonNode {
                id: node.id,
                k: node.k,
                size: node.size(),
                density: rounded(node.density),
                parent: v.parent.map(|p| view.nodes[p].node),
                children: v.children.iter().map(|&c| view.nodes[c].node).collect(),
                chain: v.chain,
                vertices: labels.map(|labels| {
                    let mut vs: Vec<u32> = node.vertices.iter().map(|&x| labels[x as usize]).collect();
                    vs.sort_unstable();
                    vs
                }),
            }
        })
        .collect();
    let doc = JsonForest {
        nodes,
        roots: view.roots.iter().map(|&r| view.nodes[r].node).collect(),
    };
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Spaced);
    doc.serialize(&mut ser).map_err(io::Error::other)?;
    writeln!(out)
}

/// Forest view as a Graphviz digraph: fill color by density, shape by size
/// bucket, width by size relative to the bucket maximum, and contracted
/// chains labelled with their length.
pub fn write_forest_dot<W: Write>(mut out: W, f: &NucleusForest, view: &ForestView) -> io::Result<()> {
    let largest_triangle = view
        .forest_ids()
        .map(|id| f.nodes[id].size())
        .filter(|&s| shape_for(s).1.is_none())
        .max()
        .unwrap_or(1);
    writeln!(out, "digraph nuclei {{")?;
    writeln!(out, "  node [style=filled, fixedsize=true, fontsize=8];")?;
    for v in &view.nodes {
        let node = &f.nodes[v.node];
        let (shape, cap) = shape_for(node.size());
        let width = MAX_WIDTH * node.size() as f64 / cap.unwrap_or(largest_triangle) as f64;
        writeln!(
            out,
            "  n{} [label=\"k={}\\n{}\", shape={}, fillcolor=\"{}\", width={:.3}];",
            node.id,
            node.k,
            node.size(),
            shape,
            palette_color(node.density),
            width
        )?;
    }
    for v in &view.nodes {
        if let Some(p) = v.parent {
            let parent = view.nodes[p].node;
            if v.chain > 1 {
                writeln!(out, "  n{} -> n{} [label=\"{}\"];", parent, v.node, v.chain)?;
            } else {
                writeln!(out, "  n{} -> n{};", parent, v.node)?;
            }
        }
    }
    writeln!(out, "}}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn palette_endpoints() {
        assert_eq!(palette_color(Density::new(0, 5)), "#0000ff");
        assert_eq!(palette_color(Density::new(10, 5)), "#ff0000");
        assert_eq!(palette_color(Density::new(5, 5)), "#800080");
        // 0.98 falls in step 9.
        assert_eq!(palette_color(Density::new(54, 11)), "#e6001a");
        for (i, c) in PALETTE.iter().enumerate() {
            let red = (255.0 * i as f64 / 10.0).round() as u8;
            let blue = (255.0 * (10 - i) as f64 / 10.0).round() as u8;
            assert_eq!(*c, format!("#{red:02x}00{blue:02x}"));
        }
    }

    #[test]
    fn shapes() {
        assert_eq!(shape_for(10).0, "circle");
        assert_eq!(shape_for(100).0, "circle");
        assert_eq!(shape_for(101).0, "hexagon");
        assert_eq!(shape_for(1_000).0, "hexagon");
        assert_eq!(shape_for(10_000).0, "square");
        assert_eq!(shape_for(10_001).0, "triangle");
    }
}
