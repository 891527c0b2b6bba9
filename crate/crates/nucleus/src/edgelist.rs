//! Whitespace-separated edge-list text files.
//!
//! One `u w` pair per line; `#` and `%` start comment lines; blank lines are
//! skipped. Vertex labels are non-negative integers below 2^32. Columns after
//! the second (weights, timestamps) are ignored.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use nucleus_core::graph::{GraphBuilder, LabeledGraph};
use nucleus_core::Graph;

use crate::error::Error;

pub fn read<R: BufRead>(reader: R) -> Result<LabeledGraph, Error> {
    let mut builder = GraphBuilder::new();
    for (n, line) in reader.lines().enumerate() {
        let line_no = n + 1;
        let line = line.map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let mut endpoint = || -> Result<u32, Error> {
            let token = tokens.next().ok_or_else(|| Error::Parse {
                line: line_no,
                message: "expected two vertex ids".into(),
            })?;
            token.parse::<u32>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid vertex id {token:?}"),
            })
        };
        let u = endpoint()?;
        let w = endpoint()?;
        builder.add_edge(u, w);
    }
    Ok(builder.finish())
}

pub fn read_path(path: &Path) -> Result<LabeledGraph, Error> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read(BufReader::new(file))
}

/// Writes every edge once, using `labels` for vertex names.
pub fn write<W: Write>(mut out: W, g: &Graph, labels: &[u32]) -> std::io::Result<()> {
    for (u, w) in g.edges() {
        writeln!(out, "{} {}", labels[u as usize], labels[w as usize])?;
    }
    Ok(())
}
