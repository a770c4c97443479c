//! Graph file ingestion. The format is line-based: `c` starts a
//! comment, a single `p <n> <m>` header declares the vertex and edge
//! counts, and each `e <u> <v>` line is one edge. Labels are arbitrary
//! non-negative integers: when every label is below `n` the vertex set
//! is `0..n` verbatim (unmentioned ids are isolated vertices); otherwise
//! the distinct labels are sorted and remapped to dense ids, in which
//! case exactly `n` distinct labels must appear.

use anyhow::{bail, Context, Result};
use domcover::Graph;

pub struct IngestedGraph {
    pub graph: Graph,
    /// Original label of each dense vertex id.
    pub labels: Vec<u64>,
}

pub fn parse_graph_file(text: &str) -> Result<IngestedGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut raw_edges: Vec<(u64, u64)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let number = idx + 1;
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("p") => {
                if header.is_some() {
                    bail!("line {number}: repeated header");
                }
                let n: usize = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .with_context(|| format!("line {number}: invalid vertex count"))?;
                let m: usize = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .with_context(|| format!("line {number}: invalid edge count"))?;
                header = Some((n, m));
            }
            Some("e") => {
                let u: u64 = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .with_context(|| format!("line {number}: invalid endpoint"))?;
                let v: u64 = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .with_context(|| format!("line {number}: invalid endpoint"))?;
                raw_edges.push((u, v));
            }
            Some(other) => bail!("line {number}: unknown record {other:?}"),
            None => unreachable!("line is nonempty"),
        }
        if parts.next().is_some() {
            bail!("line {number}: trailing tokens");
        }
    }
    let (n, m) = header.context("missing `p <n> <m>` header")?;
    if raw_edges.len() != m {
        bail!(
            "header declares {m} edges but {} edge lines were found",
            raw_edges.len()
        );
    }

    let mut labels: Vec<u64> = raw_edges
        .iter()
        .flat_map(|&(u, v)| [u, v])
        .collect();
    labels.sort_unstable();
    labels.dedup();

    let dense_already = raw_edges.iter().all(|&(u, v)| (u as usize) < n && (v as usize) < n);
    let (labels, edges) = if dense_already {
        let edges: Vec<(usize, usize)> = raw_edges
            .iter()
            .map(|&(u, v)| (u as usize, v as usize))
            .collect();
        ((0..n as u64).collect(), edges)
    } else {
        if labels.len() != n {
            bail!(
                "labels exceed the declared vertex count, so all {n} vertices must be named; \
                 found {} distinct labels",
                labels.len()
            );
        }
        let index = |x: u64| labels.binary_search(&x).expect("label collected above");
        let edges: Vec<(usize, usize)> = raw_edges
            .iter()
            .map(|&(u, v)| (index(u), index(v)))
            .collect();
        (labels, edges)
    };

    let graph = Graph::from_edges(n, &edges).map_err(|e| anyhow::anyhow!("{e}"))?;
    Ok(IngestedGraph { graph, labels })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_dense_files_with_isolated_vertices() {
        let g = parse_graph_file("c cycle plus a loner\np 5 4\ne 0 1\ne 1 2\ne 2 3\ne 3 0\n")
            .unwrap();
        assert_eq!(g.graph.vertex_count(), 5);
        assert_eq!(g.graph.degree(4), 0);
        assert_eq!(g.labels, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn remaps_sparse_labels() {
        let g = parse_graph_file("p 3 2\ne 10 700\ne 700 4\n").unwrap();
        assert_eq!(g.labels, vec![4, 10, 700]);
        assert_eq!(g.graph.edges().collect::<Vec<_>>(), vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_graph_file("p 2 1\ne 0\n").is_err());
        assert!(parse_graph_file("e 0 1\n").is_err());
        assert!(parse_graph_file("p 2 2\ne 0 1\n").is_err());
        assert!(parse_graph_file("p 3 1\ne 5 6\n").is_err());
        assert!(parse_graph_file("p 2 1\nq 0 1\n").is_err());
        // Two sparse labels on a two-vertex header remap cleanly.
        assert!(parse_graph_file("p 2 1\ne 5 6\n").is_ok());
    }
}
