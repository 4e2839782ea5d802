//! Compact adjacency storage for simple undirected graphs and SNAP-style
//! edge-list ingestion.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// An immutable simple undirected graph on vertices `0..n`.
///
/// Adjacency is kept in offset/target form: the neighbors of `v` are
/// `targets[offsets[v]..offsets[v + 1]]`, strictly increasing. Each vertex
/// also carries the label it had in the source it was loaded from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    labels: Vec<u64>,
}

impl Graph {
    /// Builds a graph on `n` vertices from an arbitrary edge list.
    ///
    /// Edges are symmetrized; self-loops and duplicates in either orientation
    /// are dropped. Panics if an endpoint is `>= n` or `n` does not fit in `u32`.
    pub fn from_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        Self::with_labels((0..n as u64).collect(), edges)
    }

    pub(crate) fn with_labels<I>(labels: Vec<u64>, edges: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let n = labels.len();
        assert!(n <= u32::MAX as usize, "vertex count {n} exceeds u32 range");

        let edges: Vec<(u32, u32)> = edges.into_iter().filter(|&(u, v)| u != v).collect();
        let mut degree = vec![0usize; n + 1];
        for &(u, v) in &edges {
            assert!(
                (u as usize) < n && (v as usize) < n,
                "edge ({u}, {v}) out of range"
            );
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }

        let mut offsets = vec![0usize; n + 1];
        for v in 0..n {
            offsets[v + 1] = offsets[v] + degree[v];
        }
        let mut cursor = offsets.clone();
        let mut targets = vec![0u32; offsets[n]];
        for &(u, v) in &edges {
            targets[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            targets[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }

        // sort each list, dedup, and compact in place
        let mut write = 0;
        let mut start = 0;
        for v in 0..n {
            let end = offsets[v + 1];
            targets[start..end].sort_unstable();
            let list_start = write;
            for i in start..end {
                let t = targets[i];
                if write == list_start || targets[write - 1] != t {
                    targets[write] = t;
                    write += 1;
                }
            }
            start = end;
            offsets[v + 1] = write;
        }
        targets.truncate(write);
        targets.shrink_to_fit();

        Graph {
            offsets,
            targets,
            labels,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Position of `v`'s first neighbor in the flat target array.
    #[inline]
    pub fn adjacency_offset(&self, v: usize) -> usize {
        self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count())
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    /// Original id of `v` in the source the graph was built from.
    pub fn label(&self, v: usize) -> u64 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Every edge once, as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn contains_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }
}

/// Maximum vertex degree; 0 for empty and edgeless graphs.
pub fn max_degree(g: &Graph) -> usize {
    g.max_degree()
}

/// Parses a whitespace-separated edge list, one edge per line.
///
/// Lines whose first non-blank character is `#` are comments and blank lines
/// are skipped. Raw ids are remapped to `0..n` in order of first appearance
/// and the original ids are kept as vertex labels.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
    let mut ids: HashMap<u64, u32> = HashMap::new();
    let mut labels: Vec<u64> = Vec::new();
    let mut edges: Vec<(u32, u32)> = Vec::new();

    let mut intern = |raw: u64, line: usize| -> Result<u32> {
        if let Some(&id) = ids.get(&raw) {
            return Ok(id);
        }
        let id = u32::try_from(labels.len())
            .map_err(|_| Error::parse(line, "too many distinct vertex ids"))?;
        ids.insert(raw, id);
        labels.push(raw);
        Ok(id)
    };

    for (index, bytes) in reader.split(b'\n').enumerate() {
        let line = index + 1;
        let bytes = bytes?;
        let text = std::str::from_utf8(&bytes).map_err(|_| Error::parse(line, "invalid UTF-8"))?;
        let text = text.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let mut fields = text.split_whitespace();
        let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::parse(line, "expected exactly two vertex ids"));
        };
        let a = parse_id(a, line)?;
        let b = parse_id(b, line)?;
        let a = intern(a, line)?;
        let b = intern(b, line)?;
        edges.push((a, b));
    }

    Ok(Graph::with_labels(labels, edges))
}

fn parse_id(token: &str, line: usize) -> Result<u64> {
    token
        .parse::<u64>()
        .map_err(|_| Error::parse(line, format!("malformed vertex id {token:?}")))
}

/// Writes each edge once as `label_u label_v`, the format read by
/// [`parse_edge_list`]. Isolated vertices are not representable.
pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    for (u, v) in g.edges() {
        writeln!(out, "{}\t{}", g.label(u), g.label(v))?;
    }
    out.flush()?;
    Ok(())
}
