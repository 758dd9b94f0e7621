//! Finite simple undirected graphs on dense vertex ids `0..n`.
//!
//! A [`Graph`] is immutable once built. Every constructor rejects loops and
//! out-of-range endpoints and collapses duplicate edges, so adjacency lists are
//! always sorted, symmetric and free of repeats.

mod enumerate;
mod format;

pub use enumerate::{all_graphs, canonical_code, connected_graphs};
pub use format::{encode_edge_list, encode_graph6, parse_edge_list, parse_graph6};

use std::collections::VecDeque;

use thiserror::Error;

/// Errors raised while building, parsing or querying a graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("{family} requires a parameter of at least {min}, got {got}")]
    BelowMinimum {
        family: &'static str,
        min: usize,
        got: usize,
    },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop edge at vertex {vertex}")]
    Loop { vertex: usize },
    #[error("line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error("graph6 byte {position}: {message}")]
    Graph6 { position: usize, message: String },
    #[error("{0} vertices requested; only {1} supported")]
    TooLarge(usize, usize),
}

/// An undirected simple graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge iterator.
    ///
    /// Duplicate edges (in either orientation) are collapsed.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop { vertex: u });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self { adj })
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        Self::from_edges(n, std::iter::empty())
    }

    /// The complete graph `K_n`.
    pub fn complete(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        Self::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    /// The cycle `C_n`, `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::BelowMinimum {
                family: "cycle",
                min: 3,
                got: n,
            });
        }
        Self::from_edges(n, (0..n).map(|u| (u, (u + 1) % n)))
    }

    /// The path `P_n` on `n >= 2` vertices, `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Self, GraphError> {
        if n < 2 {
            return Err(GraphError::BelowMinimum {
                family: "path",
                min: 2,
                got: n,
            });
        }
        Self::from_edges(n, (1..n).map(|u| (u - 1, u)))
    }

    /// The `d`-dimensional hypercube `Q_d`; vertices are bit strings, edges
    /// join strings at Hamming distance one.
    pub fn hypercube(d: usize) -> Result<Self, GraphError> {
        if d < 1 {
            return Err(GraphError::BelowMinimum {
                family: "hypercube",
                min: 1,
                got: d,
            });
        }
        if d > 16 {
            return Err(GraphError::TooLarge(1 << d, 1 << 16));
        }
        let n = 1usize << d;
        Self::from_edges(
            n,
            (0..n).flat_map(|u| {
                (0..d)
                    .map(move |b| (u, u ^ (1 << b)))
                    .filter(|&(u, v)| u < v)
            }),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sorted neighbours of `v`. Panics if `v` is out of range.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.adj.len() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.adj.len(),
            })
        }
    }

    /// Complete graph on the same vertex set.
    pub fn completion(&self) -> Graph {
        Graph::complete(self.vertex_count()).expect("graphs are never empty")
    }

    /// BFS distances from `center`; `None` marks unreachable vertices.
    pub fn distances_from(&self, center: usize) -> Result<Vec<Option<usize>>, GraphError> {
        self.check_vertex(center)?;
        let mut dist = vec![None; self.vertex_count()];
        dist[center] = Some(0);
        let mut queue = VecDeque::from([center]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or_default();
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        Ok(dist)
    }

    /// Vertices at distance exactly `radius` from `center`, ascending.
    pub fn sphere(&self, center: usize, radius: usize) -> Result<Vec<usize>, GraphError> {
        let dist = self.distances_from(center)?;
        Ok((0..dist.len()).filter(|&v| dist[v] == Some(radius)).collect())
    }

    /// Vertices at distance at most `radius` from `center`, ascending.
    pub fn ball(&self, center: usize, radius: usize) -> Result<Vec<usize>, GraphError> {
        let dist = self.distances_from(center)?;
        Ok((0..dist.len())
            .filter(|&v| matches!(dist[v], Some(d) if d <= radius))
            .collect())
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.distances_from(0)
            .map(|d| d.iter().all(Option::is_some))
            .unwrap_or(false)
    }

    /// Adjacency rows as bitmasks. Only valid for graphs with at most 64 vertices.
    pub(crate) fn adjacency_masks(&self) -> Vec<u64> {
        debug_assert!(self.vertex_count() <= 64);
        self.adj
            .iter()
            .map(|list| list.iter().fold(0u64, |m, &v| m | (1 << v)))
            .collect()
    }
}
