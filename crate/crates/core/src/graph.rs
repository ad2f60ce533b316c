//! Simple undirected graph view shared by the ring and index engines.

use std::collections::VecDeque;

use thiserror::Error;

pub type VertexId = u32;

/// Index of an edge in [`Graph::edges`].
pub type EdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({0}, {1}) references a vertex outside 0..{2}")]
    VertexOutOfRange(VertexId, VertexId, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("parallel edge ({0}, {1})")]
    ParallelEdge(VertexId, VertexId),
    #[error("malformed edge list: {0}")]
    Parse(String),
}

/// Simple graph with sorted adjacency lists and a canonical edge list.
///
/// Edges are stored as `(a, b)` with `a < b`, sorted lexicographically, so
/// edge ids are stable for a given vertex numbering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    // edge id for each entry of `adj`, parallel arrays
    adj_edge: Vec<Vec<EdgeId>>,
    edges: Vec<(VertexId, VertexId)>,
}

impl Graph {
    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Graph, GraphError> {
        let mut list: Vec<(VertexId, VertexId)> = Vec::new();
        for (a, b) in edges {
            if a as usize >= vertex_count || b as usize >= vertex_count {
                return Err(GraphError::VertexOutOfRange(a, b, vertex_count));
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        for w in list.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::ParallelEdge(w[0].0, w[0].1));
            }
        }

        let mut adj: Vec<Vec<(VertexId, EdgeId)>> = vec![Vec::new(); vertex_count];
        for (id, &(a, b)) in list.iter().enumerate() {
            adj[a as usize].push((b, id));
            adj[b as usize].push((a, id));
        }
        let mut nbrs = Vec::with_capacity(vertex_count);
        let mut nbr_edges = Vec::with_capacity(vertex_count);
        for mut row in adj {
            row.sort_unstable();
            nbrs.push(row.iter().map(|&(v, _)| v).collect());
            nbr_edges.push(row.iter().map(|&(_, e)| e).collect());
        }
        Ok(Graph {
            adj: nbrs,
            adj_edge: nbr_edges,
            edges: list,
        })
    }

    /// Parses the plain edge-list format: a header line `v e` followed by
    /// one `a b` pair per line. Blank lines and `#` comments are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| GraphError::Parse("missing header line".into()))?;
        let (v, e) = parse_pair(header)?;
        let mut edges = Vec::with_capacity(e as usize);
        for line in lines {
            edges.push(parse_pair(line)?);
        }
        if edges.len() != e as usize {
            return Err(GraphError::Parse(format!(
                "header announces {} edges, found {}",
                e,
                edges.len()
            )));
        }
        Graph::from_edges(v as usize, edges)
    }

    /// Serializes to the edge-list format read by [`Graph::parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.vertex_count(), self.edge_count());
        for &(a, b) in &self.edges {
            out.push_str(&format!("{} {}\n", a, b));
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> (VertexId, VertexId) {
        self.edges[id]
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v as usize]
    }

    /// Edge ids incident to `v`, parallel to [`Graph::neighbors`].
    pub fn incident_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.adj_edge[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v as usize].len()
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.edge_id(a, b).is_some()
    }

    pub fn edge_id(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        let row = self.adj.get(a as usize)?;
        row.binary_search(&b)
            .ok()
            .map(|pos| self.adj_edge[a as usize][pos])
    }

    /// Breadth-first distances from `source`; unreachable vertices get `u32::MAX`.
    pub fn bfs_distances(&self, source: VertexId) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[source as usize] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            for &w in self.neighbors(u) {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = du + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count() == 0 {
            return true;
        }
        self.bfs_distances(0).iter().all(|&d| d != u32::MAX)
    }
}

fn parse_pair(line: &str) -> Result<(VertexId, VertexId), GraphError> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<VertexId, GraphError> {
        it.next()
            .ok_or_else(|| GraphError::Parse(format!("expected two integers in {:?}", line)))?
            .parse::<VertexId>()
            .map_err(|e| GraphError::Parse(format!("{:?}: {}", line, e)))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(GraphError::Parse(format!("trailing tokens in {:?}", line)));
    }
    Ok((a, b))
}

/// Common small graphs used by tests and the CLI's foreign-graph mode.
pub mod named {
    use super::{Graph, VertexId};

    pub fn cycle(n: usize) -> Graph {
        let n32 = n as VertexId;
        Graph::from_edges(n, (0..n32).map(|i| (i, (i + 1) % n32))).expect("cycle graph")
    }

    pub fn cube() -> Graph {
        let edges = (0..8u32).flat_map(|v| {
            (0..3)
                .map(move |bit| (v, v ^ (1 << bit)))
                .filter(|(a, b)| a < b)
        });
        Graph::from_edges(8, edges).expect("cube graph")
    }

    pub fn petersen() -> Graph {
        let outer = (0..5u32).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5u32).map(|i| (i, i + 5));
        let inner = (0..5u32).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("petersen graph")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_parallel_edges() {
        assert_eq!(
            Graph::from_edges(3, [(0, 0)]).unwrap_err(),
            GraphError::SelfLoop(0)
        );
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]).unwrap_err(),
            GraphError::ParallelEdge(0, 1)
        );
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange(..))
        ));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = named::petersen();
        let text = g.to_edge_list();
        assert!(text.starts_with("10 15\n0 1\n"));
        assert_eq!(Graph::parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_errors() {
        assert!(Graph::parse_edge_list("").is_err());
        assert!(Graph::parse_edge_list("3 2\n0 1\n").is_err());
        assert!(Graph::parse_edge_list("3 1\n0 x\n").is_err());
        assert!(Graph::parse_edge_list("3 1\n0 1 2\n").is_err());
    }

    #[test]
    fn named_graphs() {
        assert_eq!(named::cube().edge_count(), 12);
        assert!(named::petersen().neighbors(0).len() == 3);
        assert_eq!(named::cycle(5).bfs_distances(0), vec![0, 1, 2, 2, 1]);
        let disconnected = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!disconnected.is_connected());
    }
}
