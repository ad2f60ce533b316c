//! Chordless (induced) cycles of bounded size.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, VertexId};

pub const MIN_RMAX: usize = 3;
pub const MAX_RMAX: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("rmax {0} outside supported range {MIN_RMAX}..={MAX_RMAX}")]
    RmaxOutOfRange(usize),
}

/// A simple cycle in canonical form: starts at its smallest vertex and
/// continues towards the smaller of that vertex's two ring neighbours.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ring {
    vertices: Vec<VertexId>,
}

impl Ring {
    /// Canonicalizes a cyclic vertex sequence (any rotation or direction).
    pub fn new(cycle: &[VertexId]) -> Ring {
        let k = cycle.len();
        let start = (0..k).min_by_key(|&i| cycle[i]).unwrap_or(0);
        let fwd: Vec<VertexId> = (0..k).map(|i| cycle[(start + i) % k]).collect();
        let rev: Vec<VertexId> = (0..k).map(|i| cycle[(start + k - i) % k]).collect();
        Ring {
            vertices: fwd.min(rev),
        }
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Ring edges in walk order: edge `i` joins vertex `i` and `i + 1`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        let k = self.vertices.len();
        (0..k).map(move |i| (self.vertices[i], self.vertices[(i + 1) % k]))
    }

    /// True when no two non-consecutive ring vertices are adjacent in `graph`.
    pub fn is_chordless(&self, graph: &Graph) -> bool {
        let k = self.vertices.len();
        (0..k).all(|i| {
            (i + 2..k).all(|j| {
                (i == 0 && j == k - 1) || !graph.has_edge(self.vertices[i], self.vertices[j])
            })
        })
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingBasis {
    rmax: usize,
    rings: Vec<Ring>,
}

impl RingBasis {
    pub fn rmax(&self) -> usize {
        self.rmax
    }

    /// Rings sorted by size, then by canonical vertex sequence.
    pub fn rings(&self) -> &[Ring] {
        &self.rings
    }

    pub fn len(&self) -> usize {
        self.rings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rings.is_empty()
    }
}

/// Enumerates every chordless cycle of length `3..=rmax`.
///
/// Each cycle is grown once from its smallest vertex `s` through vertices
/// larger than `s`. A candidate vertex adjacent to an interior path vertex
/// would create a chord and is pruned; a candidate adjacent to `s` closes the
/// cycle and is never extended further.
pub fn chordless_cycles(graph: &Graph, rmax: usize) -> Result<RingBasis, RingError> {
    if !(MIN_RMAX..=MAX_RMAX).contains(&rmax) {
        return Err(RingError::RmaxOutOfRange(rmax));
    }
    let n = graph.vertex_count();
    let mut pos = vec![usize::MAX; n];
    let mut path = Vec::with_capacity(rmax);
    let mut rings = Vec::new();
    for s in 0..n as VertexId {
        path.push(s);
        pos[s as usize] = 0;
        extend(graph, rmax, s, &mut path, &mut pos, &mut rings);
        pos[s as usize] = usize::MAX;
        path.pop();
    }
    rings.sort_unstable_by(|a: &Ring, b: &Ring| {
        (a.size(), &a.vertices).cmp(&(b.size(), &b.vertices))
    });
    Ok(RingBasis { rmax, rings })
}

fn extend(
    graph: &Graph,
    rmax: usize,
    s: VertexId,
    path: &mut Vec<VertexId>,
    pos: &mut [usize],
    rings: &mut Vec<Ring>,
) {
    let cur = *path.last().expect("path starts at s");
    for &w in graph.neighbors(cur) {
        if w <= s || pos[w as usize] != usize::MAX {
            continue;
        }
        let mut closes = false;
        let mut chord = false;
        for &x in graph.neighbors(w) {
            let p = pos[x as usize];
            if p == usize::MAX || x == cur {
                continue;
            }
            if p == 0 {
                closes = true;
            } else {
                chord = true;
                break;
            }
        }
        if chord {
            continue;
        }
        if closes {
            if path.len() >= 2 && path[1] < w {
                let mut cycle = path.clone();
                cycle.push(w);
                rings.push(Ring { vertices: cycle });
            }
            continue;
        }
        if path.len() + 1 < rmax {
            pos[w as usize] = path.len();
            path.push(w);
            extend(graph, rmax, s, path, pos, rings);
            path.pop();
            pos[w as usize] = usize::MAX;
        }
    }
}

pub fn ring_size_census(basis: &RingBasis) -> BTreeMap<usize, usize> {
    let mut census = BTreeMap::new();
    for r in basis.rings() {
        *census.entry(r.size()).or_insert(0) += 1;
    }
    census
}
