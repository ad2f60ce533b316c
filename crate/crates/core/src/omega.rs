//! Opposite-edge strips, the Omega polynomial, the CI index and the
//! codistance relation with its orthogonal cuts.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::graph::{EdgeId, Graph, VertexId};
use crate::ringbasis::{chordless_cycles, RingBasis, RingError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OmegaError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("graph is not connected")]
    Disconnected,
    #[error("integer overflow while evaluating {0}")]
    Overflow(&'static str),
    #[error("invalid polynomial term {multiplicity}x^{exponent}")]
    BadTerm { exponent: u64, multiplicity: u64 },
    #[error("derivative order {0} not supported (1 or 2)")]
    BadOrder(u8),
    #[error("edge ({0}, {1}) is not in the graph")]
    UnknownEdge(VertexId, VertexId),
}

/// `Σ m(s)·x^s` with exact integer coefficients, keyed by exponent.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct OmegaPolynomial {
    terms: BTreeMap<u64, u64>,
}

impl OmegaPolynomial {
    /// Builds a polynomial from `(exponent, multiplicity)` pairs, merging repeats.
    pub fn from_terms(terms: impl IntoIterator<Item = (u64, u64)>) -> Result<Self, OmegaError> {
        let mut map = BTreeMap::new();
        for (exponent, multiplicity) in terms {
            if exponent == 0 || multiplicity == 0 {
                return Err(OmegaError::BadTerm {
                    exponent,
                    multiplicity,
                });
            }
            let slot = map.entry(exponent).or_insert(0u64);
            *slot = slot
                .checked_add(multiplicity)
                .ok_or(OmegaError::Overflow("multiplicity"))?;
        }
        Ok(OmegaPolynomial { terms: map })
    }

    /// One term per strip: `m(s)` counts the strips of length `s`.
    pub fn from_strip_sizes(sizes: impl IntoIterator<Item = usize>) -> Self {
        let mut terms = BTreeMap::new();
        for s in sizes {
            *terms.entry(s as u64).or_insert(0) += 1;
        }
        OmegaPolynomial { terms }
    }

    /// `(exponent, multiplicity)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.terms.iter().map(|(&s, &m)| (s, m))
    }

    pub fn coefficient(&self, exponent: u64) -> u64 {
        self.terms.get(&exponent).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Strip lengths with multiplicity, ascending.
    pub fn strip_lengths(&self) -> impl Iterator<Item = u64> + '_ {
        self.terms()
            .flat_map(|(s, m)| std::iter::repeat_n(s, m as usize))
    }
}

impl fmt::Display for OmegaPolynomial {
    /// `Cx^S` terms joined by `" + "`, ascending exponent; `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(s, m)| format!("{}x^{}", m, s)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Ω'(1) = Σ m·s` (order 1) or `Ω''(1) = Σ m·s·(s-1)` (order 2).
pub fn derivative_at_one(p: &OmegaPolynomial, order: u8) -> Result<u64, OmegaError> {
    let overflow = || OmegaError::Overflow("derivative");
    let mut acc: u64 = 0;
    for (s, m) in p.terms() {
        let factor = match order {
            1 => s,
            2 => s.checked_mul(s - 1).ok_or_else(overflow)?,
            _ => return Err(OmegaError::BadOrder(order)),
        };
        acc = m
            .checked_mul(factor)
            .and_then(|t| acc.checked_add(t))
            .ok_or_else(overflow)?;
    }
    Ok(acc)
}

/// Cluj-Ilmenau index: `[Ω'(1)]² - [Ω'(1) + Ω''(1)]`.
pub fn ci(p: &OmegaPolynomial) -> Result<u64, OmegaError> {
    let d1 = derivative_at_one(p, 1)?;
    let d2 = derivative_at_one(p, 2)?;
    let square = d1.checked_mul(d1).ok_or(OmegaError::Overflow("CI"))?;
    let sub = d1.checked_add(d2).ok_or(OmegaError::Overflow("CI"))?;
    square.checked_sub(sub).ok_or(OmegaError::Overflow("CI"))
}

/// An edge as `(a, b)` with `a < b`.
pub type EdgeKey = (VertexId, VertexId);

fn edge_key(a: VertexId, b: VertexId) -> EdgeKey {
    (a.min(b), a.max(b))
}

/// Opposite edge pairs of every even ring: edge `i` and edge `i + k` of a
/// `2k`-ring. Odd rings contribute nothing.
pub fn op_pairs(basis: &RingBasis) -> BTreeSet<(EdgeKey, EdgeKey)> {
    let mut pairs = BTreeSet::new();
    for ring in basis.rings().iter().filter(|r| r.size() % 2 == 0) {
        let edges: Vec<EdgeKey> = ring.edges().map(|(a, b)| edge_key(a, b)).collect();
        let half = edges.len() / 2;
        for i in 0..half {
            let (e, f) = (edges[i], edges[i + half]);
            pairs.insert((e.min(f), e.max(f)));
        }
    }
    pairs
}

/// Disjoint edge classes covering the whole edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StripPartition {
    classes: Vec<Vec<EdgeId>>,
}

impl StripPartition {
    /// Classes with sorted members, ordered by their smallest edge id.
    pub fn classes(&self) -> &[Vec<EdgeId>] {
        &self.classes
    }

    pub fn sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.classes.iter().map(Vec::len)
    }

    pub fn polynomial(&self) -> OmegaPolynomial {
        OmegaPolynomial::from_strip_sizes(self.sizes())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn classes(mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..n {
            let r = self.find(x);
            groups.entry(r).or_default().push(x);
        }
        // roots are class minima, so BTreeMap order is by smallest member
        groups.into_values().collect()
    }
}

/// Connected components of the op-pair relation on edges; an edge in no pair
/// is a strip on its own.
pub fn strip_partition(graph: &Graph, basis: &RingBasis) -> Result<StripPartition, OmegaError> {
    let mut uf = UnionFind::new(graph.edge_count());
    for ((a, b), (c, d)) in op_pairs(basis) {
        let e = graph.edge_id(a, b).ok_or(OmegaError::UnknownEdge(a, b))?;
        let f = graph.edge_id(c, d).ok_or(OmegaError::UnknownEdge(c, d))?;
        uf.union(e, f);
    }
    Ok(StripPartition {
        classes: uf.classes(),
    })
}

/// Omega polynomial over the chordless rings of size at most `rmax`.
pub fn omega(graph: &Graph, rmax: usize) -> Result<OmegaPolynomial, OmegaError> {
    if !graph.is_connected() {
        return Err(OmegaError::Disconnected);
    }
    let basis = chordless_cycles(graph, rmax)?;
    Ok(strip_partition(graph, &basis)?.polynomial())
}

/// All-pairs BFS distances.
#[derive(Debug, Clone)]
pub struct DistanceTable {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceTable {
    pub fn new(graph: &Graph) -> Self {
        let n = graph.vertex_count();
        let mut dist = Vec::with_capacity(n * n);
        for s in 0..n as VertexId {
            dist.extend(graph.bfs_distances(s));
        }
        DistanceTable { n, dist }
    }

    pub fn get(&self, a: VertexId, b: VertexId) -> u32 {
        self.dist[a as usize * self.n + b as usize]
    }
}

fn codistant_with(d: impl Fn(VertexId, VertexId) -> u32, e: EdgeKey, f: EdgeKey) -> bool {
    let holds = |u: VertexId, v: VertexId, x: VertexId, y: VertexId| {
        let dvx = d(v, x);
        let dvy = d(v, y);
        let dux = d(u, x);
        let duy = d(u, y);
        dvx != u32::MAX && dvx == dvy + 1 && dvx == dux + 1 && dvx == duy
    };
    let (a, b) = e;
    let (c, g) = f;
    holds(a, b, c, g) || holds(b, a, c, g) || holds(a, b, g, c) || holds(b, a, g, c)
}

/// Codistance of `e = uv` and `f = xy`:
/// `d(v,x) = d(v,y) + 1 = d(u,x) + 1 = d(u,y)` under some labeling of the endpoints.
pub fn codistant(graph: &Graph, e: EdgeKey, f: EdgeKey) -> Result<bool, OmegaError> {
    for (a, b) in [e, f] {
        if !graph.has_edge(a, b) {
            return Err(OmegaError::UnknownEdge(a, b));
        }
    }
    let from_a = graph.bfs_distances(e.0);
    let from_b = graph.bfs_distances(e.1);
    let d = |p: VertexId, q: VertexId| {
        if p == e.0 {
            from_a[q as usize]
        } else {
            from_b[q as usize]
        }
    };
    Ok(codistant_with(d, e, f))
}

/// Classes of the co relation and whether co is an equivalence relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoCuts {
    /// Components of the co graph on edges, ordered by smallest edge id.
    pub classes: Vec<Vec<EdgeId>>,
    /// True iff every class is a clique of co, i.e. co is transitive.
    pub transitive: bool,
}

impl CoCuts {
    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

pub fn co_cuts(graph: &Graph) -> Result<CoCuts, OmegaError> {
    if !graph.is_connected() {
        return Err(OmegaError::Disconnected);
    }
    let table = DistanceTable::new(graph);
    let edges = graph.edges();
    let m = edges.len();
    let mut uf = UnionFind::new(m);
    // ordered related pairs, reflexive ones included
    let mut related: u64 = m as u64;
    for i in 0..m {
        for j in i + 1..m {
            if codistant_with(|p, q| table.get(p, q), edges[i], edges[j]) {
                uf.union(i, j);
                related += 2;
            }
        }
    }
    let classes = uf.classes();
    let clique_pairs: u64 = classes.iter().map(|c| (c.len() as u64).pow(2)).sum();
    Ok(CoCuts {
        transitive: clique_pairs == related,
        classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn poly(terms: &[(u64, u64)]) -> OmegaPolynomial {
        OmegaPolynomial::from_terms(terms.iter().copied()).unwrap()
    }

    #[test]
    fn derivatives_and_ci() {
        let p = poly(&[(1, 24), (3, 4)]);
        assert_eq!(derivative_at_one(&p, 1), Ok(36));
        assert_eq!(derivative_at_one(&p, 2), Ok(24));
        assert_eq!(derivative_at_one(&poly(&[(1, 630)]), 2), Ok(0));
        assert_eq!(derivative_at_one(&p, 3), Err(OmegaError::BadOrder(3)));
        assert_eq!(ci(&poly(&[(1, 36)])), Ok(1260));
        assert_eq!(ci(&p), Ok(1236));
        assert_eq!(ci(&poly(&[(1, 2430), (3, 520)])), Ok(15912990));
    }

    #[test]
    fn overflow_is_reported() {
        let p = poly(&[(1, u64::MAX / 2), (2, u64::MAX / 2)]);
        assert!(matches!(
            derivative_at_one(&p, 1),
            Err(OmegaError::Overflow(_))
        ));
        let q = poly(&[(1, 1 << 33)]);
        assert!(matches!(ci(&q), Err(OmegaError::Overflow(_))));
        assert!(OmegaPolynomial::from_terms([(1, u64::MAX), (1, 1)]).is_err());
    }

    #[test]
    fn display_format() {
        assert_eq!(poly(&[(3, 520), (1, 2430)]).to_string(), "2430x^1 + 520x^3");
        assert_eq!(OmegaPolynomial::default().to_string(), "0");
        assert!(OmegaPolynomial::from_terms([(0, 1)]).is_err());
    }

    #[test]
    fn op_pairs_of_single_rings() {
        let hex = named::cycle(6);
        let b6 = chordless_cycles(&hex, 6).unwrap();
        assert_eq!(op_pairs(&b6).len(), 3);
        let pent = named::cycle(5);
        assert!(op_pairs(&chordless_cycles(&pent, 5).unwrap()).is_empty());
    }

    #[test]
    fn cube_strips() {
        let cube = named::cube();
        let basis = chordless_cycles(&cube, 4).unwrap();
        let part = strip_partition(&cube, &basis).unwrap();
        assert_eq!(part.sizes().collect::<Vec<_>>(), vec![4, 4, 4]);
        assert_eq!(part.polynomial(), poly(&[(4, 3)]));
    }

    #[test]
    fn omega_rejects_disconnected() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(omega(&g, 5), Err(OmegaError::Disconnected));
    }

    #[test]
    fn codistance_small_cycles() {
        let c4 = named::cycle(4);
        assert_eq!(codistant(&c4, (0, 1), (2, 3)), Ok(true));
        assert_eq!(codistant(&c4, (0, 1), (1, 2)), Ok(false));
        let c5 = named::cycle(5);
        for &(a, b) in c5.edges() {
            for &(c, d) in c5.edges() {
                assert_eq!(codistant(&c5, (a, b), (c, d)), Ok((a, b) == (c, d)));
            }
        }
        assert!(codistant(&c5, (0, 2), (0, 1)).is_err());
    }

    #[test]
    fn cube_cuts() {
        let cuts = co_cuts(&named::cube()).unwrap();
        assert_eq!(cuts.sizes(), vec![4, 4, 4]);
        assert!(cuts.transitive);
        let c5 = co_cuts(&named::cycle(5)).unwrap();
        assert_eq!(c5.sizes(), vec![1; 5]);
        assert!(c5.transitive);
    }
}
