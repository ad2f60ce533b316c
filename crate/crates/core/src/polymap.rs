//! Rotation-system combinatorial maps with open ports.
//!
//! A [`CombMap`] stores, for every vertex, the cyclic order of its neighbours.
//! Faces are never stored; they are traced on demand from the rotation: the
//! dart `u -> v` is followed by `v -> succ_v(u)`, where `succ_v` is the next
//! neighbour of `v` in cyclic order. Some traced walks can be marked as open
//! ports (holes); they are excluded from the face set but still account for
//! their darts.

use std::collections::{BTreeMap, HashSet};

use thiserror::Error;

use crate::graph::{Graph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("vertex {0} out of range")]
    VertexOutOfRange(VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("parallel edge between {0} and {1}")]
    ParallelEdge(VertexId, VertexId),
    #[error("adjacency is not symmetric for ({0}, {1})")]
    Asymmetric(VertexId, VertexId),
    #[error("dart {0} -> {1} used by more than one face")]
    DuplicateDart(VertexId, VertexId),
    #[error("dart {0} -> {1} has no reverse dart")]
    MissingReverse(VertexId, VertexId),
    #[error("faces around vertex {0} do not form a single cycle")]
    NonManifoldVertex(VertexId),
    #[error("walk {0:?} is not a traced face of the map")]
    NotAFace(Vec<VertexId>),
    #[error("Euler sum v - e + f = {0} is odd")]
    OddEulerSum(i64),
    #[error("operation requires a closed map, found {0} open ports")]
    OpenMap(usize),
}

/// A face walk: the cyclic vertex sequence of a traced face.
pub type Walk = Vec<VertexId>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombMap {
    rotation: Vec<Vec<VertexId>>,
    ports: Vec<Walk>,
}

/// Vertex, edge, face and genus counts of a map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountSummary {
    pub v: usize,
    pub e: usize,
    /// Pentagonal faces, open ports excluded.
    pub f5: usize,
    /// All faces, open ports excluded.
    pub f_all: usize,
    pub ports: usize,
    /// Genus from `v - e + f5`, absent when that sum is odd.
    pub genus_pentagonal: Option<i64>,
    /// Genus of the closed surface obtained by capping every port with a disk.
    pub genus_embedding: i64,
}

impl CombMap {
    /// Builds a closed map from consistently oriented face walks.
    ///
    /// Every directed edge must appear in exactly one walk and its reverse in
    /// another one; the faces around each vertex must form a single cycle.
    pub fn from_faces(vertex_count: usize, faces: &[Walk]) -> Result<CombMap, MapError> {
        // succ[v] holds (u, w) with succ_v(u) = w
        let mut succ: Vec<Vec<(VertexId, VertexId)>> = vec![Vec::new(); vertex_count];
        let mut darts = HashSet::new();
        for face in faces {
            let k = face.len();
            for i in 0..k {
                let u = face[(i + k - 1) % k];
                let v = face[i];
                let w = face[(i + 1) % k];
                for x in [u, v, w] {
                    if x as usize >= vertex_count {
                        return Err(MapError::VertexOutOfRange(x));
                    }
                }
                if u == v {
                    return Err(MapError::SelfLoop(u));
                }
                if !darts.insert((u, v)) {
                    return Err(MapError::DuplicateDart(u, v));
                }
                succ[v as usize].push((u, w));
            }
        }
        for &(u, v) in &darts {
            if !darts.contains(&(v, u)) {
                return Err(MapError::MissingReverse(u, v));
            }
        }

        let mut rotation = Vec::with_capacity(vertex_count);
        for (v, pairs) in succ.iter_mut().enumerate() {
            let v = v as VertexId;
            pairs.sort_unstable();
            let mut cycle = Vec::with_capacity(pairs.len());
            if let Some(&(start, _)) = pairs.first() {
                let mut cur = start;
                loop {
                    cycle.push(cur);
                    let pos = pairs
                        .binary_search_by_key(&cur, |&(a, _)| a)
                        .map_err(|_| MapError::NonManifoldVertex(v))?;
                    cur = pairs[pos].1;
                    if cur == start {
                        break;
                    }
                    if cycle.len() > pairs.len() {
                        return Err(MapError::NonManifoldVertex(v));
                    }
                }
            }
            if cycle.len() != pairs.len() {
                return Err(MapError::NonManifoldVertex(v));
            }
            rotation.push(cycle);
        }
        let map = CombMap {
            rotation,
            ports: Vec::new(),
        };
        map.validate()?;
        Ok(map)
    }

    /// Builds a map from explicit rotations and port walks, validating both.
    pub fn from_rotation(
        rotation: Vec<Vec<VertexId>>,
        ports: Vec<Walk>,
    ) -> Result<CombMap, MapError> {
        let map = CombMap { rotation, ports };
        map.validate()?;
        Ok(map)
    }

    /// Checks the rotation-system and port invariants.
    pub fn validate(&self) -> Result<(), MapError> {
        let n = self.rotation.len();
        for (v, rot) in self.rotation.iter().enumerate() {
            let v = v as VertexId;
            let mut seen = HashSet::with_capacity(rot.len());
            for &w in rot {
                if w as usize >= n {
                    return Err(MapError::VertexOutOfRange(w));
                }
                if w == v {
                    return Err(MapError::SelfLoop(v));
                }
                if !seen.insert(w) {
                    return Err(MapError::ParallelEdge(v, w));
                }
                if !self.rotation[w as usize].contains(&v) {
                    return Err(MapError::Asymmetric(v, w));
                }
            }
        }
        let mut port_darts = HashSet::new();
        for port in &self.ports {
            if !self.is_traced_walk(port) {
                return Err(MapError::NotAFace(port.clone()));
            }
            for (u, v) in walk_darts(port) {
                if !port_darts.insert((u, v)) {
                    return Err(MapError::DuplicateDart(u, v));
                }
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rotation.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation[v as usize].len()
    }

    /// Neighbours of `v` in cyclic order.
    pub fn rotation(&self, v: VertexId) -> &[VertexId] {
        &self.rotation[v as usize]
    }

    pub fn ports(&self) -> &[Walk] {
        &self.ports
    }

    pub fn is_closed(&self) -> bool {
        self.ports.is_empty()
    }

    /// The neighbour following `u` in the rotation at `v`.
    pub fn succ(&self, v: VertexId, u: VertexId) -> Option<VertexId> {
        let rot = &self.rotation[v as usize];
        let pos = rot.iter().position(|&x| x == u)?;
        Some(rot[(pos + 1) % rot.len()])
    }

    /// Edges as `(a, b)` pairs with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out: Vec<_> = self
            .rotation
            .iter()
            .enumerate()
            .flat_map(|(v, rot)| {
                let v = v as VertexId;
                rot.iter().filter(move |&&w| v < w).map(move |&w| (v, w))
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn graph(&self) -> Graph {
        Graph::from_edges(self.vertex_count(), self.edges()).expect("a valid map is a simple graph")
    }

    /// Traces every walk of the rotation system, ports included.
    ///
    /// Walks are discovered from darts in order of (tail, rotation position),
    /// so the output is deterministic.
    pub fn trace_all(&self) -> Vec<Walk> {
        let mut used: Vec<Vec<bool>> = self.rotation.iter().map(|r| vec![false; r.len()]).collect();
        let mut walks = Vec::new();
        for u in 0..self.rotation.len() {
            for i in 0..self.rotation[u].len() {
                if used[u][i] {
                    continue;
                }
                let mut walk = Vec::new();
                let (mut a, mut ai) = (u as VertexId, i);
                while !used[a as usize][ai] {
                    used[a as usize][ai] = true;
                    walk.push(a);
                    let b = self.rotation[a as usize][ai];
                    let next = self.succ(b, a).expect("symmetric adjacency");
                    let bi = self.rotation[b as usize]
                        .iter()
                        .position(|&x| x == next)
                        .expect("successor is a neighbour");
                    a = b;
                    ai = bi;
                }
                walks.push(walk);
            }
        }
        walks
    }

    /// Traced faces with open ports excluded.
    pub fn trace_faces(&self) -> Vec<Walk> {
        let port_darts: HashSet<(VertexId, VertexId)> =
            self.ports.iter().flat_map(|p| walk_darts(p)).collect();
        self.trace_all()
            .into_iter()
            .filter(|w| !port_darts.contains(&(w[0], w[1 % w.len()])))
            .collect()
    }

    /// True when `walk` is, up to rotation, one of the traced walks.
    pub fn is_traced_walk(&self, walk: &[VertexId]) -> bool {
        let k = walk.len();
        if k < 3 {
            return false;
        }
        (0..k).all(|i| {
            let u = walk[i];
            let v = walk[(i + 1) % k];
            let w = walk[(i + 2) % k];
            (v as usize) < self.rotation.len() && self.succ(v, u) == Some(w)
        })
    }

    pub fn degree_histogram(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for rot in &self.rotation {
            *hist.entry(rot.len()).or_insert(0) += 1;
        }
        hist
    }

    pub fn summary(&self) -> CountSummary {
        let faces = self.trace_faces();
        let v = self.vertex_count();
        let e = self.edge_count();
        let f5 = faces.iter().filter(|f| f.len() == 5).count();
        let f_all = faces.len();
        let ports = self.ports.len();
        let chi_closed = v as i64 - e as i64 + (f_all + ports) as i64;
        CountSummary {
            v,
            e,
            f5,
            f_all,
            ports,
            genus_pentagonal: genus_pentagonal(v as i64, e as i64, f5 as i64).ok(),
            genus_embedding: 1 - chi_closed / 2,
        }
    }

    /// Replaces the port list; each walk must be a traced walk.
    pub(crate) fn with_ports(mut self, ports: Vec<Walk>) -> Result<CombMap, MapError> {
        self.ports = ports;
        self.validate()?;
        Ok(self)
    }

    pub(crate) fn into_parts(self) -> (Vec<Vec<VertexId>>, Vec<Walk>) {
        (self.rotation, self.ports)
    }
}

pub(crate) fn walk_darts(walk: &[VertexId]) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
    let k = walk.len();
    (0..k).map(move |i| (walk[i], walk[(i + 1) % k]))
}

/// Genus from `v - e + f = 2(1 - g)` where `f` counts pentagonal faces only.
pub fn genus_pentagonal(v: i64, e: i64, f5: i64) -> Result<i64, MapError> {
    let chi = v - e + f5;
    if chi.rem_euclid(2) != 0 {
        return Err(MapError::OddEulerSum(chi));
    }
    Ok(1 - chi / 2)
}

/// Genus of the closed surface, counting every traced walk (ports included) as a face.
pub fn euler_genus_closed(map: &CombMap) -> Result<i64, MapError> {
    let chi = map.vertex_count() as i64 - map.edge_count() as i64 + map.trace_all().len() as i64;
    if chi.rem_euclid(2) != 0 {
        return Err(MapError::OddEulerSum(chi));
    }
    Ok(1 - chi / 2)
}

pub fn seed_tetrahedron() -> CombMap {
    let faces = vec![vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 1], vec![1, 3, 2]];
    CombMap::from_faces(4, &faces).expect("tetrahedron faces are consistent")
}

pub fn seed_cube() -> CombMap {
    let faces = vec![
        vec![0, 3, 2, 1],
        vec![4, 5, 6, 7],
        vec![0, 1, 5, 4],
        vec![1, 2, 6, 5],
        vec![2, 3, 7, 6],
        vec![3, 0, 4, 7],
    ];
    CombMap::from_faces(8, &faces).expect("cube faces are consistent")
}

/// Vertex labels of the layered dodecahedron used by [`seed_dodecahedron`]
/// and by the skeleton generators.
///
/// Layers from a bottom face: `bottom[k]`, `lower[k]` (neighbour of
/// `bottom[k]`), `upper[k]` (adjacent to `lower[k]` and `lower[k+1]`) and
/// `top[k]` (adjacent to `upper[k]`), indices mod 5.
pub(crate) mod layered {
    pub const fn bottom(k: usize) -> u32 {
        (k % 5) as u32
    }
    pub const fn lower(k: usize) -> u32 {
        5 + (k % 5) as u32
    }
    pub const fn upper(k: usize) -> u32 {
        10 + (k % 5) as u32
    }
    pub const fn top(k: usize) -> u32 {
        15 + (k % 5) as u32
    }

    /// The 12 oriented pentagons: bottom, 5 lower sides, 5 upper sides, top.
    pub fn faces() -> Vec<Vec<u32>> {
        let mut faces = vec![(0..5).rev().map(bottom).collect::<Vec<_>>()];
        for k in 0..5 {
            faces.push(vec![
                bottom(k),
                bottom(k + 1),
                lower(k + 1),
                upper(k),
                lower(k),
            ]);
        }
        for k in 0..5 {
            faces.push(vec![
                upper(k),
                lower(k + 1),
                upper(k + 1),
                top(k + 1),
                top(k),
            ]);
        }
        faces.push((0..5).map(top).collect());
        faces
    }
}

pub fn seed_dodecahedron() -> CombMap {
    CombMap::from_faces(20, &layered::faces()).expect("dodecahedron faces are consistent")
}
