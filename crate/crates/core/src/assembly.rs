//! Skeleton substitution: a monomer at every skeleton position, port
//! triangles fused along skeleton edges.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::graph::VertexId;
use crate::mapops::build_monomer;
use crate::polymap::{layered, seed_dodecahedron, CombMap, MapError, Walk};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AssemblyError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("port {0} does not exist")]
    UnknownPort(usize),
    #[error("port {0} is already fused")]
    PortAlreadyFused(usize),
    #[error("port {0} is not a triangle")]
    NonTriangularPort(usize),
    #[error("port vertex {0} has degree {1}, expected 3")]
    PortVertexDegree(VertexId, usize),
    #[error("twist must be 0, 1 or 2, got {0}")]
    BadTwist(u8),
    #[error("monomer must have 4 disjoint triangular ports: {0}")]
    BadMonomer(String),
    #[error("skeleton position {0} has degree {1}, a monomer has only 4 ports")]
    DegreeTooHigh(usize, usize),
    #[error("slot conflict at position {0}, slot {1}")]
    SlotConflict(usize, u8),
    #[error("invalid skeleton: {0}")]
    BadSkeleton(String),
    #[error("{0}")]
    OutOfRange(String),
}

/// The tetrapodal unit: a map with four open, oriented triangular ports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomer {
    pub map: CombMap,
    pub ports: [[VertexId; 3]; 4],
}

impl Monomer {
    pub fn new(map: CombMap) -> Result<Monomer, AssemblyError> {
        let walks = map.ports();
        if walks.len() != 4 {
            return Err(AssemblyError::BadMonomer(format!("{} ports", walks.len())));
        }
        let mut ports = [[0; 3]; 4];
        let mut seen = BTreeSet::new();
        for (i, w) in walks.iter().enumerate() {
            if w.len() != 3 {
                return Err(AssemblyError::BadMonomer(format!(
                    "port {} has length {}",
                    i,
                    w.len()
                )));
            }
            for (j, &v) in w.iter().enumerate() {
                if map.degree(v) != 3 {
                    return Err(AssemblyError::PortVertexDegree(v, map.degree(v)));
                }
                if !seen.insert(v) {
                    return Err(AssemblyError::BadMonomer(format!(
                        "vertex {} in two ports",
                        v
                    )));
                }
                ports[i][j] = v;
            }
        }
        Ok(Monomer { map, ports })
    }
}

/// Disjoint union; vertices of `b` are shifted by `a.vertex_count()`, ports of
/// `b` follow those of `a`.
pub fn disjoint_union(a: &CombMap, b: &CombMap) -> CombMap {
    let shift = a.vertex_count() as VertexId;
    let (mut rot, mut ports) = a.clone().into_parts();
    let (brot, bports) = b.clone().into_parts();
    rot.extend(
        brot.into_iter()
            .map(|r| r.into_iter().map(|v| v + shift).collect()),
    );
    ports.extend(
        bports
            .into_iter()
            .map(|p| p.into_iter().map(|v| v + shift).collect()),
    );
    CombMap::from_rotation(rot, ports).expect("union of valid maps")
}

/// Identifies port triangle `port_a` of `a` with `port_b` of `b`.
///
/// The identification reverses orientation: vertex `i` of port A meets vertex
/// `(twist - i) mod 3` of port B. The three vertices and three edges of the
/// junction merge; every other face survives.
pub fn fuse(
    a: &CombMap,
    port_a: usize,
    b: &CombMap,
    port_b: usize,
    twist: u8,
) -> Result<CombMap, AssemblyError> {
    if port_b >= b.ports().len() {
        return Err(AssemblyError::UnknownPort(a.ports().len() + port_b));
    }
    let union = disjoint_union(a, b);
    fuse_ports(&union, &[(port_a, a.ports().len() + port_b, twist)])
}

/// Fuses several port pairs of one map at once. Unfused ports keep their
/// relative order; vertices are renumbered densely in their original order.
pub fn fuse_ports(map: &CombMap, pairs: &[(usize, usize, u8)]) -> Result<CombMap, AssemblyError> {
    let ports = map.ports();
    let mut used = vec![false; ports.len()];
    let n = map.vertex_count();
    let mut rep: Vec<VertexId> = (0..n as VertexId).collect();
    let mut merged_rot: HashMap<VertexId, Vec<VertexId>> = HashMap::new();

    for &(pa, pb, twist) in pairs {
        if twist > 2 {
            return Err(AssemblyError::BadTwist(twist));
        }
        for p in [pa, pb] {
            if p >= ports.len() {
                return Err(AssemblyError::UnknownPort(p));
            }
            if used[p] {
                return Err(AssemblyError::PortAlreadyFused(p));
            }
            if ports[p].len() != 3 {
                return Err(AssemblyError::NonTriangularPort(p));
            }
            for &v in &ports[p] {
                if map.degree(v) != 3 {
                    return Err(AssemblyError::PortVertexDegree(v, map.degree(v)));
                }
            }
            used[p] = true;
        }
        let a = &ports[pa];
        let b = &ports[pb];
        for i in 0..3 {
            let j = (twist as usize + 3 - i) % 3;
            let (ai, bj) = (a[i], b[j]);
            let a_next = a[(i + 1) % 3];
            let b_next = b[(j + 1) % 3];
            rep[bj as usize] = ai;
            // rotation at a_i reads [a_{i+1}, X.., a_{i-1}]; at b_j [b_{j+1}, Y.., b_{j-1}]
            let mut rot = rotated_from(map.rotation(ai), a_next);
            let brot = rotated_from(map.rotation(bj), b_next);
            rot.extend_from_slice(&brot[1..brot.len() - 1]);
            merged_rot.insert(ai, rot);
        }
    }

    let mut compact = vec![VertexId::MAX; n];
    let mut next = 0;
    for v in 0..n {
        if rep[v] == v as VertexId {
            compact[v] = next;
            next += 1;
        }
    }
    let relabel = |v: VertexId| compact[rep[v as usize] as usize];
    let mut rotation = Vec::with_capacity(next as usize);
    for v in 0..n as VertexId {
        if rep[v as usize] != v {
            continue;
        }
        let rot = merged_rot
            .get(&v)
            .map(Vec::as_slice)
            .unwrap_or(map.rotation(v));
        rotation.push(rot.iter().map(|&w| relabel(w)).collect());
    }
    let open: Vec<Walk> = ports
        .iter()
        .enumerate()
        .filter(|(i, _)| !used[*i])
        .map(|(_, p)| p.iter().map(|&v| relabel(v)).collect())
        .collect();
    Ok(CombMap::from_rotation(rotation, open)?)
}

fn rotated_from(rot: &[VertexId], first: VertexId) -> Vec<VertexId> {
    let pos = rot
        .iter()
        .position(|&w| w == first)
        .expect("port neighbour in rotation");
    rot[pos..].iter().chain(&rot[..pos]).copied().collect()
}

/// Double (face-sharing) and triple (edge-sharing) joints between dodecahedral cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Joints {
    pub cells: usize,
    pub double: usize,
    pub triple: usize,
}

/// Assembly blueprint: monomer positions, fusions and port slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    /// Port slot used at each endpoint of the matching edge.
    slots: Vec<(u8, u8)>,
    faces: Vec<Vec<usize>>,
    joints: Option<Joints>,
}

impl Skeleton {
    /// Builds a skeleton with canonical slots: every edge, in order, takes the
    /// lowest free slot at both endpoints.
    pub fn new(
        vertex_count: usize,
        edges: Vec<(usize, usize)>,
        faces: Vec<Vec<usize>>,
    ) -> Result<Skeleton, AssemblyError> {
        let mut next_slot = vec![0u8; vertex_count];
        let mut slots = Vec::with_capacity(edges.len());
        for &(a, b) in &edges {
            if a >= vertex_count || b >= vertex_count {
                return Err(AssemblyError::BadSkeleton(format!(
                    "edge ({}, {}) out of range",
                    a, b
                )));
            }
            slots.push((next_slot[a], next_slot[b]));
            next_slot[a] = next_slot[a].saturating_add(1);
            next_slot[b] = next_slot[b].saturating_add(1);
        }
        Skeleton::with_slots(vertex_count, edges, slots, faces)
    }

    pub fn with_slots(
        vertex_count: usize,
        edges: Vec<(usize, usize)>,
        slots: Vec<(u8, u8)>,
        faces: Vec<Vec<usize>>,
    ) -> Result<Skeleton, AssemblyError> {
        let sk = Skeleton {
            vertex_count,
            edges,
            slots,
            faces,
            joints: None,
        };
        sk.validate()?;
        Ok(sk)
    }

    fn with_joints(mut self, joints: Joints) -> Self {
        self.joints = Some(joints);
        self
    }

    pub fn validate(&self) -> Result<(), AssemblyError> {
        if self.slots.len() != self.edges.len() {
            return Err(AssemblyError::BadSkeleton(
                "one slot pair per edge required".into(),
            ));
        }
        let mut seen = BTreeSet::new();
        let mut taken: Vec<[bool; 4]> = vec![[false; 4]; self.vertex_count];
        for (&(a, b), &(sa, sb)) in self.edges.iter().zip(&self.slots) {
            if a >= self.vertex_count || b >= self.vertex_count || a == b {
                return Err(AssemblyError::BadSkeleton(format!(
                    "bad edge ({}, {})",
                    a, b
                )));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(AssemblyError::BadSkeleton(format!(
                    "parallel edge ({}, {})",
                    a, b
                )));
            }
            for (v, s) in [(a, sa), (b, sb)] {
                if s >= 4 {
                    let deg = self.degrees()[v];
                    if deg > 4 {
                        return Err(AssemblyError::DegreeTooHigh(v, deg));
                    }
                    return Err(AssemblyError::SlotConflict(v, s));
                }
                if taken[v][s as usize] {
                    return Err(AssemblyError::SlotConflict(v, s));
                }
                taken[v][s as usize] = true;
            }
        }
        for face in &self.faces {
            let k = face.len();
            let ok = k == 5
                && face.iter().collect::<BTreeSet<_>>().len() == 5
                && (0..k).all(|i| {
                    let (a, b) = (face[i], face[(i + 1) % k]);
                    seen.contains(&(a.min(b), a.max(b)))
                });
            if !ok {
                return Err(AssemblyError::BadSkeleton(format!(
                    "face {:?} is not a 5-cycle",
                    face
                )));
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn slots(&self) -> &[(u8, u8)] {
        &self.slots
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn joints(&self) -> Option<Joints> {
        self.joints
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// Ports left open after assembly: `4n - 2E`.
    pub fn free_ports(&self) -> usize {
        self.degrees().iter().map(|d| 4 - d.min(&4)).sum()
    }
}

/// Assembles with the canonical twist 0 on every fusion.
pub fn assemble(skeleton: &Skeleton) -> Result<CombMap, AssemblyError> {
    assemble_with_twists(skeleton, &vec![0; skeleton.edge_count()])
}

pub fn assemble_with_twists(skeleton: &Skeleton, twists: &[u8]) -> Result<CombMap, AssemblyError> {
    skeleton.validate()?;
    if twists.len() != skeleton.edge_count() {
        return Err(AssemblyError::BadSkeleton(
            "one twist per edge required".into(),
        ));
    }
    let monomer = build_monomer();
    let mut union = CombMap::from_rotation(Vec::new(), Vec::new())?;
    // built by doubling to keep the union cost near-linear
    let mut block = monomer.map.clone();
    let mut remaining = skeleton.vertex_count();
    while remaining > 0 {
        if remaining & 1 == 1 {
            union = disjoint_union(&union, &block);
        }
        remaining >>= 1;
        if remaining > 0 {
            block = disjoint_union(&block, &block);
        }
    }
    let pairs: Vec<(usize, usize, u8)> = skeleton
        .edges
        .iter()
        .zip(&skeleton.slots)
        .zip(twists)
        .map(|((&(a, b), &(sa, sb)), &t)| (4 * a + sa as usize, 4 * b + sb as usize, t))
        .collect();
    fuse_ports(&union, &pairs)
}

/// Super-ring closures of the canonical dendrimer `M(m)`.
pub fn dendrimer_closures(m: usize) -> usize {
    m.saturating_sub(11)
}

/// Dendrimer growth around a central monomer.
///
/// Positions: 0 is the core, 1..=4 the first generation. Every pair of
/// first-generation units `(i, j)` later receives one child on each side;
/// the six `i`-side children come first (no ring can close yet), then each
/// `j`-side child closes the pentagonal super-cycle `0, i, ci, cj, j`.
pub fn skeleton_dendrimer(m: usize) -> Result<Skeleton, AssemblyError> {
    if !(1..=17).contains(&m) {
        return Err(AssemblyError::OutOfRange(format!(
            "dendrimer size m={} outside 1..=17",
            m
        )));
    }
    let pairs = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
    let mut edges = Vec::new();
    let mut faces = Vec::new();
    let mut child_of_pair = [0usize; 6];
    for pos in 1..m {
        match pos {
            1..=4 => edges.push((0, pos)),
            5..=10 => {
                let k = pos - 5;
                edges.push((pairs[k].0, pos));
                child_of_pair[k] = pos;
            }
            _ => {
                let k = pos - 11;
                let (i, j) = pairs[k];
                edges.push((j, pos));
                edges.push((child_of_pair[k], pos));
                faces.push(vec![0, i, child_of_pair[k], pos, j]);
            }
        }
    }
    Skeleton::new(m, edges, faces)
}

fn dodecahedron_skeleton_parts() -> (Vec<(usize, usize)>, Vec<Vec<usize>>) {
    let d = seed_dodecahedron();
    let edges = d
        .edges()
        .into_iter()
        .map(|(a, b)| (a as usize, b as usize))
        .collect();
    let faces = layered::faces()
        .into_iter()
        .map(|f| f.into_iter().map(|v| v as usize).collect())
        .collect();
    (edges, faces)
}

/// The spherical unit: a monomer at every vertex of the dodecahedron.
pub fn skeleton_u1() -> Skeleton {
    let (edges, faces) = dodecahedron_skeleton_parts();
    Skeleton::new(20, edges, faces)
        .expect("dodecahedron skeleton")
        .with_joints(Joints {
            cells: 1,
            double: 0,
            triple: 0,
        })
}

/// Builds a union of dodecahedral cells. `cell_vertex(c, layered_id)` gives the
/// global position of a layered-dodecahedron vertex in cell `c`.
fn glue_cells(
    vertex_count: usize,
    cells: usize,
    cell_vertex: impl Fn(usize, u32) -> usize,
) -> (Vec<(usize, usize)>, Vec<Vec<usize>>) {
    let (cell_edges, _) = dodecahedron_skeleton_parts();
    let cell_faces = layered::faces();
    let mut edges = BTreeSet::new();
    let mut faces = Vec::new();
    let mut face_keys = BTreeSet::new();
    for c in 0..cells {
        for &(a, b) in &cell_edges {
            let (x, y) = (cell_vertex(c, a as u32), cell_vertex(c, b as u32));
            debug_assert!(x < vertex_count && y < vertex_count);
            edges.insert((x.min(y), x.max(y)));
        }
        for f in &cell_faces {
            let mapped: Vec<usize> = f.iter().map(|&v| cell_vertex(c, v)).collect();
            let mut key = mapped.clone();
            key.sort_unstable();
            if face_keys.insert(key) {
                faces.push(mapped);
            }
        }
    }
    (edges.into_iter().collect(), faces)
}

/// `u` dodecahedral cells in a row, consecutive cells sharing opposite faces.
pub fn skeleton_chain(u: usize) -> Result<Skeleton, AssemblyError> {
    if u == 0 {
        return Err(AssemblyError::OutOfRange(
            "linear array needs u >= 1".into(),
        ));
    }
    let n = 15 * u + 5;
    // cell c owns lower/upper/top layers at 5 + 15c ..; its bottom is the previous top
    let vertex = |c: usize, v: u32| -> usize {
        let v = v as usize;
        if v < 5 {
            if c == 0 {
                v
            } else {
                5 + 15 * (c - 1) + 10 + v
            }
        } else {
            5 + 15 * c + (v - 5)
        }
    };
    let (edges, faces) = glue_cells(n, u, vertex);
    Ok(Skeleton::new(n, edges, faces)?.with_joints(Joints {
        cells: u,
        double: u - 1,
        triple: 0,
    }))
}

/// `u` dodecahedral cells closed into a ring.
pub fn skeleton_cycle(u: usize) -> Result<Skeleton, AssemblyError> {
    if u < 6 {
        return Err(AssemblyError::OutOfRange(format!(
            "cyclic array needs u >= 6, got {}",
            u
        )));
    }
    let n = 15 * u;
    let vertex = |c: usize, v: u32| -> usize {
        let v = v as usize;
        if v < 5 {
            15 * ((c + u - 1) % u) + 10 + v
        } else {
            15 * c + (v - 5)
        }
    };
    let (edges, faces) = glue_cells(n, u, vertex);
    Ok(Skeleton::new(n, edges, faces)?.with_joints(Joints {
        cells: u,
        double: u,
        triple: 0,
    }))
}

/// Twelve dodecahedral cells on the faces of a virtual central dodecahedron.
///
/// Positions: the 20 central vertices, one outward neighbour per central
/// vertex (20), one vertex per central edge shared by the two cells over it
/// (30), and the private top face of each cell (60).
pub fn skeleton_12d() -> Result<Skeleton, AssemblyError> {
    let core = seed_dodecahedron();
    let core_faces = core.trace_faces();
    let core_edges = core.edges();
    let edge_pos: HashMap<(u32, u32), usize> = core_edges
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, 40 + i))
        .collect();
    let n = 20 + 20 + core_edges.len() + 5 * core_faces.len();
    if core_faces.len() != 12 || core_faces.iter().any(|f| f.len() != 5) {
        return Err(AssemblyError::BadSkeleton(
            "central cell is not a dodecahedron".into(),
        ));
    }
    let vertex = |c: usize, v: u32| -> usize {
        let face = &core_faces[c];
        let k = (v % 5) as usize;
        let a = face[k];
        let b = face[(k + 1) % 5];
        match v / 5 {
            0 => a as usize,
            1 => 20 + a as usize,
            2 => edge_pos[&(a.min(b), a.max(b))],
            _ => 70 + 5 * c + k,
        }
    };
    let (edges, faces) = glue_cells(n, 12, vertex);
    let sk = Skeleton::new(n, edges, faces)?;
    if sk.vertex_count() != 130 || sk.edge_count() != 230 || sk.faces().len() != 114 {
        return Err(AssemblyError::BadSkeleton(format!(
            "12D identification produced {} positions, {} edges, {} faces",
            sk.vertex_count(),
            sk.edge_count(),
            sk.faces().len()
        )));
    }
    Ok(sk.with_joints(Joints {
        cells: 12,
        double: 30,
        triple: 20,
    }))
}

/// Named structure families with their net parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructureParams {
    /// Dendrimer of `m` monomers with `r` super-ring closures.
    Dendrimer { m: usize, r: usize },
    /// Linear array of `u` spherical units.
    ULinear { u: usize },
    /// Cyclic array of `u` spherical units.
    UCyclic { u: usize },
    /// Twelve spherical units around a central hollow.
    MT12U,
}

impl StructureParams {
    pub fn dendrimer(m: usize) -> Self {
        StructureParams::Dendrimer {
            m,
            r: dendrimer_closures(m),
        }
    }

    pub fn validate(&self) -> Result<(), AssemblyError> {
        match *self {
            StructureParams::Dendrimer { m, r } => {
                if !(1..=17).contains(&m) {
                    return Err(AssemblyError::OutOfRange(format!(
                        "M(m,r) needs 1 <= m <= 17, got m={}",
                        m
                    )));
                }
                if r != dendrimer_closures(m) {
                    return Err(AssemblyError::OutOfRange(format!(
                        "M({},{}): the growth sequence closes r={} rings at m={}",
                        m,
                        r,
                        dendrimer_closures(m),
                        m
                    )));
                }
            }
            StructureParams::ULinear { u } if u < 1 => {
                return Err(AssemblyError::OutOfRange("Ulin(u) needs u >= 1".into()))
            }
            StructureParams::UCyclic { u } if u < 6 => {
                return Err(AssemblyError::OutOfRange(format!(
                    "Ucyc(u) needs u >= 6, got {}",
                    u
                )))
            }
            _ => {}
        }
        Ok(())
    }

    pub fn skeleton(&self) -> Result<Skeleton, AssemblyError> {
        self.validate()?;
        match *self {
            StructureParams::Dendrimer { m, .. } => skeleton_dendrimer(m),
            StructureParams::ULinear { u } => skeleton_chain(u),
            StructureParams::UCyclic { u } => skeleton_cycle(u),
            StructureParams::MT12U => skeleton_12d(),
        }
    }

    pub fn assemble(&self) -> Result<CombMap, AssemblyError> {
        assemble(&self.skeleton()?)
    }
}

impl fmt::Display for StructureParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureParams::Dendrimer { m, r } => write!(f, "M({},{})", m, r),
            StructureParams::ULinear { u } => write!(f, "Ulin({})", u),
            StructureParams::UCyclic { u } => write!(f, "Ucyc({})", u),
            StructureParams::MT12U => write!(f, "MT12U"),
        }
    }
}

/// Counts predicted from the net parameters without building anything.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PredictedCounts {
    pub tt: usize,
    pub fusions: usize,
    pub v: usize,
    pub e: usize,
    pub f5: usize,
    pub ports: usize,
    pub genus_pentagonal: i64,
}

/// `tt = 20u - (5d - 2t)` for cell arrays, `tt = m` for dendrimers; every
/// fusion removes 3 vertices and 3 edges from `tt` free monomers.
pub fn predict_counts(params: &StructureParams) -> Result<PredictedCounts, AssemblyError> {
    params.validate()?;
    let (tt, fusions) = match *params {
        StructureParams::Dendrimer { m, r } => (m, m - 1 + r),
        StructureParams::ULinear { u } => (20 * u - 5 * (u - 1), 30 * u - 5 * (u - 1)),
        StructureParams::UCyclic { u } => (20 * u - 5 * u, 30 * u - 5 * u),
        StructureParams::MT12U => {
            let (u, d, t) = (12, 30, 20);
            // each triple joint shares one edge, each double joint a pentagon
            (20 * u - (5 * d - 2 * t), 30 * u - (5 * d - t))
        }
    };
    let v = 22 * tt - 3 * fusions;
    let e = 36 * tt - 3 * fusions;
    let f5 = 12 * tt;
    let genus_pentagonal = 1 - (v as i64 - e as i64 + f5 as i64) / 2;
    Ok(PredictedCounts {
        tt,
        fusions,
        v,
        e,
        f5,
        ports: 4 * tt - 2 * fusions,
        genus_pentagonal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(map: &CombMap) -> (usize, usize, usize) {
        let s = map.summary();
        (s.v, s.e, s.f5)
    }

    #[test]
    fn fuse_two_monomers() {
        let m = build_monomer();
        for twist in 0..3 {
            let d = fuse(&m.map, 0, &m.map, 2, twist).unwrap();
            assert_eq!(counts(&d), (41, 69, 24));
            assert_eq!(d.ports().len(), 6);
        }
    }

    #[test]
    fn fuse_errors() {
        let m = build_monomer();
        assert_eq!(
            fuse(&m.map, 0, &m.map, 7, 0).unwrap_err(),
            AssemblyError::UnknownPort(11)
        );
        assert_eq!(
            fuse(&m.map, 0, &m.map, 1, 3).unwrap_err(),
            AssemblyError::BadTwist(3)
        );
        let u = disjoint_union(&m.map, &m.map);
        assert_eq!(
            fuse_ports(&u, &[(0, 4, 0), (4, 5, 0)]).unwrap_err(),
            AssemblyError::PortAlreadyFused(4)
        );
        let tet =
            crate::mapops::open_faces(&crate::polymap::seed_cube(), &[vec![0, 3, 2, 1]]).unwrap();
        let uu = disjoint_union(&tet, &tet);
        assert_eq!(
            fuse_ports(&uu, &[(0, 1, 0)]).unwrap_err(),
            AssemblyError::NonTriangularPort(0)
        );
    }

    #[test]
    fn star_of_five() {
        let sk = skeleton_dendrimer(5).unwrap();
        assert_eq!((sk.vertex_count(), sk.edge_count()), (5, 4));
        let map = assemble(&sk).unwrap();
        assert_eq!(map.vertex_count(), 98);
    }

    #[test]
    fn dendrimer_counts_follow_growth() {
        for m in 1..=17 {
            let sk = skeleton_dendrimer(m).unwrap();
            assert_eq!(sk.edge_count(), m - 1 + dendrimer_closures(m));
            assert!(sk.degrees().iter().all(|&d| d <= 4));
            let v = assemble(&sk).unwrap().vertex_count();
            let table = if m <= 11 { 19 * m + 3 } else { 16 * m + 36 };
            assert_eq!(v, table, "m={}", m);
        }
        assert!(skeleton_dendrimer(0).is_err());
        assert!(skeleton_dendrimer(18).is_err());
    }

    #[test]
    fn cell_arrays() {
        let u1 = skeleton_u1();
        assert_eq!(
            (u1.vertex_count(), u1.edge_count(), u1.faces().len()),
            (20, 30, 12)
        );
        let c1 = skeleton_chain(1).unwrap();
        assert_eq!((c1.vertex_count(), c1.edge_count()), (20, 30));
        for u in 1..=5 {
            let c = skeleton_chain(u).unwrap();
            assert_eq!((c.vertex_count(), c.edge_count()), (15 * u + 5, 25 * u + 5));
            assert_eq!(c.faces().len(), 11 * u + 1);
            assert!(c.degrees().iter().all(|&d| d <= 4));
        }
        for u in 6..=8 {
            let c = skeleton_cycle(u).unwrap();
            assert_eq!((c.vertex_count(), c.edge_count()), (15 * u, 25 * u));
            assert_eq!(c.faces().len(), 11 * u);
        }
        assert!(skeleton_cycle(5).is_err());
        assert!(skeleton_chain(0).is_err());
    }

    #[test]
    fn twelve_cell_array() {
        let sk = skeleton_12d().unwrap();
        assert_eq!(
            (sk.vertex_count(), sk.edge_count(), sk.faces().len()),
            (130, 230, 114)
        );
        let deg = sk.degrees();
        assert!(deg.iter().all(|&d| d <= 4));
        assert_eq!(deg.iter().sum::<usize>(), 460);
        assert_eq!(sk.free_ports(), 60);
    }

    #[test]
    fn skeleton_validation() {
        assert!(matches!(
            Skeleton::new(6, vec![(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)], vec![]),
            Err(AssemblyError::DegreeTooHigh(0, 5))
        ));
        assert!(matches!(
            Skeleton::with_slots(2, vec![(0, 1)], vec![(0, 4)], vec![]),
            Err(AssemblyError::SlotConflict(1, 4))
        ));
        assert!(matches!(
            Skeleton::with_slots(3, vec![(0, 1), (0, 2)], vec![(1, 0), (1, 0)], vec![]),
            Err(AssemblyError::SlotConflict(0, 1))
        ));
        assert!(Skeleton::new(3, vec![(0, 1), (1, 2), (0, 2)], vec![vec![0, 1, 2]]).is_err());
    }

    #[test]
    fn predicted_counts() {
        let mt = predict_counts(&StructureParams::MT12U).unwrap();
        assert_eq!(
            (mt.tt, mt.v, mt.e, mt.f5, mt.genus_pentagonal),
            (130, 2170, 3990, 1560, 131)
        );
        assert_eq!(
            predict_counts(&StructureParams::Dendrimer { m: 15, r: 4 })
                .unwrap()
                .v,
            276
        );
        assert_eq!(
            predict_counts(&StructureParams::UCyclic { u: 6 })
                .unwrap()
                .v,
            1530
        );
        assert_eq!(
            predict_counts(&StructureParams::ULinear { u: 4 })
                .unwrap()
                .v,
            1115
        );
        assert!(predict_counts(&StructureParams::Dendrimer { m: 5, r: 1 }).is_err());
    }
}
