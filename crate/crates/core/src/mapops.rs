//! Map operations building the tetrapodal monomer: P4 quadrangulation,
//! selective truncation and face opening.

use std::collections::HashMap;

use thiserror::Error;

use crate::assembly::Monomer;
use crate::graph::VertexId;
use crate::polymap::{seed_tetrahedron, CombMap, MapError, Walk};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapOpError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("P4 needs a closed map, found {0} open ports")]
    OpenMap(usize),
    #[error("selected vertices {0} and {1} are adjacent")]
    AdjacentSelection(VertexId, VertexId),
    #[error("selected vertex {0} does not exist")]
    UnknownVertex(VertexId),
    #[error("walk {0:?} is not an open face of the map")]
    NotAFace(Walk),
}

/// Where a vertex of a quadrangulated map came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    OriginalVertex,
    EdgeMidpoint,
    FaceCenter,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSelection {
    pub vertices: Vec<VertexId>,
    pub provenance: Provenance,
}

impl VertexSelection {
    pub fn empty() -> Self {
        VertexSelection {
            vertices: Vec::new(),
            provenance: Provenance::OriginalVertex,
        }
    }
}

/// Output of [`p4_quadrangulate`]: the new map plus a provenance tag per vertex.
#[derive(Debug, Clone)]
pub struct Quadrangulation {
    pub map: CombMap,
    pub provenance: Vec<Provenance>,
}

impl Quadrangulation {
    pub fn select(&self, kind: Provenance) -> VertexSelection {
        let vertices = self
            .provenance
            .iter()
            .enumerate()
            .filter(|(_, &p)| p == kind)
            .map(|(v, _)| v as VertexId)
            .collect();
        VertexSelection {
            vertices,
            provenance: kind,
        }
    }
}

/// Inserts a midpoint on every edge and a center in every face, joining each
/// center to the midpoints around its face.
///
/// Vertex numbering: originals keep their ids, midpoints follow in sorted
/// edge order, then centers in face-tracing order.
pub fn p4_quadrangulate(map: &CombMap) -> Result<Quadrangulation, MapOpError> {
    if !map.is_closed() {
        return Err(MapOpError::OpenMap(map.ports().len()));
    }
    let v = map.vertex_count();
    let edges = map.edges();
    let faces = map.trace_faces();
    let mid: HashMap<(VertexId, VertexId), VertexId> = edges
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, (v + i) as VertexId))
        .collect();
    let midpoint = |a: VertexId, b: VertexId| mid[&(a.min(b), a.max(b))];

    let mut quads = Vec::with_capacity(4 * edges.len());
    for (fi, face) in faces.iter().enumerate() {
        let center = (v + edges.len() + fi) as VertexId;
        let k = face.len();
        for i in 0..k {
            let prev = face[(i + k - 1) % k];
            let cur = face[i];
            let next = face[(i + 1) % k];
            quads.push(vec![cur, midpoint(cur, next), center, midpoint(prev, cur)]);
        }
    }
    let total = v + edges.len() + faces.len();
    let new_map = CombMap::from_faces(total, &quads)?;
    let mut provenance = vec![Provenance::OriginalVertex; v];
    provenance.extend(std::iter::repeat_n(Provenance::EdgeMidpoint, edges.len()));
    provenance.extend(std::iter::repeat_n(Provenance::FaceCenter, faces.len()));
    Ok(Quadrangulation {
        map: new_map,
        provenance,
    })
}

/// Output of [`truncate_vertices`]: the new map and the cap face created for
/// each selected vertex, in selection order.
#[derive(Debug, Clone)]
pub struct Truncation {
    pub map: CombMap,
    pub caps: Vec<Walk>,
}

/// Cuts off every selected vertex, replacing a vertex of degree d with a
/// d-gon of new vertices, one per incident edge.
///
/// Unselected vertices keep their relative order; the new vertices follow,
/// grouped by selected vertex (ascending) and ordered by its rotation.
pub fn truncate_vertices(map: &CombMap, sel: &VertexSelection) -> Result<Truncation, MapOpError> {
    let n = map.vertex_count();
    let mut selected = sel.vertices.clone();
    selected.sort_unstable();
    selected.dedup();
    let mut is_selected = vec![false; n];
    for &s in &selected {
        if s as usize >= n {
            return Err(MapOpError::UnknownVertex(s));
        }
        is_selected[s as usize] = true;
    }
    for &s in &selected {
        if let Some(&w) = map.rotation(s).iter().find(|&&w| is_selected[w as usize]) {
            return Err(MapOpError::AdjacentSelection(s.min(w), s.max(w)));
        }
    }
    if selected.is_empty() {
        return Ok(Truncation {
            map: map.clone(),
            caps: Vec::new(),
        });
    }

    let mut relabel = vec![VertexId::MAX; n];
    let mut next = 0 as VertexId;
    for v in 0..n {
        if !is_selected[v] {
            relabel[v] = next;
            next += 1;
        }
    }
    // corner vertex replacing `s` on the edge towards `w`
    let mut corner: HashMap<(VertexId, VertexId), VertexId> = HashMap::new();
    let mut caps = Vec::with_capacity(selected.len());
    for &s in &selected {
        let rot = map.rotation(s);
        for &w in rot {
            corner.insert((s, w), next);
            next += 1;
        }
        caps.push(rot.iter().rev().map(|&w| corner[&(s, w)]).collect::<Walk>());
    }

    let rewrite = |walk: &Walk| -> Walk {
        let k = walk.len();
        let mut out = Vec::with_capacity(k + 1);
        for i in 0..k {
            let x = walk[i];
            if is_selected[x as usize] {
                let prev = walk[(i + k - 1) % k];
                let succ = walk[(i + 1) % k];
                out.push(corner[&(x, prev)]);
                out.push(corner[&(x, succ)]);
            } else {
                out.push(relabel[x as usize]);
            }
        }
        out
    };

    let port_darts: std::collections::HashSet<_> = map
        .ports()
        .iter()
        .flat_map(|p| crate::polymap::walk_darts(p))
        .collect();
    let mut faces = Vec::new();
    for walk in map.trace_all() {
        if !port_darts.contains(&(walk[0], walk[1])) {
            faces.push(rewrite(&walk));
        }
    }
    let ports: Vec<Walk> = map.ports().iter().map(rewrite).collect();
    faces.extend(ports.iter().cloned());
    faces.extend(caps.iter().cloned());
    let new_map = CombMap::from_faces(next as usize, &faces)?.with_ports(ports)?;
    Ok(Truncation { map: new_map, caps })
}

/// Marks the given faces as open ports. Vertices and edges are untouched.
pub fn open_faces(map: &CombMap, faces: &[Walk]) -> Result<CombMap, MapOpError> {
    let existing: Vec<Walk> = map.ports().to_vec();
    for f in faces {
        if !map.is_traced_walk(f)
            || existing
                .iter()
                .chain(faces.iter())
                .filter(|p| same_cycle(p, f))
                .count()
                != 1
        {
            return Err(MapOpError::NotAFace(f.clone()));
        }
    }
    let mut ports = existing;
    ports.extend(faces.iter().cloned());
    Ok(map.clone().with_ports(ports)?)
}

fn same_cycle(a: &[VertexId], b: &[VertexId]) -> bool {
    a.len() == b.len() && (0..a.len()).any(|r| (0..a.len()).all(|i| a[(i + r) % a.len()] == b[i]))
}

/// The tetrapodal unit: open the four cap triangles of the center-truncated P4(T).
pub fn build_monomer() -> Monomer {
    monomer_from_truncation_of(Provenance::FaceCenter)
}

/// Monomer variant obtained by truncating another vertex class of P4(T).
pub fn monomer_from_truncation_of(kind: Provenance) -> Monomer {
    let quad = p4_quadrangulate(&seed_tetrahedron()).expect("tetrahedron is closed");
    let trunc = truncate_vertices(&quad.map, &quad.select(kind)).expect("selection is independent");
    let map = open_faces(&trunc.map, &trunc.caps).expect("caps are faces");
    Monomer::new(map).expect("truncated P4(T) has four triangular ports")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymap::{euler_genus_closed, seed_cube, seed_dodecahedron};
    use std::collections::BTreeMap;

    fn vef(map: &CombMap) -> (usize, usize, usize) {
        let s = map.summary();
        (s.v, s.e, s.f_all)
    }

    #[test]
    fn p4_counts() {
        let t = p4_quadrangulate(&seed_tetrahedron()).unwrap();
        assert_eq!(vef(&t.map), (14, 24, 12));
        assert!(t.map.trace_faces().iter().all(|f| f.len() == 4));
        assert_eq!(
            vef(&p4_quadrangulate(&seed_dodecahedron()).unwrap().map),
            (62, 120, 60)
        );
        assert_eq!(
            vef(&p4_quadrangulate(&seed_cube()).unwrap().map),
            (26, 48, 24)
        );
    }

    #[test]
    fn p4_quads_follow_pattern() {
        let q = p4_quadrangulate(&seed_dodecahedron()).unwrap();
        use Provenance::*;
        for face in q.map.trace_faces() {
            let mut kinds: Vec<_> = face.iter().map(|&v| q.provenance[v as usize]).collect();
            let start = kinds.iter().position(|&k| k == OriginalVertex).unwrap();
            kinds.rotate_left(start);
            assert_eq!(
                kinds,
                vec![OriginalVertex, EdgeMidpoint, FaceCenter, EdgeMidpoint]
            );
        }
        assert_eq!(euler_genus_closed(&q.map), Ok(0));
    }

    #[test]
    fn p4_rejects_open_maps() {
        let m = build_monomer();
        assert_eq!(
            p4_quadrangulate(&m.map).unwrap_err(),
            MapOpError::OpenMap(4)
        );
    }

    #[test]
    fn truncation_counts() {
        let q = p4_quadrangulate(&seed_tetrahedron()).unwrap();
        let t = truncate_vertices(&q.map, &q.select(Provenance::FaceCenter)).unwrap();
        assert_eq!(vef(&t.map), (22, 36, 16));
        let mut sizes: Vec<_> = t.map.trace_faces().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, [vec![3; 4], vec![5; 12]].concat());

        let tet = seed_tetrahedron();
        let one = VertexSelection {
            vertices: vec![2],
            provenance: Provenance::OriginalVertex,
        };
        let t1 = truncate_vertices(&tet, &one).unwrap();
        assert_eq!(vef(&t1.map), (6, 9, 5));
        assert_eq!(euler_genus_closed(&t1.map), Ok(0));

        let id = truncate_vertices(&tet, &VertexSelection::empty()).unwrap();
        assert_eq!(id.map, tet);
    }

    #[test]
    fn truncation_rejects_adjacent_selection() {
        let sel = VertexSelection {
            vertices: vec![0, 1],
            provenance: Provenance::OriginalVertex,
        };
        assert_eq!(
            truncate_vertices(&seed_tetrahedron(), &sel).unwrap_err(),
            MapOpError::AdjacentSelection(0, 1)
        );
        let bad = VertexSelection {
            vertices: vec![9],
            provenance: Provenance::OriginalVertex,
        };
        assert_eq!(
            truncate_vertices(&seed_tetrahedron(), &bad).unwrap_err(),
            MapOpError::UnknownVertex(9)
        );
    }

    #[test]
    fn open_faces_behaviour() {
        let tet = seed_tetrahedron();
        assert_eq!(open_faces(&tet, &[]).unwrap(), tet);
        let err = open_faces(&tet, &[vec![0, 2, 1]]).unwrap_err();
        assert!(matches!(err, MapOpError::NotAFace(_)));
        let opened = open_faces(&tet, &[vec![1, 2, 0]]).unwrap();
        assert_eq!(opened.summary().f_all, 3);
        assert_eq!(opened.summary().ports, 1);
        // opening the same face twice is rejected
        assert!(open_faces(&opened, &[vec![0, 1, 2]]).is_err());
    }

    #[test]
    fn monomer_counts() {
        let m = build_monomer();
        let s = m.map.summary();
        assert_eq!((s.v, s.e, s.f5, s.ports), (22, 36, 12, 4));
        assert_eq!(s.genus_pentagonal, Some(2));
        assert_eq!(euler_genus_closed(&m.map), Ok(0));
        assert_eq!(m.map.degree_histogram(), BTreeMap::from([(3, 16), (4, 6)]));
    }

    #[test]
    fn monomer_pentagon_pattern() {
        // original vertices 0..4, midpoints 4..10 keep their P4 ids; port vertices are 10..22
        let m = build_monomer();
        let kind = |v: VertexId| match v {
            0..=3 => 'o',
            4..=9 => 'm',
            _ => 'p',
        };
        for face in m.map.trace_faces() {
            let mut pattern: Vec<char> = face.iter().map(|&v| kind(v)).collect();
            let start = pattern.iter().position(|&c| c == 'o').unwrap();
            pattern.rotate_left(start);
            assert_eq!(pattern, vec!['o', 'm', 'p', 'p', 'm']);
        }
    }
}
