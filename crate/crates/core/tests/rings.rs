mod common;

use std::collections::{BTreeMap, BTreeSet};

use multitori::assembly::{skeleton_u1, StructureParams};
use multitori::graph::named;
use multitori::ringbasis::ring_size_census;
use multitori::{assemble, build_monomer, chordless_cycles, Graph, RingBasis};

fn as_edge_sets(basis: &RingBasis) -> BTreeSet<Vec<(u32, u32)>> {
    basis
        .rings()
        .iter()
        .map(|r| {
            let mut e: Vec<(u32, u32)> = r.edges().map(|(a, b)| (a.min(b), a.max(b))).collect();
            e.sort_unstable();
            e
        })
        .collect()
}

fn check_against_oracle(g: &Graph, rmax: usize) {
    let basis = chordless_cycles(g, rmax).unwrap();
    let oracle = common::brute_chordless_cycles(g, rmax);
    assert_eq!(basis.len(), oracle.len(), "rmax={}", rmax);
    assert_eq!(as_edge_sets(&basis), oracle, "rmax={}", rmax);
    for r in basis.rings() {
        assert!(r.is_chordless(g));
    }
}

#[test]
fn small_graphs_match_brute_force() {
    for g in [
        named::cube(),
        named::petersen(),
        named::cycle(6),
        named::cycle(5),
    ] {
        for rmax in 3..=10 {
            check_against_oracle(&g, rmax);
        }
    }
}

#[test]
fn monomer_matches_brute_force() {
    let g = build_monomer().map.graph();
    for rmax in 3..=8 {
        check_against_oracle(&g, rmax);
    }
}

#[test]
fn monomer_census() {
    let g = build_monomer().map.graph();
    let r5 = chordless_cycles(&g, 5).unwrap();
    assert_eq!(r5.len(), 16);
    assert_eq!(ring_size_census(&r5), BTreeMap::from([(3, 4), (5, 12)]));
    let r6 = chordless_cycles(&g, 6).unwrap();
    assert_eq!(r6.len(), 20);
    assert_eq!(
        ring_size_census(&r6),
        BTreeMap::from([(3, 4), (5, 12), (6, 4)])
    );
    // the hexagons alternate original vertices (0..4) and midpoints (4..10)
    for ring in r6.rings().iter().filter(|r| r.size() == 6) {
        let originals = ring.vertices().iter().filter(|&&v| v < 4).count();
        let mids = ring
            .vertices()
            .iter()
            .filter(|&&v| (4..10).contains(&v))
            .count();
        assert_eq!((originals, mids), (3, 3));
    }
    assert!(!ring_size_census(&r6).contains_key(&4));
}

#[test]
fn dodecahedron_census() {
    let g = multitori::polymap::seed_dodecahedron().graph();
    assert_eq!(
        ring_size_census(&chordless_cycles(&g, 5).unwrap()),
        BTreeMap::from([(5, 12)])
    );
}

#[test]
fn spherical_unit_census() {
    let map = assemble(&skeleton_u1()).unwrap();
    let g = map.graph();
    for rmax in [5, 6] {
        check_against_oracle(&g, rmax);
    }
    // 30 fused junctions and 20 free ports give the triangles
    let census = ring_size_census(&chordless_cycles(&g, 5).unwrap());
    assert_eq!(census, BTreeMap::from([(3, 50), (5, 240)]));
}

#[test]
fn faces_are_rings() {
    for params in [
        StructureParams::dendrimer(17),
        StructureParams::ULinear { u: 2 },
        StructureParams::UCyclic { u: 6 },
        StructureParams::MT12U,
    ] {
        let map = params.assemble().unwrap();
        let g = map.graph();
        let basis = chordless_cycles(&g, 6).unwrap();
        let rings: BTreeSet<Vec<u32>> = basis
            .rings()
            .iter()
            .map(|r| r.vertices().to_vec())
            .collect();
        for face in map.trace_faces().iter().chain(map.ports()) {
            let ring = multitori::Ring::new(face);
            assert!(ring.is_chordless(&g));
            assert!(
                rings.contains(ring.vertices()),
                "{}: face {:?} missing",
                params,
                face
            );
        }
    }
}

#[test]
fn enumeration_is_deterministic() {
    let g = StructureParams::ULinear { u: 2 }
        .assemble()
        .unwrap()
        .graph();
    let a = chordless_cycles(&g, 8).unwrap();
    let b = chordless_cycles(&g, 8).unwrap();
    assert_eq!(a, b);
    let mut sorted = a.rings().to_vec();
    sorted.sort_by(|x, y| (x.size(), x.vertices()).cmp(&(y.size(), y.vertices())));
    assert_eq!(sorted, a.rings());
}
