//! All-pentagonal multi-tori built from a tetrapodal monomer, and their
//! topological invariants.
//!
//! The monomer comes from a short sequence of map operations on the
//! tetrahedron ([`mapops`]); larger structures substitute a monomer at every
//! position of a skeleton graph and fuse port triangles along its edges
//! ([`assembly`]). [`ringbasis`] and [`omega`] compute the Omega polynomial,
//! CI index and codistance cuts of the resulting graphs, and [`closedform`]
//! evaluates the net-parameter formulas they are checked against.

pub mod assembly;
pub mod closedform;
pub mod graph;
pub mod mapops;
pub mod omega;
pub mod polymap;
pub mod ringbasis;

pub use assembly::{assemble, Monomer, Skeleton, StructureParams};
pub use graph::{Graph, VertexId};
pub use mapops::build_monomer;
pub use omega::{ci, omega, OmegaPolynomial};
pub use polymap::{CombMap, CountSummary};
pub use ringbasis::{chordless_cycles, Ring, RingBasis};
