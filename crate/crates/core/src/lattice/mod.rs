//! Finite embedded lattice patches and their transformations.

mod builders;
mod dual;
mod json;
mod mixed;
mod patch;
mod region;
mod torus;

pub use builders::{
    build_lattice_patch, build_lattice_patch_capped, infinite_neighbors, lattice_ball, lattice_origin, square_box,
    square_rect,
};
pub use dual::{dual_patch, is_isomorphism, rotation_system, trace_faces, DualMap};
pub use json::{EdgeRecord, GraphFile, VertexRecord};
pub use mixed::{
    build_mixed_lattice, HORIZONTAL as MIXED_HORIZONTAL, LEFT as MIXED_LEFT, RIGHT as MIXED_RIGHT,
    VERTICAL as MIXED_VERTICAL, Layer, MixedLattice, Row, StarPlan, StepDirection, StepPlan, SwapPlan};
pub use patch::{Edge, EdgeClass, EdgeId, Family, LatticePatch, PatchBuilder, VertexId, DEFAULT_MAX_VERTICES};
pub use region::{build_region, MidClass, MidpointId, Region};
pub use torus::{build_torus, LiftedRect, TorusPatch};

#[allow(unused_imports)]
pub(crate) use builders::{hex_class, hex_directions, is_hex_vertex};

#[cfg(test)]
mod tests;
