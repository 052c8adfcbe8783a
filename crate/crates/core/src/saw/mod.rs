//! Self-avoiding walks: exact counts, the parafermionic observable on
//! `M_{h,v}`, bridge decompositions and the related bounds.

mod bounds;
mod bridge;
mod count;
mod observable;
mod path;

pub use bounds::{fisher_lattice_constant, hammersley_welsh_bound, hexagonal_connective_constant};
pub use bridge::{bridge_decompose, reconstruct, BridgeDecomposition, Height};
pub use count::{
    check_saw_room, check_submultiplicativity, count_saws, count_saws_parallel, estimate_connective_constant,
    ConnectiveEstimate, DEFAULT_BUDGET,
};
pub use observable::{
    boundary_sums, chi, critical_sigma, enumerate_region_walks, observable_from_counts, parafermionic_observable,
    verify_vertex_identity, BoundarySums, ObservableReport, WalkCounts,
};
pub use path::{turning_angle, SawPath};

#[cfg(test)]
mod tests;
