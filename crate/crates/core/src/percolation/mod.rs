//! Bond percolation: sampling, clusters, crossings, the star–triangle
//! coupling and its use to move the interface of a mixed lattice.

mod arms;
mod config;
mod crossing;
mod russo;
mod triple;
mod universality;

pub use config::{
    class_probabilities, homogeneous, label_clusters, label_open, sample_config, BondConfig, ClusterLabeling,
    UnionFind,
};
pub use crossing::{
    check_crossing_duality, duality_experiment, estimate_crossing_prob, has_crossing, DualityChecker,
    DualityOutcome, Orientation, Rect, RectIndex,
};
pub use triple::{
    all_triples, critical_surface, map_s_branches, map_t_branches, star_partition, star_triangle_law,
    star_triangle_map_s, star_triangle_map_t, star_weight, triangle_partition, triangle_weight,
    triangular_critical_probability, verify_coupling, Branch, CouplingCheck, EdgeTriple, Partition,
    StarTriangleLaw, Triple,
};
pub use universality::{mixed_class_probs, mixed_lattice_step, universality_transport, MixedStepper, TransportSetup};
pub use russo::{estimate_russo_derivative, pivotal_edges, russo_pivotal_count};
pub use arms::{
    arm_event_occurs, estimate_arm_prob, n0_search, origin_radius, radius_distribution, Annulus, ArmClass, ArmSpec,
    RadiusHistogram,
};
