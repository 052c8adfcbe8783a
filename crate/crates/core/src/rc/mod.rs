//! The random-cluster model: exact measures, duality, heat-bath sampling and
//! crossing experiments.

mod exact;
mod experiments;
mod model;
mod sampler;

pub use exact::{exact_distribution, holley_ordering_check, verify_duality_exact, ExactDistribution, MAX_EXACT_EDGES};
pub use model::{
    dual_parameter, finer_than, rc_weight, self_dual_point, BoundaryCondition, Identification, RcConfig, RcParams,
};
pub use sampler::{conditional_open_probability, heat_bath_step, sample_rc, HeatBath, RcSample, ScanOrder, DEFAULT_BURN_IN};
pub use experiments::{
    annulus_event_estimate, annulus_rectangles, estimate_crossing_at_sd, lifted_crosses, run_chains, theta_proxy,
    torus_crossing, AnnulusEvent, ChainOptions, ChainStat,
};
