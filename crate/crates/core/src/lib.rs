//! Exact enumeration and Monte Carlo tools for self-avoiding walks, bond
//! percolation and the random-cluster model on planar lattices.
//!
//! Numerical code is generic over [`Scalar`]; the aliases below fix the two
//! instantiations used in practice.

pub mod error;
pub mod geometry;
pub mod lattice;
pub mod percolation;
pub mod rc;
pub mod report;
pub mod rng;
pub mod scalar;
pub mod saw;

pub use error::{Error, ErrorKind, Result};
pub use report::ExperimentReport;
pub use scalar::{Rational, Scalar};

pub type EdgeTripleF64 = percolation::EdgeTriple<f64>;
pub type EdgeTripleQ = percolation::EdgeTriple<Rational>;
pub type StarTriangleLawQ = percolation::StarTriangleLaw<Rational>;
pub type CouplingCheckQ = percolation::CouplingCheck<Rational>;
pub type RcParamsF64 = rc::RcParams<f64>;
pub type RcParamsQ = rc::RcParams<Rational>;
pub type ExactDistributionF64 = rc::ExactDistribution<f64>;
pub type ExactDistributionQ = rc::ExactDistribution<Rational>;
pub type ObservableReportF64 = saw::ObservableReport<f64>;
pub type BoundarySumsF64 = saw::BoundarySums<f64>;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
