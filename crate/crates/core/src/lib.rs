//! Random intersection graphs 𝒢(n,m,p), their Erdős–Rényi couplings, and
//! sharp-threshold experiments for connectivity-type properties.
//!
//! The crate has three layers:
//! * graph machinery: [`graph`], [`gen`], [`props`] — compact graphs,
//!   samplers for G(n,p̂), 𝒢(n,m,p), the uniform model and the auxiliary
//!   multigraph, and exact property checkers;
//! * the coupling construction: [`coupling`] — builds 𝒢(n,m,p) jointly
//!   with a G(n,p̂₋) subgraph, plus the total-variation and Chernoff
//!   machinery quantifying how tight the sandwich is;
//! * experiments: [`thresholds`], [`experiment`] — threshold formulas,
//!   Monte Carlo sweeps in the ω coordinate, and reproducible CSV runs.

pub mod coupling;
pub mod error;
pub mod experiment;
pub mod gen;
pub mod graph;
pub mod props;
pub mod rng;
pub mod thresholds;

pub use error::{Result, RigError};
pub use graph::{DrawSequence, FeatureAssignment, Graph};
pub use rng::Seed;
