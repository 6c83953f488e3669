//! Analytic model pairs: piecewise-constant densities, finite contingency
//! tables, multivariate Gaussians, and Poisson-vs-Polya point processes.
//! Each model exposes its likelihood ratio, samples itself, and emits an
//! exact LR distribution where one exists.

pub mod config;
pub mod finite;
pub mod gaussian;
pub mod piecewise;
pub mod point_process;

pub use config::{parse_model_config, ModelSpec};
pub use finite::FiniteTablePair;
pub use gaussian::{binormal_roc, GaussianPair};
pub use piecewise::PiecewiseConstantPair;
pub use point_process::PointProcessPair;
