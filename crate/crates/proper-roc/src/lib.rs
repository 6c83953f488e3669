//! Proper ROC curves from likelihood-ratio classification rules.
//!
//! A likelihood-ratio based classifier, with an auxiliary randomization at
//! threshold ties, always produces a ROC curve that is non-decreasing,
//! continuous and concave, for *any* pair of mutually absolutely continuous
//! probability measures, discrete, continuous or mixed. This crate builds
//! those curves:
//!
//! * [`lr`]: the distribution of the likelihood ratio under both classes,
//!   its quantiles, the randomized decision rule and the closed-form proper
//!   ROC curve. Finite-support distributions use exact rational arithmetic.
//! * [`concentration`]: the concentration function dual of the ROC curve
//!   and the Lorenz–Gini correspondence for length-biased measures.
//! * [`models`]: analytic model pairs (piecewise-constant densities,
//!   finite contingency tables, multivariate Gaussians, Poisson vs. Polya
//!   point processes) that expose their likelihood ratio.
//! * [`estimation`]: Gaussian-kernel flexible-Bayes estimation from labeled
//!   samples, Monte Carlo construction of the estimated proper ROC curve,
//!   and the staircase empirical ROC for comparison.

pub mod concentration;
pub mod curve;
pub mod estimation;
pub mod lr;
pub mod models;
pub mod rational;

use std::fmt;

use thiserror::Error;

pub use crate::concentration::{
    duality_gap_exact, duality_gap_sampled, lorenz_from_finite, lorenz_from_quantile,
    ConcentrationFunction,
};
pub use crate::curve::{RocCurve, RocCurveKind, Segment};
pub use crate::estimation::{
    algorithm1_roc, compare_curves, empirical_roc, BandwidthRule, CurveComparison, Dominance,
    KernelDensityEstimate, LabeledSample, RocGrid, ThresholdSpec,
};
pub use crate::lr::{Atom, LrDistribution, RandomizedDecision};
pub use crate::models::{
    binormal_roc, parse_model_config, FiniteTablePair, GaussianPair, ModelSpec,
    PiecewiseConstantPair, PointProcessPair,
};
pub use crate::rational::Rational;

/// Class label of an observation: drawn under the negative or the positive
/// measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Class {
    Minus,
    Plus,
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Class::Minus => write!(f, "minus"),
            Class::Plus => write!(f, "plus"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid LR distribution: {0}")]
    InvalidDistribution(String),
    #[error("threshold probability must lie strictly between 0 and 1")]
    ThresholdOutOfRange,
    #[error("operation requires an exact (finite-support) LR distribution")]
    RequiresExact,
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid sample: {0}")]
    InvalidSample(String),
    #[error("feature {feature} has zero variance within the {class} class")]
    ZeroVarianceFeature { class: Class, feature: usize },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
