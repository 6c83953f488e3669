//! Data-driven ROC estimation.
//!
//! A labeled multivariate sample is turned into per-class, per-feature
//! Gaussian kernel density estimates; their product measures define the
//! flexible Bayes likelihood ratio. Because each marginal estimate is a
//! mixture of Gaussians, drawing from the estimated measures is trivial, and
//! the estimated proper ROC curve is computed by Monte Carlo: draw `B`
//! observations from each product KDE, score them with the LR, and sweep a
//! threshold grid. The LR of the product KDEs has no atoms, so the
//! randomization correction vanishes and the curve is simply
//! `(1 - H_minus(t), 1 - H_plus(t))` over the grid.
//!
//! The classical staircase empirical ROC is provided for comparison; it is
//! kept as a step function and exempt from every properness check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::curve::{RocCurve, RocCurveKind};
use crate::{Class, Error, Result};

const LN_SQRT_2PI: f64 = 0.9189385332046727;

/// Feature matrix with a class label per row.
#[derive(Debug, Clone)]
pub struct LabeledSample {
    rows: Vec<Vec<f64>>,
    labels: Vec<Class>,
    n_minus: usize,
    n_plus: usize,
}

impl LabeledSample {
    /// Requires at least two rows per class, a consistent feature dimension
    /// of at least one, and no missing (non-finite) values.
    pub fn new(rows: Vec<Vec<f64>>, labels: Vec<Class>) -> Result<Self> {
        if rows.len() != labels.len() {
            return Err(Error::InvalidSample(format!(
                "{} rows but {} labels",
                rows.len(),
                labels.len()
            )));
        }
        let p = rows.first().map_or(0, |r| r.len());
        if p == 0 {
            return Err(Error::InvalidSample("need at least one feature".to_string()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != p {
                return Err(Error::InvalidSample(format!(
                    "row {} has {} features, expected {p}",
                    i + 1,
                    row.len()
                )));
            }
            if let Some(k) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::InvalidSample(format!(
                    "missing or non-finite value at row {}, feature {}",
                    i + 1,
                    k + 1
                )));
            }
        }
        let n_plus = labels.iter().filter(|&&c| c == Class::Plus).count();
        let n_minus = labels.len() - n_plus;
        if n_minus < 2 || n_plus < 2 {
            return Err(Error::InvalidSample(format!(
                "need at least 2 rows per class (got {n_minus} negative, {n_plus} positive)"
            )));
        }
        Ok(LabeledSample {
            rows,
            labels,
            n_minus,
            n_plus,
        })
    }

    pub fn dim(&self) -> usize {
        self.rows[0].len()
    }

    pub fn n_minus(&self) -> usize {
        self.n_minus
    }

    pub fn n_plus(&self) -> usize {
        self.n_plus
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn labels(&self) -> &[Class] {
        &self.labels
    }

    pub fn class_rows(&self, class: Class) -> Vec<Vec<f64>> {
        self.rows
            .iter()
            .zip(&self.labels)
            .filter(|(_, &c)| c == class)
            .map(|(r, _)| r.clone())
            .collect()
    }

    pub fn column(&self, class: Class, feature: usize) -> Vec<f64> {
        self.rows
            .iter()
            .zip(&self.labels)
            .filter(|(_, &c)| c == class)
            .map(|(r, _)| r[feature])
            .collect()
    }
}

/// Bandwidth selection rule for the marginal kernel estimates.
#[derive(Debug, Clone, PartialEq)]
pub enum BandwidthRule {
    /// `0.9 min(sd, IQR/1.34) n^{-1/5}` per class and feature. When the IQR
    /// degenerates to zero the spread falls back to the standard deviation.
    Silverman,
    /// `1.06 sd n^{-1/5}` per class and feature.
    Scott,
    /// One fixed bandwidth per feature, shared by both classes.
    Fixed(Vec<f64>),
}

fn sample_sd(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (ss / (n - 1.0)).sqrt()
}

/// Type-7 sample quantile (linear interpolation of order statistics).
fn quantile_type7(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    let h = (n - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - h.floor()) * (sorted[hi] - sorted[lo])
}

fn iqr(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    quantile_type7(&sorted, 0.75) - quantile_type7(&sorted, 0.25)
}

#[derive(Debug, Clone)]
struct FeatureKde {
    centers: Vec<f64>,
    bandwidth: f64,
}

impl FeatureKde {
    fn log_density(&self, x: f64) -> f64 {
        let inv = 1.0 / self.bandwidth;
        let mut max = f64::NEG_INFINITY;
        let mut exponents = Vec::with_capacity(self.centers.len());
        for &c in &self.centers {
            let z = (x - c) * inv;
            let e = -0.5 * z * z;
            if e > max {
                max = e;
            }
            exponents.push(e);
        }
        let sum: f64 = exponents.iter().map(|e| (e - max).exp()).sum();
        max + sum.ln() - (self.centers.len() as f64).ln() - self.bandwidth.ln() - LN_SQRT_2PI
    }

    fn density(&self, x: f64) -> f64 {
        self.log_density(x).exp()
    }

    fn draw(&self, rng: &mut impl Rng) -> f64 {
        let idx = rng.random_range(0..self.centers.len());
        let z: f64 = rng.sample(StandardNormal);
        self.centers[idx] + self.bandwidth * z
    }
}

/// Per-class, per-feature Gaussian kernel density estimates; the product
/// over features is the flexible Bayes estimate of each class measure.
#[derive(Debug, Clone)]
pub struct KernelDensityEstimate {
    minus: Vec<FeatureKde>,
    plus: Vec<FeatureKde>,
}

impl KernelDensityEstimate {
    pub fn fit(sample: &LabeledSample, rule: &BandwidthRule) -> Result<Self> {
        let p = sample.dim();
        if let BandwidthRule::Fixed(values) = rule {
            if values.len() != p {
                return Err(Error::InvalidSample(format!(
                    "fixed bandwidth rule needs {p} values, got {}",
                    values.len()
                )));
            }
            if values.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
                return Err(Error::InvalidSample(
                    "fixed bandwidths must be positive and finite".to_string(),
                ));
            }
        }
        let fit_class = |class: Class| -> Result<Vec<FeatureKde>> {
            (0..p)
                .map(|k| {
                    let centers = sample.column(class, k);
                    let n = centers.len() as f64;
                    let bandwidth = match rule {
                        BandwidthRule::Fixed(values) => values[k],
                        BandwidthRule::Scott => {
                            let sd = sample_sd(&centers);
                            if sd == 0.0 {
                                return Err(Error::ZeroVarianceFeature { class, feature: k });
                            }
                            1.06 * sd * n.powf(-0.2)
                        }
                        BandwidthRule::Silverman => {
                            let sd = sample_sd(&centers);
                            let spread_iqr = iqr(&centers) / 1.34;
                            let mut spread = sd.min(spread_iqr);
                            if spread == 0.0 {
                                spread = sd.max(spread_iqr);
                            }
                            if spread == 0.0 {
                                return Err(Error::ZeroVarianceFeature { class, feature: k });
                            }
                            0.9 * spread * n.powf(-0.2)
                        }
                    };
                    Ok(FeatureKde { centers, bandwidth })
                })
                .collect()
        };
        Ok(KernelDensityEstimate {
            minus: fit_class(Class::Minus)?,
            plus: fit_class(Class::Plus)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.minus.len()
    }

    fn feature(&self, class: Class, k: usize) -> &FeatureKde {
        match class {
            Class::Minus => &self.minus[k],
            Class::Plus => &self.plus[k],
        }
    }

    pub fn bandwidth(&self, class: Class, feature: usize) -> f64 {
        self.feature(class, feature).bandwidth
    }

    /// Marginal density estimate of feature `k` under the given class.
    pub fn density(&self, class: Class, feature: usize, x: f64) -> f64 {
        self.feature(class, feature).density(x)
    }

    pub fn log_density(&self, class: Class, feature: usize, x: f64) -> f64 {
        self.feature(class, feature).log_density(x)
    }

    /// Flexible Bayes log likelihood ratio: the sum over features of the
    /// marginal log density ratios.
    pub fn log_lr(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim() {
            return Err(Error::InvalidSample(format!(
                "expected a {}-vector, got length {}",
                self.dim(),
                x.len()
            )));
        }
        Ok((0..self.dim())
            .map(|k| self.log_density(Class::Plus, k, x[k]) - self.log_density(Class::Minus, k, x[k]))
            .sum())
    }

    /// Flexible Bayes likelihood ratio; Gaussian kernels are strictly
    /// positive so the ratio is always defined.
    pub fn lr(&self, x: &[f64]) -> Result<f64> {
        Ok(self.log_lr(x)?.exp())
    }

    /// One draw from the product KDE of the given class: an independent
    /// center pick and Gaussian perturbation per feature.
    fn draw_log_lr(&self, class: Class, rng: &mut impl Rng) -> f64 {
        let mut ll = 0.0;
        for k in 0..self.dim() {
            let x = self.feature(class, k).draw(rng);
            ll += self.log_density(Class::Plus, k, x) - self.log_density(Class::Minus, k, x);
        }
        ll
    }
}

/// Threshold grid for the Monte Carlo ROC sweep.
#[derive(Debug, Clone, PartialEq)]
pub enum ThresholdSpec {
    /// `n` thresholds, logarithmically spaced between the 0.1% and 99.9%
    /// quantiles of the pooled LR draws.
    Auto(usize),
    /// Explicit strictly increasing positive LR thresholds.
    Explicit(Vec<f64>),
}

/// Configuration of one Monte Carlo ROC run: threshold grid, replication
/// count `B`, and RNG seed. The output of the run depends on nothing else.
#[derive(Debug, Clone, PartialEq)]
pub struct RocGrid {
    thresholds: ThresholdSpec,
    replications: usize,
    seed: u64,
}

impl RocGrid {
    pub fn new(thresholds: ThresholdSpec, replications: usize, seed: u64) -> Result<Self> {
        match &thresholds {
            ThresholdSpec::Auto(n) => {
                if *n < 2 {
                    return Err(Error::InvalidGrid(
                        "automatic grid needs at least 2 points".to_string(),
                    ));
                }
            }
            ThresholdSpec::Explicit(values) => {
                if values.is_empty() {
                    return Err(Error::InvalidGrid("empty threshold grid".to_string()));
                }
                for w in values.windows(2) {
                    if w[1] <= w[0] {
                        return Err(Error::InvalidGrid(
                            "thresholds must be strictly increasing".to_string(),
                        ));
                    }
                }
                if values.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
                    return Err(Error::InvalidGrid(
                        "thresholds must be positive and finite".to_string(),
                    ));
                }
            }
        }
        if replications == 0 {
            return Err(Error::InvalidGrid(
                "need at least one replication".to_string(),
            ));
        }
        Ok(RocGrid {
            thresholds,
            replications,
            seed,
        })
    }

    pub fn auto(points: usize, replications: usize, seed: u64) -> Result<Self> {
        RocGrid::new(ThresholdSpec::Auto(points), replications, seed)
    }

    pub fn replications(&self) -> usize {
        self.replications
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Monte Carlo proper ROC curve of the flexible Bayes classifier: draw `B`
/// observations from each product KDE, score them with the estimated LR,
/// and threshold the scores over the grid.
///
/// One set of `B` draws is shared across every threshold instead of
/// redrawing per grid value; the estimand is identical, the cost `B` times
/// lower, and the swept point path exactly monotone.
pub fn algorithm1_roc(kde: &KernelDensityEstimate, grid: &RocGrid) -> Result<RocCurve> {
    let b = grid.replications;
    let mut rng = ChaCha12Rng::seed_from_u64(grid.seed);
    let mut minus: Vec<f64> = (0..b).map(|_| kde.draw_log_lr(Class::Minus, &mut rng)).collect();
    let mut plus: Vec<f64> = (0..b).map(|_| kde.draw_log_lr(Class::Plus, &mut rng)).collect();
    let log_thresholds: Vec<f64> = match &grid.thresholds {
        ThresholdSpec::Explicit(values) => values.iter().map(|v| v.ln()).collect(),
        ThresholdSpec::Auto(n) => {
            let mut pooled: Vec<f64> = minus.iter().chain(plus.iter()).copied().collect();
            pooled.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let lo = pooled[((pooled.len() - 1) as f64 * 0.001).floor() as usize];
            let hi = pooled[((pooled.len() - 1) as f64 * 0.999).ceil() as usize];
            let mut t: Vec<f64> = (0..*n)
                .map(|i| lo + (hi - lo) * i as f64 / (*n as f64 - 1.0))
                .collect();
            t.dedup();
            t
        }
    };
    minus.sort_by(|a, b| a.partial_cmp(b).unwrap());
    plus.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let frac_above = |sorted: &[f64], c: f64| -> f64 {
        (sorted.len() - sorted.partition_point(|&v| v <= c)) as f64 / sorted.len() as f64
    };
    let points: Vec<(f64, f64)> = log_thresholds
        .iter()
        .map(|&lt| (frac_above(&minus, lt), frac_above(&plus, lt)))
        .collect();
    RocCurve::sampled(points)
}

/// The classical staircase empirical ROC of raw scores: one operating point
/// per distinct pooled score value, kept as a step function.
pub fn empirical_roc(scores_minus: &[f64], scores_plus: &[f64]) -> Result<RocCurve> {
    if scores_minus.is_empty() || scores_plus.is_empty() {
        return Err(Error::InvalidSample("empty score list".to_string()));
    }
    if scores_minus
        .iter()
        .chain(scores_plus.iter())
        .any(|v| v.is_nan())
    {
        return Err(Error::InvalidSample("NaN score".to_string()));
    }
    let mut sorted_minus = scores_minus.to_vec();
    let mut sorted_plus = scores_plus.to_vec();
    sorted_minus.sort_by(|a, b| a.partial_cmp(b).unwrap());
    sorted_plus.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut pooled: Vec<f64> = sorted_minus
        .iter()
        .chain(sorted_plus.iter())
        .copied()
        .collect();
    pooled.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pooled.dedup();
    let frac_above = |sorted: &[f64], c: f64| -> f64 {
        (sorted.len() - sorted.partition_point(|&v| v <= c)) as f64 / sorted.len() as f64
    };
    let points: Vec<(f64, f64)> = pooled
        .iter()
        .map(|&c| (frac_above(&sorted_minus, c), frac_above(&sorted_plus, c)))
        .collect();
    RocCurve::staircase(points)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    ADominatesB,
    BDominatesA,
    /// Each curve dominates the other within the slack.
    Indistinguishable,
    Crossing,
}

impl std::fmt::Display for Dominance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Dominance::ADominatesB => "a-dominates-b",
            Dominance::BDominatesA => "b-dominates-a",
            Dominance::Indistinguishable => "indistinguishable",
            Dominance::Crossing => "crossing",
        };
        write!(f, "{s}")
    }
}

/// Deterministic comparison of two curves on a grid.
#[derive(Debug, Clone)]
pub struct CurveComparison {
    pub grid: Vec<f64>,
    pub a_values: Vec<f64>,
    pub b_values: Vec<f64>,
    pub kind_a: RocCurveKind,
    pub kind_b: RocCurveKind,
    pub auc_a: f64,
    pub auc_b: f64,
    pub slack: f64,
    pub max_abs_diff: f64,
    pub mean_abs_diff: f64,
    pub max_a_minus_b: f64,
    pub max_b_minus_a: f64,
    pub dominance: Dominance,
}

/// Evaluates both curves over the grid and reports pointwise differences,
/// the AUC difference, and a dominance verdict: `a` dominates `b` when
/// `a >= b - slack` at every grid point.
pub fn compare_curves(
    a: &RocCurve,
    b: &RocCurve,
    grid: &[f64],
    slack: f64,
) -> Result<CurveComparison> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid("empty comparison grid".to_string()));
    }
    if grid.iter().any(|x| !(0.0..=1.0).contains(x)) {
        return Err(Error::InvalidGrid(
            "comparison grid points must lie in [0,1]".to_string(),
        ));
    }
    let a_values: Vec<f64> = grid.iter().map(|&x| a.eval(x)).collect();
    let b_values: Vec<f64> = grid.iter().map(|&x| b.eval(x)).collect();
    let mut max_abs: f64 = 0.0;
    let mut sum_abs = 0.0;
    let mut max_ab = f64::NEG_INFINITY;
    let mut max_ba = f64::NEG_INFINITY;
    for (&va, &vb) in a_values.iter().zip(&b_values) {
        let d = va - vb;
        max_abs = max_abs.max(d.abs());
        sum_abs += d.abs();
        max_ab = max_ab.max(d);
        max_ba = max_ba.max(-d);
    }
    let a_dominates = max_ba <= slack;
    let b_dominates = max_ab <= slack;
    let dominance = match (a_dominates, b_dominates) {
        (true, true) => Dominance::Indistinguishable,
        (true, false) => Dominance::ADominatesB,
        (false, true) => Dominance::BDominatesA,
        (false, false) => Dominance::Crossing,
    };
    Ok(CurveComparison {
        grid: grid.to_vec(),
        a_values,
        b_values,
        kind_a: a.kind(),
        kind_b: b.kind(),
        auc_a: a.auc(),
        auc_b: b.auc(),
        slack,
        max_abs_diff: max_abs,
        mean_abs_diff: sum_abs / grid.len() as f64,
        max_a_minus_b: max_ab,
        max_b_minus_a: max_ba,
        dominance,
    })
}

impl CurveComparison {
    /// Plain-text report with a fixed field order, followed by the
    /// pointwise values, so runs can be diffed.
    pub fn render_report(&self, label_a: &str, label_b: &str) -> String {
        let kind = |k: RocCurveKind| match k {
            RocCurveKind::Exact => "exact",
            RocCurveKind::Sampled => "sampled",
            RocCurveKind::Staircase => "staircase",
        };
        let mut out = String::new();
        out.push_str("# roc curve comparison\n");
        out.push_str(&format!("curve_a = {label_a}\n"));
        out.push_str(&format!("curve_b = {label_b}\n"));
        out.push_str(&format!("kind_a = {}\n", kind(self.kind_a)));
        out.push_str(&format!("kind_b = {}\n", kind(self.kind_b)));
        out.push_str(&format!("grid_points = {}\n", self.grid.len()));
        out.push_str(&format!("auc_a = {}\n", self.auc_a));
        out.push_str(&format!("auc_b = {}\n", self.auc_b));
        out.push_str(&format!("auc_diff = {}\n", self.auc_a - self.auc_b));
        out.push_str(&format!("max_abs_diff = {}\n", self.max_abs_diff));
        out.push_str(&format!("mean_abs_diff = {}\n", self.mean_abs_diff));
        out.push_str(&format!("max_a_minus_b = {}\n", self.max_a_minus_b));
        out.push_str(&format!("max_b_minus_a = {}\n", self.max_b_minus_a));
        out.push_str(&format!("slack = {}\n", self.slack));
        out.push_str(&format!("verdict = {}\n", self.dominance));
        out.push_str("x,a,b,a_minus_b\n");
        for ((x, va), vb) in self.grid.iter().zip(&self.a_values).zip(&self.b_values) {
            out.push_str(&format!("{x},{va},{vb},{}\n", va - vb));
        }
        out
    }
}
