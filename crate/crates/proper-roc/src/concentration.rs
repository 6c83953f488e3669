//! Concentration function of the positive measure with respect to the
//! negative one, and its exact duality with the proper ROC curve:
//! `ROC(x) = 1 - phi(1 - x)`.
//!
//! The concentration function generalizes Gini's concentration: for a
//! length-biased pair of measures on the positive half line it *is* the
//! classical Lorenz curve, which this module also builds.

use num_traits::{One, Signed, Zero};

use crate::curve::{exact_from_slope_steps, RocCurve, Segment};
use crate::lr::LrDistribution;
use crate::rational::{from_f64, to_f64, Rational};
use crate::{Error, Result};

/// Piecewise representation of a concentration function on `[0,1]`:
/// convex, non-decreasing, below the diagonal, with `phi(0) = 0` and
/// `phi(1) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub enum ConcentrationFunction {
    Exact { segments: Vec<Segment> },
    Sampled { points: Vec<(f64, f64)> },
}

impl ConcentrationFunction {
    pub fn is_exact(&self) -> bool {
        matches!(self, ConcentrationFunction::Exact { .. })
    }

    pub fn segments(&self) -> Option<&[Segment]> {
        match self {
            ConcentrationFunction::Exact { segments } => Some(segments),
            ConcentrationFunction::Sampled { .. } => None,
        }
    }

    pub fn vertices(&self) -> Vec<(f64, f64)> {
        match self {
            ConcentrationFunction::Exact { segments } => {
                let mut v: Vec<(f64, f64)> = segments
                    .iter()
                    .map(|s| {
                        let y = &s.slope * &s.x_lo + &s.intercept;
                        (to_f64(&s.x_lo), to_f64(&y))
                    })
                    .collect();
                let last = segments.last().unwrap();
                let y = &last.slope * &last.x_hi + &last.intercept;
                v.push((to_f64(&last.x_hi), to_f64(&y)));
                v
            }
            ConcentrationFunction::Sampled { points } => points.clone(),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            ConcentrationFunction::Exact { segments } => {
                if x <= 0.0 {
                    return 0.0;
                }
                if x >= 1.0 {
                    return 1.0;
                }
                let i = segments.partition_point(|s| to_f64(&s.x_hi) <= x);
                let s = &segments[i.min(segments.len() - 1)];
                to_f64(&s.slope) * x + to_f64(&s.intercept)
            }
            ConcentrationFunction::Sampled { points } => {
                if x <= 0.0 {
                    return 0.0;
                }
                if x >= 1.0 {
                    return 1.0;
                }
                let i = points.partition_point(|p| p.0 < x);
                if i == 0 {
                    return points[0].1;
                }
                if i == points.len() {
                    return points[points.len() - 1].1;
                }
                let (x1, y1) = points[i];
                if x1 == x {
                    let mut j = i;
                    while j + 1 < points.len() && points[j + 1].0 == x {
                        j += 1;
                    }
                    return points[j].1;
                }
                let (x0, y0) = points[i - 1];
                y0 + (y1 - y0) * (x - x0) / (x1 - x0)
            }
        }
    }

    pub fn eval_exact(&self, x: &Rational) -> Option<Rational> {
        let ConcentrationFunction::Exact { segments } = self else {
            return None;
        };
        if x < &Rational::zero() || x > &Rational::one() {
            return None;
        }
        if x.is_one() {
            return Some(Rational::one());
        }
        let i = segments.partition_point(|s| &s.x_hi <= x);
        let s = &segments[i.min(segments.len() - 1)];
        Some(&s.slope * x + &s.intercept)
    }

    /// For exact functions: whether segment slopes are non-decreasing.
    pub fn is_convex_exact(&self) -> Option<bool> {
        let ConcentrationFunction::Exact { segments } = self else {
            return None;
        };
        Some(segments.windows(2).all(|w| w[0].slope <= w[1].slope))
    }

    /// Largest amount by which an interior vertex rises above the chord of
    /// its neighbours; zero for a convex polyline.
    pub fn max_convexity_violation(&self) -> f64 {
        let v = self.vertices();
        let mut worst: f64 = 0.0;
        for w in v.windows(3) {
            let (x0, y0) = w[0];
            let (x1, y1) = w[1];
            let (x2, y2) = w[2];
            if x2 <= x0 {
                continue;
            }
            let chord = y0 + (y2 - y0) * (x1 - x0) / (x2 - x0);
            worst = worst.max(y1 - chord);
        }
        worst
    }

    /// Largest amount by which the function rises above the diagonal at a
    /// vertex; a valid concentration function satisfies `phi(x) <= x`.
    pub fn max_above_diagonal(&self) -> f64 {
        self.vertices()
            .iter()
            .map(|&(x, y)| y - x)
            .fold(0.0, f64::max)
    }

    /// Same serialization as [`RocCurve`]: a kind tag, a header, then exact
    /// rational segment rows or float point rows.
    pub fn to_csv(&self) -> String {
        match self {
            ConcentrationFunction::Exact { segments } => {
                let mut out = String::from("# kind=exact\nx_lo,x_hi,slope,intercept\n");
                for s in segments {
                    out.push_str(&format!(
                        "{},{},{},{}\n",
                        s.x_lo, s.x_hi, s.slope, s.intercept
                    ));
                }
                out
            }
            ConcentrationFunction::Sampled { points } => {
                let mut out = String::from("# kind=sampled\nx,phi\n");
                for (x, y) in points {
                    out.push_str(&format!("{x},{y}\n"));
                }
                out
            }
        }
    }
}

impl LrDistribution {
    /// The concentration function of the positive measure with respect to
    /// the negative one. Exact distributions yield exact segments with
    /// slopes equal to the atom values in *increasing* order; sampled
    /// distributions yield the reflected operating-point polyline.
    pub fn concentration(&self) -> ConcentrationFunction {
        if self.is_exact() {
            let steps: Vec<(Rational, Rational)> = self
                .atoms()
                .iter()
                .map(|a| (a.value.clone(), a.mass_minus.clone()))
                .collect();
            let curve = exact_from_slope_steps(&steps)
                .expect("atoms of a valid distribution always yield a valid curve");
            let RocCurve::Exact { segments } = curve else {
                unreachable!()
            };
            ConcentrationFunction::Exact { segments }
        } else {
            // phi traces (H_minus(c), H_plus(c)); these are the proper ROC
            // operating points reflected through (1/2, 1/2).
            let roc = self.proper_roc();
            let mut points: Vec<(f64, f64)> = roc
                .vertices()
                .iter()
                .map(|&(x, y)| (1.0 - x, 1.0 - y))
                .collect();
            points.sort_by(|a, b| a.partial_cmp(b).unwrap());
            points.dedup();
            ConcentrationFunction::Sampled { points }
        }
    }

    /// Concentration function value `phi(x) = P_plus(L < q_x) + q_x (x -
    /// H_minus(q_x^-))` through the defining one-sided limits; exact
    /// distributions only. `phi(0) = 0` and `phi(1) = 1` by definition.
    pub fn phi_at(&self, x: &Rational) -> Result<Rational> {
        if x.is_zero() {
            return Ok(Rational::zero());
        }
        if x.is_one() {
            return Ok(Rational::one());
        }
        let q = self.quantile_minus(x)?;
        let below_plus = self.cdf_plus_left(&q)?;
        let below_minus = self.cdf_minus_left(&q)?;
        Ok(below_plus + &q * (x - below_minus))
    }

    /// Monte Carlo analogue of [`phi_at`](Self::phi_at) for sampled or mixed
    /// distributions.
    pub fn phi_at_f64(&self, x: f64) -> Result<f64> {
        if x <= 0.0 {
            return Ok(0.0);
        }
        if x >= 1.0 {
            return Ok(1.0);
        }
        let q = self.quantile_minus_f64(x)?;
        Ok(self.cdf_plus_left_f64(q) + q * (x - self.cdf_minus_left_f64(q)))
    }
}

/// Maximum over the grid of `|ROC(x) - (1 - phi(1-x))|`, both sides
/// evaluated through their defining closed forms (right-continuous CDFs for
/// the ROC, one-sided left limits for phi). Exactly zero for every exact
/// distribution.
pub fn duality_gap_exact(d: &LrDistribution, grid: &[Rational]) -> Result<Rational> {
    let mut worst = Rational::zero();
    for x in grid {
        if x < &Rational::zero() || x > &Rational::one() {
            return Err(Error::InvalidGrid(format!("grid point {x} outside [0,1]")));
        }
        let roc = d.roc_at(x)?;
        let phi = d.phi_at(&(Rational::one() - x))?;
        let gap = (roc - (Rational::one() - phi)).abs();
        if gap > worst {
            worst = gap;
        }
    }
    Ok(worst)
}

/// Monte Carlo version of [`duality_gap_exact`] for sampled distributions.
pub fn duality_gap_sampled(d: &LrDistribution, grid: &[f64]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &x in grid {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::InvalidGrid(format!("grid point {x} outside [0,1]")));
        }
        let roc = if x == 0.0 {
            0.0
        } else if x == 1.0 {
            1.0
        } else {
            let t = 1.0 - x;
            let q = d.quantile_minus_f64(t)?;
            1.0 - d.cdf_plus_f64(q) + q * (d.cdf_minus_f64(q) - t)
        };
        let phi = d.phi_at_f64(1.0 - x)?;
        worst = worst.max((roc - (1.0 - phi)).abs());
    }
    Ok(worst)
}

/// Lorenz curve of a finite income distribution `(income, probability)`,
/// built as the concentration function of the length-biased pair: the LR of
/// the length-biased measure against the base measure is `income / mean`.
pub fn lorenz_from_finite(incomes: &[(Rational, Rational)]) -> Result<ConcentrationFunction> {
    if incomes.is_empty() {
        return Err(Error::InvalidModel("empty income distribution".to_string()));
    }
    let mut total_prob = Rational::zero();
    let mut mean = Rational::zero();
    for (income, prob) in incomes {
        if income <= &Rational::zero() {
            return Err(Error::InvalidModel(
                "incomes must be strictly positive".to_string(),
            ));
        }
        if prob < &Rational::zero() {
            return Err(Error::InvalidModel("negative probability".to_string()));
        }
        total_prob += prob;
        mean += income * prob;
    }
    if !total_prob.is_one() {
        return Err(Error::InvalidModel(format!(
            "probabilities must sum to 1 (got {total_prob})"
        )));
    }
    let entries: Vec<(Rational, Rational, Rational)> = incomes
        .iter()
        .filter(|(_, prob)| !prob.is_zero())
        .map(|(income, prob)| {
            let value = income / &mean;
            let mass_plus = &value * prob;
            (value, prob.clone(), mass_plus)
        })
        .collect();
    let d = LrDistribution::from_atoms(entries)?;
    Ok(d.concentration())
}

/// Default discretization for [`lorenz_from_quantile`].
pub const DEFAULT_LORENZ_CELLS: usize = 10_000;

/// Lorenz curve of a continuous income distribution given through its
/// quantile function, discretized on `cells` midpoint cells of equal
/// probability ([`DEFAULT_LORENZ_CELLS`] is a good default). The quantile
/// must be finite and strictly positive on (0,1); distributions with
/// divergent discretized mean are rejected.
pub fn lorenz_from_quantile(
    quantile: impl Fn(f64) -> f64,
    cells: usize,
) -> Result<ConcentrationFunction> {
    if cells < 2 {
        return Err(Error::InvalidModel(
            "discretization needs at least 2 cells".to_string(),
        ));
    }
    let mut values = Vec::with_capacity(cells);
    for i in 0..cells {
        let u = (i as f64 + 0.5) / cells as f64;
        let y = quantile(u);
        if !y.is_finite() || y <= 0.0 {
            return Err(Error::InvalidModel(format!(
                "quantile({u}) = {y}: support must be positive with finite mean"
            )));
        }
        values.push(from_f64(y)?);
    }
    let cell_prob = Rational::new(1.into(), (cells as i64).into());
    let mean: Rational = values.iter().map(|y| y * &cell_prob).sum();
    let entries: Vec<(Rational, Rational, Rational)> = values
        .into_iter()
        .map(|y| {
            let value = y / &mean;
            let mass_plus = &value * &cell_prob;
            (value, cell_prob.clone(), mass_plus)
        })
        .collect();
    let d = LrDistribution::from_atoms(entries)?;
    Ok(d.concentration())
}
