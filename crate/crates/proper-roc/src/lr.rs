//! Distribution of the likelihood ratio under both classes, the randomized
//! classification rule, and the closed-form proper ROC curve.
//!
//! The likelihood ratio `L = f_plus / f_minus` of two mutually absolutely
//! continuous measures is a nonnegative random variable with distribution
//! functions `H_minus` and `H_plus` under the two classes. The classification
//! rule indexed by a probability `t` declares positive when `L` exceeds the
//! `t`-quantile of `H_minus`, randomizing at ties so that the false positive
//! rate equals `1 - t` for every `t`. Eliminating `t` yields
//!
//! ```text
//! ROC(x) = 1 - H_plus(q) + q * (H_minus(q) - (1 - x)),   q = quantile(1 - x)
//! ```
//!
//! which is non-decreasing, continuous and concave.
//!
//! Finite-support distributions ("exact") are stored as rational atoms and
//! every operation on them is exact. Distributions known only through Monte
//! Carlo draws keep sorted samples of `L` under each class; a distribution
//! may also mix atoms with a sampled continuous part.

use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::curve::{self, RocCurve};
use crate::rational::{to_f64, Rational};
use crate::{Class, Error, Result};

/// One jump of the LR distribution: the LR value and its probability mass
/// under each class. At every valid atom `mass_plus / mass_minus` equals
/// `value`: the LR at an atom is the atom itself.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub value: Rational,
    pub mass_minus: Rational,
    pub mass_plus: Rational,
}

#[derive(Debug, Clone)]
struct ContinuousPart {
    /// Sorted LR draws for observations from the negative class.
    minus: Vec<f64>,
    /// Sorted LR draws for observations from the positive class.
    plus: Vec<f64>,
    weight_minus: f64,
    weight_plus: f64,
}

/// Joint representation of the LR's distribution functions under both
/// classes: a discrete part (merged atoms with strictly increasing values)
/// and an optional sampled continuous part.
#[derive(Debug, Clone)]
pub struct LrDistribution {
    atoms: Vec<Atom>,
    /// Finer operating-point granularity preserved from the source model
    /// (e.g. contingency-table categories that share an LR value). Values are
    /// non-decreasing; merging them reproduces `atoms`.
    refinement: Option<Vec<Atom>>,
    continuous: Option<ContinuousPart>,
    cum_minus: Vec<Rational>,
    cum_plus: Vec<Rational>,
    // f64 mirrors of the atom data, for the sampled/mixed code paths.
    atom_values_f64: Vec<f64>,
    atom_cum_minus_f64: Vec<f64>,
    atom_cum_plus_f64: Vec<f64>,
    exact: bool,
}

/// The LR classification rule at threshold probability `t`: declare positive
/// when `L` exceeds `quantile`, and when `L` equals it declare positive with
/// probability `randomize_prob`.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomizedDecision {
    pub threshold: Rational,
    pub quantile: Rational,
    pub randomize_prob: Rational,
}

impl RandomizedDecision {
    /// Applies the rule to an observed LR value, `u` being an independent
    /// uniform draw in `[0, 1)`.
    pub fn decide(&self, l_observed: &Rational, u: f64) -> Class {
        if *l_observed > self.quantile {
            Class::Plus
        } else if *l_observed == self.quantile {
            let u = Rational::from_float(u).unwrap_or_else(Rational::zero);
            if u < self.randomize_prob {
                Class::Plus
            } else {
                Class::Minus
            }
        } else {
            Class::Minus
        }
    }
}

fn validate_entries(entries: &[(Rational, Rational, Rational)]) -> Result<Vec<Atom>> {
    let mut atoms = Vec::with_capacity(entries.len());
    for (value, mass_minus, mass_plus) in entries {
        if mass_minus.is_zero() && mass_plus.is_zero() {
            continue;
        }
        if value < &Rational::zero() {
            return Err(Error::InvalidDistribution(format!(
                "negative LR value {value}"
            )));
        }
        if mass_minus.is_zero() || mass_plus.is_zero() || mass_minus < &Rational::zero() {
            return Err(Error::InvalidDistribution(format!(
                "atom at {value} has mass under only one measure; the measures \
                 must be mutually absolutely continuous"
            )));
        }
        if mass_plus != &(value * mass_minus) {
            return Err(Error::InvalidDistribution(format!(
                "atom at {value}: plus-mass {mass_plus} is not value times minus-mass {mass_minus}"
            )));
        }
        atoms.push(Atom {
            value: value.clone(),
            mass_minus: mass_minus.clone(),
            mass_plus: mass_plus.clone(),
        });
    }
    if atoms.is_empty() {
        return Err(Error::InvalidDistribution(
            "no atoms with positive mass".to_string(),
        ));
    }
    atoms.sort_by(|a, b| {
        (&a.value, &a.mass_minus)
            .cmp(&(&b.value, &b.mass_minus))
    });
    Ok(atoms)
}

fn merge_atoms(sorted: &[Atom]) -> Vec<Atom> {
    let mut merged: Vec<Atom> = Vec::with_capacity(sorted.len());
    for atom in sorted {
        match merged.last_mut() {
            Some(last) if last.value == atom.value => {
                last.mass_minus += &atom.mass_minus;
                last.mass_plus += &atom.mass_plus;
            }
            _ => merged.push(atom.clone()),
        }
    }
    merged
}

fn check_sorted_samples(name: &str, samples: &[f64]) -> Result<()> {
    if samples.is_empty() {
        return Err(Error::InvalidDistribution(format!(
            "empty {name} LR sample"
        )));
    }
    for &v in samples {
        if !v.is_finite() && v != f64::INFINITY {
            return Err(Error::InvalidDistribution(format!(
                "non-finite LR draw in {name} sample"
            )));
        }
        if v < 0.0 {
            return Err(Error::InvalidDistribution(format!(
                "negative LR draw in {name} sample"
            )));
        }
    }
    Ok(())
}

impl LrDistribution {
    /// Builds an exact finite-support distribution from
    /// `(value, mass_minus, mass_plus)` triples. Entries sharing an LR value
    /// are merged; the unmerged granularity is kept and drives
    /// [`roc_points`](Self::roc_points). Masses must each sum to one and
    /// every entry must satisfy `mass_plus = value * mass_minus`.
    pub fn from_atoms(entries: Vec<(Rational, Rational, Rational)>) -> Result<Self> {
        let sorted = validate_entries(&entries)?;
        let merged = merge_atoms(&sorted);
        let refinement = if merged.len() != sorted.len() {
            Some(sorted)
        } else {
            None
        };
        let total_minus: Rational = merged.iter().map(|a| a.mass_minus.clone()).sum();
        let total_plus: Rational = merged.iter().map(|a| a.mass_plus.clone()).sum();
        if !total_minus.is_one() || !total_plus.is_one() {
            return Err(Error::InvalidDistribution(format!(
                "masses must sum to 1 under both measures (got {total_minus} and {total_plus})"
            )));
        }
        Ok(Self::assemble(merged, refinement, None, true))
    }

    /// Builds a sampled distribution from Monte Carlo LR draws under each
    /// class.
    pub fn from_samples(mut minus: Vec<f64>, mut plus: Vec<f64>) -> Result<Self> {
        check_sorted_samples("minus", &minus)?;
        check_sorted_samples("plus", &plus)?;
        minus.sort_by(|a, b| a.partial_cmp(b).unwrap());
        plus.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let part = ContinuousPart {
            minus,
            plus,
            weight_minus: 1.0,
            weight_plus: 1.0,
        };
        Ok(Self::assemble(Vec::new(), None, Some(part), false))
    }

    /// Builds a mixed distribution: exact atoms carrying part of the mass
    /// plus sampled draws representing the continuous remainder.
    pub fn from_mixed(
        entries: Vec<(Rational, Rational, Rational)>,
        mut minus: Vec<f64>,
        mut plus: Vec<f64>,
    ) -> Result<Self> {
        let sorted = validate_entries(&entries)?;
        let merged = merge_atoms(&sorted);
        let total_minus: Rational = merged.iter().map(|a| a.mass_minus.clone()).sum();
        let total_plus: Rational = merged.iter().map(|a| a.mass_plus.clone()).sum();
        if total_minus >= Rational::one() || total_plus >= Rational::one() {
            return Err(Error::InvalidDistribution(
                "mixed distribution: atom masses must leave room for the continuous part"
                    .to_string(),
            ));
        }
        check_sorted_samples("minus", &minus)?;
        check_sorted_samples("plus", &plus)?;
        minus.sort_by(|a, b| a.partial_cmp(b).unwrap());
        plus.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let part = ContinuousPart {
            minus,
            plus,
            weight_minus: 1.0 - to_f64(&total_minus),
            weight_plus: 1.0 - to_f64(&total_plus),
        };
        Ok(Self::assemble(merged, None, Some(part), false))
    }

    fn assemble(
        atoms: Vec<Atom>,
        refinement: Option<Vec<Atom>>,
        continuous: Option<ContinuousPart>,
        exact: bool,
    ) -> Self {
        let mut cum_minus = Vec::with_capacity(atoms.len());
        let mut cum_plus = Vec::with_capacity(atoms.len());
        let mut acc_m = Rational::zero();
        let mut acc_p = Rational::zero();
        for atom in &atoms {
            acc_m += &atom.mass_minus;
            acc_p += &atom.mass_plus;
            cum_minus.push(acc_m.clone());
            cum_plus.push(acc_p.clone());
        }
        let atom_values_f64 = atoms.iter().map(|a| to_f64(&a.value)).collect();
        let atom_cum_minus_f64 = cum_minus.iter().map(to_f64).collect();
        let atom_cum_plus_f64 = cum_plus.iter().map(to_f64).collect();
        LrDistribution {
            atoms,
            refinement,
            continuous,
            cum_minus,
            cum_plus,
            atom_values_f64,
            atom_cum_minus_f64,
            atom_cum_plus_f64,
            exact,
        }
    }

    /// True when the atoms fully describe the LR distribution.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Merged atoms, strictly increasing in value.
    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// Atom list at the finest granularity known for this distribution
    /// (see [`from_atoms`](Self::from_atoms)).
    pub fn refinement(&self) -> &[Atom] {
        self.refinement.as_deref().unwrap_or(&self.atoms)
    }

    /// Sorted LR draws of the sampled part under the given class, if any.
    pub fn samples(&self, class: Class) -> Option<&[f64]> {
        self.continuous.as_ref().map(|c| match class {
            Class::Minus => c.minus.as_slice(),
            Class::Plus => c.plus.as_slice(),
        })
    }

    fn require_exact(&self) -> Result<()> {
        if self.exact {
            Ok(())
        } else {
            Err(Error::RequiresExact)
        }
    }

    // --- exact (rational) distribution functions -------------------------

    /// `H_minus(l) = P_minus(L <= l)`, right-continuous. Exact distributions
    /// only.
    pub fn cdf_minus(&self, l: &Rational) -> Result<Rational> {
        self.require_exact()?;
        Ok(self.atom_cdf(l, &self.cum_minus, false))
    }

    /// Left limit `H_minus(l-) = P_minus(L < l)`.
    pub fn cdf_minus_left(&self, l: &Rational) -> Result<Rational> {
        self.require_exact()?;
        Ok(self.atom_cdf(l, &self.cum_minus, true))
    }

    /// `H_plus(l) = P_plus(L <= l)`, right-continuous.
    pub fn cdf_plus(&self, l: &Rational) -> Result<Rational> {
        self.require_exact()?;
        Ok(self.atom_cdf(l, &self.cum_plus, false))
    }

    /// Left limit `H_plus(l-) = P_plus(L < l)`.
    pub fn cdf_plus_left(&self, l: &Rational) -> Result<Rational> {
        self.require_exact()?;
        Ok(self.atom_cdf(l, &self.cum_plus, true))
    }

    fn atom_cdf(&self, l: &Rational, cum: &[Rational], strict: bool) -> Rational {
        let k = if strict {
            self.atoms.partition_point(|a| &a.value < l)
        } else {
            self.atoms.partition_point(|a| &a.value <= l)
        };
        if k == 0 {
            Rational::zero()
        } else {
            cum[k - 1].clone()
        }
    }

    /// Quantile `q_t = inf { y : H_minus(y) >= t }` for `0 < t < 1`.
    pub fn quantile_minus(&self, t: &Rational) -> Result<Rational> {
        self.require_exact()?;
        check_open_unit(t)?;
        let k = self.cum_minus.partition_point(|c| c < t);
        // Total mass is exactly one, so some atom always qualifies.
        Ok(self.atoms[k].value.clone())
    }

    /// The randomized rule at threshold probability `t`.
    pub fn randomized_rule(&self, t: &Rational) -> Result<RandomizedDecision> {
        let q = self.quantile_minus(t)?;
        let h = self.cdf_minus(&q)?;
        let h_left = self.cdf_minus_left(&q)?;
        let randomize_prob = if &h == t {
            // t sits exactly on a value of H_minus: no randomization needed.
            Rational::zero()
        } else {
            (&h - t) / (&h - &h_left)
        };
        Ok(RandomizedDecision {
            threshold: t.clone(),
            quantile: q,
            randomize_prob,
        })
    }

    /// Classifies an observed LR value at threshold `t`, using the uniform
    /// draw `u` for the tie-breaking randomization.
    pub fn decision_rule(&self, t: &Rational, l_observed: &Rational, u: f64) -> Result<Class> {
        Ok(self.randomized_rule(t)?.decide(l_observed, u))
    }

    /// False positive rate of the randomized rule at `t`, computed as
    /// `P_minus(L > q_t) + P_minus(L = q_t) r(t)`. Equals `1 - t` for every
    /// `t`; the identity is this module's core self-check, not an assumption.
    pub fn false_positive_rate(&self, t: &Rational) -> Result<Rational> {
        let rule = self.randomized_rule(t)?;
        let h = self.cdf_minus(&rule.quantile)?;
        let h_left = self.cdf_minus_left(&rule.quantile)?;
        Ok(Rational::one() - &h + (&h - &h_left) * &rule.randomize_prob)
    }

    /// False positive rate with the randomization term removed: a step
    /// function of `t`, demonstrating why randomization is needed.
    pub fn false_positive_rate_unrandomized(&self, t: &Rational) -> Result<Rational> {
        let q = self.quantile_minus(t)?;
        Ok(Rational::one() - self.cdf_minus(&q)?)
    }

    /// True positive rate of the randomized rule at `t`, via the jump-ratio
    /// route `P_plus(L > q_t) + P_plus(L = q_t) r(t)`.
    pub fn true_positive_rate(&self, t: &Rational) -> Result<Rational> {
        let rule = self.randomized_rule(t)?;
        let hp = self.cdf_plus(&rule.quantile)?;
        let hp_left = self.cdf_plus_left(&rule.quantile)?;
        Ok(Rational::one() - &hp + (&hp - &hp_left) * &rule.randomize_prob)
    }

    /// Proper ROC value at `x`, evaluated through the closed form
    /// `1 - H_plus(q) + q (H_minus(q) - (1 - x))` with `q = quantile(1 - x)`.
    pub fn roc_at(&self, x: &Rational) -> Result<Rational> {
        self.require_exact()?;
        if x.is_zero() {
            return Ok(Rational::zero());
        }
        if x.is_one() {
            return Ok(Rational::one());
        }
        check_open_unit(x)?;
        let t = Rational::one() - x;
        let q = self.quantile_minus(&t)?;
        let hp = self.cdf_plus(&q)?;
        let hm = self.cdf_minus(&q)?;
        Ok(Rational::one() - hp + &q * (hm - t))
    }

    // --- f64 distribution functions (atoms + sampled part) ---------------

    /// `H_minus(l)` as a Monte Carlo estimate when the distribution has a
    /// sampled part; exact-to-f64 otherwise.
    pub fn cdf_minus_f64(&self, l: f64) -> f64 {
        self.combined_cdf(l, Class::Minus, false)
    }

    pub fn cdf_minus_left_f64(&self, l: f64) -> f64 {
        self.combined_cdf(l, Class::Minus, true)
    }

    pub fn cdf_plus_f64(&self, l: f64) -> f64 {
        self.combined_cdf(l, Class::Plus, false)
    }

    pub fn cdf_plus_left_f64(&self, l: f64) -> f64 {
        self.combined_cdf(l, Class::Plus, true)
    }

    fn combined_cdf(&self, l: f64, class: Class, strict: bool) -> f64 {
        let (cum, weight, samples) = match class {
            Class::Minus => (
                &self.atom_cum_minus_f64,
                self.continuous.as_ref().map_or(0.0, |c| c.weight_minus),
                self.continuous.as_ref().map(|c| &c.minus),
            ),
            Class::Plus => (
                &self.atom_cum_plus_f64,
                self.continuous.as_ref().map_or(0.0, |c| c.weight_plus),
                self.continuous.as_ref().map(|c| &c.plus),
            ),
        };
        let k = if strict {
            self.atom_values_f64.partition_point(|&v| v < l)
        } else {
            self.atom_values_f64.partition_point(|&v| v <= l)
        };
        let atom_part = if k == 0 { 0.0 } else { cum[k - 1] };
        let sample_part = samples.map_or(0.0, |s| {
            let m = if strict {
                s.partition_point(|&v| v < l)
            } else {
                s.partition_point(|&v| v <= l)
            };
            weight * m as f64 / s.len() as f64
        });
        atom_part + sample_part
    }

    /// Quantile of `H_minus` for sampled or mixed distributions.
    pub fn quantile_minus_f64(&self, t: f64) -> Result<f64> {
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::ThresholdOutOfRange);
        }
        let mut candidates: Vec<f64> = self.atom_values_f64.clone();
        if let Some(c) = &self.continuous {
            candidates.extend_from_slice(&c.minus);
            candidates.sort_by(|a, b| a.partial_cmp(b).unwrap());
        }
        let idx = binary_search_first(&candidates, |&v| self.cdf_minus_f64(v) >= t);
        match idx {
            Some(i) => Ok(candidates[i]),
            None => Ok(*candidates.last().unwrap()),
        }
    }

    /// Monte Carlo false positive rate at `t`; converges to `1 - t`.
    pub fn false_positive_rate_f64(&self, t: f64) -> Result<f64> {
        let q = self.quantile_minus_f64(t)?;
        let h = self.cdf_minus_f64(q);
        let h_left = self.cdf_minus_left_f64(q);
        let jump = h - h_left;
        if jump > 0.0 {
            let r = (h - t) / jump;
            Ok(1.0 - h + jump * r)
        } else {
            Ok(1.0 - h)
        }
    }

    // --- curve construction ----------------------------------------------

    /// The proper ROC curve of the LR rule: exact piecewise-linear segments
    /// (one per atom, slopes equal to the atom values in decreasing order)
    /// when the distribution is exact, a sampled polyline otherwise.
    /// Endpoints `(0,0)` and `(1,1)` are always included.
    pub fn proper_roc(&self) -> RocCurve {
        if self.exact {
            let steps: Vec<(Rational, Rational)> = self
                .atoms
                .iter()
                .rev()
                .map(|a| (a.value.clone(), a.mass_minus.clone()))
                .collect();
            curve::exact_from_slope_steps(&steps)
                .expect("atoms of a valid distribution always yield a valid curve")
        } else {
            let mut points = self.operating_points_f64();
            points.push((0.0, 0.0));
            points.push((1.0, 1.0));
            points.sort_by(|a, b| a.partial_cmp(b).unwrap());
            points.dedup();
            RocCurve::sampled(points)
                .expect("operating points of a distribution always form a valid polyline")
        }
    }

    /// Operating points `(1 - H_minus(c), 1 - H_plus(c))` over thresholds
    /// `c`: every atom value plus its left limit, and the sampled part's
    /// distinct values (thinned to at most 1024 thresholds).
    fn operating_points_f64(&self) -> Vec<(f64, f64)> {
        const MAX_SAMPLE_THRESHOLDS: usize = 1024;
        let mut thresholds: Vec<f64> = Vec::new();
        if let Some(c) = &self.continuous {
            let mut pooled: Vec<f64> = c.minus.iter().chain(c.plus.iter()).copied().collect();
            pooled.sort_by(|a, b| a.partial_cmp(b).unwrap());
            pooled.dedup();
            if pooled.len() > MAX_SAMPLE_THRESHOLDS {
                // Index thinning keeps thresholds at pooled quantiles.
                let step = pooled.len() as f64 / MAX_SAMPLE_THRESHOLDS as f64;
                let mut thinned: Vec<f64> = (0..MAX_SAMPLE_THRESHOLDS)
                    .map(|i| pooled[(i as f64 * step) as usize])
                    .collect();
                thinned.push(*pooled.last().unwrap());
                thinned.dedup();
                thresholds = thinned;
            } else {
                thresholds = pooled;
            }
        }
        thresholds.extend_from_slice(&self.atom_values_f64);
        let mut points: Vec<(f64, f64)> = thresholds
            .iter()
            .map(|&c| (1.0 - self.cdf_minus_f64(c), 1.0 - self.cdf_plus_f64(c)))
            .collect();
        // Left-limit points delimit each atom's randomization segment.
        points.extend(
            self.atom_values_f64
                .iter()
                .map(|&a| (1.0 - self.cdf_minus_left_f64(a), 1.0 - self.cdf_plus_left_f64(a))),
        );
        points
    }

    /// Non-randomized operating points of the rule, `(fpr, tpr)` sorted by
    /// fpr, including the endpoints `(0,0)` and `(1,1)`. Points are taken at
    /// the distribution's finest known granularity, so contingency-table
    /// categories sharing an LR value each contribute a point.
    pub fn roc_points(&self) -> Result<Vec<(Rational, Rational)>> {
        self.require_exact()?;
        let mut points = vec![(Rational::zero(), Rational::zero())];
        let mut x = Rational::zero();
        let mut y = Rational::zero();
        for atom in self.refinement().iter().rev() {
            x += &atom.mass_minus;
            y += &atom.mass_plus;
            points.push((x.clone(), y.clone()));
        }
        Ok(points)
    }

    /// Draws `n` LR values under each class and returns the corresponding
    /// sampled distribution. Deterministic given the seed.
    pub fn sample(&self, n: usize, seed: u64) -> Result<LrDistribution> {
        self.require_exact()?;
        if n == 0 {
            return Err(Error::InvalidDistribution(
                "sample size must be positive".to_string(),
            ));
        }
        let values = &self.atom_values_f64;
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let draw = |cum: &[f64], rng: &mut ChaCha12Rng| -> f64 {
            let u: f64 = rng.random();
            let k = cum.partition_point(|&c| c <= u);
            values[k.min(values.len() - 1)]
        };
        let minus: Vec<f64> = (0..n)
            .map(|_| draw(&self.atom_cum_minus_f64, &mut rng))
            .collect();
        let plus: Vec<f64> = (0..n)
            .map(|_| draw(&self.atom_cum_plus_f64, &mut rng))
            .collect();
        LrDistribution::from_samples(minus, plus)
    }
}

fn check_open_unit(t: &Rational) -> Result<()> {
    if t <= &Rational::zero() || t >= &Rational::one() {
        return Err(Error::ThresholdOutOfRange);
    }
    Ok(())
}

fn binary_search_first<T>(items: &[T], pred: impl Fn(&T) -> bool) -> Option<usize> {
    let mut lo = 0usize;
    let mut hi = items.len();
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(&items[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    if lo < items.len() {
        Some(lo)
    } else {
        None
    }
}

impl LrDistribution {
    /// The degenerate distribution of `L` when the two measures coincide:
    /// a single atom at 1.
    pub fn degenerate() -> Self {
        LrDistribution::from_atoms(vec![(
            Rational::one(),
            Rational::one(),
            Rational::one(),
        )])
        .expect("the degenerate distribution is valid")
    }

    /// Change-of-measure identity `E_minus[L] = 1`, exactly, for exact
    /// distributions.
    pub fn mean_lr_under_minus(&self) -> Result<Rational> {
        self.require_exact()?;
        Ok(self
            .atoms
            .iter()
            .map(|a| &a.value * &a.mass_minus)
            .sum())
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::{finite_table, three_rectangles};
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn finite_table_atoms_match_published_steps() {
        let d = finite_table();
        let values: Vec<Rational> = d.atoms().iter().map(|a| a.value.clone()).collect();
        assert_eq!(
            values,
            vec![ratio(58, 561), ratio(58, 153), ratio(58, 51), ratio(319, 17)]
        );
        // H_minus steps 33/58, 45/58, 56/58, 1 and H_plus steps 3/51, 7/51, 18/51, 1.
        assert_eq!(d.cdf_minus(&ratio(58, 561)).unwrap(), ratio(33, 58));
        assert_eq!(d.cdf_minus(&ratio(58, 153)).unwrap(), ratio(45, 58));
        assert_eq!(d.cdf_minus(&ratio(58, 51)).unwrap(), ratio(56, 58));
        assert_eq!(d.cdf_minus(&ratio(319, 17)).unwrap(), ratio(1, 1));
        assert_eq!(d.cdf_plus(&ratio(58, 561)).unwrap(), ratio(3, 51));
        assert_eq!(d.cdf_plus(&ratio(58, 153)).unwrap(), ratio(7, 51));
        assert_eq!(d.cdf_plus(&ratio(58, 51)).unwrap(), ratio(18, 51));
        // Published value at l = 58/153.
        assert_eq!(d.cdf_minus(&ratio(58, 153)).unwrap(), ratio(45, 58));
    }

    #[test]
    fn cdf_below_smallest_atom_is_zero() {
        let d = finite_table();
        assert_eq!(d.cdf_minus(&ratio(1, 100)).unwrap(), ratio(0, 1));
        assert_eq!(d.cdf_plus_left(&ratio(58, 561)).unwrap(), ratio(0, 1));
    }

    #[test]
    fn three_rectangles_cdf() {
        let d = three_rectangles();
        // Mass of the pieces with LR <= 7/6: the (0,1] and (2,3] rectangles.
        assert_eq!(d.cdf_minus(&ratio(7, 6)).unwrap(), ratio(2, 3));
    }

    #[test]
    fn quantiles_scan_the_atoms() {
        let d = finite_table();
        assert_eq!(d.quantile_minus(&ratio(1, 2)).unwrap(), ratio(58, 561));
        // Just above the first jump 33/58.
        let t = ratio(33, 58) + ratio(1, 1000);
        assert_eq!(d.quantile_minus(&t).unwrap(), ratio(58, 153));
        assert!(d.quantile_minus(&ratio(0, 1)).is_err());
        assert!(d.quantile_minus(&ratio(1, 1)).is_err());
        assert!(d.quantile_minus(&ratio(3, 2)).is_err());
    }

    #[test]
    fn degenerate_quantile_is_one() {
        let d = LrDistribution::degenerate();
        for k in 1..10 {
            assert_eq!(d.quantile_minus(&ratio(k, 10)).unwrap(), ratio(1, 1));
        }
    }

    #[test]
    fn quantile_equivalence_q_le_l_iff_h_ge_t() {
        let d = finite_table();
        let ls = [
            ratio(1, 100),
            ratio(58, 561),
            ratio(1, 5),
            ratio(58, 153),
            ratio(58, 51),
            ratio(319, 17),
            ratio(20, 1),
        ];
        for k in 1..40 {
            let t = ratio(k, 40);
            let q = d.quantile_minus(&t).unwrap();
            for l in &ls {
                assert_eq!(&q <= l, d.cdf_minus(l).unwrap() >= t, "t={t} l={l}");
            }
        }
    }

    #[test]
    fn decision_rule_published_case() {
        let d = finite_table();
        // q_{0.9} = 58/51, and 319/17 exceeds it for any u.
        let t = ratio(9, 10);
        assert_eq!(d.quantile_minus(&t).unwrap(), ratio(58, 51));
        for u in [0.0, 0.5, 0.999] {
            assert_eq!(
                d.decision_rule(&t, &ratio(319, 17), u).unwrap(),
                Class::Plus
            );
        }
    }

    #[test]
    fn decision_rule_boundary_randomization() {
        let d = finite_table();
        let t = ratio(1, 2);
        let rule = d.randomized_rule(&t).unwrap();
        assert_eq!(rule.quantile, ratio(58, 561));
        assert_eq!(rule.randomize_prob, ratio(4, 33));
        assert_eq!(rule.decide(&ratio(58, 561), 0.0), Class::Plus);
        assert_eq!(rule.decide(&ratio(58, 561), 0.99), Class::Minus);
    }

    #[test]
    fn lr_below_every_atom_is_always_negative() {
        let d = finite_table();
        let tiny = ratio(1, 1000);
        for k in 1..20 {
            let t = ratio(k, 20);
            for u in [0.0, 0.7] {
                assert_eq!(d.decision_rule(&t, &tiny, u).unwrap(), Class::Minus);
            }
        }
    }

    #[test]
    fn no_randomization_when_t_hits_a_step() {
        let d = finite_table();
        let rule = d.randomized_rule(&ratio(33, 58)).unwrap();
        assert_eq!(rule.randomize_prob, ratio(0, 1));
    }

    #[test]
    fn fpr_identity_published_values() {
        let d = finite_table();
        assert_eq!(d.false_positive_rate(&ratio(1, 4)).unwrap(), ratio(3, 4));
        let diag = LrDistribution::degenerate();
        assert_eq!(diag.false_positive_rate(&ratio(1, 2)).unwrap(), ratio(1, 2));
    }

    #[test]
    fn fpr_by_enumeration_oracle() {
        // Independent oracle: enumerate P(L > q) and P(L = q) by scanning the
        // atom list, then apply the randomization weight.
        let d = three_rectangles();
        let t = ratio(1, 3);
        let q = d.quantile_minus(&t).unwrap();
        let mut above = Rational::zero();
        let mut at = Rational::zero();
        let mut below = Rational::zero();
        for atom in d.atoms() {
            if atom.value > q {
                above += &atom.mass_minus;
            } else if atom.value == q {
                at += &atom.mass_minus;
            } else {
                below += &atom.mass_minus;
            }
        }
        let h = &below + &at;
        let r = (&h - &t) / &at;
        let expected = &above + &at * &r;
        assert_eq!(expected, ratio(2, 3));
        assert_eq!(d.false_positive_rate(&t).unwrap(), expected);
    }

    #[test]
    fn fpr_identity_dense_grid_both_fixtures() {
        for d in [finite_table(), three_rectangles()] {
            for k in 1..200 {
                let t = ratio(k, 200);
                assert_eq!(
                    d.false_positive_rate(&t).unwrap(),
                    Rational::one() - &t,
                    "t = {k}/200"
                );
            }
        }
    }

    #[test]
    fn unrandomized_fpr_is_a_step_function() {
        let d = finite_table();
        let mut values = std::collections::BTreeSet::new();
        let mut exact_everywhere = true;
        for k in 1..100 {
            let t = ratio(k, 100);
            let fpr = d.false_positive_rate_unrandomized(&t).unwrap();
            if fpr != Rational::one() - &t {
                exact_everywhere = false;
            }
            values.insert(fpr);
        }
        // At most one value per atom; 99 thresholds collapse onto them.
        assert!(values.len() <= d.atoms().len());
        assert!(!exact_everywhere);
    }

    #[test]
    fn tpr_jump_route_matches_closed_form_route() {
        for d in [finite_table(), three_rectangles()] {
            for k in 1..100 {
                let t = ratio(k, 100);
                let x = Rational::one() - &t;
                assert_eq!(
                    d.true_positive_rate(&t).unwrap(),
                    d.roc_at(&x).unwrap(),
                    "t = {k}/100"
                );
            }
        }
    }

    #[test]
    fn roc_points_include_category_granularity() {
        let d = finite_table();
        let points = d.roc_points().unwrap();
        let expected = vec![
            (ratio(0, 1), ratio(0, 1)),
            (ratio(2, 58), ratio(33, 51)),
            (ratio(13, 58), ratio(44, 51)),
            (ratio(19, 58), ratio(46, 51)),
            (ratio(25, 58), ratio(48, 51)),
            (ratio(1, 1), ratio(1, 1)),
        ];
        assert_eq!(points, expected);
    }

    #[test]
    fn roc_points_degenerate_is_endpoints_only() {
        let d = LrDistribution::degenerate();
        assert_eq!(
            d.roc_points().unwrap(),
            vec![(ratio(0, 1), ratio(0, 1)), (ratio(1, 1), ratio(1, 1))]
        );
    }

    #[test]
    fn rejects_one_sided_atoms_and_bad_ratios() {
        let one_sided = LrDistribution::from_atoms(vec![
            (ratio(1, 2), ratio(1, 2), ratio(1, 4)),
            (ratio(3, 2), ratio(1, 2), ratio(3, 4)),
            (ratio(2, 1), ratio(0, 1), ratio(1, 100)),
        ]);
        assert!(one_sided.is_err());
        let bad_ratio =
            LrDistribution::from_atoms(vec![(ratio(2, 1), ratio(1, 1), ratio(1, 1))]);
        assert!(bad_ratio.is_err());
        let bad_mass = LrDistribution::from_atoms(vec![(
            ratio(1, 2),
            ratio(1, 1),
            ratio(1, 2),
        )]);
        assert!(bad_mass.is_err());
    }

    #[test]
    fn change_of_measure_identity() {
        for d in [finite_table(), three_rectangles(), LrDistribution::degenerate()] {
            assert!(d.mean_lr_under_minus().unwrap().is_one());
        }
    }

    #[test]
    fn sampled_fpr_converges_to_identity() {
        let d = three_rectangles().sample(50_000, 7).unwrap();
        for t in [0.2, 0.5, 0.8] {
            let fpr = d.false_positive_rate_f64(t).unwrap();
            assert!((fpr - (1.0 - t)).abs() < 1e-9, "t={t} fpr={fpr}");
        }
    }

    #[test]
    fn sampling_is_seed_deterministic() {
        let d = three_rectangles();
        let a = d.sample(1000, 3).unwrap();
        let b = d.sample(1000, 3).unwrap();
        assert_eq!(a.samples(Class::Minus), b.samples(Class::Minus));
        assert_eq!(a.samples(Class::Plus), b.samples(Class::Plus));
    }

    #[test]
    fn mixed_distribution_builds_and_evaluates() {
        // Atom at 2 with a quarter of the minus mass and half the plus mass;
        // continuous remainder represented by draws.
        let d = LrDistribution::from_mixed(
            vec![(ratio(2, 1), ratio(1, 4), ratio(1, 2))],
            vec![0.1, 0.3, 0.5, 0.7, 0.9],
            vec![0.5, 0.7, 0.9, 1.1, 1.3],
        )
        .unwrap();
        assert!(!d.is_exact());
        assert!(d.cdf_minus(&ratio(2, 1)).is_err());
        assert!(d.roc_points().is_err());
        let h = d.cdf_minus_f64(2.0);
        assert!((h - 1.0).abs() < 1e-12);
        let h_left = d.cdf_minus_left_f64(2.0);
        assert!((h_left - 0.75).abs() < 1e-12);
        let curve = d.proper_roc();
        assert!(curve.max_concavity_violation() < 0.35);
    }
}
