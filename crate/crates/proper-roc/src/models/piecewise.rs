//! Pair of piecewise-constant densities on a shared interval partition.
//!
//! Two absolutely continuous measures whose densities are piecewise constant
//! have a *discrete* likelihood ratio: one atom per distinct density ratio.
//! Thresholding the raw variable instead of the LR gives a generally
//! improper curve, which makes this family the canonical dominance example.

use num_traits::{One, Zero};

use crate::curve::{exact_from_slope_steps, RocCurve};
use crate::lr::LrDistribution;
use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct PiecewiseConstantPair {
    /// `k + 1` strictly increasing breakpoints delimiting `k` pieces.
    breakpoints: Vec<Rational>,
    density_minus: Vec<Rational>,
    density_plus: Vec<Rational>,
}

impl PiecewiseConstantPair {
    pub fn new(
        breakpoints: Vec<Rational>,
        density_minus: Vec<Rational>,
        density_plus: Vec<Rational>,
    ) -> Result<Self> {
        let k = density_minus.len();
        if k == 0 || density_plus.len() != k || breakpoints.len() != k + 1 {
            return Err(Error::InvalidModel(format!(
                "need k pieces with k+1 breakpoints (got {} breakpoints, {} and {} densities)",
                breakpoints.len(),
                k,
                density_plus.len()
            )));
        }
        for w in breakpoints.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::InvalidModel(
                    "breakpoints must be strictly increasing".to_string(),
                ));
            }
        }
        let mut mass_minus = Rational::zero();
        let mut mass_plus = Rational::zero();
        for i in 0..k {
            if density_minus[i] <= Rational::zero() {
                return Err(Error::InvalidModel(
                    "the negative density must be strictly positive on the support".to_string(),
                ));
            }
            if density_plus[i] < Rational::zero() {
                return Err(Error::InvalidModel(
                    "densities must be nonnegative".to_string(),
                ));
            }
            let len = &breakpoints[i + 1] - &breakpoints[i];
            mass_minus += &density_minus[i] * &len;
            mass_plus += &density_plus[i] * &len;
        }
        if !mass_minus.is_one() || !mass_plus.is_one() {
            return Err(Error::InvalidModel(format!(
                "each density must integrate to 1 (got {mass_minus} and {mass_plus})"
            )));
        }
        Ok(PiecewiseConstantPair {
            breakpoints,
            density_minus,
            density_plus,
        })
    }

    /// The three-rectangles pair: uniform on (0,3] against the density with
    /// values 1/18, 10/18, 7/18 on unit pieces.
    pub fn three_rectangles() -> Self {
        let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
        PiecewiseConstantPair::new(
            vec![r(0, 1), r(1, 1), r(2, 1), r(3, 1)],
            vec![r(1, 3), r(1, 3), r(1, 3)],
            vec![r(1, 18), r(10, 18), r(7, 18)],
        )
        .expect("the three-rectangles pair is valid")
    }

    pub fn pieces(&self) -> usize {
        self.density_minus.len()
    }

    /// LR value on piece `i`.
    pub fn lr_on_piece(&self, i: usize) -> Rational {
        &self.density_plus[i] / &self.density_minus[i]
    }

    fn piece_masses(&self, i: usize) -> (Rational, Rational) {
        let len = &self.breakpoints[i + 1] - &self.breakpoints[i];
        (&self.density_minus[i] * &len, &self.density_plus[i] * &len)
    }

    /// Exact LR distribution: one atom per density ratio, masses aggregated
    /// over pieces that share a ratio. A piece with zero positive density
    /// breaks mutual absolute continuity and is rejected.
    pub fn lr_distribution(&self) -> Result<LrDistribution> {
        let entries = (0..self.pieces())
            .map(|i| {
                let (mass_minus, mass_plus) = self.piece_masses(i);
                (self.lr_on_piece(i), mass_minus, mass_plus)
            })
            .collect();
        LrDistribution::from_atoms(entries)
    }

    /// ROC curve of thresholding the raw variable itself (declare positive
    /// for large values): segments follow the spatial order of the pieces
    /// from the right, not the LR order, so the curve is generally improper.
    pub fn score_roc(&self) -> RocCurve {
        let steps: Vec<(Rational, Rational)> = (0..self.pieces())
            .rev()
            .map(|i| {
                let (mass_minus, _) = self.piece_masses(i);
                (self.lr_on_piece(i), mass_minus)
            })
            .collect();
        exact_from_slope_steps(&steps).expect("piece masses span the unit square")
    }
}
