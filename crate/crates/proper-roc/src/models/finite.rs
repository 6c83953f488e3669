//! Pair of finite measures given as per-category counts, as in a diagnostic
//! contingency table.

use num_bigint::BigInt;

use crate::lr::LrDistribution;
use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct FiniteTablePair {
    labels: Vec<String>,
    counts_minus: Vec<u64>,
    counts_plus: Vec<u64>,
}

impl FiniteTablePair {
    pub fn new(
        labels: Vec<String>,
        counts_minus: Vec<u64>,
        counts_plus: Vec<u64>,
    ) -> Result<Self> {
        if labels.is_empty()
            || counts_minus.len() != labels.len()
            || counts_plus.len() != labels.len()
        {
            return Err(Error::InvalidModel(
                "labels and both count rows must have equal positive length".to_string(),
            ));
        }
        if counts_minus.iter().sum::<u64>() == 0 || counts_plus.iter().sum::<u64>() == 0 {
            return Err(Error::InvalidModel(
                "each class needs at least one observation".to_string(),
            ));
        }
        Ok(FiniteTablePair {
            labels,
            counts_minus,
            counts_plus,
        })
    }

    /// The 109-patient radiology table from the Encyclopedia of
    /// Biostatistics: five ordinal levels, 58 non-diseased and 51 diseased.
    pub fn encyclopedia_radiology() -> Self {
        FiniteTablePair::new(
            ["very-mild", "mild", "neutral", "serious", "very-serious"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            vec![33, 6, 6, 11, 2],
            vec![3, 2, 2, 11, 33],
        )
        .expect("the published table is valid")
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Exact LR distribution of the empirical measures. Categories with
    /// equal LR merge into one atom (the per-category granularity is kept
    /// for operating points); categories observed under exactly one class
    /// break mutual absolute continuity and are rejected.
    pub fn lr_distribution(&self) -> Result<LrDistribution> {
        let total_minus: u64 = self.counts_minus.iter().sum();
        let total_plus: u64 = self.counts_plus.iter().sum();
        let mut entries = Vec::new();
        for (i, label) in self.labels.iter().enumerate() {
            let (cm, cp) = (self.counts_minus[i], self.counts_plus[i]);
            if cm == 0 && cp == 0 {
                continue;
            }
            if cm == 0 || cp == 0 {
                return Err(Error::InvalidModel(format!(
                    "category `{label}` has observations under only one class"
                )));
            }
            let mass_minus = Rational::new(BigInt::from(cm), BigInt::from(total_minus));
            let mass_plus = Rational::new(BigInt::from(cp), BigInt::from(total_plus));
            let value = &mass_plus / &mass_minus;
            entries.push((value, mass_minus, mass_plus));
        }
        LrDistribution::from_atoms(entries)
    }

    /// Per-observation scores equal to the category index in the table's
    /// spatial order, the raw-score baseline for staircase comparisons.
    pub fn index_scores(&self) -> (Vec<f64>, Vec<f64>) {
        let expand = |counts: &[u64]| {
            counts
                .iter()
                .enumerate()
                .flat_map(|(i, &c)| std::iter::repeat_n(i as f64, c as usize))
                .collect()
        };
        (expand(&self.counts_minus), expand(&self.counts_plus))
    }
}
