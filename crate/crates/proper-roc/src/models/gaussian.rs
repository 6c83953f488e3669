//! Multivariate Gaussian pair: the quadratic discriminant score, the best
//! linear (Su–Liu) score, the binormal ROC formula, and LR sampling.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::curve::RocCurve;
use crate::lr::LrDistribution;
use crate::{Class, Error, Result};

#[derive(Debug, Clone)]
pub struct GaussianPair {
    mu_minus: DVector<f64>,
    mu_plus: DVector<f64>,
    sigma_minus: DMatrix<f64>,
    sigma_plus: DMatrix<f64>,
    chol_minus: Cholesky<f64, Dyn>,
    chol_plus: Cholesky<f64, Dyn>,
    log_det_minus: f64,
    log_det_plus: f64,
}

fn build_covariance(raw: &[Vec<f64>], dim: usize, which: &str) -> Result<DMatrix<f64>> {
    if raw.len() != dim || raw.iter().any(|row| row.len() != dim) {
        return Err(Error::InvalidModel(format!(
            "{which} covariance must be a {dim}x{dim} matrix"
        )));
    }
    let mut m = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            let v = raw[i][j];
            if !v.is_finite() {
                return Err(Error::InvalidModel(format!(
                    "{which} covariance has a non-finite entry"
                )));
            }
            m[(i, j)] = v;
        }
    }
    // Tolerate small printed asymmetries by projecting onto (A + A^T)/2.
    let sym = (&m + m.transpose()) * 0.5;
    Ok(sym)
}

fn cholesky_of(m: &DMatrix<f64>, which: &str) -> Result<(Cholesky<f64, Dyn>, f64)> {
    let chol = Cholesky::new(m.clone()).ok_or_else(|| {
        Error::InvalidModel(format!("{which} covariance is not positive definite"))
    })?;
    let log_det = 2.0 * chol.l().diagonal().iter().map(|d| d.ln()).sum::<f64>();
    Ok((chol, log_det))
}

impl GaussianPair {
    pub fn new(
        mu_minus: Vec<f64>,
        sigma_minus: Vec<Vec<f64>>,
        mu_plus: Vec<f64>,
        sigma_plus: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let dim = mu_minus.len();
        if dim == 0 || mu_plus.len() != dim {
            return Err(Error::InvalidModel(
                "mean vectors must be nonempty and of equal dimension".to_string(),
            ));
        }
        if mu_minus.iter().chain(mu_plus.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidModel("non-finite mean entry".to_string()));
        }
        let sigma_minus = build_covariance(&sigma_minus, dim, "negative-class")?;
        let sigma_plus = build_covariance(&sigma_plus, dim, "positive-class")?;
        let (chol_minus, log_det_minus) = cholesky_of(&sigma_minus, "negative-class")?;
        let (chol_plus, log_det_plus) = cholesky_of(&sigma_plus, "positive-class")?;
        Ok(GaussianPair {
            mu_minus: DVector::from_vec(mu_minus),
            mu_plus: DVector::from_vec(mu_plus),
            sigma_minus,
            sigma_plus,
            chol_minus,
            chol_plus,
            log_det_minus,
            log_det_plus,
        })
    }

    /// Standard normal negative class against a positive class with
    /// independent components `N(mu_i, sd_i^2)`.
    pub fn standard_vs_independent(mu: &[f64], sd: &[f64]) -> Result<Self> {
        let p = mu.len();
        if sd.len() != p {
            return Err(Error::InvalidModel(
                "means and standard deviations must have equal length".to_string(),
            ));
        }
        let eye = (0..p)
            .map(|i| (0..p).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        let diag = (0..p)
            .map(|i| {
                (0..p)
                    .map(|j| if i == j { sd[i] * sd[i] } else { 0.0 })
                    .collect()
            })
            .collect();
        GaussianPair::new(vec![0.0; p], eye, mu.to_vec(), diag)
    }

    /// Maximum-likelihood fit (sample means, 1/n covariances) from raw rows.
    pub fn fit(minus_rows: &[Vec<f64>], plus_rows: &[Vec<f64>]) -> Result<Self> {
        fn moments(rows: &[Vec<f64>], which: &str) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
            if rows.len() < 2 {
                return Err(Error::InvalidModel(format!(
                    "{which} class needs at least 2 rows to fit"
                )));
            }
            let p = rows[0].len();
            if p == 0 || rows.iter().any(|r| r.len() != p) {
                return Err(Error::InvalidModel("inconsistent row lengths".to_string()));
            }
            let n = rows.len() as f64;
            let mut mean = vec![0.0; p];
            for row in rows {
                for (m, v) in mean.iter_mut().zip(row) {
                    *m += v / n;
                }
            }
            let mut cov = vec![vec![0.0; p]; p];
            for row in rows {
                for i in 0..p {
                    for j in 0..p {
                        cov[i][j] += (row[i] - mean[i]) * (row[j] - mean[j]) / n;
                    }
                }
            }
            Ok((mean, cov))
        }
        let (mu_minus, sigma_minus) = moments(minus_rows, "negative")?;
        let (mu_plus, sigma_plus) = moments(plus_rows, "positive")?;
        GaussianPair::new(mu_minus, sigma_minus, mu_plus, sigma_plus)
    }

    pub fn dim(&self) -> usize {
        self.mu_minus.len()
    }

    fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::InvalidModel(format!(
                "expected a {}-vector, got length {}",
                self.dim(),
                x.len()
            )));
        }
        Ok(())
    }

    fn mahalanobis_sq(&self, x: &DVector<f64>, class: Class) -> f64 {
        let (mu, chol) = match class {
            Class::Minus => (&self.mu_minus, &self.chol_minus),
            Class::Plus => (&self.mu_plus, &self.chol_plus),
        };
        let d = x - mu;
        chol.solve(&d).dot(&d)
    }

    /// Quadratic discriminant score
    /// `(x - mu_minus)' S_minus^-1 (x - mu_minus) - (x - mu_plus)' S_plus^-1 (x - mu_plus)`,
    /// computed through triangular solves. The score equals
    /// `2 log LR(x) - (log det S_minus - log det S_plus)`, so it is a
    /// strictly increasing transformation of the LR.
    pub fn qda_score(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x)?;
        let x = DVector::from_column_slice(x);
        Ok(self.mahalanobis_sq(&x, Class::Minus) - self.mahalanobis_sq(&x, Class::Plus))
    }

    pub fn log_lr(&self, x: &[f64]) -> Result<f64> {
        Ok(0.5 * (self.log_det_minus - self.log_det_plus) + 0.5 * self.qda_score(x)?)
    }

    pub fn log_pdf(&self, class: Class, x: &[f64]) -> Result<f64> {
        self.check_dim(x)?;
        let v = DVector::from_column_slice(x);
        let log_det = match class {
            Class::Minus => self.log_det_minus,
            Class::Plus => self.log_det_plus,
        };
        let p = self.dim() as f64;
        Ok(-0.5 * (p * (2.0 * std::f64::consts::PI).ln() + log_det + self.mahalanobis_sq(&v, class)))
    }

    /// Su–Liu best-linear weights: the solution of
    /// `(S_minus + S_plus) w = mu_plus - mu_minus`.
    pub fn su_liu_weights(&self) -> Result<Vec<f64>> {
        let sum = &self.sigma_minus + &self.sigma_plus;
        let chol = Cholesky::new(sum).ok_or_else(|| {
            Error::InvalidModel("covariance sum is not positive definite".to_string())
        })?;
        let w = chol.solve(&(&self.mu_plus - &self.mu_minus));
        Ok(w.iter().copied().collect())
    }

    pub fn su_liu_score(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x)?;
        let w = self.su_liu_weights()?;
        Ok(w.iter().zip(x).map(|(wi, xi)| wi * xi).sum())
    }

    /// Mean and variance of the Su–Liu score under each class.
    pub fn su_liu_distributions(&self) -> Result<((f64, f64), (f64, f64))> {
        let w = DVector::from_vec(self.su_liu_weights()?);
        let mean_minus = w.dot(&self.mu_minus);
        let mean_plus = w.dot(&self.mu_plus);
        let var_minus = (&self.sigma_minus * &w).dot(&w);
        let var_plus = (&self.sigma_plus * &w).dot(&w);
        Ok(((mean_minus, var_minus), (mean_plus, var_plus)))
    }

    /// Binormal intercept and slope of the Su–Liu score ROC:
    /// `A = (m_plus - m_minus)/sd_plus`, `B = sd_minus/sd_plus`.
    pub fn binormal_params(&self) -> Result<(f64, f64)> {
        let ((m_minus, v_minus), (m_plus, v_plus)) = self.su_liu_distributions()?;
        Ok(((m_plus - m_minus) / v_plus.sqrt(), (v_minus / v_plus).sqrt()))
    }

    /// Draws `n` observation rows under the given class.
    pub fn sample_rows(&self, class: Class, n: usize, rng: &mut impl Rng) -> Vec<Vec<f64>> {
        let (mu, chol) = match class {
            Class::Minus => (&self.mu_minus, &self.chol_minus),
            Class::Plus => (&self.mu_plus, &self.chol_plus),
        };
        let l = chol.l();
        (0..n)
            .map(|_| {
                let z = DVector::from_fn(self.dim(), |_, _| rng.sample::<f64, _>(StandardNormal));
                let x = mu + &l * z;
                x.iter().copied().collect()
            })
            .collect()
    }

    /// `n` LR draws under each class via the log-density difference.
    /// Deterministic given the seed.
    pub fn lr_sample(&self, n: usize, seed: u64) -> Result<LrDistribution> {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let draw = |class: Class, rng: &mut ChaCha12Rng| -> Result<Vec<f64>> {
            self.sample_rows(class, n, rng)
                .iter()
                .map(|row| Ok(self.log_lr(row)?.exp()))
                .collect()
        };
        let minus = draw(Class::Minus, &mut rng)?;
        let plus = draw(Class::Plus, &mut rng)?;
        LrDistribution::from_samples(minus, plus)
    }
}

/// The binormal ROC `x -> Phi(a + b * Phi^-1(x))` sampled on the given grid
/// of interior false positive rates. Improper (hooked) whenever `b != 1`.
pub fn binormal_roc(a: f64, b: f64, grid: &[f64]) -> Result<RocCurve> {
    if b <= 0.0 || !b.is_finite() || !a.is_finite() {
        return Err(Error::InvalidModel(format!(
            "binormal slope must be positive and finite (got a={a}, b={b})"
        )));
    }
    let normal = Normal::new(0.0, 1.0).unwrap();
    let mut points = Vec::with_capacity(grid.len());
    for &x in grid {
        if !(0.0 < x && x < 1.0) {
            return Err(Error::InvalidGrid(format!(
                "binormal grid point {x} outside (0,1)"
            )));
        }
        points.push((x, normal.cdf(a + b * normal.inverse_cdf(x))));
    }
    RocCurve::sampled(points)
}

/// Evenly spaced interior grid `{1/(n+1), ..., n/(n+1)}`.
pub fn interior_grid(n: usize) -> Vec<f64> {
    (1..=n).map(|i| i as f64 / (n + 1) as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn section_43_pair() -> GaussianPair {
        GaussianPair::standard_vs_independent(&[1.0, 2.0], &[2.0, 4.0]).unwrap()
    }

    #[test]
    fn qda_score_at_plus_mean_with_identity_covariances() {
        let pair = GaussianPair::standard_vs_independent(&[3.0, 4.0], &[1.0, 1.0]).unwrap();
        // Second term vanishes; first is the squared distance of the means.
        assert_relative_eq!(pair.qda_score(&[3.0, 4.0]).unwrap(), 25.0, epsilon = 1e-12);
    }

    #[test]
    fn equal_covariances_give_affine_score() {
        let pair = GaussianPair::new(
            vec![0.0, 0.0],
            vec![vec![2.0, 0.5], vec![0.5, 1.0]],
            vec![1.0, 2.0],
            vec![vec![2.0, 0.5], vec![0.5, 1.0]],
        )
        .unwrap();
        let x = [0.3, -0.7];
        let y = [1.4, 2.2];
        let alpha = 0.37;
        let mix: Vec<f64> = x
            .iter()
            .zip(&y)
            .map(|(a, b)| alpha * a + (1.0 - alpha) * b)
            .collect();
        let s = pair.qda_score(&mix).unwrap();
        let expected =
            alpha * pair.qda_score(&x).unwrap() + (1.0 - alpha) * pair.qda_score(&y).unwrap();
        assert_relative_eq!(s, expected, epsilon = 1e-10);
    }

    #[test]
    fn section_43_score_at_origin() {
        let pair = section_43_pair();
        assert_relative_eq!(pair.qda_score(&[0.0, 0.0]).unwrap(), -0.5, epsilon = 1e-12);
        // ((0-1)/2)^2 + ((0-2)/4)^2 - 0 = 0.5, with the QDA orientation
        // putting the positive-class term second.
        let plus_term = 0.25 + 0.25;
        assert_relative_eq!(
            pair.qda_score(&[0.0, 0.0]).unwrap(),
            0.0 - plus_term,
            epsilon = 1e-12
        );
    }

    #[test]
    fn log_lr_matches_density_difference_oracle() {
        // Independent-component case where both log densities have a simple
        // closed form.
        let pair = section_43_pair();
        let x = [0.7, -1.3];
        let log_pdf_minus = -((2.0 * std::f64::consts::PI).ln()) - 0.5 * (x[0] * x[0] + x[1] * x[1]);
        let log_pdf_plus = -((2.0 * std::f64::consts::PI).ln())
            - (2.0f64).ln()
            - (4.0f64).ln()
            - 0.5 * (((x[0] - 1.0) / 2.0).powi(2) + ((x[1] - 2.0) / 4.0).powi(2));
        assert_relative_eq!(
            pair.log_lr(&x).unwrap(),
            log_pdf_plus - log_pdf_minus,
            epsilon = 1e-10
        );
        assert_relative_eq!(pair.log_pdf(Class::Minus, &x).unwrap(), log_pdf_minus, epsilon = 1e-10);
        assert_relative_eq!(pair.log_pdf(Class::Plus, &x).unwrap(), log_pdf_plus, epsilon = 1e-10);
    }

    #[test]
    fn su_liu_coefficients_section_43() {
        let pair = section_43_pair();
        let w = pair.su_liu_weights().unwrap();
        assert_relative_eq!(w[0], 0.2, epsilon = 1e-12);
        assert_relative_eq!(w[1], 2.0 / 17.0, epsilon = 1e-12);
    }

    #[test]
    fn su_liu_zero_when_means_coincide() {
        let pair = GaussianPair::new(
            vec![1.0, 2.0],
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            vec![1.0, 2.0],
            vec![vec![3.0, 0.2], vec![0.2, 2.0]],
        )
        .unwrap();
        let w = pair.su_liu_weights().unwrap();
        assert!(w.iter().all(|v| v.abs() < 1e-14));
        assert_eq!(pair.su_liu_score(&[5.0, -3.0]).unwrap(), 0.0);
    }

    #[test]
    fn binormal_params_section_43() {
        let pair = section_43_pair();
        let (a, b) = pair.binormal_params().unwrap();
        let denom = 2756f64.sqrt();
        assert_relative_eq!(a, 37.0 / denom, epsilon = 1e-12);
        assert_relative_eq!(b, 389f64.sqrt() / denom, epsilon = 1e-12);
        assert_relative_eq!(a, 0.70479, epsilon = 1e-5);
        assert_relative_eq!(b, 0.37569, epsilon = 1e-5);
    }

    #[test]
    fn binormal_identity_params_give_the_diagonal() {
        let curve = binormal_roc(0.0, 1.0, &interior_grid(21)).unwrap();
        for k in 1..=21 {
            let x = k as f64 / 22.0;
            assert_relative_eq!(curve.eval(x), x, epsilon = 1e-9);
        }
    }

    #[test]
    fn binormal_rejects_nonpositive_slope() {
        assert!(binormal_roc(1.0, 0.0, &interior_grid(9)).is_err());
        assert!(binormal_roc(1.0, -2.0, &interior_grid(9)).is_err());
    }

    #[test]
    fn degenerate_pair_draws_unit_lr() {
        let pair = GaussianPair::new(
            vec![0.5],
            vec![vec![2.0]],
            vec![0.5],
            vec![vec![2.0]],
        )
        .unwrap();
        let d = pair.lr_sample(100, 5).unwrap();
        for &v in d.samples(Class::Minus).unwrap() {
            assert_relative_eq!(v, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn univariate_unit_shift_auc_matches_binormal_identity() {
        // d' = 1: AUC = Phi(1/sqrt(2)) ~ 0.7602.
        let pair = GaussianPair::new(
            vec![0.0],
            vec![vec![1.0]],
            vec![1.0],
            vec![vec![1.0]],
        )
        .unwrap();
        let d = pair.lr_sample(200_000, 12).unwrap();
        let auc = d.proper_roc().auc();
        let expected = Normal::new(0.0, 1.0).unwrap().cdf(1.0 / 2f64.sqrt());
        assert!((auc - expected).abs() < 3e-3, "auc={auc} expected={expected}");
    }

    #[test]
    fn case_study_score_distributions_match_their_binormal_curve() {
        // Published univariate score laws N(1.13560, 0.46137) and
        // N(1.71123, 0.11426) (variance convention): the binormal curve from
        // those four numbers agrees with direct simulation of the score.
        let (m_minus, v_minus): (f64, f64) = (1.13560, 0.46137);
        let (m_plus, v_plus): (f64, f64) = (1.71123, 0.11426);
        let a = (m_plus - m_minus) / v_plus.sqrt();
        let b = (v_minus / v_plus).sqrt();
        let n = 400_000;
        let mut rng = ChaCha12Rng::seed_from_u64(88);
        let draw = |mean: f64, var: f64, rng: &mut ChaCha12Rng| -> Vec<f64> {
            (0..n)
                .map(|_| mean + var.sqrt() * rng.sample::<f64, _>(StandardNormal))
                .collect()
        };
        let minus = draw(m_minus, v_minus, &mut rng);
        let plus = draw(m_plus, v_plus, &mut rng);
        let mc = RocCurve::from_score_samples(&minus, &plus, 4096).unwrap();
        let grid = interior_grid(99);
        let formula = binormal_roc(a, b, &grid).unwrap();
        let mut sup: f64 = 0.0;
        for &x in &grid {
            sup = sup.max((mc.eval(x) - formula.eval(x)).abs());
        }
        assert!(sup < 0.01, "sup distance {sup}");
    }

    #[test]
    fn fit_recovers_moments() {
        let rows_minus = vec![
            vec![0.0, 0.0],
            vec![2.0, 0.0],
            vec![0.0, 2.0],
            vec![2.0, 2.0],
        ];
        let rows_plus = vec![vec![4.0, 4.0], vec![6.0, 4.0], vec![4.0, 6.0], vec![6.0, 6.0]];
        let pair = GaussianPair::fit(&rows_minus, &rows_plus).unwrap();
        assert_relative_eq!(pair.mu_minus[0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(pair.mu_plus[1], 5.0, epsilon = 1e-12);
        assert_relative_eq!(pair.sigma_minus[(0, 0)], 1.0, epsilon = 1e-12);
        assert_relative_eq!(pair.sigma_minus[(0, 1)], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn rejects_non_positive_definite_covariance() {
        let err = GaussianPair::new(
            vec![0.0, 0.0],
            vec![vec![1.0, 2.0], vec![2.0, 1.0]],
            vec![1.0, 1.0],
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
        );
        assert!(err.is_err());
    }
}
