//! Property tests for the curve machinery: properness of every LR-based
//! curve, the concentration duality, dominance over mis-ordered thresholding,
//! Monte Carlo convergence rates, and serialization round trips.

use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use statrs::distribution::{ContinuousCDF, Normal};

use proper_roc::curve::exact_from_slope_steps;
use proper_roc::models::gaussian::interior_grid;
use proper_roc::rational::ratio;
use proper_roc::{
    algorithm1_roc, duality_gap_exact, empirical_roc, BandwidthRule, Class, GaussianPair,
    KernelDensityEstimate, LabeledSample, LrDistribution, Rational, RocCurve, RocGrid,
};

/// Random finite LR distribution: random positive masses under each class,
/// normalized, with the atom value forced to the mass ratio so that every
/// invariant holds by construction.
fn distribution_from_mass_pairs(pairs: &[(u32, u32)]) -> LrDistribution {
    let total_minus: i64 = pairs.iter().map(|p| p.0 as i64).sum();
    let total_plus: i64 = pairs.iter().map(|p| p.1 as i64).sum();
    let entries = pairs
        .iter()
        .map(|&(am, ap)| {
            let mass_minus = ratio(am as i64, total_minus);
            let mass_plus = ratio(ap as i64, total_plus);
            let value = &mass_plus / &mass_minus;
            (value, mass_minus, mass_plus)
        })
        .collect();
    LrDistribution::from_atoms(entries).expect("construction is valid by design")
}

fn arb_distribution() -> impl Strategy<Value = LrDistribution> {
    proptest::collection::vec((1u32..=1000, 1u32..=1000), 1..8)
        .prop_map(|pairs| distribution_from_mass_pairs(&pairs))
}

proptest! {
    #[test]
    fn proper_roc_is_always_proper(d in arb_distribution()) {
        let curve = d.proper_roc();
        prop_assert_eq!(curve.is_concave_exact(), Some(true));
        prop_assert!(curve.check_proper(0.0).is_ok());
        prop_assert_eq!(curve.eval_exact(&ratio(0, 1)).unwrap(), Rational::zero());
        prop_assert_eq!(curve.eval_exact(&ratio(1, 1)).unwrap(), Rational::one());
    }

    #[test]
    fn slopes_are_atom_values_in_decreasing_order(d in arb_distribution()) {
        let curve = d.proper_roc();
        let mut expected: Vec<Rational> =
            d.atoms().iter().map(|a| a.value.clone()).collect();
        expected.reverse();
        let slopes: Vec<Rational> = curve
            .segments()
            .unwrap()
            .iter()
            .map(|s| s.slope.clone())
            .collect();
        prop_assert_eq!(slopes, expected);
    }

    #[test]
    fn auc_of_a_proper_curve_is_at_least_half(d in arb_distribution()) {
        let auc = d.proper_roc().auc_exact().unwrap();
        prop_assert!(auc >= ratio(1, 2));
    }

    #[test]
    fn change_of_measure_identity_holds(d in arb_distribution()) {
        prop_assert!(d.mean_lr_under_minus().unwrap().is_one());
    }

    #[test]
    fn fpr_identity_at_random_thresholds(d in arb_distribution(), k in 1u32..1000) {
        let t = ratio(k as i64, 1000);
        prop_assert_eq!(d.false_positive_rate(&t).unwrap(), Rational::one() - &t);
    }

    #[test]
    fn duality_and_curvature_correspond(d in arb_distribution()) {
        let grid: Vec<Rational> = (0..=40).map(|k| ratio(k, 40)).collect();
        prop_assert!(duality_gap_exact(&d, &grid).unwrap().is_zero());
        let phi = d.concentration();
        prop_assert_eq!(phi.is_convex_exact(), Some(true));
        prop_assert_eq!(d.proper_roc().is_concave_exact(), Some(true));
        prop_assert!(phi.max_above_diagonal() <= 0.0);
    }

    /// The LR-descending order dominates any other thresholding order of the
    /// same atoms, pointwise.
    #[test]
    fn lr_order_dominates_rearrangements(
        d in arb_distribution(),
        seed in 0u64..1_000_000,
    ) {
        let mut atoms: Vec<(Rational, Rational)> = d
            .atoms()
            .iter()
            .map(|a| (a.value.clone(), a.mass_minus.clone()))
            .collect();
        // Deterministic shuffle.
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        for i in (1..atoms.len()).rev() {
            let j = rng.random_range(0..=i);
            atoms.swap(i, j);
        }
        let rearranged = exact_from_slope_steps(&atoms).unwrap();
        let proper = d.proper_roc();
        for k in 0..=50 {
            let x = ratio(k, 50);
            prop_assert!(
                proper.eval_exact(&x).unwrap() >= rearranged.eval_exact(&x).unwrap(),
                "dominance fails at {}/50", k
            );
        }
    }

    #[test]
    fn exact_curve_csv_round_trip(d in arb_distribution()) {
        let curve = d.proper_roc();
        let back = RocCurve::from_csv(&curve.to_csv()).unwrap();
        prop_assert_eq!(curve, back);
    }

    #[test]
    fn sampled_curve_csv_round_trip(
        points in proptest::collection::vec((0.0f64..=1.0, 0.0f64..=1.0), 1..40)
    ) {
        let mut points = points;
        points.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut monotone = Vec::new();
        let mut best = 0.0f64;
        for (x, y) in points {
            let y = y.max(best);
            best = y;
            monotone.push((x, y));
        }
        let curve = RocCurve::sampled(monotone).unwrap();
        let back = RocCurve::from_csv(&curve.to_csv()).unwrap();
        prop_assert_eq!(curve, back);
    }
}

#[test]
fn randomized_fpr_is_continuous_unrandomized_is_a_step() {
    let d = distribution_from_mass_pairs(&[(33, 3), (6, 2), (6, 2), (11, 11), (2, 33)]);
    let mut step_values = std::collections::BTreeSet::new();
    for k in 1..500 {
        let t = ratio(k, 500);
        assert_eq!(
            d.false_positive_rate(&t).unwrap(),
            Rational::one() - &t,
            "randomized rule must hit 1 - t exactly"
        );
        step_values.insert(d.false_positive_rate_unrandomized(&t).unwrap());
    }
    assert!(step_values.len() <= d.atoms().len());
}

/// Sampled curves converge pointwise to the exact curve at the Monte Carlo
/// rate: the log-log regression of mean absolute error on sample size has
/// slope close to -1/2.
#[test]
fn sampled_curve_error_shrinks_at_root_n_rate() {
    let exact = distribution_from_mass_pairs(&[(1, 1), (1, 10), (1, 7)]);
    let exact_curve = exact.proper_roc();
    let x = 0.5;
    let truth = exact_curve.eval(x);
    let sizes = [400usize, 1600, 6400, 25600];
    let replicates = 48;
    let mut log_n = Vec::new();
    let mut log_err = Vec::new();
    for (i, &n) in sizes.iter().enumerate() {
        let mut total = 0.0;
        for r in 0..replicates {
            let sampled = exact.sample(n, 1000 + (i * replicates + r) as u64).unwrap();
            total += (sampled.proper_roc().eval(x) - truth).abs();
        }
        log_n.push((n as f64).ln());
        log_err.push((total / replicates as f64).ln());
    }
    let m = log_n.len() as f64;
    let mean_x = log_n.iter().sum::<f64>() / m;
    let mean_y = log_err.iter().sum::<f64>() / m;
    let slope: f64 = log_n
        .iter()
        .zip(&log_err)
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum::<f64>()
        / log_n.iter().map(|x| (x - mean_x) * (x - mean_x)).sum::<f64>();
    assert!(
        (-0.7..=-0.3).contains(&slope),
        "log-log error slope {slope} not within -0.5 +- 0.2"
    );
}

#[test]
fn sampled_curve_matches_exact_curve_closely_at_large_n() {
    let exact = distribution_from_mass_pairs(&[(1, 1), (1, 10), (1, 7)]);
    let sampled = exact.sample(100_000, 5).unwrap();
    let exact_curve = exact.proper_roc();
    let sampled_curve = sampled.proper_roc();
    let mut worst: f64 = 0.0;
    for k in 0..=200 {
        let x = k as f64 / 200.0;
        worst = worst.max((exact_curve.eval(x) - sampled_curve.eval(x)).abs());
    }
    assert!(worst < 0.01, "sup distance {worst}");
    assert!(sampled_curve.check_proper(3.0 / (100_000f64).sqrt()).is_ok());
}

/// Thresholding any strictly increasing transform of the LR draws traces the
/// same curve.
#[test]
fn score_curves_are_transform_invariant() {
    let pair = GaussianPair::standard_vs_independent(&[1.0, 2.0], &[2.0, 4.0]).unwrap();
    let d = pair.lr_sample(5000, 21).unwrap();
    let minus = d.samples(Class::Minus).unwrap();
    let plus = d.samples(Class::Plus).unwrap();
    let base = RocCurve::from_score_samples(minus, plus, 4096).unwrap();
    let log_minus: Vec<f64> = minus.iter().map(|v| v.ln()).collect();
    let log_plus: Vec<f64> = plus.iter().map(|v| v.ln()).collect();
    let logged = RocCurve::from_score_samples(&log_minus, &log_plus, 4096).unwrap();
    assert_eq!(base, logged);
    // And the transform-invariant curve agrees with proper_roc on the draws.
    let direct = d.proper_roc();
    let mut worst: f64 = 0.0;
    for k in 1..100 {
        let x = k as f64 / 100.0;
        worst = worst.max((direct.eval(x) - base.eval(x)).abs());
    }
    assert!(worst < 5e-3, "sup distance {worst}");
}

fn univariate_gaussian_sample(n: usize, seed: u64) -> LabeledSample {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(2 * n);
    let mut labels = Vec::with_capacity(2 * n);
    for _ in 0..n {
        rows.push(vec![rng.sample::<f64, _>(StandardNormal)]);
        labels.push(Class::Minus);
    }
    for _ in 0..n {
        rows.push(vec![rng.sample::<f64, _>(StandardNormal) + 1.0]);
        labels.push(Class::Plus);
    }
    LabeledSample::new(rows, labels).unwrap()
}

fn binormal_truth(x: f64) -> f64 {
    let normal = Normal::new(0.0, 1.0).unwrap();
    normal.cdf(1.0 + normal.inverse_cdf(x))
}

/// Pointwise Monte Carlo noise of the estimated curve stays within the
/// binomial envelope 1.5/sqrt(B).
#[test]
fn algorithm1_pointwise_standard_deviation_is_binomial() {
    let b = 4096usize;
    let sample = univariate_gaussian_sample(100, 77);
    let kde = KernelDensityEstimate::fit(&sample, &BandwidthRule::Silverman).unwrap();
    let fprs = [0.1, 0.3, 0.5];
    let mut values = vec![Vec::new(); fprs.len()];
    for seed in 0..30u64 {
        let grid = RocGrid::auto(256, b, seed).unwrap();
        let curve = algorithm1_roc(&kde, &grid).unwrap();
        for (slot, &x) in values.iter_mut().zip(&fprs) {
            slot.push(curve.eval(x));
        }
    }
    let bound = 1.5 / (b as f64).sqrt();
    for (slot, &x) in values.iter().zip(&fprs) {
        let mean = slot.iter().sum::<f64>() / slot.len() as f64;
        let var = slot.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
            / (slot.len() - 1) as f64;
        let sd = var.sqrt();
        assert!(sd <= bound, "sd {sd} at fpr {x} exceeds {bound}");
    }
}

/// Larger training samples bring the estimated curve closer to the truth.
#[test]
fn algorithm1_consistency_in_the_training_size() {
    let b = 20_000usize;
    let grid99 = interior_grid(99);
    let sup_distance = |n: usize, seed: u64| -> f64 {
        let sample = univariate_gaussian_sample(n, seed);
        let kde = KernelDensityEstimate::fit(&sample, &BandwidthRule::Silverman).unwrap();
        let curve = algorithm1_roc(&kde, &RocGrid::auto(256, b, 5).unwrap()).unwrap();
        grid99
            .iter()
            .map(|&x| (curve.eval(x) - binormal_truth(x)).abs())
            .fold(0.0, f64::max)
    };
    let d100 = sup_distance(100, 301);
    let d400 = sup_distance(400, 302);
    let d1600 = sup_distance(1600, 303);
    assert!(d400 <= d100 + 0.02, "{d100} -> {d400}");
    assert!(d1600 <= d400 + 0.02, "{d400} -> {d1600}");
    assert!(d1600 < d100, "{d100} -> {d1600}");
}

/// The staircase of LR scores converges uniformly to the proper curve.
#[test]
fn empirical_staircase_converges_to_the_true_curve() {
    let sup_distance = |n: usize, seed: u64| -> f64 {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        // LR of the unit-shift Gaussian pair is monotone in the observation,
        // so scores can be the observations themselves.
        let minus: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let plus: Vec<f64> = (0..n)
            .map(|_| rng.sample::<f64, _>(StandardNormal) + 1.0)
            .collect();
        let stairs = empirical_roc(&minus, &plus).unwrap();
        (1..200)
            .map(|k| {
                let x = k as f64 / 200.0;
                (stairs.eval(x) - binormal_truth(x)).abs()
            })
            .fold(0.0, f64::max)
    };
    let d100 = sup_distance(100, 41);
    let d400 = sup_distance(400, 42);
    let d1600 = sup_distance(1600, 43);
    assert!(d400 <= d100 + 0.02, "{d100} -> {d400}");
    assert!(d1600 <= d400 + 0.02, "{d400} -> {d1600}");
    assert!(d1600 < d100, "{d100} -> {d1600}");
}
