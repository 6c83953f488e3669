//! Piecewise representation of ROC functions on the unit square.
//!
//! Three kinds of curve share one type: exact piecewise-linear curves with
//! rational segments (finite-support LR distributions), sampled polylines
//! with linear interpolation (Monte Carlo constructions), and staircase step
//! functions (the classical empirical ROC, which is improper by nature and
//! therefore exempt from the concavity checks).

use num_traits::{One, Zero};

use crate::rational::{parse_rational, to_f64, Rational};
use crate::{Error, Result};

/// One linear piece of an exact curve: `y = slope * x + intercept` on
/// `[x_lo, x_hi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub x_lo: Rational,
    pub x_hi: Rational,
    pub slope: Rational,
    pub intercept: Rational,
}

impl Segment {
    fn value_at(&self, x: &Rational) -> Rational {
        &self.slope * x + &self.intercept
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RocCurveKind {
    Exact,
    Sampled,
    Staircase,
}

impl RocCurveKind {
    fn tag(&self) -> &'static str {
        match self {
            RocCurveKind::Exact => "exact",
            RocCurveKind::Sampled => "sampled",
            RocCurveKind::Staircase => "staircase",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RocCurve {
    Exact { segments: Vec<Segment> },
    Sampled { points: Vec<(f64, f64)> },
    Staircase { points: Vec<(f64, f64)> },
}

/// Builds the exact piecewise-linear curve traced by thresholding in the
/// given order: each step contributes a segment of the given slope over an
/// x-interval of the given width. Steps with equal consecutive slopes are
/// merged. The widths must sum to one and the total rise must reach one.
pub fn exact_from_slope_steps(steps: &[(Rational, Rational)]) -> Result<RocCurve> {
    if steps.is_empty() {
        return Err(Error::InvalidCurve("no segments".to_string()));
    }
    let mut merged: Vec<(Rational, Rational)> = Vec::with_capacity(steps.len());
    for (slope, width) in steps {
        if width <= &Rational::zero() {
            return Err(Error::InvalidCurve("segment width must be positive".to_string()));
        }
        if slope < &Rational::zero() {
            return Err(Error::InvalidCurve("segment slope must be nonnegative".to_string()));
        }
        match merged.last_mut() {
            Some((s, w)) if s == slope => *w += width,
            _ => merged.push((slope.clone(), width.clone())),
        }
    }
    let mut segments = Vec::with_capacity(merged.len());
    let mut x = Rational::zero();
    let mut y = Rational::zero();
    for (slope, width) in merged {
        let x_hi = &x + &width;
        let intercept = &y - &slope * &x;
        y += &slope * &width;
        segments.push(Segment {
            x_lo: x,
            x_hi: x_hi.clone(),
            slope,
            intercept,
        });
        x = x_hi;
    }
    if !x.is_one() || !y.is_one() {
        return Err(Error::InvalidCurve(format!(
            "steps must span the unit square (reached ({x}, {y}))"
        )));
    }
    RocCurve::exact_from_segments(segments)
}

fn validate_point_list(points: &[(f64, f64)]) -> Result<()> {
    for &(x, y) in points {
        if !x.is_finite() || !y.is_finite() || !(0.0..=1.0).contains(&x) || !(0.0..=1.0).contains(&y)
        {
            return Err(Error::InvalidCurve(format!(
                "point ({x}, {y}) outside the unit square"
            )));
        }
    }
    for w in points.windows(2) {
        if w[1].0 < w[0].0 || (w[1].0 > w[0].0 && w[1].1 < w[0].1) {
            return Err(Error::InvalidCurve(format!(
                "points not monotone: ({}, {}) then ({}, {})",
                w[0].0, w[0].1, w[1].0, w[1].1
            )));
        }
    }
    Ok(())
}

fn normalize_points(mut points: Vec<(f64, f64)>) -> Result<Vec<(f64, f64)>> {
    if points.is_empty() {
        return Err(Error::InvalidCurve("no points".to_string()));
    }
    points.sort_by(|a, b| a.partial_cmp(b).unwrap());
    points.dedup();
    if points.first() != Some(&(0.0, 0.0)) {
        points.insert(0, (0.0, 0.0));
    }
    if points.last() != Some(&(1.0, 1.0)) {
        points.push((1.0, 1.0));
    }
    validate_point_list(&points)?;
    Ok(points)
}

impl RocCurve {
    pub fn exact_from_segments(segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidCurve("no segments".to_string()));
        }
        if !segments[0].x_lo.is_zero() || !segments.last().unwrap().x_hi.is_one() {
            return Err(Error::InvalidCurve(
                "segments must cover [0, 1]".to_string(),
            ));
        }
        for w in segments.windows(2) {
            if w[0].x_hi != w[1].x_lo {
                return Err(Error::InvalidCurve("segments must be contiguous".to_string()));
            }
            if w[0].value_at(&w[0].x_hi) != w[1].value_at(&w[1].x_lo) {
                return Err(Error::InvalidCurve(
                    "segments must join continuously".to_string(),
                ));
            }
        }
        for s in &segments {
            if s.x_hi <= s.x_lo {
                return Err(Error::InvalidCurve("empty segment".to_string()));
            }
            if s.slope < Rational::zero() {
                return Err(Error::InvalidCurve("negative slope".to_string()));
            }
        }
        let first = &segments[0];
        let last = segments.last().unwrap();
        if !first.value_at(&Rational::zero()).is_zero()
            || !last.value_at(&Rational::one()).is_one()
        {
            return Err(Error::InvalidCurve(
                "curve must pass through (0,0) and (1,1)".to_string(),
            ));
        }
        Ok(RocCurve::Exact { segments })
    }

    /// Sampled polyline with linear interpolation. Points are sorted and
    /// deduplicated and the endpoints `(0,0)`, `(1,1)` are appended when
    /// missing.
    pub fn sampled(points: Vec<(f64, f64)>) -> Result<Self> {
        Ok(RocCurve::Sampled {
            points: normalize_points(points)?,
        })
    }

    /// Staircase step function through the given operating points.
    pub fn staircase(points: Vec<(f64, f64)>) -> Result<Self> {
        Ok(RocCurve::Staircase {
            points: normalize_points(points)?,
        })
    }

    /// The interpolated ROC curve traced by thresholding raw scores: one
    /// operating point `(P_minus(S > c), P_plus(S > c))` per distinct pooled
    /// score value `c` (thinned to `max_points` thresholds at pooled
    /// quantiles when there are more), joined linearly. Invariant under any
    /// strictly increasing transformation of the scores.
    pub fn from_score_samples(minus: &[f64], plus: &[f64], max_points: usize) -> Result<Self> {
        if minus.is_empty() || plus.is_empty() {
            return Err(Error::InvalidCurve("empty score sample".to_string()));
        }
        let mut sorted_minus = minus.to_vec();
        let mut sorted_plus = plus.to_vec();
        sorted_minus.sort_by(|a, b| a.partial_cmp(b).unwrap());
        sorted_plus.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut pooled: Vec<f64> = sorted_minus
            .iter()
            .chain(sorted_plus.iter())
            .copied()
            .collect();
        pooled.sort_by(|a, b| a.partial_cmp(b).unwrap());
        pooled.dedup();
        let thresholds: Vec<f64> = if pooled.len() > max_points.max(2) {
            let step = pooled.len() as f64 / max_points as f64;
            let mut t: Vec<f64> = (0..max_points)
                .map(|i| pooled[(i as f64 * step) as usize])
                .collect();
            t.push(*pooled.last().unwrap());
            t.dedup();
            t
        } else {
            pooled
        };
        let frac_above = |sorted: &[f64], c: f64| -> f64 {
            let n = sorted.len();
            (n - sorted.partition_point(|&v| v <= c)) as f64 / n as f64
        };
        let points: Vec<(f64, f64)> = thresholds
            .iter()
            .map(|&c| (frac_above(&sorted_minus, c), frac_above(&sorted_plus, c)))
            .collect();
        RocCurve::sampled(points)
    }

    pub fn kind(&self) -> RocCurveKind {
        match self {
            RocCurve::Exact { .. } => RocCurveKind::Exact,
            RocCurve::Sampled { .. } => RocCurveKind::Sampled,
            RocCurve::Staircase { .. } => RocCurveKind::Staircase,
        }
    }

    pub fn segments(&self) -> Option<&[Segment]> {
        match self {
            RocCurve::Exact { segments } => Some(segments),
            _ => None,
        }
    }

    /// Polyline vertices: segment breakpoints for exact curves, the stored
    /// points otherwise.
    pub fn vertices(&self) -> Vec<(f64, f64)> {
        match self {
            RocCurve::Exact { segments } => {
                let mut v: Vec<(f64, f64)> = segments
                    .iter()
                    .map(|s| (to_f64(&s.x_lo), to_f64(&s.value_at(&s.x_lo))))
                    .collect();
                let last = segments.last().unwrap();
                v.push((to_f64(&last.x_hi), to_f64(&last.value_at(&last.x_hi))));
                v
            }
            RocCurve::Sampled { points } | RocCurve::Staircase { points } => points.clone(),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            RocCurve::Exact { segments } => {
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
            RocCurve::Sampled { points } => {
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
            RocCurve::Staircase { points } => {
                if x >= 1.0 {
                    return 1.0;
                }
                let i = points.partition_point(|p| p.0 <= x);
                if i == 0 {
                    0.0
                } else {
                    points[i - 1].1
                }
            }
        }
    }

    /// Exact evaluation for exact curves; `None` otherwise or outside `[0,1]`.
    pub fn eval_exact(&self, x: &Rational) -> Option<Rational> {
        let RocCurve::Exact { segments } = self else {
            return None;
        };
        if x < &Rational::zero() || x > &Rational::one() {
            return None;
        }
        if x.is_one() {
            return Some(Rational::one());
        }
        let i = segments.partition_point(|s| &s.x_hi <= x);
        Some(segments[i.min(segments.len() - 1)].value_at(x))
    }

    /// Area under the curve. Exact curves integrate their segments;
    /// sampled curves use the trapezoid rule over their points; staircase
    /// curves use the trapezoid rule over their operating points, the
    /// Mann–Whitney convention for empirical ROC curves.
    pub fn auc(&self) -> f64 {
        match self {
            RocCurve::Exact { .. } => to_f64(&self.auc_exact().unwrap()),
            RocCurve::Sampled { points } | RocCurve::Staircase { points } => {
                let mut total = 0.0;
                for w in points.windows(2) {
                    total += (w[1].0 - w[0].0) * (w[1].1 + w[0].1) / 2.0;
                }
                total
            }
        }
    }

    /// Exact rational AUC for exact curves.
    pub fn auc_exact(&self) -> Option<Rational> {
        let RocCurve::Exact { segments } = self else {
            return None;
        };
        let two = Rational::from_integer(2.into());
        let mut total = Rational::zero();
        for s in segments {
            let width = &s.x_hi - &s.x_lo;
            let ends = s.value_at(&s.x_lo) + s.value_at(&s.x_hi);
            total += width * ends / &two;
        }
        Some(total)
    }

    /// For exact curves: whether segment slopes are non-increasing.
    pub fn is_concave_exact(&self) -> Option<bool> {
        let RocCurve::Exact { segments } = self else {
            return None;
        };
        Some(segments.windows(2).all(|w| w[0].slope >= w[1].slope))
    }

    /// Largest amount by which an interior vertex falls below the chord of
    /// its neighbours; zero for a concave polyline. Staircase curves are
    /// measured on their operating points.
    pub fn max_concavity_violation(&self) -> f64 {
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
            worst = worst.max(chord - y1);
        }
        worst
    }

    /// Verifies the proper-curve invariants: endpoints and monotonicity
    /// (enforced at construction), plus concavity: exact curves must be
    /// exactly concave, sampled curves concave within `tol`. Staircase
    /// curves are improper by construction and always rejected.
    pub fn check_proper(&self, tol: f64) -> Result<()> {
        match self {
            RocCurve::Exact { .. } => {
                if self.is_concave_exact() == Some(true) {
                    Ok(())
                } else {
                    Err(Error::InvalidCurve(
                        "exact curve is not concave".to_string(),
                    ))
                }
            }
            RocCurve::Sampled { .. } => {
                let v = self.max_concavity_violation();
                if v <= tol {
                    Ok(())
                } else {
                    Err(Error::InvalidCurve(format!(
                        "concavity violated by {v} (tolerance {tol})"
                    )))
                }
            }
            RocCurve::Staircase { .. } => Err(Error::InvalidCurve(
                "staircase curves are step functions, neither convex nor concave".to_string(),
            )),
        }
    }

    // --- CSV serialization -------------------------------------------------

    /// Serializes the curve: a `# kind=...` tag line, a header, then either
    /// `x_lo,x_hi,slope,intercept` rows with exact rationals or `fpr,tpr`
    /// rows with full-precision floats.
    pub fn to_csv(&self) -> String {
        let mut out = format!("# kind={}\n", self.kind().tag());
        match self {
            RocCurve::Exact { segments } => {
                out.push_str("x_lo,x_hi,slope,intercept\n");
                for s in segments {
                    out.push_str(&format!(
                        "{},{},{},{}\n",
                        s.x_lo, s.x_hi, s.slope, s.intercept
                    ));
                }
            }
            RocCurve::Sampled { points } | RocCurve::Staircase { points } => {
                out.push_str("fpr,tpr\n");
                for (x, y) in points {
                    out.push_str(&format!("{x},{y}\n"));
                }
            }
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut kind_tag: Option<String> = None;
        let mut header: Option<Vec<String>> = None;
        let mut seg_rows: Vec<Segment> = Vec::new();
        let mut point_rows: Vec<(f64, f64)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(value) = rest.trim().strip_prefix("kind=") {
                    kind_tag = Some(value.trim().to_string());
                }
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            let header = match &header {
                Some(h) => h,
                None => {
                    header = Some(fields.iter().map(|s| s.to_string()).collect());
                    continue;
                }
            };
            let err = |message: String| Error::Parse {
                line: lineno + 1,
                message,
            };
            match header.len() {
                4 => {
                    if fields.len() != 4 {
                        return Err(err(format!("expected 4 fields, got {}", fields.len())));
                    }
                    let mut vals = fields.iter().map(|f| parse_rational(f));
                    let mut next = || vals.next().unwrap().map_err(&err);
                    seg_rows.push(Segment {
                        x_lo: next()?,
                        x_hi: next()?,
                        slope: next()?,
                        intercept: next()?,
                    });
                }
                2 => {
                    if fields.len() != 2 {
                        return Err(err(format!("expected 2 fields, got {}", fields.len())));
                    }
                    let x: f64 = fields[0]
                        .parse()
                        .map_err(|_| err(format!("bad number `{}`", fields[0])))?;
                    let y: f64 = fields[1]
                        .parse()
                        .map_err(|_| err(format!("bad number `{}`", fields[1])))?;
                    point_rows.push((x, y));
                }
                n => {
                    return Err(err(format!("expected 2 or 4 columns, got {n}")));
                }
            }
        }
        let header = header.ok_or_else(|| Error::Parse {
            line: 0,
            message: "missing header".to_string(),
        })?;
        match header.len() {
            4 => RocCurve::exact_from_segments(seg_rows),
            _ => match kind_tag.as_deref() {
                Some("staircase") => RocCurve::staircase(point_rows),
                _ => RocCurve::sampled(point_rows),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lr::fixtures::{finite_table, three_rectangles};
    use crate::lr::LrDistribution;
    use crate::rational::ratio;

    fn seg(
        x_lo: (i64, i64),
        x_hi: (i64, i64),
        slope: (i64, i64),
        intercept: (i64, i64),
    ) -> Segment {
        Segment {
            x_lo: ratio(x_lo.0, x_lo.1),
            x_hi: ratio(x_hi.0, x_hi.1),
            slope: ratio(slope.0, slope.1),
            intercept: ratio(intercept.0, intercept.1),
        }
    }

    #[test]
    fn finite_table_curve_matches_published_segments() {
        let curve = finite_table().proper_roc();
        let expected = vec![
            seg((0, 1), (2, 58), (319, 17), (0, 1)),
            seg((2, 58), (13, 58), (58, 51), (31, 51)),
            seg((13, 58), (25, 58), (58, 153), (7, 9)),
            seg((25, 58), (1, 1), (58, 561), (503, 561)),
        ];
        assert_eq!(curve.segments().unwrap(), expected.as_slice());
        assert_eq!(curve.is_concave_exact(), Some(true));
    }

    #[test]
    fn three_rectangles_lr_curve_matches_published_segments() {
        let curve = three_rectangles().proper_roc();
        let expected = vec![
            seg((0, 1), (1, 3), (30, 18), (0, 1)),
            seg((1, 3), (2, 3), (21, 18), (3, 18)),
            seg((2, 3), (1, 1), (3, 18), (15, 18)),
        ];
        assert_eq!(curve.segments().unwrap(), expected.as_slice());
        // Breakpoint values.
        assert_eq!(curve.eval_exact(&ratio(1, 3)).unwrap(), ratio(5, 9));
        assert_eq!(curve.eval_exact(&ratio(2, 3)).unwrap(), ratio(17, 18));
    }

    #[test]
    fn degenerate_distribution_gives_the_diagonal() {
        let curve = LrDistribution::degenerate().proper_roc();
        let expected = vec![seg((0, 1), (1, 1), (1, 1), (0, 1))];
        assert_eq!(curve.segments().unwrap(), expected.as_slice());
    }

    #[test]
    fn segment_eval_agrees_with_closed_form() {
        for d in [finite_table(), three_rectangles()] {
            let curve = d.proper_roc();
            for k in 0..=100 {
                let x = ratio(k, 100);
                assert_eq!(
                    curve.eval_exact(&x).unwrap(),
                    d.roc_at(&x).unwrap(),
                    "x = {k}/100"
                );
            }
        }
    }

    #[test]
    fn diagonal_auc_is_half() {
        let curve = LrDistribution::degenerate().proper_roc();
        assert_eq!(curve.auc_exact().unwrap(), ratio(1, 2));
    }

    #[test]
    fn exact_auc_matches_riemann_oracle() {
        // Midpoint Riemann sum over the closed-form evaluator, an
        // implementation-independent route to the same integral.
        for (d, expected) in [
            (three_rectangles(), ratio(2, 3)),
            (finite_table(), ratio(1321, 1479)),
        ] {
            let curve = d.proper_roc();
            assert_eq!(curve.auc_exact().unwrap(), expected);
            let n = 1_000_000;
            let mut sum = 0.0;
            for i in 0..n {
                let x = (i as f64 + 0.5) / n as f64;
                sum += curve.eval(x);
            }
            let riemann = sum / n as f64;
            assert!(
                (riemann - curve.auc()).abs() < 1e-5,
                "riemann {riemann} vs exact {}",
                curve.auc()
            );
        }
    }

    #[test]
    fn exact_csv_round_trip_is_exact() {
        let curve = finite_table().proper_roc();
        let csv = curve.to_csv();
        assert!(csv.starts_with("# kind=exact\nx_lo,x_hi,slope,intercept\n"));
        let back = RocCurve::from_csv(&csv).unwrap();
        assert_eq!(curve, back);
    }

    #[test]
    fn sampled_csv_round_trip_is_exact() {
        let curve =
            RocCurve::sampled(vec![(0.1, 0.30000000000000004), (0.5, 0.75), (0.9, 0.99)]).unwrap();
        let back = RocCurve::from_csv(&curve.to_csv()).unwrap();
        assert_eq!(curve, back);
        let stairs = RocCurve::staircase(vec![(0.25, 0.5), (0.5, 1.0)]).unwrap();
        let text = stairs.to_csv();
        assert!(text.starts_with("# kind=staircase\n"));
        let back = RocCurve::from_csv(&text).unwrap();
        assert_eq!(stairs, back);
    }

    #[test]
    fn score_curve_is_invariant_under_monotone_transforms() {
        let minus = vec![0.2, 1.4, 0.7, 3.0, 0.2, 2.2];
        let plus = vec![1.0, 2.5, 4.0, 0.9, 2.5];
        let base = RocCurve::from_score_samples(&minus, &plus, 1024).unwrap();
        let log_minus: Vec<f64> = minus.iter().map(|v| v.ln()).collect();
        let log_plus: Vec<f64> = plus.iter().map(|v| v.ln()).collect();
        let logged = RocCurve::from_score_samples(&log_minus, &log_plus, 1024).unwrap();
        assert_eq!(base, logged);
    }

    #[test]
    fn concavity_violation_detected() {
        let convex = RocCurve::sampled(vec![(0.5, 0.1)]).unwrap();
        assert!(convex.max_concavity_violation() > 0.3);
        assert!(convex.check_proper(0.01).is_err());
        let concave = RocCurve::sampled(vec![(0.25, 0.7), (0.5, 0.9)]).unwrap();
        assert_eq!(concave.max_concavity_violation(), 0.0);
        assert!(concave.check_proper(0.0).is_ok());
    }

    #[test]
    fn staircase_is_exempt_from_properness() {
        let stairs = RocCurve::staircase(vec![(0.2, 0.6)]).unwrap();
        assert!(stairs.check_proper(1.0).is_err());
        assert_eq!(stairs.eval(0.1), 0.0);
        assert_eq!(stairs.eval(0.2), 0.6);
        assert_eq!(stairs.eval(0.9), 0.6);
        assert_eq!(stairs.eval(1.0), 1.0);
    }

    #[test]
    fn rejects_points_outside_unit_square_or_nonmonotone() {
        assert!(RocCurve::sampled(vec![(0.5, 1.2)]).is_err());
        assert!(RocCurve::sampled(vec![(0.3, 0.8), (0.6, 0.4)]).is_err());
    }

    #[test]
    fn rejects_non_anchored_or_discontinuous_segments() {
        // Does not reach (1,1).
        let steps = vec![(ratio(1, 2), ratio(1, 1))];
        assert!(exact_from_slope_steps(&steps).is_err());
        // Not contiguous.
        let segs = vec![
            seg((0, 1), (1, 2), (1, 1), (0, 1)),
            seg((3, 4), (1, 1), (1, 1), (0, 1)),
        ];
        assert!(RocCurve::exact_from_segments(segs).is_err());
    }

    #[test]
    fn equal_slope_steps_are_merged() {
        let steps = vec![
            (ratio(2, 1), ratio(1, 4)),
            (ratio(2, 1), ratio(1, 8)),
            (ratio(2, 5), ratio(5, 8)),
        ];
        let curve = exact_from_slope_steps(&steps).unwrap();
        assert_eq!(curve.segments().unwrap().len(), 2);
    }

    #[test]
    fn sampled_eval_interpolates_linearly() {
        let curve = RocCurve::sampled(vec![(0.5, 0.8)]).unwrap();
        assert!((curve.eval(0.25) - 0.4).abs() < 1e-12);
        assert!((curve.eval(0.75) - 0.9).abs() < 1e-12);
        assert_eq!(curve.eval(0.0), 0.0);
        assert_eq!(curve.eval(1.0), 1.0);
    }
}
