//! Subcommand implementations: artifact paths, method pipelines, reports.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use proper_roc::models::gaussian::interior_grid;
use proper_roc::{
    algorithm1_roc, compare_curves, empirical_roc, parse_model_config, BandwidthRule, Class,
    FiniteTablePair, GaussianPair, KernelDensityEstimate, LabeledSample, ModelSpec,
    PiecewiseConstantPair, PointProcessPair, RocCurve, RocCurveKind, RocGrid, ThresholdSpec,
};

use crate::data::{read_labeled_csv, CsvData};
use crate::svg::render_svg;
use crate::{CliError, CommonOpts, Method};

struct OutPaths {
    csv: PathBuf,
    svg: PathBuf,
    report: PathBuf,
}

fn out_paths(base: &str, opts: &CommonOpts) -> OutPaths {
    OutPaths {
        csv: opts
            .out_csv
            .clone()
            .unwrap_or_else(|| PathBuf::from(format!("{base}.csv"))),
        svg: opts
            .out_svg
            .clone()
            .unwrap_or_else(|| PathBuf::from(format!("{base}.svg"))),
        report: opts
            .out_report
            .clone()
            .unwrap_or_else(|| PathBuf::from(format!("{base}-report.txt"))),
    }
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().to_string())
        .unwrap_or_else(|| "out".to_string());
    let ext = path
        .extension()
        .map(|s| s.to_string_lossy().to_string())
        .unwrap_or_else(|| "csv".to_string());
    path.with_file_name(format!("{stem}{suffix}.{ext}"))
}

fn write_artifact(path: &Path, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content)
        .map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display())))?;
    println!("wrote {}", path.display());
    Ok(())
}

pub fn parse_bandwidth(s: &str) -> Result<BandwidthRule, CliError> {
    match s {
        "silverman" => Ok(BandwidthRule::Silverman),
        "scott" => Ok(BandwidthRule::Scott),
        _ => {
            if let Some(rest) = s.strip_prefix("fixed:") {
                let values: Result<Vec<f64>, _> =
                    rest.split(',').map(|v| v.trim().parse::<f64>()).collect();
                match values {
                    Ok(v) if !v.is_empty() => Ok(BandwidthRule::Fixed(v)),
                    _ => Err(CliError::Usage(format!(
                        "bad fixed bandwidth list `{rest}`"
                    ))),
                }
            } else {
                Err(CliError::Usage(format!(
                    "--bandwidth must be silverman, scott, or fixed:v1,v2,... (got `{s}`)"
                )))
            }
        }
    }
}

fn kind_name(kind: RocCurveKind) -> &'static str {
    match kind {
        RocCurveKind::Exact => "exact",
        RocCurveKind::Sampled => "sampled",
        RocCurveKind::Staircase => "staircase",
    }
}

fn single_report(label: &str, curve: &RocCurve, meta: &[(String, String)]) -> String {
    let mut out = String::from("# roc report\n");
    out.push_str(&format!("curve = {label}\n"));
    out.push_str(&format!("kind = {}\n", kind_name(curve.kind())));
    for (key, value) in meta {
        out.push_str(&format!("{key} = {value}\n"));
    }
    out.push_str(&format!("auc = {}\n", curve.auc()));
    if let Some(exact) = curve.auc_exact() {
        out.push_str(&format!("auc_exact = {exact}\n"));
    }
    out
}

fn uniform_grid(n: usize) -> Vec<f64> {
    (0..=n).map(|k| k as f64 / n as f64).collect()
}

fn mc_slack(replications: usize) -> f64 {
    5.0 / (replications as f64).sqrt()
}

pub fn run_example(name: &str, opts: &CommonOpts) -> Result<(), CliError> {
    let (base, spec) = match name {
        "three-rectangles" => (
            name.to_string(),
            ModelSpec::Piecewise(PiecewiseConstantPair::three_rectangles()),
        ),
        "finite-table" => (
            name.to_string(),
            ModelSpec::Finite(FiniteTablePair::encyclopedia_radiology()),
        ),
        "gaussian-4.3" => (
            name.to_string(),
            ModelSpec::Gaussian(GaussianPair::standard_vs_independent(
                &[1.0, 2.0],
                &[2.0, 4.0],
            )?),
        ),
        "polya-poisson" => (
            name.to_string(),
            ModelSpec::PointProcess(PointProcessPair::new(1.0, 5)?),
        ),
        other => {
            let path = Path::new(other);
            if path.is_file() {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::Data(format!("cannot read {}: {e}", path.display()))
                })?;
                let base = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().to_string())
                    .unwrap_or_else(|| "model".to_string());
                (base, parse_model_config(&text)?)
            } else {
                return Err(CliError::Usage(format!(
                    "unknown example `{other}` (expected three-rectangles, finite-table, \
                     gaussian-4.3, polya-poisson, or a readable model config path)"
                )));
            }
        }
    };
    let paths = out_paths(&base, opts);
    match spec {
        ModelSpec::Piecewise(m) => piecewise_example(&m, &paths),
        ModelSpec::Finite(t) => finite_example(&t, &paths),
        ModelSpec::Gaussian(pair) => gaussian_example(&pair, &paths, opts),
        ModelSpec::PointProcess(m) => point_process_example(&m, &paths, opts),
    }
}

fn piecewise_example(m: &PiecewiseConstantPair, paths: &OutPaths) -> Result<(), CliError> {
    let lr_curve = m.lr_distribution()?.proper_roc();
    let score_curve = m.score_roc();
    write_artifact(&with_suffix(&paths.csv, "-lr"), &lr_curve.to_csv())?;
    write_artifact(&with_suffix(&paths.csv, "-score"), &score_curve.to_csv())?;
    write_artifact(
        &paths.svg,
        &render_svg(&[("lr rule", &lr_curve), ("raw score", &score_curve)]),
    )?;
    let cmp = compare_curves(&lr_curve, &score_curve, &uniform_grid(200), 0.0)?;
    write_artifact(&paths.report, &cmp.render_report("lr-rule", "raw-score"))
}

fn finite_example(t: &FiniteTablePair, paths: &OutPaths) -> Result<(), CliError> {
    let d = t.lr_distribution()?;
    let curve = d.proper_roc();
    write_artifact(&with_suffix(&paths.csv, "-curve"), &curve.to_csv())?;
    let mut points_csv = String::from("# kind=exact-points\nfpr,tpr\n");
    for (x, y) in d.roc_points()? {
        points_csv.push_str(&format!("{x},{y}\n"));
    }
    write_artifact(&with_suffix(&paths.csv, "-points"), &points_csv)?;
    write_artifact(&paths.svg, &render_svg(&[("lr rule", &curve)]))?;
    write_artifact(&paths.report, &single_report("lr-rule", &curve, &[]))
}

fn gaussian_example(
    pair: &GaussianPair,
    paths: &OutPaths,
    opts: &CommonOpts,
) -> Result<(), CliError> {
    let qda = pair.lr_sample(opts.replications, opts.seed)?.proper_roc();
    let (a, b) = pair.binormal_params()?;
    let linear = proper_roc::binormal_roc(a, b, &interior_grid(opts.grid.max(2)))?;
    write_artifact(&with_suffix(&paths.csv, "-qda"), &qda.to_csv())?;
    write_artifact(&with_suffix(&paths.csv, "-linear"), &linear.to_csv())?;
    write_artifact(
        &paths.svg,
        &render_svg(&[("qda lr rule", &qda), ("best linear", &linear)]),
    )?;
    let cmp = compare_curves(&qda, &linear, &interior_grid(99), mc_slack(opts.replications))?;
    write_artifact(&paths.report, &cmp.render_report("qda", "linear"))
}

fn point_process_example(
    m: &PointProcessPair,
    paths: &OutPaths,
    opts: &CommonOpts,
) -> Result<(), CliError> {
    let curve = m.lr_sample(opts.replications, opts.seed)?.proper_roc();
    write_artifact(&with_suffix(&paths.csv, "-curve"), &curve.to_csv())?;
    write_artifact(&paths.svg, &render_svg(&[("lr rule", &curve)]))?;
    let meta = vec![
        ("rate".to_string(), m.rate().to_string()),
        ("failures".to_string(), m.failures().to_string()),
        ("replications".to_string(), opts.replications.to_string()),
        ("seed".to_string(), opts.seed.to_string()),
        (
            "max_concavity_violation".to_string(),
            curve.max_concavity_violation().to_string(),
        ),
    ];
    write_artifact(&paths.report, &single_report("lr-rule", &curve, &meta))
}

/// Groups the single feature column into categories of exactly equal values
/// and treats the per-class counts as finite measures.
fn exact_model_curve(sample: &LabeledSample) -> Result<RocCurve, CliError> {
    if sample.dim() != 1 {
        return Err(CliError::Data(format!(
            "method exact-model needs exactly one feature column (got {})",
            sample.dim()
        )));
    }
    let mut counts: BTreeMap<u64, (String, u64, u64)> = BTreeMap::new();
    for (row, &label) in sample.rows().iter().zip(sample.labels()) {
        let v = row[0];
        let entry = counts
            .entry(v.to_bits())
            .or_insert_with(|| (v.to_string(), 0, 0));
        match label {
            Class::Minus => entry.1 += 1,
            Class::Plus => entry.2 += 1,
        }
    }
    let mut grouped: Vec<(f64, String, u64, u64)> = counts
        .into_values()
        .map(|(label, cm, cp)| (label.parse::<f64>().unwrap(), label, cm, cp))
        .collect();
    grouped.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let table = FiniteTablePair::new(
        grouped.iter().map(|g| g.1.clone()).collect(),
        grouped.iter().map(|g| g.2).collect(),
        grouped.iter().map(|g| g.3).collect(),
    )?;
    let d = table.lr_distribution().map_err(|e| {
        CliError::Data(format!(
            "{e}; the exact-model method needs every distinct value observed under both classes"
        ))
    })?;
    Ok(d.proper_roc())
}

fn kde_scores(
    kde: &KernelDensityEstimate,
    sample: &LabeledSample,
) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let score = |rows: Vec<Vec<f64>>| -> Result<Vec<f64>, CliError> {
        rows.iter()
            .map(|row| kde.log_lr(row).map_err(CliError::from))
            .collect()
    };
    Ok((
        score(sample.class_rows(Class::Minus))?,
        score(sample.class_rows(Class::Plus))?,
    ))
}

fn method_curve(
    data: &CsvData,
    method: Method,
    opts: &CommonOpts,
) -> Result<RocCurve, CliError> {
    let sample = &data.sample;
    match method {
        Method::ExactModel => exact_model_curve(sample),
        Method::Qda => {
            let pair = GaussianPair::fit(
                &sample.class_rows(Class::Minus),
                &sample.class_rows(Class::Plus),
            )?;
            Ok(pair.lr_sample(opts.replications, opts.seed)?.proper_roc())
        }
        Method::Linear => {
            let pair = GaussianPair::fit(
                &sample.class_rows(Class::Minus),
                &sample.class_rows(Class::Plus),
            )?;
            let (a, b) = pair.binormal_params()?;
            Ok(proper_roc::binormal_roc(a, b, &interior_grid(opts.grid.max(2)))?)
        }
        Method::FlexibleBayes => {
            let kde = KernelDensityEstimate::fit(sample, &parse_bandwidth(&opts.bandwidth)?)?;
            let grid = RocGrid::new(
                ThresholdSpec::Auto(opts.grid.max(2)),
                opts.replications,
                opts.seed,
            )?;
            Ok(algorithm1_roc(&kde, &grid)?)
        }
        Method::Empirical => {
            let kde = KernelDensityEstimate::fit(sample, &parse_bandwidth(&opts.bandwidth)?)?;
            let (minus, plus) = kde_scores(&kde, sample)?;
            Ok(empirical_roc(&minus, &plus)?)
        }
    }
}

fn dataset_meta(data: &CsvData, opts: &CommonOpts) -> Vec<(String, String)> {
    vec![
        ("n_minus".to_string(), data.sample.n_minus().to_string()),
        ("n_plus".to_string(), data.sample.n_plus().to_string()),
        ("features".to_string(), data.feature_names.join(";")),
        ("bandwidth".to_string(), opts.bandwidth.clone()),
        ("grid".to_string(), opts.grid.to_string()),
        ("replications".to_string(), opts.replications.to_string()),
        ("seed".to_string(), opts.seed.to_string()),
    ]
}

pub fn run_roc(
    csv: &Path,
    label_col: &str,
    positive: &str,
    method: Method,
    opts: &CommonOpts,
) -> Result<(), CliError> {
    let data = read_labeled_csv(csv, label_col, positive)?;
    let stem = csv
        .file_stem()
        .map(|s| s.to_string_lossy().to_string())
        .unwrap_or_else(|| "data".to_string());
    let paths = out_paths(&format!("{stem}-{}", method.name()), opts);
    let curve = method_curve(&data, method, opts)?;
    write_artifact(&paths.csv, &curve.to_csv())?;
    write_artifact(&paths.svg, &render_svg(&[(method.name(), &curve)]))?;
    write_artifact(
        &paths.report,
        &single_report(method.name(), &curve, &dataset_meta(&data, opts)),
    )
}

pub fn run_compare(
    csv: &Path,
    label_col: &str,
    positive: &str,
    opts: &CommonOpts,
) -> Result<(), CliError> {
    let data = read_labeled_csv(csv, label_col, positive)?;
    let stem = csv
        .file_stem()
        .map(|s| s.to_string_lossy().to_string())
        .unwrap_or_else(|| "data".to_string());
    let paths = out_paths(&format!("{stem}-compare"), opts);
    let qda = method_curve(&data, Method::Qda, opts)?;
    let linear = method_curve(&data, Method::Linear, opts)?;
    let flexible = method_curve(&data, Method::FlexibleBayes, opts)?;
    let empirical = method_curve(&data, Method::Empirical, opts)?;
    for (suffix, curve) in [
        ("-qda", &qda),
        ("-linear", &linear),
        ("-flexible-bayes", &flexible),
        ("-empirical", &empirical),
    ] {
        write_artifact(&with_suffix(&paths.csv, suffix), &curve.to_csv())?;
    }
    write_artifact(
        &paths.svg,
        &render_svg(&[
            ("qda", &qda),
            ("best linear", &linear),
            ("flexible bayes", &flexible),
            ("empirical", &empirical),
        ]),
    )?;
    let grid = interior_grid(99);
    let slack = mc_slack(opts.replications);
    let mut report = String::from("# four-method roc comparison\n");
    for (key, value) in dataset_meta(&data, opts) {
        report.push_str(&format!("{key} = {value}\n"));
    }
    report.push_str(&format!("auc_qda = {}\n", qda.auc()));
    report.push_str(&format!("auc_linear = {}\n", linear.auc()));
    report.push_str(&format!("auc_flexible_bayes = {}\n", flexible.auc()));
    report.push_str(&format!("auc_empirical = {}\n", empirical.auc()));
    report.push('\n');
    report.push_str(&compare_curves(&qda, &linear, &grid, slack)?.render_report("qda", "linear"));
    report.push('\n');
    report.push_str(
        &compare_curves(&flexible, &empirical, &grid, slack)?
            .render_report("flexible-bayes", "empirical"),
    );
    write_artifact(&paths.report, &report)
}
