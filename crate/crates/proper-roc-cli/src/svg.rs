//! Standalone SVG rendering of ROC curves: unit square, dashed diagonal
//! reference, one polyline per curve, legend. Output bytes depend only on
//! the input curves.

use proper_roc::{RocCurve, RocCurveKind};

const SIZE: f64 = 520.0;
const MARGIN: f64 = 56.0;
const PLOT: f64 = SIZE - 2.0 * MARGIN;

const COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2",
];
const DASHES: [&str; 6] = ["none", "7 3", "2 2", "8 2 2 2", "4 4", "1 3"];

fn map(x: f64, y: f64) -> (f64, f64) {
    (MARGIN + PLOT * x, SIZE - MARGIN - PLOT * y)
}

fn fmt(v: f64) -> String {
    format!("{v:.2}")
}

/// Plot vertices of a curve: staircase curves get explicit step corners
/// (rise first, then run), and very dense polylines are thinned.
fn plot_points(curve: &RocCurve) -> Vec<(f64, f64)> {
    let vertices = curve.vertices();
    let mut points = match curve.kind() {
        RocCurveKind::Staircase => {
            let mut out = Vec::with_capacity(2 * vertices.len());
            out.push(vertices[0]);
            for w in vertices.windows(2) {
                let (x0, _) = w[0];
                let (x1, y1) = w[1];
                out.push((x0, y1));
                out.push((x1, y1));
            }
            out
        }
        _ => vertices,
    };
    const MAX_POINTS: usize = 1200;
    if points.len() > MAX_POINTS {
        let step = points.len() as f64 / MAX_POINTS as f64;
        let mut thinned: Vec<(f64, f64)> = (0..MAX_POINTS)
            .map(|i| points[(i as f64 * step) as usize])
            .collect();
        thinned.push(*points.last().unwrap());
        points = thinned;
    }
    points.dedup();
    points
}

pub fn render_svg(curves: &[(&str, &RocCurve)]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" \
         viewBox=\"0 0 {SIZE} {SIZE}\">\n"
    ));
    out.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{SIZE}\" height=\"{SIZE}\" fill=\"#ffffff\"/>\n"
    ));
    out.push_str(&format!(
        "  <rect x=\"{m}\" y=\"{m}\" width=\"{p}\" height=\"{p}\" fill=\"none\" \
         stroke=\"#444444\" stroke-width=\"1\"/>\n",
        m = fmt(MARGIN),
        p = fmt(PLOT)
    ));
    // Diagonal reference.
    let (x0, y0) = map(0.0, 0.0);
    let (x1, y1) = map(1.0, 1.0);
    out.push_str(&format!(
        "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#999999\" \
         stroke-width=\"1\" stroke-dasharray=\"3 3\"/>\n",
        fmt(x0),
        fmt(y0),
        fmt(x1),
        fmt(y1)
    ));
    // Ticks and labels.
    for k in 0..=4 {
        let v = k as f64 / 4.0;
        let (tx, ty) = map(v, 0.0);
        out.push_str(&format!(
            "  <line x1=\"{x}\" y1=\"{y}\" x2=\"{x}\" y2=\"{y2}\" stroke=\"#444444\" stroke-width=\"1\"/>\n",
            x = fmt(tx),
            y = fmt(ty),
            y2 = fmt(ty + 5.0)
        ));
        out.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" \
             text-anchor=\"middle\">{v}</text>\n",
            fmt(tx),
            fmt(ty + 18.0)
        ));
        let (lx, ly) = map(0.0, v);
        out.push_str(&format!(
            "  <line x1=\"{x}\" y1=\"{y}\" x2=\"{x2}\" y2=\"{y}\" stroke=\"#444444\" stroke-width=\"1\"/>\n",
            x = fmt(lx),
            y = fmt(ly),
            x2 = fmt(lx - 5.0)
        ));
        out.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" \
             text-anchor=\"end\">{v}</text>\n",
            fmt(lx - 8.0),
            fmt(ly + 4.0)
        ));
    }
    out.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\" \
         text-anchor=\"middle\">false positive rate</text>\n",
        fmt(SIZE / 2.0),
        fmt(SIZE - 14.0)
    ));
    out.push_str(&format!(
        "  <text x=\"{x}\" y=\"{y}\" font-family=\"sans-serif\" font-size=\"13\" \
         text-anchor=\"middle\" transform=\"rotate(-90 {x} {y})\">true positive rate</text>\n",
        x = fmt(16.0),
        y = fmt(SIZE / 2.0)
    ));
    // Curves.
    for (i, (_, curve)) in curves.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let dash = DASHES[i % DASHES.len()];
        let coords: Vec<String> = plot_points(curve)
            .iter()
            .map(|&(x, y)| {
                let (px, py) = map(x, y);
                format!("{},{}", fmt(px), fmt(py))
            })
            .collect();
        out.push_str(&format!(
            "  <polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.6\" \
             stroke-dasharray=\"{dash}\" points=\"{}\"/>\n",
            coords.join(" ")
        ));
    }
    // Legend.
    for (i, (label, _)) in curves.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let dash = DASHES[i % DASHES.len()];
        let y = MARGIN + 16.0 + 18.0 * i as f64;
        out.push_str(&format!(
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" \
             stroke-width=\"1.6\" stroke-dasharray=\"{dash}\"/>\n",
            fmt(MARGIN + 12.0),
            fmt(y),
            fmt(MARGIN + 44.0),
            fmt(y)
        ));
        out.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{label}</text>\n",
            fmt(MARGIN + 50.0),
            fmt(y + 4.0)
        ));
    }
    out.push_str("</svg>\n");
    out
}
