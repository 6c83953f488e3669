//! Small declarative `key = value` config format for model pairs, so the
//! CLI can build any analytic example without code. Vectors are bracketed
//! lists, matrices are bracketed lists of rows:
//!
//! ```text
//! model = gaussian
//! mu_minus = [0, 0]
//! sigma_minus = [[1, 0], [0, 1]]
//! mu_plus = [1, 2]
//! sigma_plus = [[4, 0], [0, 16]]
//! ```
//!
//! Exact models (`piecewise-constant`, `finite-table`) accept rationals
//! such as `1/3` or decimals, kept exact.

use std::collections::HashMap;

use crate::models::{FiniteTablePair, GaussianPair, PiecewiseConstantPair, PointProcessPair};
use crate::rational::{parse_rational, to_f64, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub enum ModelSpec {
    Piecewise(PiecewiseConstantPair),
    Finite(FiniteTablePair),
    Gaussian(GaussianPair),
    PointProcess(PointProcessPair),
}

impl ModelSpec {
    pub fn kind_name(&self) -> &'static str {
        match self {
            ModelSpec::Piecewise(_) => "piecewise-constant",
            ModelSpec::Finite(_) => "finite-table",
            ModelSpec::Gaussian(_) => "gaussian",
            ModelSpec::PointProcess(_) => "point-process",
        }
    }
}

#[derive(Debug, Clone)]
enum RawValue {
    Scalar(String),
    Vector(Vec<String>),
    Matrix(Vec<Vec<String>>),
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Splits `s` on top-level commas, respecting bracket nesting.
fn split_top_level(s: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for ch in s.chars() {
        match ch {
            '[' => {
                depth += 1;
                current.push(ch);
            }
            ']' => {
                depth = depth.saturating_sub(1);
                current.push(ch);
            }
            ',' if depth == 0 => {
                parts.push(current.trim().to_string());
                current.clear();
            }
            _ => current.push(ch),
        }
    }
    if !current.trim().is_empty() {
        parts.push(current.trim().to_string());
    }
    parts
}

fn parse_value(line: usize, raw: &str) -> Result<RawValue> {
    let raw = raw.trim();
    if let Some(inner) = raw.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let parts = split_top_level(inner);
        if parts.iter().any(|p| p.starts_with('[')) {
            let mut rows = Vec::new();
            for part in parts {
                let inner = part
                    .strip_prefix('[')
                    .and_then(|r| r.strip_suffix(']'))
                    .ok_or_else(|| parse_err(line, format!("malformed matrix row `{part}`")))?;
                rows.push(split_top_level(inner));
            }
            Ok(RawValue::Matrix(rows))
        } else {
            Ok(RawValue::Vector(parts))
        }
    } else if raw.is_empty() {
        Err(parse_err(line, "empty value"))
    } else {
        Ok(RawValue::Scalar(raw.to_string()))
    }
}

struct Config {
    values: HashMap<String, (usize, RawValue)>,
}

impl Config {
    fn get(&self, key: &str) -> Result<&(usize, RawValue)> {
        self.values
            .get(key)
            .ok_or_else(|| parse_err(0, format!("missing key `{key}`")))
    }

    fn scalar(&self, key: &str) -> Result<(usize, &str)> {
        match self.get(key)? {
            (line, RawValue::Scalar(s)) => Ok((*line, s)),
            (line, _) => Err(parse_err(*line, format!("`{key}` must be a scalar"))),
        }
    }

    fn vector(&self, key: &str) -> Result<(usize, &[String])> {
        match self.get(key)? {
            (line, RawValue::Vector(v)) => Ok((*line, v)),
            (line, _) => Err(parse_err(*line, format!("`{key}` must be a bracketed list"))),
        }
    }

    fn matrix(&self, key: &str) -> Result<(usize, &[Vec<String>])> {
        match self.get(key)? {
            (line, RawValue::Matrix(m)) => Ok((*line, m)),
            (line, _) => Err(parse_err(
                *line,
                format!("`{key}` must be a bracketed list of rows"),
            )),
        }
    }

    fn rational_vector(&self, key: &str) -> Result<Vec<Rational>> {
        let (line, raw) = self.vector(key)?;
        raw.iter()
            .map(|s| parse_rational(s).map_err(|m| parse_err(line, m)))
            .collect()
    }

    fn f64_scalar(&self, key: &str) -> Result<f64> {
        let (line, raw) = self.scalar(key)?;
        parse_rational(raw)
            .map(|r| to_f64(&r))
            .map_err(|m| parse_err(line, m))
    }

    fn f64_vector(&self, key: &str) -> Result<Vec<f64>> {
        Ok(self.rational_vector(key)?.iter().map(to_f64).collect())
    }

    fn f64_matrix(&self, key: &str) -> Result<Vec<Vec<f64>>> {
        let (line, raw) = self.matrix(key)?;
        raw.iter()
            .map(|row| {
                row.iter()
                    .map(|s| {
                        parse_rational(s)
                            .map(|r| to_f64(&r))
                            .map_err(|m| parse_err(line, m))
                    })
                    .collect()
            })
            .collect()
    }

    fn u64_vector(&self, key: &str) -> Result<Vec<u64>> {
        let (line, raw) = self.vector(key)?;
        raw.iter()
            .map(|s| {
                s.parse::<u64>()
                    .map_err(|_| parse_err(line, format!("`{s}` is not a nonnegative integer")))
            })
            .collect()
    }
}

pub fn parse_model_config(text: &str) -> Result<ModelSpec> {
    let mut values = HashMap::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| parse_err(line_no, "expected `key = value`"))?;
        let key = key.trim().to_string();
        if key.is_empty() {
            return Err(parse_err(line_no, "empty key"));
        }
        let value = parse_value(line_no, value)?;
        if values.insert(key.clone(), (line_no, value)).is_some() {
            return Err(parse_err(line_no, format!("duplicate key `{key}`")));
        }
    }
    let config = Config { values };
    let (line, model) = config.scalar("model")?;
    match model {
        "piecewise-constant" => {
            let breakpoints = config.rational_vector("breakpoints")?;
            let density_minus = config.rational_vector("density_minus")?;
            let density_plus = config.rational_vector("density_plus")?;
            Ok(ModelSpec::Piecewise(PiecewiseConstantPair::new(
                breakpoints,
                density_minus,
                density_plus,
            )?))
        }
        "finite-table" => {
            let (_, labels) = config.vector("labels")?;
            let counts_minus = config.u64_vector("counts_minus")?;
            let counts_plus = config.u64_vector("counts_plus")?;
            Ok(ModelSpec::Finite(FiniteTablePair::new(
                labels.to_vec(),
                counts_minus,
                counts_plus,
            )?))
        }
        "gaussian" => {
            let mu_minus = config.f64_vector("mu_minus")?;
            let sigma_minus = config.f64_matrix("sigma_minus")?;
            let mu_plus = config.f64_vector("mu_plus")?;
            let sigma_plus = config.f64_matrix("sigma_plus")?;
            Ok(ModelSpec::Gaussian(GaussianPair::new(
                mu_minus,
                sigma_minus,
                mu_plus,
                sigma_plus,
            )?))
        }
        "point-process" => {
            let rate = config.f64_scalar("rate")?;
            let failures = {
                let (line, raw) = config.scalar("failures")?;
                raw.parse::<usize>()
                    .map_err(|_| parse_err(line, format!("`{raw}` is not a positive integer")))?
            };
            Ok(ModelSpec::PointProcess(PointProcessPair::new(
                rate, failures,
            )?))
        }
        other => Err(parse_err(
            line,
            format!(
                "unknown model `{other}` (expected piecewise-constant, finite-table, \
                 gaussian, or point-process)"
            ),
        )),
    }
}
