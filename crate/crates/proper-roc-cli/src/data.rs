//! Labeled CSV ingestion: comma separator, required header row, UTF-8,
//! `.` decimal, no quoting. The positive label value is always explicit;
//! every other label value counts as negative.

use std::path::Path;

use proper_roc::{Class, LabeledSample};

use crate::CliError;

#[derive(Debug)]
pub struct CsvData {
    pub sample: LabeledSample,
    pub feature_names: Vec<String>,
}

pub fn read_labeled_csv(
    path: &Path,
    label_col: &str,
    positive: &str,
) -> Result<CsvData, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))?;
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| CliError::Data(format!("{}: empty file", path.display())))?;
    let columns: Vec<&str> = header.split(',').map(str::trim).collect();
    let label_idx = columns
        .iter()
        .position(|c| *c == label_col)
        .ok_or_else(|| {
            CliError::Data(format!(
                "label column `{label_col}` not found in header ({})",
                columns.join(", ")
            ))
        })?;
    let feature_names: Vec<String> = columns
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != label_idx)
        .map(|(_, c)| c.to_string())
        .collect();
    if feature_names.is_empty() {
        return Err(CliError::Data(
            "no feature columns besides the label column".to_string(),
        ));
    }
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for (lineno, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != columns.len() {
            return Err(CliError::Data(format!(
                "row {}: expected {} fields, got {}",
                lineno + 1,
                columns.len(),
                fields.len()
            )));
        }
        let mut row = Vec::with_capacity(feature_names.len());
        for (i, field) in fields.iter().enumerate() {
            if i == label_idx {
                continue;
            }
            let value: f64 = field.parse().map_err(|_| {
                CliError::Data(format!(
                    "row {}, column `{}`: `{field}` is not a number",
                    lineno + 1,
                    columns[i]
                ))
            })?;
            if !value.is_finite() {
                return Err(CliError::Data(format!(
                    "row {}, column `{}`: missing or non-finite value",
                    lineno + 1,
                    columns[i]
                )));
            }
            row.push(value);
        }
        rows.push(row);
        labels.push(if fields[label_idx] == positive {
            Class::Plus
        } else {
            Class::Minus
        });
    }
    let sample = LabeledSample::new(rows, labels)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    Ok(CsvData {
        sample,
        feature_names,
    })
}
