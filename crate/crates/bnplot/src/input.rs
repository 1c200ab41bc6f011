//! CSV ingestion.
//!
//! Every row must carry a parseable value: blank or malformed cells are
//! errors, never silently dropped.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use bnplot_core::DataSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("{path}: no column named `{column}`")]
    MissingColumn { path: PathBuf, column: String },
    #[error("{path}: row {row}, column `{column}`: `{cell}` is not a number")]
    NotNumeric {
        path: PathBuf,
        row: usize,
        column: String,
        cell: String,
    },
    #[error("{path}: row {row}, column `{column}`: empty cell")]
    Blank {
        path: PathBuf,
        row: usize,
        column: String,
    },
    #[error("{path}: {source}")]
    Data {
        path: PathBuf,
        #[source]
        source: bnplot_core::Error,
    },
}

/// Reads `column` (and optionally class labels from `class_column`) from a
/// headed CSV file. Rows are numbered from 1, not counting the header.
///
/// Class names are sorted, and labels index into that sorted list.
pub fn load_csv(
    path: impl AsRef<Path>,
    column: &str,
    class_column: Option<&str>,
) -> Result<DataSet, InputError> {
    let path = path.as_ref();
    let csv_err = |source| InputError::Csv {
        path: path.to_owned(),
        source,
    };
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(csv_err)?;
    let headers = reader.headers().map_err(csv_err)?.clone();
    let find = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| InputError::MissingColumn {
                path: path.to_owned(),
                column: name.to_owned(),
            })
    };
    let value_idx = find(column)?;
    let class_idx = class_column.map(find).transpose()?;

    let mut values = Vec::new();
    let mut classes = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 1;
        let record = record.map_err(csv_err)?;
        let cell = record.get(value_idx).unwrap_or("");
        if cell.is_empty() {
            return Err(InputError::Blank {
                path: path.to_owned(),
                row,
                column: column.to_owned(),
            });
        }
        let value: f64 = cell
            .parse()
            .ok()
            .filter(|v: &f64| v.is_finite())
            .ok_or_else(|| InputError::NotNumeric {
                path: path.to_owned(),
                row,
                column: column.to_owned(),
                cell: cell.to_owned(),
            })?;
        values.push(value);
        if let (Some(idx), Some(name)) = (class_idx, class_column) {
            let class = record.get(idx).unwrap_or("");
            if class.is_empty() {
                return Err(InputError::Blank {
                    path: path.to_owned(),
                    row,
                    column: name.to_owned(),
                });
            }
            classes.push(class.to_owned());
        }
    }

    let data_err = |source| InputError::Data {
        path: path.to_owned(),
        source,
    };
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let mut data = DataSet::new(values).map_err(data_err)?.with_name(name);
    if class_idx.is_some() {
        let names: Vec<String> = classes
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let labels = classes
            .iter()
            .map(|c| names.binary_search(c).unwrap() as u32)
            .collect();
        data = data.with_labels(labels, names).map_err(data_err)?;
    }
    Ok(data)
}
