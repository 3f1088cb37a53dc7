//! Delimited-text dataset loading.
//!
//! One point per data row; blank lines and lines starting with `#` are
//! skipped. The delimiter can be fixed or auto-detected from the first data
//! row (a comma anywhere selects comma, otherwise whitespace). An optional
//! label column is captured verbatim as the ground-truth class; every other
//! column must parse as a finite number.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::point::Point;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Delimiter {
    #[default]
    Auto,
    Comma,
    Whitespace,
}

/// Where and how to read a dataset.
#[derive(Debug, Clone)]
pub struct DatasetSpec {
    pub path: PathBuf,
    pub delimiter: Delimiter,
    /// 0-based column holding the ground-truth label, if any.
    pub label_column: Option<usize>,
}

impl DatasetSpec {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        DatasetSpec {
            path: path.into(),
            delimiter: Delimiter::Auto,
            label_column: None,
        }
    }

    pub fn delimiter(mut self, delimiter: Delimiter) -> Self {
        self.delimiter = delimiter;
        self
    }

    pub fn label_column(mut self, column: Option<usize>) -> Self {
        self.label_column = column;
        self
    }
}

/// Reads a dataset file. `row_index` is the position among data rows, so it
/// matches line order with comments and blanks skipped.
pub fn load_dataset(spec: &DatasetSpec) -> Result<Vec<Point>> {
    let text = fs::read_to_string(&spec.path)?;
    parse_dataset(&text, spec.delimiter, spec.label_column)
}

/// Parses dataset text; see [`load_dataset`]. Errors carry the 1-based
/// physical line number of the offending row.
pub fn parse_dataset(
    text: &str,
    delimiter: Delimiter,
    label_column: Option<usize>,
) -> Result<Vec<Point>> {
    let mut points = Vec::new();
    let mut delimiter = delimiter;
    let mut expected_cols: Option<usize> = None;
    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let line_no = line_no + 1;
        if delimiter == Delimiter::Auto {
            delimiter = if line.contains(',') {
                Delimiter::Comma
            } else {
                Delimiter::Whitespace
            };
        }
        let fields: Vec<&str> = match delimiter {
            Delimiter::Comma => line.split(',').map(str::trim).collect(),
            Delimiter::Whitespace => line.split_whitespace().collect(),
            Delimiter::Auto => unreachable!(),
        };
        let ncols = *expected_cols.get_or_insert(fields.len());
        if fields.len() != ncols {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected {ncols} columns, found {}", fields.len()),
            });
        }
        if let Some(label_col) = label_column {
            if label_col >= ncols {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!(
                        "label column {label_col} out of range for {ncols} columns"
                    ),
                });
            }
            if ncols < 2 {
                return Err(Error::Parse {
                    line: line_no,
                    message: "a labeled row needs at least one coordinate column".into(),
                });
            }
        }

        let mut coords = Vec::with_capacity(ncols - usize::from(label_column.is_some()));
        let mut label = None;
        for (col, field) in fields.iter().enumerate() {
            if Some(col) == label_column {
                label = Some((*field).to_string());
                continue;
            }
            let value: f64 = field.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("column {col}: cannot parse {field:?} as a number"),
            })?;
            if !value.is_finite() {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("column {col}: non-finite coordinate {field:?}"),
                });
            }
            coords.push(value);
        }
        points.push(Point {
            coords,
            row_index: points.len(),
            label,
        });
    }
    Ok(points)
}

/// Serializes points back to delimited text at full round-trip precision
/// (Rust's shortest-roundtrip float formatting).
pub fn format_dataset(points: &[Point], delimiter: Delimiter) -> String {
    let sep = match delimiter {
        Delimiter::Comma => ",",
        _ => " ",
    };
    let mut out = String::new();
    for p in points {
        let mut fields: Vec<String> = p.coords.iter().map(f64::to_string).collect();
        if let Some(label) = &p.label {
            fields.push(label.clone());
        }
        out.push_str(&fields.join(sep));
        out.push('\n');
    }
    out
}

/// Writes `format_dataset` output to a file.
pub fn write_dataset(path: &Path, points: &[Point], delimiter: Delimiter) -> Result<()> {
    fs::write(path, format_dataset(points, delimiter))?;
    Ok(())
}
