//! Subspace files: exact entries as `"p"` or `"p/q"` strings, basis in
//! canonical RREF order.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crlab_core::exact_linalg::{format_rational, parse_rational};
use crlab_core::{Mat, MatrixSubspace, Rational, RectSubspace};

use crate::CliError;

pub type MatrixJson = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceFile {
    pub ambient: usize,
    pub field: String,
    /// Present only for rectangular spaces.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cols: Option<usize>,
    pub basis: Vec<MatrixJson>,
}

pub enum Space {
    Square(MatrixSubspace),
    Rect(RectSubspace),
}

pub fn matrix_json(m: &Mat) -> MatrixJson {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(format_rational).collect())
        .collect()
}

fn parse_matrix(rows: usize, cols: usize, m: &MatrixJson, index: usize) -> Result<Mat, CliError> {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        return Err(CliError::parse(format!(
            "basis[{index}] is not {rows}x{cols}"
        )));
    }
    let entries: Vec<Vec<Rational>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|s| parse_rational(s))
                .collect::<Result<_, _>>()
        })
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::parse(format!("basis[{index}]: {e}")))?;
    if rows == 0 || cols == 0 {
        return Ok(Mat::zeros(rows, cols));
    }
    Mat::from_rows(entries).map_err(|e| CliError::parse(e.to_string()))
}

impl SubspaceFile {
    pub fn from_space(space: &Space) -> Self {
        match space {
            Space::Square(v) => SubspaceFile {
                ambient: v.ambient(),
                field: "Q".into(),
                rows: None,
                cols: None,
                basis: v.basis().iter().map(matrix_json).collect(),
            },
            Space::Rect(v) => SubspaceFile {
                ambient: v.rows().max(v.cols()),
                field: "Q".into(),
                rows: Some(v.rows()),
                cols: Some(v.cols()),
                basis: v.basis().iter().map(matrix_json).collect(),
            },
        }
    }

    /// Validates and spans; the result is canonical whatever the input order.
    pub fn to_space(&self) -> Result<Space, CliError> {
        if self.field != "Q" {
            return Err(CliError::parse(format!(
                "unsupported field {:?}, expected \"Q\"",
                self.field
            )));
        }
        match (self.rows, self.cols) {
            (None, None) => {
                let n = self.ambient;
                let mats = self
                    .basis
                    .iter()
                    .enumerate()
                    .map(|(i, m)| parse_matrix(n, n, m, i))
                    .collect::<Result<Vec<_>, _>>()?;
                MatrixSubspace::span(n, &mats)
                    .map(Space::Square)
                    .map_err(|e| CliError::parse(e.to_string()))
            }
            (Some(r), Some(c)) => {
                let mats = self
                    .basis
                    .iter()
                    .enumerate()
                    .map(|(i, m)| parse_matrix(r, c, m, i))
                    .collect::<Result<Vec<_>, _>>()?;
                RectSubspace::span(r, c, &mats)
                    .map(Space::Rect)
                    .map_err(|e| CliError::parse(e.to_string()))
            }
            _ => Err(CliError::parse("rows and cols must be given together")),
        }
    }
}

pub fn read_space(path: &Path) -> Result<Space, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    let file: SubspaceFile = serde_json::from_str(&text)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    file.to_space()
}

pub fn read_square(path: &Path) -> Result<MatrixSubspace, CliError> {
    match read_space(path)? {
        Space::Square(v) => Ok(v),
        Space::Rect(_) => Err(CliError::parse(format!(
            "{}: expected a square space",
            path.display()
        ))),
    }
}

pub fn write_space(path: &Path, space: &Space) -> Result<(), CliError> {
    let mut text =
        serde_json::to_string_pretty(&SubspaceFile::from_space(space)).expect("serializable");
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::io(format!("{}: {e}", path.display())))
}
