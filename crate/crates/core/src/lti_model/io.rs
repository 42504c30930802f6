//! JSON system files: `{"A": [[..]], "B": [[..]], "C": [[..]], "name": ".."}`.
//!
//! Entries are written as `[re, im]` pairs; on input a bare number is read as
//! a real entry.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::LtiSystem;
use crate::error::{Error, Result};
use crate::numerics::{Matrix, Vector};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
pub(crate) enum Entry {
    Real(f64),
    Complex([f64; 2]),
}

impl From<Entry> for Complex64 {
    fn from(e: Entry) -> Self {
        match e {
            Entry::Real(x) => Complex64::new(x, 0.0),
            Entry::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

impl From<Complex64> for Entry {
    fn from(z: Complex64) -> Self {
        Entry::Complex([z.re, z.im])
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct SystemFile {
    #[serde(rename = "A")]
    a: Vec<Vec<Entry>>,
    #[serde(rename = "B")]
    b: Vec<Vec<Entry>>,
    #[serde(rename = "C")]
    c: Vec<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

pub(crate) fn matrix_from_rows(field: &str, rows: Vec<Vec<Entry>>) -> Result<Matrix> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    for (i, r) in rows.iter().enumerate() {
        if r.len() != ncols {
            return Err(Error::dimension(
                field,
                format!("row {i} has a different length"),
                ncols,
                r.len(),
            ));
        }
    }
    Ok(Matrix::from_row_iterator(
        nrows,
        ncols,
        rows.into_iter().flatten().map(Complex64::from),
    ))
}

pub(crate) fn matrix_to_rows(m: &Matrix) -> Vec<Vec<Entry>> {
    m.row_iter()
        .map(|r| r.iter().map(|&z| Entry::from(z)).collect())
        .collect()
}

pub(crate) fn vector_from_entries(entries: Vec<Entry>) -> Vector {
    Vector::from_iterator(entries.len(), entries.into_iter().map(Complex64::from))
}

/// Parse a vector given as a JSON array of numbers or `[re, im]` pairs.
pub fn vector_from_json(text: &str) -> Result<Vector> {
    let entries: Vec<Entry> = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("expected an array of numbers or [re, im] pairs: {e}")))?;
    let v = vector_from_entries(entries);
    if v.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::Parse("vector contains a non-finite entry".into()));
    }
    Ok(v)
}

pub fn from_json(text: &str) -> Result<LtiSystem> {
    let file: SystemFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let a = matrix_from_rows("A", file.a)?;
    let b = matrix_from_rows("B", file.b)?;
    let c = matrix_from_rows("C", file.c)?;
    let sys = LtiSystem::new(a, b, c)?;
    Ok(match file.name {
        Some(name) => sys.with_name(name),
        None => sys,
    })
}

pub fn to_json(sys: &LtiSystem) -> String {
    let file = SystemFile {
        a: matrix_to_rows(sys.a()),
        b: matrix_to_rows(sys.b()),
        c: matrix_to_rows(sys.c()),
        name: sys.name().map(str::to_string),
    };
    serde_json::to_string_pretty(&file).expect("system file serializes")
}

pub fn read_system(path: impl AsRef<Path>) -> Result<LtiSystem> {
    let path = path.as_ref();
    let context = |e: Error| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => Error::Parse(format!("{}: {other}", path.display())),
    };
    let text = std::fs::read_to_string(path).map_err(|e| context(e.into()))?;
    from_json(&text).map_err(context)
}

pub fn write_system(path: impl AsRef<Path>, sys: &LtiSystem) -> Result<()> {
    std::fs::write(path, to_json(sys) + "\n")?;
    Ok(())
}
