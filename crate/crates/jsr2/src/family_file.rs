//! The JSON family file:
//!
//! ```json
//! {"matrices": [[[a, b], [c, d]], ...], "tol": {"rtol": 1e-9, "atol": 1e-12}}
//! ```
//!
//! `tol` is optional, as is each of its fields.

use std::fmt;
use std::path::Path;

use jsr2_core::{Mat2, MatrixFamily, Tol};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based position in the input, when the error came from the JSON reader.
    pub line: Option<usize>,
    pub column: Option<usize>,
    /// Field path such as `matrices[1][0]`, empty for the document root.
    pub path: String,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let (Some(line), Some(column)) = (self.line, self.column) {
            write!(f, "line {line}, column {column}: ")?;
        }
        if !self.path.is_empty() && self.path != "." {
            write!(f, "at `{}`: ", self.path)?;
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileRepr {
    matrices: Vec<[[f64; 2]; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tol: Option<TolRepr>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TolRepr {
    #[serde(default = "default_rtol")]
    rtol: f64,
    #[serde(default = "default_atol")]
    atol: f64,
}

fn default_rtol() -> f64 {
    Tol::DEFAULT_RTOL
}

fn default_atol() -> f64 {
    Tol::DEFAULT_ATOL
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> ParseError {
    ParseError { line: None, column: None, path: path.into(), message: message.into() }
}

pub fn parse_family(text: &[u8]) -> Result<MatrixFamily, ParseError> {
    let de = &mut serde_json::Deserializer::from_slice(text);
    let repr: FileRepr = serde_path_to_error::deserialize(de).map_err(|err| {
        let path = err.path().to_string();
        let inner = err.into_inner();
        let (line, column) = if inner.line() == 0 { (None, None) } else { (Some(inner.line()), Some(inner.column())) };
        ParseError { line, column, path, message: strip_position(&inner.to_string()) }
    })?;

    if repr.matrices.is_empty() {
        return Err(invalid("matrices", "family must have at least one matrix"));
    }
    for (k, m) in repr.matrices.iter().enumerate() {
        for (i, row) in m.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if !x.is_finite() {
                    return Err(invalid(format!("matrices[{k}][{i}][{j}]"), "entry is not finite"));
                }
            }
        }
    }
    let tol = match repr.tol {
        None => Tol::default(),
        Some(t) => {
            let tol = Tol::new(t.rtol, t.atol);
            if !tol.is_valid() {
                return Err(invalid("tol", "tolerances must be finite and nonnegative"));
            }
            tol
        }
    };
    let members = repr.matrices.iter().map(|&[r0, r1]| Mat2::from_rows([r0, r1])).collect();
    MatrixFamily::new(members, tol).map_err(|e| invalid("", e.to_string()))
}

// serde_json appends " at line L column C"; we report the position separately.
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

/// Compact JSON with shortest round-trip decimals, so that
/// `parse_family(&serialize_family(f))` reproduces every entry bit for bit.
pub fn serialize_family(fam: &MatrixFamily) -> Vec<u8> {
    let tol = fam.tol();
    let repr = FileRepr {
        matrices: fam.members().iter().map(|m| m.rows()).collect(),
        tol: Some(TolRepr { rtol: tol.rtol, atol: tol.atol }),
    };
    serde_json::to_vec(&repr).expect("finite family serializes")
}

pub fn read_family(path: &Path) -> Result<MatrixFamily, LoadError> {
    let shown = path.display().to_string();
    let bytes = std::fs::read(path).map_err(|source| LoadError::Io { path: shown.clone(), source })?;
    parse_family(&bytes).map_err(|source| LoadError::Parse { path: shown, source })
}
