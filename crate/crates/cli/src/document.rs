//! JSON documents for matrices and frames.
//!
//! Complex entries are `[re, im]` pairs in row-major order. Numbers are
//! written with 17 significant digits so a write/read cycle reproduces every
//! value bit for bit.

use std::fs;
use std::io;
use std::path::Path;

use cpt_core::{Complex64, ComplexMatrix64, Operator64, OperatorKind};
use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub antilinear: bool,
}

fn is_false(b: &bool) -> bool {
    !*b
}

impl MatrixDocument {
    pub fn from_matrix(m: &ComplexMatrix64, antilinear: bool) -> Self {
        let n = m.nrows();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let z = m[(i, j)];
                entries.push([z.re, z.im]);
            }
        }
        Self {
            dim: n,
            entries,
            antilinear,
        }
    }

    pub fn from_operator(op: &Operator64) -> Self {
        Self::from_matrix(op.matrix(), !op.is_linear())
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix64, String> {
        if self.dim == 0 {
            return Err("dim must be positive".into());
        }
        if self.entries.len() != self.dim * self.dim {
            return Err(format!(
                "expected {} entries for dim {}, found {}",
                self.dim * self.dim,
                self.dim,
                self.entries.len()
            ));
        }
        if self.entries.iter().flatten().any(|x| !x.is_finite()) {
            return Err("entries must be finite".into());
        }
        Ok(ComplexMatrix64::from_row_iterator(
            self.dim,
            self.dim,
            self.entries.iter().map(|[re, im]| Complex64::new(*re, *im)),
        ))
    }

    pub fn kind(&self) -> OperatorKind {
        if self.antilinear {
            OperatorKind::Antilinear
        } else {
            OperatorKind::Linear
        }
    }

    pub fn to_operator(&self) -> Result<Operator64, String> {
        Operator64::new(self.kind(), self.to_matrix()?).map_err(|e| e.to_string())
    }
}

/// `{P, T}` with an optional `C`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameDocument {
    pub p: MatrixDocument,
    pub t: MatrixDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<MatrixDocument>,
}

struct ExactFloats;

impl Formatter for ExactFloats {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        write!(writer, "{value:.8e}")
    }
}

/// Serializes with exact floats, newline-terminated.
pub fn to_json<S: Serialize>(value: &S) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, ExactFloats);
    value.serialize(&mut ser).expect("documents serialize infallibly");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

pub fn write_json<S: Serialize>(path: &Path, value: &S) -> Result<(), CliError> {
    fs::write(path, to_json(value)).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_json<D: for<'de> Deserialize<'de>>(path: &Path) -> Result<D, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix64, CliError> {
    let doc: MatrixDocument = read_json(path)?;
    doc.to_matrix().map_err(|message| CliError::Parse {
        path: path.to_path_buf(),
        message,
    })
}

pub fn read_operator(path: &Path) -> Result<Operator64, CliError> {
    let doc: MatrixDocument = read_json(path)?;
    doc.to_operator().map_err(|message| CliError::Parse {
        path: path.to_path_buf(),
        message,
    })
}
