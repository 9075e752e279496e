//! JSON documents and pretty printing. Scalars are always strings in the
//! scalar grammar, never floats.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::decomp::{Block, Decomposition, Kind};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{format_scalar, parse_scalar};
use crate::spectral::{Spectrum, SpectrumEntry};
use crate::verify::{Check, CheckReport};

/// `{"n": 3, "entries": [["2","1","1"], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub n: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixDocument {
    pub fn from_matrix(m: &Matrix) -> Self {
        MatrixDocument {
            n: m.rows(),
            entries: m
                .to_rows()
                .iter()
                .map(|r| r.iter().map(format_scalar).collect())
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<Matrix> {
        if self.n == 0 {
            return Err(Error::Parse("matrix document: n must be at least 1".into()));
        }
        if self.entries.len() != self.n || self.entries.iter().any(|r| r.len() != self.n) {
            return Err(Error::Parse(format!(
                "matrix document: entries are not {0}x{0}",
                self.n
            )));
        }
        let rows = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, s)| {
                        parse_scalar(s).map_err(|e| match e {
                            Error::Parse(msg) => Error::Parse(format!("entry ({i},{j}): {msg}")),
                            other => other,
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_rows(rows))
    }
}

pub fn parse_matrix_json(text: &str) -> Result<Matrix> {
    let doc: MatrixDocument =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("matrix document: {e}")))?;
    doc.to_matrix()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDocument {
    pub lambda: String,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDocument {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub passed: bool,
    pub checks: Vec<CheckDocument>,
}

impl ReportDocument {
    pub fn from_report(r: &CheckReport) -> Self {
        ReportDocument {
            passed: r.passed(),
            checks: r
                .checks
                .iter()
                .map(|c: &Check| CheckDocument {
                    name: c.name.to_string(),
                    passed: c.passed,
                    detail: c.detail.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionDocument {
    pub kind: String,
    #[serde(rename = "V")]
    pub v: MatrixDocument,
    #[serde(rename = "M")]
    pub m: MatrixDocument,
    pub blocks: Vec<BlockDocument>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub check: Option<ReportDocument>,
}

impl DecompositionDocument {
    pub fn from_decomposition(d: &Decomposition, check: Option<&CheckReport>) -> Self {
        DecompositionDocument {
            kind: d.kind.as_str().to_string(),
            v: MatrixDocument::from_matrix(&d.v),
            m: MatrixDocument::from_matrix(&d.m),
            blocks: d
                .blocks
                .iter()
                .map(|b| BlockDocument {
                    lambda: format_scalar(&b.lambda),
                    size: b.size,
                })
                .collect(),
            check: check.map(ReportDocument::from_report),
        }
    }

    pub fn to_decomposition(&self) -> Result<Decomposition> {
        let kind = Kind::parse(&self.kind)
            .ok_or_else(|| Error::Parse(format!("unknown decomposition kind `{}`", self.kind)))?;
        Ok(Decomposition {
            kind,
            v: self.v.to_matrix()?,
            m: self.m.to_matrix()?,
            blocks: self
                .blocks
                .iter()
                .map(|b| Ok(Block::new(parse_scalar(&b.lambda)?, b.size)))
                .collect::<Result<Vec<_>>>()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenvalueDocument {
    pub lambda: String,
    pub multiplicity: usize,
    pub geometric: usize,
    pub max_stage: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumDocument {
    pub n: usize,
    pub eigenvalues: Vec<EigenvalueDocument>,
}

impl SpectrumDocument {
    pub fn from_spectrum(s: &Spectrum) -> Self {
        SpectrumDocument {
            n: s.total_multiplicity(),
            eigenvalues: s
                .entries
                .iter()
                .map(|e| EigenvalueDocument {
                    lambda: format_scalar(&e.lambda),
                    multiplicity: e.multiplicity,
                    geometric: e.geometric_dim,
                    max_stage: e.max_stage,
                })
                .collect(),
        }
    }

    pub fn to_spectrum(&self) -> Result<Spectrum> {
        Ok(Spectrum {
            entries: self
                .eigenvalues
                .iter()
                .map(|e| {
                    Ok(SpectrumEntry {
                        lambda: parse_scalar(&e.lambda)?,
                        multiplicity: e.multiplicity,
                        geometric_dim: e.geometric,
                        max_stage: e.max_stage,
                    })
                })
                .collect::<Result<Vec<_>>>()?,
        })
    }
}

/// Output of `gen`: the matrix document plus what produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratedDocument {
    #[serde(flatten)]
    pub matrix: MatrixDocument,
    pub structure: String,
    pub seed: u64,
    pub bound: i64,
    pub jordan: MatrixDocument,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents always serialize");
    s.push('\n');
    s
}

/// `λ=3 (3), λ=5 (1)`: the block-structure summary line.
pub fn block_summary(blocks: &[Block]) -> String {
    blocks
        .iter()
        .map(|b| format!("λ={} ({})", b.lambda, b.size))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn pretty_decomposition(d: &Decomposition) -> String {
    let mut out = String::new();
    writeln!(out, "kind: {}", d.kind).unwrap();
    writeln!(out, "blocks: {}", block_summary(&d.blocks)).unwrap();
    writeln!(out, "V =\n{}", d.v).unwrap();
    write!(out, "M =\n{}", d.m).unwrap();
    out
}

pub fn pretty_spectrum(s: &Spectrum) -> String {
    let mut rows = vec![[
        "lambda".to_string(),
        "mult".to_string(),
        "geo".to_string(),
        "L".to_string(),
    ]];
    for e in &s.entries {
        rows.push([
            e.lambda.to_string(),
            e.multiplicity.to_string(),
            e.geometric_dim.to_string(),
            e.max_stage.to_string(),
        ]);
    }
    let widths: Vec<usize> = (0..4)
        .map(|j| rows.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in &rows {
        let cells: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        writeln!(out, "{}", cells.join("  ").trim_end()).unwrap();
    }
    let diag = if s.is_diagonalizable() {
        "diagonalizable"
    } else {
        "not diagonalizable"
    };
    writeln!(out, "{diag}").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::jordan_decomposition;

    #[test]
    fn matrix_document_shape() {
        let m = Matrix::from_int_rows(&[[2, 1, 1], [-4, 5, 4], [1, 0, 2]]);
        let json = serde_json::to_string(&MatrixDocument::from_matrix(&m)).unwrap();
        assert_eq!(
            json,
            r#"{"n":3,"entries":[["2","1","1"],["-4","5","4"],["1","0","2"]]}"#
        );
        assert_eq!(parse_matrix_json(&json).unwrap(), m);
    }

    #[test]
    fn matrix_document_errors() {
        assert!(parse_matrix_json(r#"{"n":2,"entries":[["1","2"]]}"#).is_err());
        assert!(parse_matrix_json(r#"{"n":0,"entries":[]}"#).is_err());
        assert!(parse_matrix_json(r#"{"n":1,"entries":[[1]]}"#).is_err());
        let e = parse_matrix_json(r#"{"n":1,"entries":[["x"]]}"#).unwrap_err();
        assert!(e.to_string().contains("entry (0,0)"));
        assert!(matches!(
            parse_matrix_json(r#"{"n":1,"entries":[["1/0"]]}"#),
            Err(Error::ZeroDenominator(_))
        ));
    }

    #[test]
    fn decomposition_round_trip() {
        let a = Matrix::from_int_rows(&[[0, -1], [1, 0]]);
        let d = jordan_decomposition(&a).unwrap();
        let doc = DecompositionDocument::from_decomposition(&d, None);
        let back: DecompositionDocument = serde_json::from_str(&to_json(&doc)).unwrap();
        assert_eq!(back.to_decomposition().unwrap(), d);
        assert!(!to_json(&doc).contains("check"));
    }

    #[test]
    fn pretty_spectrum_table() {
        let s = crate::spectral::spectrum(&Matrix::identity(2), None).unwrap();
        assert_eq!(
            pretty_spectrum(&s),
            "lambda  mult  geo  L\n1       2     2    1\ndiagonalizable\n"
        );
    }
}
