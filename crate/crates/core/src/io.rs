//! Text and JSON formats for sum tables and model files.
//!
//! The text format lists the order and then one row per nontrivial element:
//!
//! ```text
//! n=5
//! e: g - I
//! f: - I -
//! g: I - -
//! ```
//!
//! Statements may also be separated by `;`, and `#` starts a comment. A cell
//! token is `-` (undefined), `I` (the unit), or a row label. The token `0`
//! names the zero element; it is never valid in an effect algebra but is
//! accepted so that validation can report it.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cyclotomic::Cyclotomic;
use crate::models::{FuzzyAssignment, ModelError, MultiplicativeModel, QuantumAssignment};
use crate::rational::{parse_rational, Rational};
use crate::table::{CellValue, ElementId, SumTable, TableError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

fn perr(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Ascii,
    Latex,
    Json,
}

/// JSON form of a table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDocument {
    pub n: usize,
    pub labels: Vec<String>,
    pub cells: Vec<Vec<String>>,
}

impl TableDocument {
    pub fn from_table(t: &SumTable) -> TableDocument {
        let labels: Vec<String> = t.nontrivial().map(|e| t.label(e)).collect();
        let cells = t.nontrivial().map(|e| t.nontrivial().map(|f| token(t, t.cell(e, f))).collect()).collect();
        TableDocument { n: t.order(), labels, cells }
    }

    pub fn to_table(&self) -> Result<SumTable, ParseError> {
        let rows: Vec<(String, Vec<String>)> = self.labels.iter().cloned().zip(self.cells.iter().cloned()).collect();
        if self.labels.len() != self.cells.len() {
            return Err(perr(0, 0, format!("{} labels but {} rows", self.labels.len(), self.cells.len())));
        }
        let positions = vec![(0, 0); rows.len()];
        build(self.n, &rows, &positions, 0)
    }
}

fn token(t: &SumTable, c: CellValue) -> String {
    match c {
        CellValue::Undefined => "-".into(),
        CellValue::One => "I".into(),
        CellValue::Effect(e) if e == ElementId::ZERO => "0".into(),
        CellValue::Effect(e) => t.label(e),
    }
}

/// Parses a text or JSON table document.
pub fn parse(text: &str) -> Result<SumTable, ParseError> {
    if text.trim_start().starts_with('{') {
        let doc: TableDocument = serde_json::from_str(text).map_err(|e| perr(e.line(), e.column(), e.to_string()))?;
        return doc.to_table();
    }
    let mut n: Option<(usize, usize, usize)> = None;
    let mut rows: Vec<(String, Vec<String>)> = Vec::new();
    let mut positions: Vec<(usize, usize)> = Vec::new();
    for (li, raw) in text.lines().enumerate() {
        let line = li + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut offset = 0;
        for stmt in content.split(';') {
            let col = offset + stmt.len() - stmt.trim_start().len() + 1;
            offset += stmt.len() + 1;
            let s = stmt.trim();
            if s.is_empty() {
                continue;
            }
            if let Some(rest) = s.strip_prefix("n=").or_else(|| s.strip_prefix("n =")) {
                if n.is_some() {
                    return Err(perr(line, col, "order declared twice"));
                }
                let v = rest.trim().parse::<usize>().map_err(|_| perr(line, col, format!("bad order {:?}", rest.trim())))?;
                n = Some((v, line, col));
                continue;
            }
            let Some((label, cells)) = s.split_once(':') else {
                return Err(perr(line, col, format!("expected `label: cells` or `n=N`, found {s:?}")));
            };
            let label = label.trim();
            if label.is_empty() || label.contains(char::is_whitespace) {
                return Err(perr(line, col, format!("bad row label {label:?}")));
            }
            if matches!(label, "-" | "I" | "0" | "1") {
                return Err(perr(line, col, format!("{label:?} is reserved and cannot label a row")));
            }
            if rows.iter().any(|(l, _)| l == label) {
                return Err(perr(line, col, format!("duplicate label {label:?}")));
            }
            rows.push((label.to_string(), cells.split_whitespace().map(String::from).collect()));
            let cells_col = col + s.find(':').unwrap() + 1;
            positions.push((line, cells_col));
        }
    }
    let (n, nline, _) = n.ok_or_else(|| perr(1, 1, "missing order declaration `n=N`"))?;
    build(n, &rows, &positions, nline)
}

fn build(n: usize, rows: &[(String, Vec<String>)], positions: &[(usize, usize)], nline: usize) -> Result<SumTable, ParseError> {
    if n < 2 {
        return Err(perr(nline, 1, format!("order must be at least 2, got {n}")));
    }
    if rows.len() != n - 2 {
        return Err(perr(nline, 1, format!("order {n} needs {} rows, found {}", n - 2, rows.len())));
    }
    let labels: Vec<&str> = rows.iter().map(|(l, _)| l.as_str()).collect();
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            let (line, col) = positions[i];
            return Err(perr(line, col, format!("duplicate label {l:?}")));
        }
    }
    let mut grid = Vec::new();
    for ((_, cells), &(line, col)) in rows.iter().zip(positions) {
        if cells.len() != n - 2 {
            return Err(perr(line, col, format!("row has {} cells, expected {}", cells.len(), n - 2)));
        }
        let mut row = Vec::new();
        for (k, tok) in cells.iter().enumerate() {
            let v = match tok.as_str() {
                "-" | "⋄" => CellValue::Undefined,
                "I" | "1" => CellValue::One,
                "0" => CellValue::Effect(ElementId::ZERO),
                other => match labels.iter().position(|l| *l == other) {
                    Some(p) => CellValue::Effect(ElementId(p + 2)),
                    None => return Err(perr(line, col + k, format!("unknown token {other:?} in cell {}", k + 1))),
                },
            };
            row.push(v);
        }
        grid.push(row);
    }
    let t = SumTable::new(n, grid).map_err(|e| perr(nline, 1, e.to_string()))?;
    if n == 2 {
        return Ok(t);
    }
    t.with_labels(labels.iter().copied()).map_err(|e: TableError| perr(nline, 1, e.to_string()))
}

pub fn render(t: &SumTable, format: Format) -> String {
    match format {
        Format::Ascii => render_ascii(t),
        Format::Latex => render_latex(t),
        Format::Json => serde_json::to_string_pretty(&TableDocument::from_table(t)).expect("serializable") + "\n",
    }
}

fn render_ascii(t: &SumTable) -> String {
    let mut out = format!("n={}\n", t.order());
    for e in t.nontrivial() {
        let cells: Vec<String> = t.nontrivial().map(|f| token(t, t.cell(e, f))).collect();
        out.push_str(&format!("{}: {}\n", t.label(e), cells.join(" ")));
    }
    out
}

/// Preamble needed by [`render`] with [`Format::Latex`]; the rendered
/// output already includes it.
pub const LATEX_PREAMBLE: &str = "\\documentclass{article}\n\\usepackage{amssymb}\n";

fn latex_label(s: &str) -> String {
    let esc: String = s
        .chars()
        .map(|c| match c {
            '_' | '&' | '%' | '#' | '$' | '{' | '}' => format!("\\{c}"),
            c => c.to_string(),
        })
        .collect();
    format!("${esc}$")
}

fn render_latex(t: &SumTable) -> String {
    let m = t.nontrivial_count();
    let mut out = String::from(LATEX_PREAMBLE);
    out.push_str("\\begin{document}\n");
    out.push_str(&format!("\\begin{{tabular}}{{c|{}}}\n", "c".repeat(m)));
    let head: Vec<String> = std::iter::once("$\\oplus$".to_string()).chain(t.nontrivial().map(|e| latex_label(&t.label(e)))).collect();
    out.push_str(&format!("{} \\\\ \\hline\n", head.join(" & ")));
    for e in t.nontrivial() {
        let row: Vec<String> = std::iter::once(latex_label(&t.label(e)))
            .chain(t.nontrivial().map(|f| match t.cell(e, f) {
                CellValue::Undefined => "$\\diamond$".to_string(),
                CellValue::One => "$\\mathfrak{1}$".to_string(),
                CellValue::Effect(x) if x == ElementId::ZERO => "$\\mathfrak{o}$".to_string(),
                CellValue::Effect(x) => latex_label(&t.label(x)),
            }))
            .collect();
        out.push_str(&format!("{} \\\\\n", row.join(" & ")));
    }
    out.push_str("\\end{tabular}\n\\end{document}\n");
    out
}

/// A parsed model file.
#[derive(Clone, Debug, PartialEq)]
pub enum ModelFile {
    Multiplicative(MultiplicativeModel),
    Fuzzy { assignment: FuzzyAssignment, weak: bool },
    Quantum(QuantumAssignment),
}

#[derive(Debug, thiserror::Error)]
pub enum ModelFileError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn schema(msg: impl Into<String>) -> ModelFileError {
    ModelFileError::Schema(msg.into())
}

#[derive(Deserialize)]
struct RawModel {
    kind: String,
    assignment: BTreeMap<String, Value>,
    #[serde(default)]
    weak: bool,
}

fn rational_value(v: &Value) -> Result<Rational, ModelFileError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| schema(e.to_string())),
        Value::Number(n) => match n.as_i64() {
            Some(k) => Ok(Rational::from_integer(k)),
            None => parse_rational(&n.to_string()).map_err(|e| schema(e.to_string())),
        },
        other => Err(schema(format!("expected a rational, found {other}"))),
    }
}

fn cyclotomic_value(v: &Value) -> Result<Cyclotomic, ModelFileError> {
    match v {
        Value::Object(map) => {
            for k in map.keys() {
                if !matches!(k.as_str(), "re" | "im" | "omega" | "omega_im") {
                    return Err(schema(format!("unknown complex component {k:?}")));
                }
            }
            let get = |k: &str| map.get(k).map(rational_value).transpose().map(|r| r.unwrap_or_default());
            Ok(Cyclotomic::new(get("re")?, get("im")?, get("omega")?, get("omega_im")?))
        }
        other => rational_value(other).map(Cyclotomic::rational),
    }
}

fn float_value(v: &Value) -> Result<Complex64, ModelFileError> {
    let f = |v: &Value| -> Result<f64, ModelFileError> {
        match v {
            Value::Number(n) => n.as_f64().ok_or_else(|| schema("bad number")),
            Value::String(_) => {
                let r = rational_value(v)?;
                Ok(*r.numer() as f64 / *r.denom() as f64)
            }
            other => Err(schema(format!("expected a number, found {other}"))),
        }
    };
    match v {
        Value::Object(map) => Ok(Complex64::new(
            map.get("re").map(f).transpose()?.unwrap_or(0.0),
            map.get("im").map(f).transpose()?.unwrap_or(0.0),
        )),
        other => Ok(Complex64::new(f(other)?, 0.0)),
    }
}

/// Resolves assignment keys against the table labels; `"0"` and `"1"` (or
/// `"I"`) name zero and unit.
fn by_element<'v>(t: &SumTable, map: &'v BTreeMap<String, Value>) -> Result<Vec<Option<&'v Value>>, ModelFileError> {
    let mut out = vec![None; t.order()];
    for (k, v) in map {
        let e = t.find_label(k).ok_or_else(|| schema(format!("unknown element {k:?}")))?;
        if out[e.0].is_some() {
            return Err(schema(format!("element {k:?} assigned twice")));
        }
        out[e.0] = Some(v);
    }
    Ok(out)
}

/// Parses a model file against the table it describes.
pub fn parse_model(t: &SumTable, text: &str) -> Result<ModelFile, ModelFileError> {
    let raw: RawModel = serde_json::from_str(text)?;
    let vals = by_element(t, &raw.assignment)?;
    let missing = |e: usize| schema(format!("no value for element {:?}", t.label(ElementId(e))));
    match raw.kind.as_str() {
        "multiplicative" => {
            let mut values = Vec::new();
            for (i, v) in vals.iter().enumerate() {
                let v = v.ok_or_else(|| missing(i))?;
                values.push(match v {
                    Value::Array(xs) => xs.iter().map(cyclotomic_value).collect::<Result<_, _>>()?,
                    other => vec![cyclotomic_value(other)?],
                });
            }
            Ok(ModelFile::Multiplicative(MultiplicativeModel::new(values)?))
        }
        "fuzzy" => {
            let mut vectors: Vec<Option<Vec<Rational>>> = Vec::new();
            for v in &vals {
                vectors.push(match v {
                    None => None,
                    Some(Value::Array(xs)) => Some(xs.iter().map(rational_value).collect::<Result<_, _>>()?),
                    Some(other) => Some(vec![rational_value(other)?]),
                });
            }
            let dim = vectors.iter().flatten().map(Vec::len).next().ok_or_else(|| schema("empty assignment"))?;
            let zero = vec![Rational::from_integer(0); dim];
            let one = vec![Rational::from_integer(1); dim];
            let mut all = Vec::new();
            for (i, v) in vectors.into_iter().enumerate() {
                all.push(match (i, v) {
                    (_, Some(v)) => v,
                    (0, None) => zero.clone(),
                    (1, None) => one.clone(),
                    (i, None) => return Err(missing(i)),
                });
            }
            Ok(ModelFile::Fuzzy { assignment: FuzzyAssignment::new(all)?, weak: raw.weak })
        }
        "quantum" => {
            let mut mats: Vec<Option<DMatrix<Complex64>>> = Vec::new();
            for v in &vals {
                mats.push(match v {
                    None => None,
                    Some(Value::Array(rows)) => {
                        let rows: Vec<Vec<Complex64>> = rows
                            .iter()
                            .map(|r| match r {
                                Value::Array(xs) => xs.iter().map(float_value).collect::<Result<Vec<_>, _>>(),
                                other => Err(schema(format!("expected a matrix row, found {other}"))),
                            })
                            .collect::<Result<_, _>>()?;
                        let d = rows.len();
                        if rows.iter().any(|r| r.len() != d) {
                            return Err(schema("matrices must be square"));
                        }
                        Some(DMatrix::from_fn(d, d, |i, j| rows[i][j]))
                    }
                    Some(other) => return Err(schema(format!("expected a matrix, found {other}"))),
                });
            }
            let d = mats.iter().flatten().map(|m| m.nrows()).next().ok_or_else(|| schema("empty assignment"))?;
            let mut all = Vec::new();
            for (i, m) in mats.into_iter().enumerate() {
                all.push(match (i, m) {
                    (_, Some(m)) => m,
                    (0, None) => DMatrix::zeros(d, d),
                    (1, None) => DMatrix::identity(d, d),
                    (i, None) => return Err(missing(i)),
                });
            }
            Ok(ModelFile::Quantum(QuantumAssignment::new(all)?))
        }
        other => Err(schema(format!("unknown model kind {other:?}"))),
    }
}
