//! Sum tables: the partial symmetric grid of effect sums over the nontrivial
//! elements of a finite effect algebra.
//!
//! Elements are positional. Index 0 is the zero effect, index 1 is the unit,
//! and indices `2..n` are the nontrivial effects in table order. The rows and
//! columns of zero and unit are implicit: `x ⊕ 0 = x`, and `x ⊕ 1` is defined
//! only for `x = 0`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of an element in a table of order `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ElementId(pub usize);

impl ElementId {
    pub const ZERO: ElementId = ElementId(0);
    pub const ONE: ElementId = ElementId(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0
    }

    /// True for the zero and the unit.
    #[inline]
    pub fn is_trivial(self) -> bool {
        self.0 < 2
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// One cell of a sum table.
///
/// The derived ordering `Undefined < One < Effect(2) < Effect(3) < …` is the
/// cell order used for canonical forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CellValue {
    Undefined,
    One,
    Effect(ElementId),
}

impl CellValue {
    pub fn is_defined(self) -> bool {
        !matches!(self, CellValue::Undefined)
    }

    /// The element this cell evaluates to, if the sum is defined.
    pub fn element(self) -> Option<ElementId> {
        match self {
            CellValue::Undefined => None,
            CellValue::One => Some(ElementId::ONE),
            CellValue::Effect(e) => Some(e),
        }
    }

    pub fn from_element(e: Option<ElementId>) -> CellValue {
        match e {
            None => CellValue::Undefined,
            Some(ElementId::ONE) => CellValue::One,
            Some(e) => CellValue::Effect(e),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("order must be at least 2, got {0}")]
    OrderTooSmall(usize),
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("row {row} has {found} cells, expected {expected}")]
    RowLength { row: usize, expected: usize, found: usize },
    #[error("cell ({row}, {col}) refers to element {index}, but the table has only {n} elements")]
    DanglingIndex { row: usize, col: usize, index: usize, n: usize },
    #[error("expected {expected} labels, found {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
}

/// Partial symmetric table of effect sums over `n - 2` nontrivial elements.
///
/// Equality, hashing and ordering look at the cells only; labels are display
/// metadata.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SumTable {
    n: usize,
    cells: Vec<CellValue>,
    labels: Option<Vec<String>>,
}

impl SumTable {
    /// Builds a table from its `(n-2) × (n-2)` grid of nontrivial cells.
    ///
    /// Only shape and index range are checked here; the effect-algebra rules
    /// are the business of [`crate::validate`].
    pub fn new(n: usize, rows: Vec<Vec<CellValue>>) -> Result<SumTable, TableError> {
        if n < 2 {
            return Err(TableError::OrderTooSmall(n));
        }
        let m = n - 2;
        if rows.len() != m {
            return Err(TableError::RowCount { expected: m, found: rows.len() });
        }
        let mut cells = Vec::with_capacity(m * m);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != m {
                return Err(TableError::RowLength { row: r + 2, expected: m, found: row.len() });
            }
            for (c, v) in row.into_iter().enumerate() {
                let v = match v {
                    CellValue::Effect(e) if e.0 >= n => {
                        return Err(TableError::DanglingIndex {
                            row: r + 2,
                            col: c + 2,
                            index: e.0,
                            n,
                        })
                    }
                    CellValue::Effect(ElementId::ONE) => CellValue::One,
                    v => v,
                };
                cells.push(v);
            }
        }
        Ok(SumTable { n, cells, labels: None })
    }

    /// Builds a table by evaluating `f` on every ordered pair of nontrivial
    /// elements.
    pub fn from_fn(n: usize, mut f: impl FnMut(ElementId, ElementId) -> CellValue) -> Result<SumTable, TableError> {
        if n < 2 {
            return Err(TableError::OrderTooSmall(n));
        }
        let rows = (2..n)
            .map(|i| (2..n).map(|j| f(ElementId(i), ElementId(j))).collect())
            .collect();
        SumTable::new(n, rows)
    }

    /// Attaches display names for the nontrivial elements.
    pub fn with_labels<S: Into<String>>(mut self, labels: impl IntoIterator<Item = S>) -> Result<SumTable, TableError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != self.n - 2 {
            return Err(TableError::LabelCount { expected: self.n - 2, found: labels.len() });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(TableError::DuplicateLabel(l.clone()));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> SumTable {
        self.labels = None;
        self
    }

    /// Number of elements, including zero and unit.
    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of nontrivial elements, `n - 2`.
    #[inline]
    pub fn nontrivial_count(&self) -> usize {
        self.n - 2
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + Clone {
        (0..self.n).map(ElementId)
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = ElementId> + Clone {
        (2..self.n).map(ElementId)
    }

    /// Cell of two nontrivial elements. Panics on trivial or out-of-range ids.
    #[inline]
    pub fn cell(&self, e: ElementId, f: ElementId) -> CellValue {
        assert!(!e.is_trivial() && !f.is_trivial() && e.0 < self.n && f.0 < self.n);
        let m = self.n - 2;
        self.cells[(e.0 - 2) * m + (f.0 - 2)]
    }

    /// Total sum lookup including the implicit zero and unit rows.
    pub fn sum(&self, e: ElementId, f: ElementId) -> Option<ElementId> {
        if e == ElementId::ZERO {
            return Some(f);
        }
        if f == ElementId::ZERO {
            return Some(e);
        }
        if e == ElementId::ONE || f == ElementId::ONE {
            return None;
        }
        self.cell(e, f).element()
    }

    /// Row of a nontrivial element, over the nontrivial columns.
    pub fn row(&self, e: ElementId) -> &[CellValue] {
        let m = self.n - 2;
        let r = e.0 - 2;
        &self.cells[r * m..(r + 1) * m]
    }

    pub fn rows(&self) -> Vec<Vec<CellValue>> {
        self.nontrivial().map(|e| self.row(e).to_vec()).collect()
    }

    /// Cells of the upper triangle (diagonal included) in row-major order.
    pub fn upper_triangle(&self) -> Vec<CellValue> {
        let mut out = Vec::with_capacity((self.n - 2) * (self.n - 1) / 2);
        for i in 2..self.n {
            for j in i..self.n {
                out.push(self.cell(ElementId(i), ElementId(j)));
            }
        }
        out
    }

    /// Number of defined cells over ordered nontrivial pairs.
    pub fn count_defined(&self) -> usize {
        self.cells.iter().filter(|c| c.is_defined()).count()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of an element: `0`, `1`, the attached label, or a
    /// default letter name.
    pub fn label(&self, e: ElementId) -> String {
        match e.0 {
            0 => "0".to_string(),
            1 => "1".to_string(),
            i => match &self.labels {
                Some(l) => l[i - 2].clone(),
                None => default_label(i - 2, self.n - 2),
            },
        }
    }

    /// Labels of the nontrivial elements, defaulted where none are attached.
    pub fn display_labels(&self) -> Vec<String> {
        self.nontrivial().map(|e| self.label(e)).collect()
    }

    /// Looks an element up by its display label. `0`/`1` (and `I` for the
    /// unit) name the trivial elements.
    pub fn find_label(&self, name: &str) -> Option<ElementId> {
        match name {
            "0" | "o" => return Some(ElementId::ZERO),
            "1" | "I" => return Some(ElementId::ONE),
            _ => {}
        }
        self.nontrivial().find(|&e| self.label(e) == name)
    }

    /// Cells as byte codes: 0 for undefined, 1 for the unit, `k` for effect
    /// `k`. A zero effect inside the table (invalid) maps to [`ZERO_CODE`].
    pub(crate) fn codes(&self) -> Vec<u8> {
        self.cells.iter().map(|&c| encode(c)).collect()
    }

    pub(crate) fn from_codes(n: usize, codes: &[u8]) -> SumTable {
        debug_assert_eq!(codes.len(), (n - 2) * (n - 2));
        SumTable { n, cells: codes.iter().map(|&c| decode(c)).collect(), labels: None }
    }

    fn key(&self) -> (usize, Vec<CellValue>) {
        (self.n, self.upper_triangle())
    }
}

pub(crate) const ZERO_CODE: u8 = u8::MAX - 1;

#[inline]
pub(crate) fn encode(c: CellValue) -> u8 {
    match c {
        CellValue::Undefined => 0,
        CellValue::One => 1,
        CellValue::Effect(ElementId(0)) => ZERO_CODE,
        CellValue::Effect(e) => e.0 as u8,
    }
}

#[inline]
pub(crate) fn decode(c: u8) -> CellValue {
    match c {
        0 => CellValue::Undefined,
        1 => CellValue::One,
        ZERO_CODE => CellValue::Effect(ElementId::ZERO),
        k => CellValue::Effect(ElementId(k as usize)),
    }
}

/// Letter names in the style `e, f, g, …`; falls back to `x2, x3, …` for
/// large tables.
pub fn default_label(k: usize, count: usize) -> String {
    const LETTERS: &[u8] = b"efghijklmnpqrstuvwxyz";
    if count <= LETTERS.len() {
        (LETTERS[k] as char).to_string()
    } else {
        format!("x{}", k + 2)
    }
}

impl PartialEq for SumTable {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.cells == other.cells
    }
}

impl Eq for SumTable {}

impl Hash for SumTable {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.cells.hash(state);
    }
}

impl PartialOrd for SumTable {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical total order: by order, then by the upper-triangle cell sequence.
impl Ord for SumTable {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

/// Shorthand for writing tables in code: `"-"` undefined, `"I"` unit,
/// otherwise a label from `labels`.
pub fn table_from_tokens(labels: &[&str], rows: &[&[&str]]) -> Result<SumTable, TableError> {
    let n = labels.len() + 2;
    let lookup = |t: &str| -> CellValue {
        match t {
            "-" => CellValue::Undefined,
            "I" => CellValue::One,
            "0" => CellValue::Effect(ElementId::ZERO),
            other => {
                let k = labels
                    .iter()
                    .position(|l| *l == other)
                    .unwrap_or_else(|| panic!("unknown token {other:?}"));
                CellValue::Effect(ElementId(k + 2))
            }
        }
    };
    let grid = rows.iter().map(|r| r.iter().map(|t| lookup(t)).collect()).collect();
    SumTable::new(n, grid)?.with_labels(labels.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_rows_are_implicit() {
        let t = table_from_tokens(&["e"], &[&["I"]]).unwrap();
        let e = ElementId(2);
        assert_eq!(t.sum(e, ElementId::ZERO), Some(e));
        assert_eq!(t.sum(ElementId::ZERO, ElementId::ONE), Some(ElementId::ONE));
        assert_eq!(t.sum(e, ElementId::ONE), None);
        assert_eq!(t.sum(ElementId::ONE, ElementId::ONE), None);
        assert_eq!(t.sum(e, e), Some(ElementId::ONE));
    }

    #[test]
    fn shape_errors() {
        assert_eq!(SumTable::new(1, vec![]), Err(TableError::OrderTooSmall(1)));
        assert!(matches!(SumTable::new(4, vec![vec![CellValue::One]]), Err(TableError::RowCount { .. })));
        assert!(matches!(
            SumTable::new(3, vec![vec![CellValue::One, CellValue::One]]),
            Err(TableError::RowLength { .. })
        ));
        assert!(matches!(
            SumTable::new(3, vec![vec![CellValue::Effect(ElementId(7))]]),
            Err(TableError::DanglingIndex { index: 7, .. })
        ));
    }

    #[test]
    fn order_two_is_empty() {
        let t = SumTable::new(2, vec![]).unwrap();
        assert_eq!(t.nontrivial_count(), 0);
        assert_eq!(t.count_defined(), 0);
        assert!(t.upper_triangle().is_empty());
    }

    #[test]
    fn labels_are_cosmetic() {
        let a = table_from_tokens(&["e", "f"], &[&["I", "-"], &["-", "I"]]).unwrap();
        let b = a.clone().with_labels(["a", "b"]).unwrap();
        assert_eq!(a, b);
        assert_eq!(b.find_label("b"), Some(ElementId(3)));
        assert!(a.clone().with_labels(["x", "x"]).is_err());
    }

    #[test]
    fn cell_order() {
        assert!(CellValue::Undefined < CellValue::One);
        assert!(CellValue::One < CellValue::Effect(ElementId(2)));
        assert!(CellValue::Effect(ElementId(2)) < CellValue::Effect(ElementId(3)));
        for c in [CellValue::Undefined, CellValue::One, CellValue::Effect(ElementId(5))] {
            assert_eq!(decode(encode(c)), c);
        }
    }
}
