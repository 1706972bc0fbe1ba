//! Named algebras: the scale and sparse families, every algebra with at most
//! six elements, an eight-element quantum algebra of fuzzy dimension 3, and
//! a nine-element algebra without states.

use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{validate, EffectAlgebra};
use crate::canon::canonical_form;
use crate::rational::{q, Rational};
use crate::table::{table_from_tokens, CellValue, ElementId, SumTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("order must be at least 2, got {0}")]
    OrderTooSmall(usize),
    #[error("a sparse algebra needs at least one nontrivial effect")]
    EmptySparse,
}

/// The scale algebra `{0, 1/(n−1), …, 1}` with `k/(n−1) ⊕ m/(n−1)` defined
/// when `k + m ≤ n − 1`.
pub fn make_scale(n: usize) -> Result<EffectAlgebra, CatalogError> {
    if n < 2 {
        return Err(CatalogError::OrderTooSmall(n));
    }
    let top = n - 1;
    // Nontrivial element k/(n−1) has id k + 1.
    let t = SumTable::from_fn(n, |a, b| {
        let s = (a.0 - 1) + (b.0 - 1);
        match s.cmp(&top) {
            std::cmp::Ordering::Less => CellValue::Effect(ElementId(s + 1)),
            std::cmp::Ordering::Equal => CellValue::One,
            std::cmp::Ordering::Greater => CellValue::Undefined,
        }
    })
    .expect("scale table shape");
    Ok(validate(&t).expect("scale algebras are valid"))
}

/// `k` self-complementary effects followed by `ℓ` complementary pairs, with
/// no other defined nontrivial sums.
pub fn make_sparse(k: usize, l: usize) -> Result<EffectAlgebra, CatalogError> {
    if k + 2 * l == 0 {
        return Err(CatalogError::EmptySparse);
    }
    let n = 2 + k + 2 * l;
    let partner = |i: usize| if i < k { i } else { k + ((i - k) ^ 1) };
    let t = SumTable::from_fn(n, |a, b| if partner(a.0 - 2) == b.0 - 2 { CellValue::One } else { CellValue::Undefined })
        .expect("sparse table shape");
    Ok(validate(&t).expect("sparse algebras are valid"))
}

/// What the state space of a catalog entry is known to look like.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ExpectedStates {
    Unspecified,
    Empty,
    /// Values on the nontrivial elements in table order.
    Unique(#[serde(with = "crate::rational::vec_as_string")] Vec<Rational>),
    /// Dimension and vertex count of the polytope.
    Polytope { dimension: isize, vertices: usize },
    /// At least one-dimensional.
    Infinite,
}

/// Properties recorded for a catalog entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub quantum: bool,
    pub scale: bool,
    pub sparse_params: Option<(usize, usize)>,
    pub states: ExpectedStates,
    pub separating: Option<bool>,
    pub order_determining: Option<bool>,
    pub min_fuzzy_dimension: Option<usize>,
    /// Orders of the factors when the entry is a product.
    pub factors: Option<(usize, usize)>,
    /// A pair `(e, f)` and multiplicity `m` with `m·e = m·f`.
    pub witness: Option<(String, String, usize)>,
}

impl Expected {
    fn base(quantum: bool) -> Expected {
        Expected {
            quantum,
            scale: false,
            sparse_params: None,
            states: ExpectedStates::Unspecified,
            separating: None,
            order_determining: None,
            min_fuzzy_dimension: None,
            factors: None,
            witness: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub aliases: Vec<String>,
    pub description: String,
    pub algebra: EffectAlgebra,
    #[serde(skip)]
    pub canonical: SumTable,
    pub expected: Expected,
}

impl CatalogEntry {
    pub fn order(&self) -> usize {
        self.algebra.order()
    }

    pub fn matches_name(&self, name: &str) -> bool {
        let norm = |s: &str| s.chars().filter(|c| !c.is_whitespace() && *c != '_').collect::<String>().to_ascii_lowercase();
        let n = norm(name);
        norm(&self.name) == n || self.aliases.iter().any(|a| norm(a) == n)
    }
}

const LETTERS: [&str; 7] = ["e", "f", "g", "h", "i", "j", "k"];

fn from_rows(rows: &[&[&str]]) -> EffectAlgebra {
    let t = table_from_tokens(&LETTERS[..rows.len()], rows).expect("catalog table shape");
    validate(&t).expect("catalog tables are valid")
}

fn labeled(a: EffectAlgebra) -> EffectAlgebra {
    let m = a.order() - 2;
    let t = a.into_table().with_labels(LETTERS[..m].iter().copied()).expect("distinct labels");
    validate(&t).expect("relabeling keeps validity")
}

fn unique(values: &[(i64, i64)]) -> ExpectedStates {
    ExpectedStates::Unique(values.iter().map(|&(p, d)| q(p, d)).collect())
}

fn scale_entry(n: usize) -> (String, Vec<String>, String, EffectAlgebra, Expected) {
    let unique_state = ExpectedStates::Unique((1..n as i64 - 1).map(|k| q(k, n as i64 - 1)).collect());
    let expected = Expected {
        scale: true,
        sparse_params: match n {
            2 => Some((0, 0)),
            3 => Some((1, 0)),
            _ => None,
        },
        states: if n == 2 { ExpectedStates::Polytope { dimension: 0, vertices: 1 } } else { unique_state },
        separating: Some(true),
        order_determining: Some(true),
        min_fuzzy_dimension: Some(1),
        factors: None,
        ..Expected::base(true)
    };
    let alg = make_scale(n).unwrap();
    let alg = if n > 2 { labeled(alg) } else { alg };
    (format!("S{n}"), vec![], format!("scale algebra with {n} elements"), alg, expected)
}

fn build() -> Vec<CatalogEntry> {
    let mut raw: Vec<(String, Vec<String>, String, EffectAlgebra, Expected)> = Vec::new();
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let half = |m: usize| ExpectedStates::Unique(vec![q(1, 2); m]);

    raw.push(scale_entry(2));
    raw.push(scale_entry(3));
    raw.push(scale_entry(4));
    raw.push((
        "P4".into(),
        s(&["S2xS2"]),
        "two complementary effects, no other sums".into(),
        labeled(make_sparse(0, 1).unwrap()),
        Expected {
            sparse_params: Some((0, 1)),
            states: ExpectedStates::Polytope { dimension: 1, vertices: 2 },
            separating: Some(true),
            order_determining: Some(true),
            min_fuzzy_dimension: Some(2),
            factors: Some((2, 2)),
            ..Expected::base(true)
        },
    ));
    raw.push((
        "D4".into(),
        vec![],
        "two self-complementary effects".into(),
        labeled(make_sparse(2, 0).unwrap()),
        Expected {
            sparse_params: Some((2, 0)),
            states: half(2),
            separating: Some(false),
            order_determining: Some(false),
            witness: Some(("e".into(), "f".into(), 2)),
            ..Expected::base(false)
        },
    ));
    raw.push(scale_entry(5));
    raw.push((
        "D5".into(),
        vec![],
        "three self-complementary effects".into(),
        labeled(make_sparse(3, 0).unwrap()),
        Expected {
            sparse_params: Some((3, 0)),
            states: half(3),
            separating: Some(false),
            order_determining: Some(false),
            ..Expected::base(false)
        },
    ));
    raw.push((
        "E5(1,1)".into(),
        vec![],
        "one self-complementary effect and one complementary pair".into(),
        labeled(make_sparse(1, 1).unwrap()),
        Expected { sparse_params: Some((1, 1)), states: ExpectedStates::Infinite, ..Expected::base(true) },
    ));
    raw.push((
        "E5(3)".into(),
        vec![],
        "weak scale algebra {0, 1/3, 1/2, 2/3, 1}".into(),
        from_rows(&[&["g", "-", "I"], &["-", "I", "-"], &["I", "-", "-"]]),
        Expected {
            states: unique(&[(1, 3), (1, 2), (2, 3)]),
            separating: Some(true),
            order_determining: Some(false),
            ..Expected::base(false)
        },
    ));
    raw.push(scale_entry(6));
    raw.push((
        "D6".into(),
        vec![],
        "four self-complementary effects".into(),
        labeled(make_sparse(4, 0).unwrap()),
        Expected {
            sparse_params: Some((4, 0)),
            states: half(4),
            separating: Some(false),
            order_determining: Some(false),
            ..Expected::base(false)
        },
    ));
    raw.push((
        "P6".into(),
        vec![],
        "two complementary pairs".into(),
        labeled(make_sparse(0, 2).unwrap()),
        Expected {
            sparse_params: Some((0, 2)),
            states: ExpectedStates::Polytope { dimension: 2, vertices: 4 },
            separating: Some(true),
            order_determining: Some(true),
            ..Expected::base(true)
        },
    ));
    raw.push((
        "E6(2,1)".into(),
        s(&["E6(3)"]),
        "two self-complementary effects and one complementary pair".into(),
        labeled(make_sparse(2, 1).unwrap()),
        Expected {
            sparse_params: Some((2, 1)),
            states: ExpectedStates::Infinite,
            separating: Some(false),
            order_determining: Some(false),
            ..Expected::base(false)
        },
    ));
    raw.push((
        "E6(4)".into(),
        vec![],
        "S4 glued to a complementary pair".into(),
        from_rows(&[&["f", "I", "-", "-"], &["I", "-", "-", "-"], &["-", "-", "-", "I"], &["-", "-", "I", "-"]]),
        Expected { states: ExpectedStates::Infinite, ..Expected::base(true) },
    ));
    raw.push((
        "E6(5)".into(),
        vec![],
        "S4 glued to two self-complementary effects".into(),
        from_rows(&[&["f", "I", "-", "-"], &["I", "-", "-", "-"], &["-", "-", "I", "-"], &["-", "-", "-", "I"]]),
        Expected {
            states: unique(&[(1, 3), (2, 3), (1, 2), (1, 2)]),
            separating: Some(false),
            order_determining: Some(false),
            ..Expected::base(false)
        },
    ));
    raw.push((
        "E6(6)".into(),
        vec![],
        "two copies of S4 sharing zero and unit".into(),
        from_rows(&[&["f", "I", "-", "-"], &["I", "-", "-", "-"], &["-", "-", "h", "I"], &["-", "-", "I", "-"]]),
        Expected {
            states: unique(&[(1, 3), (2, 3), (1, 3), (2, 3)]),
            separating: Some(false),
            order_determining: Some(false),
            ..Expected::base(false)
        },
    ));
    raw.push((
        "E6(7)".into(),
        s(&["S2xS3"]),
        "product of S2 and S3".into(),
        from_rows(&[&["-", "g", "-", "I"], &["g", "h", "I", "-"], &["-", "I", "-", "-"], &["I", "-", "-", "-"]]),
        Expected { states: ExpectedStates::Infinite, factors: Some((2, 3)), ..Expected::base(true) },
    ));
    raw.push((
        "E6(8)".into(),
        vec![],
        "S5 glued to a self-complementary effect".into(),
        from_rows(&[&["f", "g", "I", "-"], &["g", "I", "-", "-"], &["I", "-", "-", "-"], &["-", "-", "-", "I"]]),
        Expected {
            states: unique(&[(1, 4), (1, 2), (3, 4), (1, 2)]),
            separating: Some(false),
            order_determining: Some(false),
            ..Expected::base(false)
        },
    ));
    raw.push((
        "E6(9)".into(),
        vec![],
        "two generators with equal doubles".into(),
        from_rows(&[&["g", "h", "I", "-"], &["h", "g", "-", "I"], &["I", "-", "-", "-"], &["-", "I", "-", "-"]]),
        Expected {
            states: unique(&[(1, 3), (1, 3), (2, 3), (2, 3)]),
            separating: Some(false),
            order_determining: Some(false),
            witness: Some(("e".into(), "f".into(), 2)),
            ..Expected::base(false)
        },
    ));
    raw.push((
        "E8".into(),
        vec![],
        "quantum algebra of dimension 2 with fuzzy dimension 3".into(),
        from_rows(&[
            &["-", "h", "i", "-", "-", "I"],
            &["h", "-", "j", "-", "I", "-"],
            &["i", "j", "-", "I", "-", "-"],
            &["-", "-", "I", "-", "-", "-"],
            &["-", "I", "-", "-", "-", "-"],
            &["I", "-", "-", "-", "-", "-"],
        ]),
        Expected {
            separating: Some(true),
            order_determining: Some(true),
            min_fuzzy_dimension: Some(3),
            factors: Some((2, 4)),
            ..Expected::base(true)
        },
    ));
    raw.push((
        "R9".into(),
        vec![],
        "nine-element algebra without states".into(),
        from_rows(&[
            &["h", "j", "k", "I", "-", "-", "-"],
            &["j", "i", "h", "-", "k", "-", "I"],
            &["k", "h", "j", "-", "-", "I", "-"],
            &["I", "-", "-", "-", "-", "-", "-"],
            &["-", "k", "-", "-", "I", "-", "-"],
            &["-", "-", "I", "-", "-", "-", "-"],
            &["-", "I", "-", "-", "-", "-", "-"],
        ]),
        Expected {
            states: ExpectedStates::Empty,
            separating: Some(false),
            order_determining: Some(false),
            witness: Some(("e".into(), "g".into(), 3)),
            ..Expected::base(false)
        },
    ));

    raw.into_iter()
        .map(|(name, aliases, description, algebra, expected)| {
            let canonical = canonical_form(algebra.table()).table;
            CatalogEntry { name, aliases, description, algebra, canonical, expected }
        })
        .collect()
}

/// Every named algebra, in order of size.
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

/// Entry by name or alias, ignoring case and spaces.
pub fn lookup(name: &str) -> Option<&'static CatalogEntry> {
    catalog().iter().find(|e| e.matches_name(name))
}

/// Largest order for which [`identify`] computes canonical forms.
pub const IDENTIFY_MAX_ORDER: usize = 9;

/// The catalog entry isomorphic to `table`, if any.
pub fn identify(table: &SumTable) -> Option<&'static CatalogEntry> {
    let n = table.order();
    if n > IDENTIFY_MAX_ORDER || !catalog().iter().any(|e| e.order() == n) {
        return None;
    }
    let c = canonical_form(table).table;
    catalog().iter().find(|e| e.canonical == c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scale_six_matches_printed_table() {
        let printed = from_rows(&[&["f", "g", "h", "I"], &["g", "h", "I", "-"], &["h", "I", "-", "-"], &["I", "-", "-", "-"]]);
        assert_eq!(make_scale(6).unwrap().table(), printed.table());
        let s5 = from_rows(&[&["f", "g", "I"], &["g", "I", "-"], &["I", "-", "-"]]);
        assert_eq!(make_scale(5).unwrap().table(), s5.table());
        assert_eq!(make_scale(2).unwrap().order(), 2);
        assert!(make_scale(1).is_err());
    }

    #[test]
    fn sparse_tables() {
        let d5 = from_rows(&[&["I", "-", "-"], &["-", "I", "-"], &["-", "-", "I"]]);
        assert_eq!(make_sparse(3, 0).unwrap().table(), d5.table());
        let p6 = from_rows(&[&["-", "I", "-", "-"], &["I", "-", "-", "-"], &["-", "-", "-", "I"], &["-", "-", "I", "-"]]);
        assert_eq!(make_sparse(0, 2).unwrap().table(), p6.table());
        let e511 = from_rows(&[&["I", "-", "-"], &["-", "-", "I"], &["-", "I", "-"]]);
        assert_eq!(make_sparse(1, 1).unwrap().table(), e511.table());
        assert!(make_sparse(0, 0).is_err());
    }

    #[test]
    fn names_and_aliases() {
        assert_eq!(catalog().iter().filter(|e| e.order() == 6).count(), 10);
        assert_eq!(lookup("E6(3)").unwrap().name, "E6(2,1)");
        assert_eq!(lookup("e5(3)").unwrap().name, "E5(3)");
        assert!(lookup("X7").is_none());
        let r9 = lookup("R9").unwrap();
        assert_eq!(identify(r9.algebra.table()).unwrap().name, "R9");
    }

    #[test]
    fn canonical_forms_are_distinct() {
        let c = catalog();
        for (i, a) in c.iter().enumerate() {
            for b in &c[i + 1..] {
                assert_ne!(a.canonical, b.canonical, "{} vs {}", a.name, b.name);
            }
        }
    }
}
