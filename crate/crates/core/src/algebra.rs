//! Validated effect algebras and the operations derived from a sum table:
//! complement, the induced partial order, difference, and the full battery of
//! axiom and derived-law checks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::table::{CellValue, ElementId, SumTable};

/// What a [`ViolationReport`] complains about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ViolationKind {
    /// `e ⊕ f` and `f ⊕ e` differ.
    Symmetry,
    /// A row without exactly one unit.
    ComplementCount,
    /// The zero effect appears inside the table.
    ZeroInTable,
    /// `e` appears in the row of `e`.
    SelfInRow,
    /// `e ⊕ e = 1 = f ⊕ f` with `e ≠ f`, yet `e ⊕ f` is defined.
    RuleET5,
    /// `e ⊕ e` defined and `e ⊕ f = 1` with `e ≠ f`, yet `f ⊕ f` is defined.
    RuleET6,
    /// `e ⊕ e = f` and `f ⊕ f` defined, yet `e ⊕ f` is undefined.
    RuleET7,
    /// Exactly one side of `(a ⊕ b) ⊕ c = a ⊕ (b ⊕ c)` is defined.
    AssociativityDefinedness,
    /// Both sides defined but different.
    AssociativityValue,
    /// `e ⊕ f = e ⊕ g` with `f ≠ g`.
    CancellationDerived,
    /// A derived law or undefined-pair lemma failed on a validated algebra.
    DerivedLaw,
}

/// One failed check, with the elements that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub kind: ViolationKind,
    pub witness: Vec<ElementId>,
    pub message: String,
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.kind, self.message)
    }
}

/// A sum table that passed [`validate`], with its complement map and partial
/// order precomputed.
#[derive(Clone, Debug, Serialize)]
pub struct EffectAlgebra {
    table: SumTable,
    complement: Vec<ElementId>,
    leq: Vec<bool>,
    // minus[f * n + e] = f ⊖ e
    minus: Vec<Option<ElementId>>,
}

impl PartialEq for EffectAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

impl Eq for EffectAlgebra {}

fn render_elem(t: &SumTable, e: Option<ElementId>) -> String {
    match e {
        Some(e) => t.label(e),
        None => "⋄".to_string(),
    }
}

fn sum_opt(t: &SumTable, a: Option<ElementId>, b: ElementId) -> Option<ElementId> {
    a.and_then(|a| t.sum(a, b))
}

/// Checks the effect-algebra axioms on a table and returns the algebra, or
/// every violation found.
///
/// The structural rules (symmetry, one unit per row, no zero, no self in
/// row) come first, then associativity over all ordered triples of elements
/// including zero and unit, with both sides required to be defined together.
/// Pattern rules ET5–ET7 and cancellation are reported alongside when they
/// fire, but a table is accepted on the structural rules and associativity
/// alone.
pub fn validate(table: &SumTable) -> Result<EffectAlgebra, Vec<ViolationReport>> {
    let mut out = Vec::new();
    let n = table.order();
    let l = |e: ElementId| table.label(e);

    for e in table.nontrivial() {
        for f in table.nontrivial().filter(|f| f.0 > e.0) {
            if table.cell(e, f) != table.cell(f, e) {
                out.push(ViolationReport {
                    kind: ViolationKind::Symmetry,
                    witness: vec![e, f],
                    message: format!("{} ⊕ {} differs from {} ⊕ {}", l(e), l(f), l(f), l(e)),
                });
            }
        }
    }
    for e in table.nontrivial() {
        for f in table.nontrivial() {
            match table.cell(e, f) {
                CellValue::Effect(ElementId::ZERO) => out.push(ViolationReport {
                    kind: ViolationKind::ZeroInTable,
                    witness: vec![e, f],
                    message: format!("{} ⊕ {} = 0", l(e), l(f)),
                }),
                CellValue::Effect(g) if g == e || g == f => out.push(ViolationReport {
                    kind: ViolationKind::SelfInRow,
                    witness: vec![e, f],
                    message: format!("{} ⊕ {} = {}", l(e), l(f), l(g)),
                }),
                _ => {}
            }
        }
    }
    for e in table.nontrivial() {
        let units = table.row(e).iter().filter(|&&c| c == CellValue::One).count();
        if units != 1 {
            out.push(ViolationReport {
                kind: ViolationKind::ComplementCount,
                witness: vec![e],
                message: format!("row {} contains the unit {} times", l(e), units),
            });
        }
    }

    for a in table.elements() {
        for b in table.elements() {
            let ab = table.sum(a, b);
            for c in table.elements() {
                let left = sum_opt(table, ab, c);
                let bc = table.sum(b, c);
                let right = bc.and_then(|bc| table.sum(a, bc));
                let kind = match (left, right) {
                    (Some(x), Some(y)) if x != y => ViolationKind::AssociativityValue,
                    (Some(_), None) | (None, Some(_)) => ViolationKind::AssociativityDefinedness,
                    _ => continue,
                };
                let message = match kind {
                    ViolationKind::AssociativityValue => format!(
                        "({a} ⊕ {b}) ⊕ {c} = {} but {a} ⊕ ({b} ⊕ {c}) = {}",
                        render_elem(table, left),
                        render_elem(table, right),
                        a = l(a),
                        b = l(b),
                        c = l(c)
                    ),
                    _ if left.is_some() => format!(
                        "({a} ⊕ {b}) ⊕ {c} is defined but {a} ⊕ ({b} ⊕ {c}) is not",
                        a = l(a),
                        b = l(b),
                        c = l(c)
                    ),
                    _ => format!(
                        "{a} ⊕ ({b} ⊕ {c}) is defined but ({a} ⊕ {b}) ⊕ {c} is not",
                        a = l(a),
                        b = l(b),
                        c = l(c)
                    ),
                };
                out.push(ViolationReport { kind, witness: vec![a, b, c], message });
            }
        }
    }

    out.extend(pattern_rule_violations(table));

    for e in table.elements() {
        for f in table.elements() {
            for g in table.elements().filter(|g| g.0 > f.0) {
                if let (Some(x), Some(y)) = (table.sum(e, f), table.sum(e, g)) {
                    if x == y {
                        out.push(ViolationReport {
                            kind: ViolationKind::CancellationDerived,
                            witness: vec![e, f, g],
                            message: format!("{} ⊕ {} = {} ⊕ {} with {} ≠ {}", l(e), l(f), l(e), l(g), l(f), l(g)),
                        });
                    }
                }
            }
        }
    }

    if !out.is_empty() {
        return Err(out);
    }

    let complement: Vec<ElementId> = table
        .elements()
        .map(|e| {
            let mut it = table.elements().filter(|&f| table.sum(e, f) == Some(ElementId::ONE));
            let c = it.next().expect("every element has a complement");
            assert!(it.next().is_none(), "complement is unique");
            c
        })
        .collect();
    assert_eq!(complement[0], ElementId::ONE);
    // EA4: only the zero can be added to the unit.
    assert!(table.elements().all(|e| table.sum(e, ElementId::ONE).is_none() || e == ElementId::ZERO));

    let mut leq = vec![false; n * n];
    let mut minus = vec![None; n * n];
    for e in table.elements() {
        for g in table.elements() {
            if let Some(f) = table.sum(e, g) {
                leq[e.0 * n + f.0] = true;
                minus[f.0 * n + e.0] = Some(g);
            }
        }
    }

    Ok(EffectAlgebra { table: table.clone(), complement, leq, minus })
}

/// Occurrences of the ET5–ET7 patterns among the defined cells.
pub(crate) fn pattern_rule_violations(table: &SumTable) -> Vec<ViolationReport> {
    let mut out = Vec::new();
    let l = |e: ElementId| table.label(e);
    for e in table.nontrivial() {
        for f in table.nontrivial().filter(|&f| f != e) {
            let ee = table.cell(e, e);
            let ff = table.cell(f, f);
            let ef = table.cell(e, f);
            if e.0 < f.0 && ee == CellValue::One && ff == CellValue::One && ef.is_defined() {
                out.push(ViolationReport {
                    kind: ViolationKind::RuleET5,
                    witness: vec![e, f],
                    message: format!(
                        "{e} and {f} are self-complementary but {e} ⊕ {f} is defined",
                        e = l(e),
                        f = l(f)
                    ),
                });
            }
            if ee.is_defined() && ef == CellValue::One && ff.is_defined() {
                out.push(ViolationReport {
                    kind: ViolationKind::RuleET6,
                    witness: vec![e, f],
                    message: format!(
                        "{e} ⊕ {e} is defined and {e} ⊕ {f} = 1, yet {f} ⊕ {f} is defined",
                        e = l(e),
                        f = l(f)
                    ),
                });
            }
            if ee == CellValue::Effect(f) && ff.is_defined() && !ef.is_defined() {
                out.push(ViolationReport {
                    kind: ViolationKind::RuleET7,
                    witness: vec![e, f],
                    message: format!(
                        "{e} ⊕ {e} = {f} and {f} ⊕ {f} is defined, yet {e} ⊕ {f} is not",
                        e = l(e),
                        f = l(f)
                    ),
                });
            }
        }
    }
    out
}

impl EffectAlgebra {
    pub fn table(&self) -> &SumTable {
        &self.table
    }

    pub fn into_table(self) -> SumTable {
        self.table
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + Clone {
        self.table.elements()
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = ElementId> + Clone {
        self.table.nontrivial()
    }

    pub fn label(&self, e: ElementId) -> String {
        self.table.label(e)
    }

    /// `e ⊕ f`, or `None` when undefined.
    #[inline]
    pub fn sum(&self, e: ElementId, f: ElementId) -> Option<ElementId> {
        self.table.sum(e, f)
    }

    /// The unique `e⊥` with `e ⊕ e⊥ = 1`.
    #[inline]
    pub fn complement_of(&self, e: ElementId) -> ElementId {
        self.complement[e.0]
    }

    pub fn is_self_complementary(&self, e: ElementId) -> bool {
        self.complement_of(e) == e
    }

    /// `e ≤ f`: some `g` has `e ⊕ g = f`.
    #[inline]
    pub fn leq(&self, e: ElementId, f: ElementId) -> bool {
        self.leq[e.0 * self.order() + f.0]
    }

    /// `e ⊖ f`: the unique `g` with `f ⊕ g = e`, if `f ≤ e`.
    #[inline]
    pub fn ominus(&self, e: ElementId, f: ElementId) -> Option<ElementId> {
        self.minus[e.0 * self.order() + f.0]
    }

    /// `m · e = e ⊕ e ⊕ … ⊕ e` (`m` terms); `0 · e = 0`.
    pub fn multiple(&self, e: ElementId, m: usize) -> Option<ElementId> {
        let mut acc = ElementId::ZERO;
        for _ in 0..m {
            acc = self.sum(acc, e)?;
        }
        Some(acc)
    }

    /// Defined and undefined cells over ordered nontrivial pairs.
    pub fn count_defined(&self) -> (usize, usize) {
        let m = self.table.nontrivial_count();
        let d = self.table.count_defined();
        (d, m * m - d)
    }

    /// Re-checks the derived laws and undefined-pair lemmas. These are
    /// theorems, so any report means a bug in validation.
    pub fn check_derived_laws(&self) -> Vec<ViolationReport> {
        let mut out = Vec::new();
        let l = |e: ElementId| self.label(e);
        let z = ElementId::ZERO;
        let mut fail = |law: &str, witness: Vec<ElementId>, detail: String| {
            out.push(ViolationReport {
                kind: ViolationKind::DerivedLaw,
                witness,
                message: format!("{law}: {detail}"),
            })
        };
        let elems: Vec<ElementId> = self.elements().collect();
        let c = |e| self.complement_of(e);

        if c(z) != ElementId::ONE {
            fail("complement of zero", vec![z], format!("0⊥ = {}", l(c(z))));
        }
        for &e in &elems {
            if c(c(e)) != e {
                fail("complement involution", vec![e], format!("({0}⊥)⊥ ≠ {0}", l(e)));
            }
            if self.sum(e, z) != Some(e) {
                fail("zero identity", vec![e], format!("{} ⊕ 0 ≠ {}", l(e), l(e)));
            }
            if !self.leq(z, e) || !self.leq(e, ElementId::ONE) || !self.leq(e, e) {
                fail("bounds and reflexivity", vec![e], format!("0 ≤ {0} ≤ 1 fails", l(e)));
            }
            if self.table.sum(e, ElementId::ONE).is_some() && e != z {
                fail("unit absorption", vec![e], format!("{} ⊕ 1 is defined", l(e)));
            }
        }

        for &e in &elems {
            for &f in &elems {
                let ef = self.sum(e, f);
                if ef != self.sum(f, e) {
                    fail("commutativity", vec![e, f], format!("{} ⊕ {}", l(e), l(f)));
                }
                if ef == Some(z) && (e != z || f != z) {
                    fail("zero sum", vec![e, f], format!("{} ⊕ {} = 0", l(e), l(f)));
                }
                if ef == Some(e) && f != z {
                    fail("idempotent sum", vec![e, f], format!("{} ⊕ {} = {}", l(e), l(f), l(e)));
                }
                if ef.is_some() != self.leq(e, c(f)) {
                    fail("definedness and order", vec![e, f], format!("{} ⊕ {} vs {} ≤ {}⊥", l(e), l(f), l(e), l(f)));
                }
                // e ⊖ f = (e⊥ ⊕ f)⊥
                let formula = self.sum(c(e), f).map(c);
                if self.ominus(e, f) != formula {
                    fail("difference formula", vec![e, f], format!("{} ⊖ {}", l(e), l(f)));
                }
                if let Some(s) = ef {
                    if self.ominus(s, e) != Some(f) {
                        fail("difference of a sum", vec![e, f], format!("({0} ⊕ {1}) ⊖ {0} ≠ {1}", l(e), l(f)));
                    }
                    if e != c(f) && self.sum(c(e), c(f)).is_some() {
                        fail("complements of a defined sum", vec![e, f], format!("{}⊥ ⊕ {}⊥ is defined", l(e), l(f)));
                    }
                }
                if e != f && e.0 >= 2 && f.0 >= 2 && c(e) == e && c(f) == f && ef.is_some() {
                    fail("self-complementary pair", vec![e, f], format!("{} ⊕ {} is defined", l(e), l(f)));
                }
                if self.leq(e, f) && self.leq(f, e) && e != f {
                    fail("antisymmetry", vec![e, f], format!("{} ≤ {} ≤ {}", l(e), l(f), l(e)));
                }
                for &g in &elems {
                    if g.0 > f.0 && ef.is_some() && ef == self.sum(e, g) {
                        fail("cancellation", vec![e, f, g], format!("{} ⊕ {} = {} ⊕ {}", l(e), l(f), l(e), l(g)));
                    }
                    if self.leq(e, f) && self.leq(f, g) && !self.leq(e, g) {
                        fail("transitivity", vec![e, f, g], format!("{} ≤ {} ≤ {}", l(e), l(f), l(g)));
                    }
                }
            }
        }

        for e in self.nontrivial() {
            let ee = self.sum(e, e);
            if ee.is_some() && c(e) != e && self.sum(c(e), c(e)).is_some() {
                fail("double of a non-self-complementary effect", vec![e], format!("{0}⊥ ⊕ {0}⊥ is defined", l(e)));
            }
            if let Some(f) = ee {
                if self.sum(f, f).is_some() && self.sum(e, f).is_none() {
                    fail("double of a double", vec![e, f], format!("{} ⊕ {} is undefined", l(e), l(f)));
                }
            }
        }

        let full_rows: Vec<ElementId> = self
            .nontrivial()
            .filter(|&e| self.elements().filter(|&f| f != ElementId::ONE).all(|f| self.sum(e, f).is_some()))
            .collect();
        if full_rows.len() > 1 {
            fail("at most one full row", full_rows.clone(), format!("{} rows without ⋄", full_rows.len()));
        }

        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::table_from_tokens;

    fn s5() -> SumTable {
        table_from_tokens(&["e", "f", "g"], &[&["f", "g", "I"], &["g", "I", "-"], &["I", "-", "-"]]).unwrap()
    }

    #[test]
    fn order_two_and_three() {
        let s2 = SumTable::new(2, vec![]).unwrap();
        let a = validate(&s2).unwrap();
        assert_eq!(a.complement_of(ElementId::ZERO), ElementId::ONE);
        assert!(a.leq(ElementId::ZERO, ElementId::ONE));
        let s3 = table_from_tokens(&["e"], &[&["I"]]).unwrap();
        let a = validate(&s3).unwrap();
        assert!(a.is_self_complementary(ElementId(2)));
        assert!(a.check_derived_laws().is_empty());
    }

    #[test]
    fn scale_five_operations() {
        let a = validate(&s5()).unwrap();
        let (e, f, g) = (ElementId(2), ElementId(3), ElementId(4));
        assert_eq!(a.sum(e, ElementId::ZERO), Some(e));
        assert_eq!(a.sum(e, f), Some(g));
        assert_eq!(a.ominus(g, e), Some(f));
        assert_eq!(a.ominus(e, g), None);
        assert_eq!(a.complement_of(e), g);
        assert_eq!(a.complement_of(f), f);
        assert!(a.leq(e, f) && a.leq(f, g) && a.leq(e, g));
        assert_eq!(a.count_defined(), (6, 3));
        assert_eq!(a.multiple(e, 4), Some(ElementId::ONE));
        assert_eq!(a.multiple(e, 5), None);
        assert!(a.check_derived_laws().is_empty());
    }

    #[test]
    fn four_element_spade_is_rejected() {
        let t = table_from_tokens(&["e", "f"], &[&["f", "I"], &["I", "e"]]).unwrap();
        let errs = validate(&t).unwrap_err();
        let (e, f) = (ElementId(2), ElementId(3));
        assert!(errs
            .iter()
            .any(|r| r.kind == ViolationKind::AssociativityDefinedness && r.witness == vec![e, e, f]));
        assert!(errs.iter().any(|r| r.kind == ViolationKind::RuleET6));
    }

    #[test]
    fn structural_violations_are_all_reported() {
        let t = table_from_tokens(&["e", "f"], &[&["e", "I"], &["-", "I"]]).unwrap();
        let errs = validate(&t).unwrap_err();
        let kinds: Vec<_> = errs.iter().map(|r| r.kind).collect();
        assert!(kinds.contains(&ViolationKind::Symmetry));
        assert!(kinds.contains(&ViolationKind::SelfInRow));
        let t = table_from_tokens(&["e", "f"], &[&["0", "-"], &["-", "-"]]).unwrap();
        let kinds: Vec<_> = validate(&t).unwrap_err().iter().map(|r| r.kind).collect();
        assert!(kinds.contains(&ViolationKind::ZeroInTable));
        assert!(kinds.contains(&ViolationKind::ComplementCount));
    }

    #[test]
    fn witnesses_are_valid_indices() {
        let t = table_from_tokens(&["e", "f", "g"], &[&["I", "g", "-"], &["g", "I", "-"], &["-", "-", "I"]]).unwrap();
        for r in validate(&t).unwrap_err() {
            assert!(r.witness.iter().all(|w| w.0 < t.order()));
        }
    }
}
