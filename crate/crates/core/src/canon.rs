//! Relabelings of sum tables, canonical forms, and isomorphism tests.
//!
//! A relabeling permutes the nontrivial elements and keeps zero and unit
//! fixed. The canonical form of a table is its relabeling with the
//! lexicographically least upper-triangle cell sequence, under the cell order
//! `⋄ < 1 < e₂ < e₃ < …` read after relabeling.

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::table::{ElementId, SumTable, ZERO_CODE};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermutationError {
    #[error("permutation has length {found}, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("permutation must fix zero and unit")]
    MovesTrivial,
    #[error("permutation is not a bijection on the nontrivial elements")]
    NotBijective,
}

/// A table in canonical labeling, with the relabeling that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalForm {
    pub table: SumTable,
    /// `permutation[old] = new`, over all `n` elements.
    pub permutation: Vec<ElementId>,
}

fn check_perm(n: usize, perm: &[ElementId]) -> Result<(), PermutationError> {
    if perm.len() != n {
        return Err(PermutationError::Length { expected: n, found: perm.len() });
    }
    if n >= 1 && perm[0] != ElementId::ZERO || n >= 2 && perm[1] != ElementId::ONE {
        return Err(PermutationError::MovesTrivial);
    }
    let mut seen = vec![false; n];
    for p in perm {
        if p.0 >= n || seen[p.0] {
            return Err(PermutationError::NotBijective);
        }
        seen[p.0] = true;
    }
    Ok(())
}

/// Relabels rows, columns and effect cells consistently: the result has
/// `result[π(a)][π(b)] = π(table[a][b])`.
pub fn apply_permutation(table: &SumTable, perm: &[ElementId]) -> Result<SumTable, PermutationError> {
    let n = table.order();
    check_perm(n, perm)?;
    let mut inv = vec![ElementId::ZERO; n];
    for (old, new) in perm.iter().enumerate() {
        inv[new.0] = ElementId(old);
    }
    let relabeled = SumTable::from_fn(n, |r, c| {
        use crate::table::CellValue;
        match table.cell(inv[r.0], inv[c.0]) {
            CellValue::Effect(e) => CellValue::Effect(perm[e.0]),
            v => v,
        }
    })
    .expect("relabeling preserves shape");
    Ok(match table.labels() {
        Some(_) => {
            let labels: Vec<String> = (2..n).map(|new| table.label(inv[new])).collect();
            relabeled.with_labels(labels).expect("labels stay distinct")
        }
        None => relabeled,
    })
}

/// Inverse of a relabeling.
pub fn invert_permutation(perm: &[ElementId]) -> Vec<ElementId> {
    let mut inv = vec![ElementId::ZERO; perm.len()];
    for (old, new) in perm.iter().enumerate() {
        inv[new.0] = ElementId(old);
    }
    inv
}

#[inline]
fn map_code(v: u8, fwd: &[u8]) -> u8 {
    if v < 2 || v == ZERO_CODE {
        v
    } else {
        fwd[v as usize - 2] + 2
    }
}

/// Lexicographically least relabeling, by exhaustive search over all
/// `(n-2)!` permutations of the nontrivial elements. Ties go to the
/// lexicographically least permutation.
pub fn canonical_form(table: &SumTable) -> CanonicalForm {
    let n = table.order();
    let m = n - 2;
    let codes = table.codes();
    let positions: Vec<(usize, usize)> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();

    let mut best: Option<(Vec<u8>, Vec<u8>)> = None;
    let mut inv = vec![0u8; m];
    for fwd in (0..m as u8).permutations(m) {
        for (old, &new) in fwd.iter().enumerate() {
            inv[new as usize] = old as u8;
        }
        let cell = |&(r, c): &(usize, usize)| {
            let v = codes[inv[r] as usize * m + inv[c] as usize];
            map_code(v, &fwd)
        };
        match &mut best {
            None => best = Some((positions.iter().map(cell).collect(), fwd)),
            Some((seq, perm)) => {
                let mut smaller = false;
                for (k, pos) in positions.iter().enumerate() {
                    let v = cell(pos);
                    if v != seq[k] {
                        smaller = v < seq[k];
                        break;
                    }
                }
                if smaller {
                    *seq = positions.iter().map(cell).collect();
                    *perm = fwd;
                }
            }
        }
    }

    let permutation: Vec<ElementId> = match best {
        Some((_, fwd)) => [ElementId::ZERO, ElementId::ONE]
            .into_iter()
            .chain(fwd.iter().map(|&p| ElementId(p as usize + 2)))
            .collect(),
        None => (0..n).map(ElementId).collect(),
    };
    let table = apply_permutation(table, &permutation).expect("valid permutation");
    CanonicalForm { table, permutation }
}

/// True when the canonical tables agree.
pub fn are_isomorphic(a: &SumTable, b: &SumTable) -> bool {
    a.order() == b.order() && canonical_form(a).table == canonical_form(b).table
}

/// Per-element invariants preserved by relabeling.
fn element_signature(t: &SumTable, e: ElementId) -> (usize, bool, bool, usize) {
    let row = t.row(e);
    let defined = row.iter().filter(|c| c.is_defined()).count();
    let self_comp = t.sum(e, e) == Some(ElementId::ONE);
    let double = t.sum(e, e).is_some();
    let appearances = t
        .nontrivial()
        .flat_map(|a| t.nontrivial().map(move |b| (a, b)))
        .filter(|&(a, b)| t.sum(a, b) == Some(e))
        .count();
    (defined, self_comp, double, appearances)
}

/// Backtracking search for an isomorphism `a → b`; returns `map[a_elem] =
/// b_elem` over all elements. Suitable for orders where the factorial
/// canonical form is too slow.
pub fn find_isomorphism(a: &SumTable, b: &SumTable) -> Option<Vec<ElementId>> {
    let n = a.order();
    if n != b.order() || a.count_defined() != b.count_defined() {
        return None;
    }
    let sig_a: Vec<_> = a.nontrivial().map(|e| element_signature(a, e)).collect();
    let sig_b: Vec<_> = b.nontrivial().map(|e| element_signature(b, e)).collect();
    let mut sa = sig_a.clone();
    let mut sb = sig_b.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }

    let mut map: Vec<Option<ElementId>> = vec![None; n];
    map[0] = Some(ElementId::ZERO);
    if n > 1 {
        map[1] = Some(ElementId::ONE);
    }
    let mut used = vec![false; n];
    used[0] = true;
    if n > 1 {
        used[1] = true;
    }

    fn consistent(a: &SumTable, b: &SumTable, map: &[Option<ElementId>], x: ElementId) -> bool {
        let mx = map[x.0].unwrap();
        for y in a.elements() {
            let Some(my) = map[y.0] else { continue };
            let ab = a.sum(x, y);
            let bb = b.sum(mx, my);
            match (ab, bb) {
                (None, None) => {}
                (Some(s), Some(t)) => {
                    if let Some(ms) = map[s.0] {
                        if ms != t {
                            return false;
                        }
                    }
                }
                _ => return false,
            }
        }
        true
    }

    fn go(
        a: &SumTable,
        b: &SumTable,
        sig_a: &[(usize, bool, bool, usize)],
        sig_b: &[(usize, bool, bool, usize)],
        map: &mut Vec<Option<ElementId>>,
        used: &mut Vec<bool>,
        next: usize,
    ) -> bool {
        let n = a.order();
        if next == n {
            return a.elements().all(|x| {
                a.elements().all(|y| a.sum(x, y).map(|s| map[s.0].unwrap()) == b.sum(map[x.0].unwrap(), map[y.0].unwrap()))
            });
        }
        for cand in 2..n {
            if used[cand] || sig_a[next - 2] != sig_b[cand - 2] {
                continue;
            }
            map[next] = Some(ElementId(cand));
            used[cand] = true;
            if consistent(a, b, map, ElementId(next)) && go(a, b, sig_a, sig_b, map, used, next + 1) {
                return true;
            }
            used[cand] = false;
            map[next] = None;
        }
        false
    }

    if go(a, b, &sig_a, &sig_b, &mut map, &mut used, 2) {
        Some(map.into_iter().map(Option::unwrap).collect())
    } else {
        None
    }
}
