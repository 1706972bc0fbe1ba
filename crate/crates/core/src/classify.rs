//! Structural classification: scale, sparse families, defined-sum bounds and
//! obstructions to quantum representability.

use serde::Serialize;

use crate::algebra::EffectAlgebra;
use crate::catalog::identify;
use crate::compose::is_composite;
use crate::table::ElementId;

/// `m·e = m·f` for distinct `e`, `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuantumWitness {
    pub e: ElementId,
    pub f: ElementId,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub n: usize,
    pub defined_count: usize,
    pub is_totally_ordered: bool,
    pub is_scale: bool,
    pub scale_generator: Option<ElementId>,
    pub is_sparse: bool,
    /// Self-complementary effects and complementary pairs.
    pub sparse_params: Option<(usize, usize)>,
    pub family_name: Option<String>,
    pub not_quantum_witness: Option<QuantumWitness>,
    /// Filled by [`classify_with_factors`].
    pub is_composite: Option<bool>,
    pub self_complementary_count: usize,
}

pub fn max_defined(n: usize) -> usize {
    (n.max(2) - 1) * (n.max(2) - 2) / 2
}

pub fn min_defined(n: usize) -> usize {
    n.max(2) - 2
}

/// Number of sparse algebras of order `n`; 1 for `n = 2`.
pub fn sparse_count(n: usize) -> usize {
    match n {
        0..=1 => 0,
        2 => 1,
        _ if n % 2 == 0 => n / 2,
        _ => (n - 1) / 2,
    }
}

/// `e ⊕ f = 1` with neither `e ⊕ e` nor `f ⊕ f` defined rules out a scale.
pub fn not_scale_shortcut(a: &EffectAlgebra) -> bool {
    a.nontrivial().any(|e| {
        let f = a.complement_of(e);
        f != e && a.sum(e, e).is_none() && a.sum(f, f).is_none()
    })
}

fn is_totally_ordered(a: &EffectAlgebra) -> bool {
    a.elements().all(|e| a.elements().all(|f| a.leq(e, f) || a.leq(f, e)))
}

/// An element whose multiples exhaust the algebra. For two elements the
/// unit generates.
pub fn single_generator(a: &EffectAlgebra) -> Option<ElementId> {
    if a.order() == 2 {
        return Some(ElementId::ONE);
    }
    a.nontrivial().find(|&e| {
        let mut seen = vec![false; a.order()];
        seen[0] = true;
        let mut x = Some(e);
        while let Some(v) = x {
            if seen[v.0] {
                break;
            }
            seen[v.0] = true;
            x = a.sum(v, e);
        }
        seen.iter().all(|&s| s)
    })
}

fn has_full_row(a: &EffectAlgebra) -> bool {
    a.order() == 2 || a.nontrivial().any(|e| a.nontrivial().all(|f| a.sum(e, f).is_some()))
}

/// First `(e, f, m)` with `e < f` nontrivial and `m·e = m·f` defined,
/// trying `m = 2, 3, …` up to `2n` for each pair.
pub fn not_quantum_witness(a: &EffectAlgebra) -> Option<QuantumWitness> {
    let cap = 2 * a.order();
    for e in a.nontrivial() {
        for f in a.nontrivial().filter(|f| f.0 > e.0) {
            let (mut x, mut y) = (Some(e), Some(f));
            for m in 2..=cap {
                x = x.and_then(|v| a.sum(v, e));
                y = y.and_then(|v| a.sum(v, f));
                match (x, y) {
                    (Some(p), Some(q)) if p == q => return Some(QuantumWitness { e, f, multiplicity: m }),
                    (None, _) | (_, None) => break,
                    _ => {}
                }
            }
        }
    }
    None
}

/// Everything except the factorization.
pub fn classify(a: &EffectAlgebra) -> Classification {
    let n = a.order();
    let defined_count = a.count_defined().0;
    let total = is_totally_ordered(a);
    let generator = single_generator(a);
    let full_row = has_full_row(a);
    assert_eq!(total, generator.is_some(), "scale criteria disagree: total order vs generator");
    assert_eq!(total, full_row, "scale criteria disagree: total order vs full row");
    let is_scale = total;
    assert!(!(not_scale_shortcut(a) && is_scale), "shortcut contradicts the scale decision");

    let k = a.nontrivial().filter(|&e| a.is_self_complementary(e)).count();
    let l = (n - 2 - k) / 2;
    let is_sparse = defined_count == n - 2;
    let sparse_params = is_sparse.then_some((k, l));

    let family_name = identify(a.table()).map(|e| e.name.clone()).or_else(|| {
        if is_scale {
            Some(format!("S{n}"))
        } else if is_sparse {
            Some(match (k, l) {
                (_, 0) => format!("D{n}"),
                (0, _) => format!("P{n}"),
                _ => format!("E{n}({k},{l})"),
            })
        } else {
            None
        }
    });

    Classification {
        n,
        defined_count,
        is_totally_ordered: total,
        is_scale,
        scale_generator: generator,
        is_sparse,
        sparse_params,
        family_name,
        not_quantum_witness: not_quantum_witness(a),
        is_composite: None,
        self_complementary_count: k,
    }
}

/// [`classify`] plus the factorization search.
pub fn classify_with_factors(a: &EffectAlgebra) -> Classification {
    let mut c = classify(a);
    c.is_composite = Some(is_composite(a).is_some());
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{lookup, make_scale, make_sparse};

    #[test]
    fn formulas() {
        assert_eq!(max_defined(6), 10);
        assert_eq!(min_defined(6), 4);
        assert_eq!((max_defined(2), min_defined(2)), (0, 0));
        assert_eq!(sparse_count(8), 4);
        assert_eq!(sparse_count(6), 3);
        assert_eq!(sparse_count(5), 2);
        assert_eq!(sparse_count(2), 1);
    }

    #[test]
    fn scales() {
        for n in 2..=8 {
            let c = classify(&make_scale(n).unwrap());
            assert!(c.is_scale && c.is_totally_ordered);
            assert_eq!(c.defined_count, max_defined(n));
            assert_eq!(c.family_name.as_deref(), Some(format!("S{n}").as_str()));
        }
        assert_eq!(classify(&make_scale(6).unwrap()).scale_generator, Some(ElementId(2)));
    }

    #[test]
    fn sparse_names() {
        let c = classify(&lookup("E6(3)").unwrap().algebra);
        assert_eq!(c.sparse_params, Some((2, 1)));
        assert_eq!(c.family_name.as_deref(), Some("E6(2,1)"));
        let big = classify(&make_sparse(3, 2).unwrap());
        assert_eq!(big.family_name.as_deref(), Some("E9(3,2)"));
        assert_eq!(classify(&make_sparse(0, 4).unwrap()).family_name.as_deref(), Some("P10"));
    }

    #[test]
    fn witnesses() {
        let d4 = classify(&lookup("D4").unwrap().algebra);
        assert_eq!(d4.not_quantum_witness, Some(QuantumWitness { e: ElementId(2), f: ElementId(3), multiplicity: 2 }));
        let e53 = lookup("E5(3)").unwrap();
        let c = classify(&e53.algebra);
        assert!(!c.is_scale && c.not_quantum_witness.is_none());
    }
}
