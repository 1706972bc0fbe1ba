//! Cartesian products of effect algebras and factorization search.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::algebra::{validate, EffectAlgebra};
use crate::canon::find_isomorphism;
use crate::enumerate::enumerate;
use crate::table::{CellValue, ElementId, SumTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    First,
    Second,
}

/// `A × B` with componentwise sum, and the pairing of its elements.
#[derive(Clone, Debug, Serialize)]
pub struct CompositeAlgebra {
    algebra: EffectAlgebra,
    pairing: Vec<(ElementId, ElementId)>,
    #[serde(skip)]
    index: HashMap<(ElementId, ElementId), ElementId>,
    factors: (EffectAlgebra, EffectAlgebra),
}

impl CompositeAlgebra {
    pub fn algebra(&self) -> &EffectAlgebra {
        &self.algebra
    }

    pub fn into_algebra(self) -> EffectAlgebra {
        self.algebra
    }

    /// `pairing()[x]` is the pair of factor elements behind `x`.
    pub fn pairing(&self) -> &[(ElementId, ElementId)] {
        &self.pairing
    }

    pub fn element_of(&self, a: ElementId, b: ElementId) -> ElementId {
        self.index[&(a, b)]
    }

    pub fn factor(&self, side: Side) -> &EffectAlgebra {
        match side {
            Side::First => &self.factors.0,
            Side::Second => &self.factors.1,
        }
    }
}

/// Position of an element in its factor's natural order: zero, the
/// nontrivial effects in table order, then the unit.
fn natural_key(a: &EffectAlgebra, e: ElementId) -> usize {
    match e.0 {
        0 => 0,
        1 => a.order() - 1,
        k => k - 1,
    }
}

/// Builds `A × B`. Pairs are ordered lexicographically by each factor's
/// natural order, which puts `(0, 0)` first and `(1, 1)` last; those two
/// become zero and unit and the rest keep their order.
pub fn compose(a: &EffectAlgebra, b: &EffectAlgebra) -> CompositeAlgebra {
    let mut pairs: Vec<(ElementId, ElementId)> = a.elements().flat_map(|x| b.elements().map(move |y| (x, y))).collect();
    pairs.sort_by_key(|&(x, y)| (natural_key(a, x), natural_key(b, y)));
    let last = pairs.pop().expect("nonempty");
    let first = pairs.remove(0);
    let mut pairing = vec![first, last];
    pairing.extend(pairs);
    let index: HashMap<_, _> = pairing.iter().enumerate().map(|(i, &p)| (p, ElementId(i))).collect();

    let n = pairing.len();
    let table = SumTable::from_fn(n, |u, v| {
        let (x1, y1) = pairing[u.0];
        let (x2, y2) = pairing[v.0];
        match (a.sum(x1, x2), b.sum(y1, y2)) {
            (Some(x), Some(y)) => CellValue::from_element(Some(index[&(x, y)])),
            _ => CellValue::Undefined,
        }
    })
    .expect("product table has the right shape");
    let labels: Vec<String> = pairing[2..].iter().map(|&(x, y)| format!("({},{})", a.label(x), b.label(y))).collect();
    let table = table.with_labels(labels).expect("pair labels are distinct");
    let algebra = match validate(&table) {
        Ok(alg) => alg,
        Err(v) => panic!("product of effect algebras failed validation: {v:?}"),
    };
    CompositeAlgebra { algebra, pairing, index, factors: (a.clone(), b.clone()) }
}

/// A factor's copy inside a composite, `{(e, 0)}` or `{(0, e)}`, as an
/// algebra in its own right.
#[derive(Clone, Debug, Serialize)]
pub struct Component {
    pub algebra: EffectAlgebra,
    /// `embedding[e]` is the composite element carrying factor element `e`.
    pub embedding: Vec<ElementId>,
}

impl Component {
    /// The copy's unit differs from the composite's unit, so the copy is
    /// not an effect subalgebra.
    pub fn is_subalgebra(&self) -> bool {
        self.embedding[1] == ElementId::ONE
    }
}

pub fn component(c: &CompositeAlgebra, side: Side) -> Component {
    let factor = c.factor(side);
    let embedding: Vec<ElementId> = factor
        .elements()
        .map(|e| match side {
            Side::First => c.element_of(e, ElementId::ZERO),
            Side::Second => c.element_of(ElementId::ZERO, e),
        })
        .collect();
    let host = c.algebra();
    let back: HashMap<ElementId, ElementId> = embedding.iter().enumerate().map(|(i, &x)| (x, ElementId(i))).collect();
    let table = SumTable::from_fn(factor.order(), |u, v| {
        let s = host.sum(embedding[u.0], embedding[v.0]).and_then(|x| back.get(&x).copied());
        CellValue::from_element(s)
    })
    .expect("component table has the right shape");
    let labels: Vec<String> = embedding[2..].iter().map(|&x| host.label(x)).collect();
    let algebra = validate(&table.with_labels(labels).expect("distinct labels")).expect("component is an effect algebra");
    assert!(find_isomorphism(algebra.table(), factor.table()).is_some(), "component must be isomorphic to its factor");
    Component { algebra, embedding }
}

type Cache = Mutex<HashMap<usize, Arc<Vec<EffectAlgebra>>>>;

fn algebras_of_order(n: usize) -> Arc<Vec<EffectAlgebra>> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&n) {
        return v.clone();
    }
    let list = Arc::new(enumerate(n, false).expect("order at least 2").algebras);
    cache.lock().unwrap().insert(n, list.clone());
    list
}

/// A pair of factors `(A₁, A₂)` with `|A₁| ≤ |A₂|` and `A ≅ A₁ × A₂`, the
/// first in enumeration order; `None` if `A` is not a product of two
/// nontrivial algebras.
pub fn is_composite(a: &EffectAlgebra) -> Option<(EffectAlgebra, EffectAlgebra)> {
    let n = a.order();
    let defined = a.count_defined().0;
    for n1 in (2..).take_while(|k| k * k <= n).filter(|k| n % k == 0) {
        let n2 = n / n1;
        let (l1, l2) = (algebras_of_order(n1), algebras_of_order(n2));
        for f1 in l1.iter() {
            for f2 in l2.iter() {
                let c = compose(f1, f2);
                if c.algebra().count_defined().0 != defined {
                    continue;
                }
                if find_isomorphism(c.algebra().table(), a.table()).is_some() {
                    return Some((f1.clone(), f2.clone()));
                }
            }
        }
    }
    None
}
