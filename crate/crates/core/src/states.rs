//! State spaces in exact rational arithmetic.
//!
//! A state assigns each element a value in `[0, 1]`, with the unit at 1 and
//! every defined sum additive. The states of a finite algebra form a polytope
//! inside the box `[0, 1]^(n-2)`; we describe it by its affine hull and its
//! vertex list, and answer separation and order questions on the vertices.

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::EffectAlgebra;
use crate::compose::{CompositeAlgebra, Side};
use crate::models::{verify_fuzzy, FuzzyAssignment, Outcome};
use crate::rational::{clamp_check, rank, solve_square, Echelon, Rational};
use crate::table::ElementId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StateError {
    #[error("expected {expected} values, got {found}")]
    Length { expected: usize, found: usize },
    #[error("not a state: {0}")]
    NotAState(String),
    #[error("weight {0} lies outside [0, 1]")]
    WeightOutOfRange(String),
    #[error("the states do not give a monomorphism: {0}")]
    NotOrderDetermining(String),
}

/// Values of a state on every element, indexed by [`ElementId`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct State {
    #[serde(with = "crate::rational::vec_as_string")]
    values: Vec<Rational>,
}

impl State {
    /// Checks range, `σ(0) = 0`, `σ(1) = 1` and additivity on every defined
    /// sum.
    pub fn new(a: &EffectAlgebra, values: Vec<Rational>) -> Result<State, StateError> {
        if values.len() != a.order() {
            return Err(StateError::Length { expected: a.order(), found: values.len() });
        }
        let s = State { values };
        match s.defect(a) {
            Some(msg) => Err(StateError::NotAState(msg)),
            None => Ok(s),
        }
    }

    /// Builds a state from values on the nontrivial elements only.
    pub fn from_nontrivial(a: &EffectAlgebra, values: &[Rational]) -> Result<State, StateError> {
        let all = [Rational::zero(), Rational::one()].into_iter().chain(values.iter().copied()).collect();
        State::new(a, all)
    }

    pub(crate) fn new_unchecked(values: Vec<Rational>) -> State {
        State { values }
    }

    fn defect(&self, a: &EffectAlgebra) -> Option<String> {
        let v = &self.values;
        if !v[0].is_zero() {
            return Some("value at zero is not 0".into());
        }
        if !v[1].is_one() {
            return Some("value at unit is not 1".into());
        }
        for e in a.elements() {
            if !clamp_check(&v[e.0]) {
                return Some(format!("value at {} outside [0, 1]", a.label(e)));
            }
            for f in a.elements() {
                if let Some(s) = a.sum(e, f) {
                    if v[e.0] + v[f.0] != v[s.0] {
                        return Some(format!("not additive on {} ⊕ {}", a.label(e), a.label(f)));
                    }
                }
            }
        }
        None
    }

    pub fn is_state_on(&self, a: &EffectAlgebra) -> bool {
        self.values.len() == a.order() && self.defect(a).is_none()
    }

    pub fn value(&self, e: ElementId) -> Rational {
        self.values[e.0]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

/// The state space as an affine hull intersected with the unit box.
#[derive(Clone, Debug, Serialize)]
pub struct StatePolytope {
    /// −1 for the empty set.
    pub dimension: isize,
    pub basepoint: Option<State>,
    /// Spanning vectors of the polytope's affine hull, over all `n` elements.
    #[serde(serialize_with = "crate::rational::serialize_vectors")]
    pub directions: Vec<Vec<Rational>>,
    /// Extreme points, in ascending order.
    pub vertices: Vec<State>,
}

impl StatePolytope {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn unique_state(&self) -> Option<&State> {
        match self.vertices.as_slice() {
            [s] => Some(s),
            _ => None,
        }
    }

    /// Whether a value vector lies in the polytope.
    pub fn contains(&self, a: &EffectAlgebra, values: &[Rational]) -> bool {
        values.len() == a.order() && State::new_unchecked(values.to_vec()).is_state_on(a)
    }
}

/// Computes all states of `a`.
///
/// The additivity equations on the upper triangle are row-reduced exactly;
/// each vertex is the intersection of the affine solution set with as many
/// independent box facets as its dimension.
pub fn state_space(a: &EffectAlgebra) -> StatePolytope {
    let n = a.order();
    let m = n - 2;
    let mut rows = Vec::new();
    for e in a.nontrivial() {
        for f in a.nontrivial().filter(|f| f.0 >= e.0) {
            let Some(s) = a.sum(e, f) else { continue };
            let mut row = vec![Rational::zero(); m + 1];
            row[e.0 - 2] += Rational::one();
            row[f.0 - 2] += Rational::one();
            if s == ElementId::ONE {
                row[m] = Rational::one();
            } else {
                row[s.0 - 2] -= Rational::one();
            }
            rows.push(row);
        }
    }
    let empty = StatePolytope { dimension: -1, basepoint: None, directions: Vec::new(), vertices: Vec::new() };
    let Some(ech) = Echelon::reduce(rows, m) else { return empty };
    let (base, dirs) = ech.parametrize();
    let d = dirs.len();

    // x_i(t) = base_i + Σ_k dirs[k][i] t_k; facets x_i = 0 and x_i = 1.
    let point = |t: &[Rational]| -> Vec<Rational> {
        (0..m).map(|i| base[i] + (0..d).map(|k| dirs[k][i] * t[k]).sum::<Rational>()).collect()
    };
    let facets: Vec<(usize, Rational)> =
        (0..m).filter(|&i| dirs.iter().any(|dv| !dv[i].is_zero())).flat_map(|i| [(i, Rational::zero()), (i, Rational::one())]).collect();

    let mut vertices: Vec<Vec<Rational>> = Vec::new();
    if d == 0 {
        vertices.push(base.clone());
    } else {
        for subset in facets.iter().combinations(d) {
            if subset.iter().map(|f| f.0).duplicates().next().is_some() {
                continue;
            }
            let mat: Vec<Vec<Rational>> = subset.iter().map(|&&(i, _)| (0..d).map(|k| dirs[k][i]).collect()).collect();
            let rhs: Vec<Rational> = subset.iter().map(|&&(i, v)| v - base[i]).collect();
            if let Some(t) = solve_square(&mat, &rhs) {
                vertices.push(point(&t));
            }
        }
    }
    vertices.retain(|x| x.iter().all(clamp_check));
    vertices.sort();
    vertices.dedup();

    let full = |x: &Vec<Rational>| -> Vec<Rational> { [Rational::zero(), Rational::one()].into_iter().chain(x.iter().copied()).collect() };
    let states: Vec<State> = vertices.iter().map(|x| State::new_unchecked(full(x))).collect();
    debug_assert!(states.iter().all(|s| s.is_state_on(a)));
    if states.is_empty() {
        return empty;
    }
    let diffs: Vec<Vec<Rational>> =
        states[1..].iter().map(|s| s.values.iter().zip(&states[0].values).map(|(x, y)| x - y).collect()).collect();
    let directions = independent_subset(&diffs);
    StatePolytope { dimension: directions.len() as isize, basepoint: Some(states[0].clone()), directions, vertices: states }
}

fn independent_subset(vectors: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut kept: Vec<Vec<Rational>> = Vec::new();
    for v in vectors {
        kept.push(v.clone());
        if rank(&kept) < kept.len() {
            kept.pop();
        }
    }
    kept
}

/// Some state in `states` tells every pair of distinct elements apart.
pub fn separates(a: &EffectAlgebra, states: &[&State]) -> bool {
    a.elements().tuple_combinations().all(|(e, f)| states.iter().any(|s| s.value(e) != s.value(f)))
}

/// Whenever `e ≰ f`, some state in `states` has `σ(e) > σ(f)`.
pub fn determines_order(a: &EffectAlgebra, states: &[&State]) -> bool {
    a.elements()
        .cartesian_product(a.elements())
        .filter(|&(e, f)| !a.leq(e, f))
        .all(|(e, f)| states.iter().any(|s| s.value(e) > s.value(f)))
}

pub fn is_separating(a: &EffectAlgebra, p: &StatePolytope) -> bool {
    separates(a, &p.vertices.iter().collect::<Vec<_>>())
}

pub fn is_order_determining(a: &EffectAlgebra, p: &StatePolytope) -> bool {
    determines_order(a, &p.vertices.iter().collect::<Vec<_>>())
}

/// Quantum representability of a finite algebra, decided by its states.
pub fn is_quantum(a: &EffectAlgebra) -> bool {
    is_order_determining(a, &state_space(a))
}

/// Smallest order-determining set of vertices, as indices into
/// `p.vertices`: smallest size first, then lexicographic.
pub fn min_order_determining_vertices(a: &EffectAlgebra, p: &StatePolytope) -> Option<Vec<usize>> {
    if !is_order_determining(a, p) {
        return None;
    }
    (1..=p.vertices.len()).find_map(|k| {
        (0..p.vertices.len())
            .combinations(k)
            .find(|idx| determines_order(a, &idx.iter().map(|&i| &p.vertices[i]).collect::<Vec<_>>()))
    })
}

/// Minimum size of an order-determining set of vertex states; `None` when
/// the algebra is not quantum.
pub fn min_fuzzy_dimension(a: &EffectAlgebra) -> Option<usize> {
    min_order_determining_vertices(a, &state_space(a)).map(|v| v.len())
}

/// The evaluation map `e ↦ (σ(e))_{σ ∈ S}`, checked to be a monomorphism onto
/// a fuzzy set effect algebra.
pub fn fuzzy_embedding(a: &EffectAlgebra, states: &[State]) -> Result<FuzzyAssignment, StateError> {
    for s in states {
        if !s.is_state_on(a) {
            return Err(StateError::NotAState(format!("{:?}", s.values)));
        }
    }
    let vectors = a.elements().map(|e| states.iter().map(|s| s.value(e)).collect()).collect();
    let fa = FuzzyAssignment::new(vectors).map_err(|e| StateError::NotOrderDetermining(e.to_string()))?;
    match verify_fuzzy(a, &fa, false) {
        Ok(Outcome::Holds) => Ok(fa),
        Ok(Outcome::Fails(c)) => Err(StateError::NotOrderDetermining(c.to_string())),
        Err(e) => Err(StateError::NotOrderDetermining(e.to_string())),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StateAnalysis {
    pub polytope: StatePolytope,
    pub is_separating: bool,
    pub is_order_determining: bool,
    pub is_quantum: bool,
    pub min_fuzzy_dimension: Option<usize>,
    /// Built from a smallest order-determining vertex set.
    pub fuzzy_embedding: Option<FuzzyAssignment>,
}

pub fn analyze(a: &EffectAlgebra) -> StateAnalysis {
    let polytope = state_space(a);
    let is_separating = is_separating(a, &polytope);
    let is_order_determining = is_order_determining(a, &polytope);
    let subset = min_order_determining_vertices(a, &polytope);
    let fuzzy_embedding = subset.as_ref().map(|idx| {
        let chosen: Vec<State> = idx.iter().map(|&i| polytope.vertices[i].clone()).collect();
        fuzzy_embedding(a, &chosen).expect("order-determining vertices embed")
    });
    assert!(!is_order_determining || is_separating);
    StateAnalysis {
        is_separating,
        is_order_determining,
        is_quantum: is_order_determining,
        min_fuzzy_dimension: subset.map(|s| s.len()),
        fuzzy_embedding,
        polytope,
    }
}

/// The state `(e₁, e₂) ↦ t·σ₁(e₁) + (1−t)·σ₂(e₂)` on a composite.
pub fn product_state(c: &CompositeAlgebra, s1: &State, s2: &State, t: Rational) -> Result<State, StateError> {
    if t.is_negative() || t > Rational::one() {
        return Err(StateError::WeightOutOfRange(crate::rational::format_rational(&t)));
    }
    for (s, side) in [(s1, Side::First), (s2, Side::Second)] {
        if !s.is_state_on(c.factor(side)) {
            return Err(StateError::NotAState(format!("not a state on the {side:?} factor")));
        }
    }
    let values = c
        .pairing()
        .iter()
        .map(|&(x, y)| t * s1.value(x) + (Rational::one() - t) * s2.value(y))
        .collect();
    Ok(State::new_unchecked(values))
}

/// Normalised restriction of a composite state to one factor; `None` when
/// the normalising value is zero.
pub fn marginal_state(c: &CompositeAlgebra, s: &State, side: Side) -> Option<State> {
    let factor = c.factor(side);
    let at = |e: ElementId| match side {
        Side::First => c.element_of(e, ElementId::ZERO),
        Side::Second => c.element_of(ElementId::ZERO, e),
    };
    let norm = s.value(at(ElementId::ONE));
    if norm.is_zero() {
        return None;
    }
    let values = factor.elements().map(|e| s.value(at(e)) / norm).collect();
    Some(State::new_unchecked(values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate;
    use crate::rational::q;
    use crate::table::table_from_tokens;

    fn alg(labels: &[&str], rows: &[&[&str]]) -> EffectAlgebra {
        validate(&table_from_tokens(labels, rows).unwrap()).unwrap()
    }

    #[test]
    fn scale_five_has_identity_state() {
        let s5 = alg(&["e", "f", "g"], &[&["f", "g", "I"], &["g", "I", "-"], &["I", "-", "-"]]);
        let p = state_space(&s5);
        assert_eq!(p.dimension, 0);
        assert_eq!(p.unique_state().unwrap().values()[2..], [q(1, 4), q(1, 2), q(3, 4)]);
        assert!(is_order_determining(&s5, &p));
        assert_eq!(min_fuzzy_dimension(&s5), Some(1));
    }

    #[test]
    fn pair_algebra_is_a_segment() {
        let p4 = alg(&["e", "f"], &[&["-", "I"], &["I", "-"]]);
        let p = state_space(&p4);
        assert_eq!(p.dimension, 1);
        assert_eq!(p.vertices.len(), 2);
        assert!(is_quantum(&p4));
        assert_eq!(min_fuzzy_dimension(&p4), Some(2));
    }

    #[test]
    fn two_element_algebra() {
        let s2 = validate(&crate::table::SumTable::new(2, vec![]).unwrap()).unwrap();
        let p = state_space(&s2);
        assert_eq!(p.dimension, 0);
        assert!(is_quantum(&s2));
    }

    #[test]
    fn rejects_non_states() {
        let d4 = alg(&["e", "f"], &[&["I", "-"], &["-", "I"]]);
        assert!(State::from_nontrivial(&d4, &[q(1, 2), q(1, 2)]).is_ok());
        assert!(State::from_nontrivial(&d4, &[q(1, 3), q(1, 2)]).is_err());
    }
}
