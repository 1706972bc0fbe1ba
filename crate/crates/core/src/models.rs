//! Verification of concrete models: multiplicative (scalar, vector,
//! complex), fuzzy set and matrix assignments.
//!
//! Multiplicative and fuzzy checks are exact. Matrix checks use
//! floating-point eigenvalues with an explicit tolerance.

use std::fmt;

use itertools::Itertools;
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::EffectAlgebra;
use crate::cyclotomic::Cyclotomic;
use crate::rational::Rational;
use crate::table::ElementId;

/// Why a model does not represent the algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub e: ElementId,
    pub f: ElementId,
    pub reason: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}): {}", self.e.0, self.f.0, self.reason)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Holds,
    Fails(Counterexample),
}

impl Outcome {
    pub fn holds(&self) -> bool {
        matches!(self, Outcome::Holds)
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            Outcome::Holds => None,
            Outcome::Fails(c) => Some(c),
        }
    }
}

fn fail(a: &EffectAlgebra, e: ElementId, f: ElementId, reason: impl Into<String>) -> Outcome {
    let reason = format!("{} and {}: {}", a.label(e), a.label(f), reason.into());
    Outcome::Fails(Counterexample { e, f, reason })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("model assigns {found} elements, the algebra has {expected}")]
    Length { expected: usize, found: usize },
    #[error("element {0} has {1} components, expected {2}")]
    Components(usize, usize, usize),
    #[error("model values must have at least one component")]
    Empty,
    #[error("elements {0} and {1} get the same value")]
    NotInjective(usize, usize),
    #[error("{0}")]
    Invalid(String),
    #[error("matrix for element {0} is not hermitian within tolerance")]
    NotHermitian(usize),
    #[error("dimension {0} is outside the supported search range 1..=3")]
    DimensionCap(usize),
}

/// Elements as vectors of exact complex numbers; the sum is the
/// componentwise product, defined when the product is again a value of the
/// model.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultiplicativeModel {
    values: Vec<Vec<Cyclotomic>>,
}

impl MultiplicativeModel {
    /// `values[e]` for every element, zero and unit included.
    pub fn new(values: Vec<Vec<Cyclotomic>>) -> Result<MultiplicativeModel, ModelError> {
        let dim = values.first().map(Vec::len).ok_or(ModelError::Empty)?;
        if dim == 0 {
            return Err(ModelError::Empty);
        }
        for (i, v) in values.iter().enumerate() {
            if v.len() != dim {
                return Err(ModelError::Components(i, v.len(), dim));
            }
        }
        for ((i, x), (j, y)) in values.iter().enumerate().tuple_combinations() {
            if x == y {
                return Err(ModelError::NotInjective(i, j));
            }
        }
        Ok(MultiplicativeModel { values })
    }

    /// Scalar model from integers.
    pub fn scalars(values: &[i64]) -> Result<MultiplicativeModel, ModelError> {
        MultiplicativeModel::new(values.iter().map(|&k| vec![Cyclotomic::integer(k)]).collect())
    }

    pub fn value(&self, e: ElementId) -> &[Cyclotomic] {
        &self.values[e.0]
    }

    pub fn values(&self) -> &[Vec<Cyclotomic>] {
        &self.values
    }

    pub fn dimension(&self) -> usize {
        self.values[0].len()
    }
}

pub fn verify_multiplicative(a: &EffectAlgebra, m: &MultiplicativeModel) -> Result<Outcome, ModelError> {
    if m.values.len() != a.order() {
        return Err(ModelError::Length { expected: a.order(), found: m.values.len() });
    }
    for e in a.elements() {
        for f in a.elements() {
            let prod: Vec<Cyclotomic> = m.value(e).iter().zip(m.value(f)).map(|(x, y)| *x * *y).collect();
            let hit = m.values.iter().position(|v| *v == prod);
            match (a.sum(e, f), hit) {
                (Some(s), Some(h)) if h == s.0 => {}
                (Some(s), Some(h)) => {
                    return Ok(fail(a, e, f, format!("product is the value of {}, table gives {}", a.label(ElementId(h)), a.label(s))))
                }
                (Some(s), None) => {
                    return Ok(fail(a, e, f, format!("table gives {} but the product is not a model value", a.label(s))))
                }
                (None, Some(h)) => {
                    return Ok(fail(a, e, f, format!("undefined in the table but the product is the value of {}", a.label(ElementId(h)))))
                }
                (None, None) => {}
            }
        }
    }
    Ok(Outcome::Holds)
}

/// Elements as points of `[0, 1]^d` with componentwise sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzyAssignment {
    #[serde(serialize_with = "crate::rational::serialize_vectors")]
    vectors: Vec<Vec<Rational>>,
}

impl FuzzyAssignment {
    /// `vectors[e]` for every element; zero must be all zeros and the unit
    /// all ones.
    pub fn new(vectors: Vec<Vec<Rational>>) -> Result<FuzzyAssignment, ModelError> {
        let dim = vectors.first().map(Vec::len).ok_or(ModelError::Empty)?;
        if dim == 0 {
            return Err(ModelError::Empty);
        }
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != dim {
                return Err(ModelError::Components(i, v.len(), dim));
            }
            if v.iter().any(|x| x.is_negative() || *x > Rational::one()) {
                return Err(ModelError::Invalid(format!("element {i} has a coordinate outside [0, 1]")));
            }
        }
        if !vectors[0].iter().all(Zero::is_zero) {
            return Err(ModelError::Invalid("zero must map to the zero vector".into()));
        }
        if vectors.len() > 1 && !vectors[1].iter().all(One::is_one) {
            return Err(ModelError::Invalid("unit must map to the all-ones vector".into()));
        }
        Ok(FuzzyAssignment { vectors })
    }

    /// Vectors for the nontrivial elements only, in table order.
    pub fn from_nontrivial(vectors: Vec<Vec<Rational>>) -> Result<FuzzyAssignment, ModelError> {
        let dim = vectors.first().map(Vec::len).ok_or(ModelError::Empty)?;
        let all = [vec![Rational::zero(); dim], vec![Rational::one(); dim]].into_iter().chain(vectors).collect();
        FuzzyAssignment::new(all)
    }

    pub fn dimension(&self) -> usize {
        self.vectors[0].len()
    }

    pub fn vector(&self, e: ElementId) -> &[Rational] {
        &self.vectors[e.0]
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }
}

/// Strict mode: `e ⊕ f` is defined exactly when the vectors sum to at most 1
/// in every coordinate, and then the sum is the image of `e ⊕ f`. Weak mode
/// only asks that defined sums fit and land on the right image.
pub fn verify_fuzzy(a: &EffectAlgebra, fa: &FuzzyAssignment, weak: bool) -> Result<Outcome, ModelError> {
    if fa.vectors.len() != a.order() {
        return Err(ModelError::Length { expected: a.order(), found: fa.vectors.len() });
    }
    for (e, f) in a.elements().tuple_combinations() {
        if fa.vector(e) == fa.vector(f) {
            return Ok(fail(a, e, f, "same vector"));
        }
    }
    for e in a.elements() {
        for f in a.elements() {
            let s: Vec<Rational> = fa.vector(e).iter().zip(fa.vector(f)).map(|(x, y)| x + y).collect();
            let fits = s.iter().all(|x| *x <= Rational::one());
            match a.sum(e, f) {
                Some(r) if !fits => return Ok(fail(a, e, f, format!("defined as {} but the vectors sum above 1", a.label(r)))),
                Some(r) if s.as_slice() != fa.vector(r) => {
                    return Ok(fail(a, e, f, format!("vector sum differs from the vector of {}", a.label(r))))
                }
                None if fits && !weak => return Ok(fail(a, e, f, "undefined but the vectors sum to at most 1")),
                _ => {}
            }
        }
    }
    Ok(Outcome::Holds)
}

/// Result of the bounded search for a fuzzy model of fixed dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DimensionBound {
    Found(FuzzyAssignment),
    /// Elements `x₁ … x_{m+1}` with every `xᵢ ⊕ xᵢ` undefined but their
    /// total sum defined: each needs a coordinate above 1/2, two share one,
    /// and the total overflows.
    RefutedAnalytically(Vec<ElementId>),
    /// No model with coordinates of denominator at most this bound.
    NotFound { max_denominator: i64 },
}

impl DimensionBound {
    pub fn exists(&self) -> bool {
        matches!(self, DimensionBound::Found(_))
    }
}

pub const DEFAULT_MAX_DENOMINATOR: i64 = 12;

/// Pigeonhole obstruction to a strict fuzzy model of dimension `m`.
pub fn pigeonhole_refutation(a: &EffectAlgebra, m: usize) -> Option<Vec<ElementId>> {
    let big: Vec<ElementId> = a.nontrivial().filter(|&e| a.sum(e, e).is_none()).collect();
    big.into_iter().combinations(m + 1).find(|set| {
        set[1..].iter().try_fold(set[0], |acc, &x| a.sum(acc, x)).is_some()
    })
}

pub fn verify_fuzzy_dimension_bound(a: &EffectAlgebra, m: usize) -> Result<DimensionBound, ModelError> {
    verify_fuzzy_dimension_bound_with(a, m, DEFAULT_MAX_DENOMINATOR)
}

/// Whether `a` has a strict fuzzy model in `[0, 1]^m`. Tries the pigeonhole
/// refutation first, then searches assignments with coordinates of
/// denominator at most `max_denominator`, propagating forced values through
/// defined sums.
pub fn verify_fuzzy_dimension_bound_with(
    a: &EffectAlgebra,
    m: usize,
    max_denominator: i64,
) -> Result<DimensionBound, ModelError> {
    if !(1..=3).contains(&m) {
        return Err(ModelError::DimensionCap(m));
    }
    if let Some(w) = pigeonhole_refutation(a, m) {
        return Ok(DimensionBound::RefutedAnalytically(w));
    }
    let mut grid: Vec<Rational> = Vec::new();
    for d in 1..=max_denominator.max(1) {
        for p in 0..=d {
            let r = Rational::new(p, d);
            if !grid.contains(&r) {
                grid.push(r);
            }
        }
    }
    let n = a.order();
    let mut vals: Vec<Option<Vec<Rational>>> = vec![None; n];
    vals[0] = Some(vec![Rational::zero(); m]);
    vals[1] = Some(vec![Rational::one(); m]);
    let search = FuzzySearch { a, m, grid };
    match search.go(vals) {
        Some(v) => {
            let fa = FuzzyAssignment::new(v.into_iter().map(Option::unwrap).collect())?;
            assert!(verify_fuzzy(a, &fa, false)?.holds());
            Ok(DimensionBound::Found(fa))
        }
        None => Ok(DimensionBound::NotFound { max_denominator }),
    }
}

struct FuzzySearch<'a> {
    a: &'a EffectAlgebra,
    m: usize,
    grid: Vec<Rational>,
}

type Partial = Vec<Option<Vec<Rational>>>;

impl FuzzySearch<'_> {
    fn go(&self, vals: Partial) -> Option<Partial> {
        let Some(next) = self.a.nontrivial().find(|e| vals[e.0].is_none()) else { return Some(vals) };
        let g = self.grid.len();
        let mut idx = vec![0usize; self.m];
        loop {
            let v: Vec<Rational> = idx.iter().map(|&i| self.grid[i]).collect();
            let mut trial = vals.clone();
            if assign(&mut trial, next, v) && self.propagate(&mut trial) {
                if let Some(done) = self.go(trial) {
                    return Some(done);
                }
            }
            let mut k = self.m;
            loop {
                if k == 0 {
                    return None;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < g {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    /// Fills forced values until nothing changes; false on a contradiction.
    fn propagate(&self, vals: &mut Partial) -> bool {
        let a = self.a;
        loop {
            let mut changed = false;
            for e in a.elements() {
                for f in a.elements() {
                    let s = a.sum(e, f);
                    let (ve, vf) = (vals[e.0].clone(), vals[f.0].clone());
                    match (ve, vf, s) {
                        (Some(x), Some(y), None) => {
                            if x.iter().zip(&y).all(|(p, q)| p + q <= Rational::one()) {
                                return false;
                            }
                        }
                        (Some(x), Some(y), Some(s)) => {
                            let v: Vec<Rational> = x.iter().zip(&y).map(|(p, q)| p + q).collect();
                            match &vals[s.0] {
                                Some(w) if *w != v => return false,
                                Some(_) => {}
                                None => {
                                    if !assign(vals, s, v) {
                                        return false;
                                    }
                                    changed = true;
                                }
                            }
                        }
                        (Some(x), None, Some(s)) => {
                            if let Some(w) = vals[s.0].clone() {
                                let v = w.iter().zip(&x).map(|(p, q)| p - q).collect();
                                if !assign(vals, f, v) {
                                    return false;
                                }
                                changed = true;
                            }
                        }
                        _ => {}
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }
}

/// Sets `vals[e] = v` if `v` lies in the box and is not already taken.
fn assign(vals: &mut Partial, e: ElementId, v: Vec<Rational>) -> bool {
    if v.iter().any(|x| x.is_negative() || *x > Rational::one()) {
        return false;
    }
    if vals.iter().enumerate().any(|(i, w)| i != e.0 && w.as_ref() == Some(&v)) {
        return false;
    }
    vals[e.0] = Some(v);
    true
}

/// Elements as `d × d` complex matrices between 0 and the identity, with the
/// sum defined when the matrix sum stays below the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumAssignment {
    matrices: Vec<DMatrix<Complex64>>,
}

impl QuantumAssignment {
    pub fn new(matrices: Vec<DMatrix<Complex64>>) -> Result<QuantumAssignment, ModelError> {
        let d = matrices.first().map(|m| m.nrows()).ok_or(ModelError::Empty)?;
        if d == 0 {
            return Err(ModelError::Empty);
        }
        for (i, m) in matrices.iter().enumerate() {
            if m.nrows() != d || m.ncols() != d {
                return Err(ModelError::Components(i, m.nrows() * m.ncols(), d * d));
            }
        }
        Ok(QuantumAssignment { matrices })
    }

    /// Matrices for the nontrivial elements; zero and unit become the zero
    /// and identity matrices.
    pub fn from_nontrivial(matrices: Vec<DMatrix<Complex64>>) -> Result<QuantumAssignment, ModelError> {
        let d = matrices.first().map(|m| m.nrows()).ok_or(ModelError::Empty)?;
        let all = [DMatrix::zeros(d, d), DMatrix::identity(d, d)].into_iter().chain(matrices).collect();
        QuantumAssignment::new(all)
    }

    pub fn dimension(&self) -> usize {
        self.matrices[0].nrows()
    }

    pub fn matrix(&self, e: ElementId) -> &DMatrix<Complex64> {
        &self.matrices[e.0]
    }
}

fn max_abs_diff(x: &DMatrix<Complex64>, y: &DMatrix<Complex64>) -> f64 {
    x.iter().zip(y.iter()).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max)
}

fn eigen_range(m: &DMatrix<Complex64>) -> (f64, f64) {
    let ev = m.clone().symmetric_eigen().eigenvalues;
    (ev.iter().copied().fold(f64::INFINITY, f64::min), ev.iter().copied().fold(f64::NEG_INFINITY, f64::max))
}

/// Checks `0 ≤ M ≤ I` for every element and, for every ordered pair, that
/// the table sum is defined exactly when `M_e + M_f ≤ I`, with
/// `M_e + M_f = M_{e⊕f}` when defined. All comparisons use `tol`.
pub fn verify_quantum_matrices(a: &EffectAlgebra, q: &QuantumAssignment, tol: f64) -> Result<Outcome, ModelError> {
    if q.matrices.len() != a.order() {
        return Err(ModelError::Length { expected: a.order(), found: q.matrices.len() });
    }
    for e in a.elements() {
        let m = q.matrix(e);
        if max_abs_diff(m, &m.adjoint()) > tol {
            return Err(ModelError::NotHermitian(e.0));
        }
        let (lo, hi) = eigen_range(m);
        if lo < -tol || hi > 1.0 + tol {
            return Ok(fail(a, e, e, format!("eigenvalues of {} leave [0, 1]", a.label(e))));
        }
    }
    for (e, f) in a.elements().tuple_combinations() {
        if max_abs_diff(q.matrix(e), q.matrix(f)) <= tol {
            return Ok(fail(a, e, f, "same matrix"));
        }
    }
    for e in a.elements() {
        for f in a.elements() {
            let s = q.matrix(e) + q.matrix(f);
            let fits = eigen_range(&s).1 <= 1.0 + tol;
            match a.sum(e, f) {
                Some(r) if !fits => return Ok(fail(a, e, f, format!("defined as {} but the sum exceeds the identity", a.label(r)))),
                Some(r) if max_abs_diff(&s, q.matrix(r)) > tol => {
                    return Ok(fail(a, e, f, format!("matrix sum differs from the matrix of {}", a.label(r))))
                }
                None if fits => return Ok(fail(a, e, f, "undefined but the sum stays below the identity")),
                _ => {}
            }
        }
    }
    Ok(Outcome::Holds)
}
