//! Finite effect algebras given by sum tables.
//!
//! Start from [`SumTable`], check it with [`validate`], enumerate all
//! algebras of an order with [`enumerate()`], and analyse them with the
//! [`classify`], [`states`], [`compose`] and [`models`] modules. Named
//! algebras live in [`catalog`]; [`io`] reads and writes tables and model
//! files.

pub mod algebra;
pub mod canon;
pub mod catalog;
pub mod classify;
pub mod compose;
pub mod cyclotomic;
pub mod enumerate;
pub mod io;
pub mod models;
pub mod rational;
pub mod states;
pub mod table;

pub use algebra::{validate, EffectAlgebra, ViolationKind, ViolationReport};
pub use canon::{apply_permutation, are_isomorphic, canonical_form, find_isomorphism, CanonicalForm};
pub use catalog::{catalog, lookup, make_scale, make_sparse};
pub use classify::{classify, Classification};
pub use compose::{compose, is_composite, CompositeAlgebra, Side};
pub use enumerate::{enumerate, enumerate_with, EnumerateOptions, EnumerationResult};
pub use rational::Rational;
pub use states::{analyze, state_space, State, StateAnalysis, StatePolytope};
pub use table::{table_from_tokens, CellValue, ElementId, SumTable, TableError};
