//! Reference implementations used to cross-check the library.
#![allow(dead_code)]

use std::collections::BTreeSet;

use effect_algebra::{EffectAlgebra, ElementId};
use itertools::Itertools;

const UNDEF: i8 = -1;
const UNKNOWN: i8 = -2;

/// Brute-force enumerator over full `n × n` tables.
///
/// Cells are filled column by column. A branch is cut only when a triple
/// whose sums became known with the last cell breaks associativity or a row gets a second unit; no
/// pattern rules, row bounds or symmetry breaking. Results are deduplicated
/// by the least relabeled full matrix.
pub struct NaiveEnumerator {
    n: usize,
    t: Vec<i8>,
    order: Vec<(usize, usize)>,
    units: Vec<u8>,
    pub found: BTreeSet<Vec<i8>>,
    perms: Vec<Vec<usize>>,
}

impl NaiveEnumerator {
    pub fn run(n: usize) -> BTreeSet<Vec<i8>> {
        let mut t = vec![UNKNOWN; n * n];
        for x in 0..n {
            t[x] = x as i8;
            t[x * n] = x as i8;
            if x > 0 {
                t[n + x] = UNDEF;
                t[x * n + 1] = UNDEF;
            }
        }
        t[1] = 1;
        t[n] = 1;
        let order = (2..n).flat_map(|j| (2..=j).map(move |i| (i, j))).collect();
        let mut s = NaiveEnumerator { n, t, order, units: vec![0; n], found: BTreeSet::new(), perms: all_perms(n) };
        s.go(0);
        s.found
    }

    fn sum(&self, a: i8, b: i8) -> i8 {
        if a < 0 || b < 0 {
            return if a == UNKNOWN || b == UNKNOWN { UNKNOWN } else { UNDEF };
        }
        self.t[a as usize * self.n + b as usize]
    }

    fn associative_so_far(&self) -> bool {
        let n = self.n as i8;
        for a in 0..n {
            for b in 0..n {
                let ab = self.sum(a, b);
                if ab == UNKNOWN {
                    continue;
                }
                for c in 0..n {
                    let l = self.sum(ab, c);
                    if l == UNKNOWN {
                        continue;
                    }
                    let r = self.sum(a, self.sum(b, c));
                    if r != UNKNOWN && r != l {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn triple_ok(&self, a: i8, b: i8, c: i8) -> bool {
        let l = self.sum(self.sum(a, b), c);
        if l == UNKNOWN {
            return true;
        }
        let r = self.sum(a, self.sum(b, c));
        r == UNKNOWN || r == l
    }

    /// Triples with a lookup of the cell `(i, j)`; the only ones whose
    /// verdict can change when that cell is assigned.
    fn touched_ok(&self, i: usize, j: usize) -> bool {
        let n = self.n as i8;
        let (i, j) = (i as i8, j as i8);
        for (x, y) in [(i, j), (j, i)] {
            for z in 0..n {
                if !self.triple_ok(x, y, z) || !self.triple_ok(z, x, y) {
                    return false;
                }
            }
            for a in 0..n {
                for b in 0..n {
                    if self.sum(a, b) == x && (!self.triple_ok(a, b, y) || !self.triple_ok(y, a, b)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn go(&mut self, p: usize) {
        let n = self.n;
        if p == self.order.len() {
            if (2..n).all(|r| self.units[r] == 1) && self.associative_so_far() {
                let key = min_key(&self.t, n, &self.perms);
                self.found.insert(key);
            }
            return;
        }
        let (i, j) = self.order[p];
        let mut cands = vec![UNDEF, 1];
        cands.extend((2..n).filter(|&k| k != i && k != j).map(|k| k as i8));
        for v in cands {
            if v == 1 && (self.units[i] > 0 || self.units[j] > 0) {
                continue;
            }
            self.t[i * n + j] = v;
            self.t[j * n + i] = v;
            if v == 1 {
                self.units[i] += 1;
                if i != j {
                    self.units[j] += 1;
                }
            }
            if self.touched_ok(i, j) {
                self.go(p + 1);
            }
            if v == 1 {
                self.units[i] -= 1;
                if i != j {
                    self.units[j] -= 1;
                }
            }
        }
        self.t[i * n + j] = UNKNOWN;
        self.t[j * n + i] = UNKNOWN;
    }
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    (2..n)
        .permutations(n - 2)
        .map(|p| [0, 1].into_iter().chain(p).collect())
        .collect()
}

/// Least full matrix over all relabelings fixing zero and unit.
fn min_key(t: &[i8], n: usize, perms: &[Vec<usize>]) -> Vec<i8> {
    perms
        .iter()
        .map(|p| {
            let mut out = vec![0i8; n * n];
            for a in 0..n {
                for b in 0..n {
                    let v = t[a * n + b];
                    out[p[a] * n + p[b]] = if v >= 0 { p[v as usize] as i8 } else { v };
                }
            }
            out
        })
        .min()
        .unwrap()
}

/// The oracle's isomorphism key for a library algebra.
pub fn key_of(a: &EffectAlgebra) -> Vec<i8> {
    let n = a.order();
    let mut t = vec![0i8; n * n];
    for x in 0..n {
        for y in 0..n {
            t[x * n + y] = a.sum(ElementId(x), ElementId(y)).map_or(UNDEF, |s| s.0 as i8);
        }
    }
    min_key(&t, n, &all_perms(n))
}

use effect_algebra::cyclotomic::Cyclotomic;
use effect_algebra::io::{parse, parse_model, ModelFile};
use effect_algebra::models::{
    verify_fuzzy, verify_multiplicative, verify_quantum_matrices, FuzzyAssignment, MultiplicativeModel, QuantumAssignment,
};
use effect_algebra::rational::Rational;
use effect_algebra::{lookup, validate};

pub fn data(path: &str) -> String {
    let full = format!("{}/data/{path}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&full).unwrap_or_else(|e| panic!("{full}: {e}"))
}

pub fn table_file(name: &str) -> effect_algebra::SumTable {
    parse(&data(&format!("tables/{name}"))).unwrap()
}

pub fn algebra(name: &str) -> EffectAlgebra {
    lookup(name).unwrap_or_else(|| panic!("no catalog entry {name}")).algebra.clone()
}

pub fn model_file(alg: &EffectAlgebra, name: &str) -> ModelFile {
    parse_model(alg.table(), &data(&format!("models/{name}.json"))).unwrap()
}

/// Vector model of the sparse algebra with `k` self-complementary effects
/// and `l` pairs, in dimension `k + l`: zero is all 1, the unit all 4,
/// self-complementary `e_j` has −2 at `j`, the pair `(f_j, f_j')` has `∓2i`
/// at `k + j`, and every other coordinate is 2.
pub fn sparse_vector_model(k: usize, l: usize) -> MultiplicativeModel {
    let d = k + l;
    let c = Cyclotomic::integer;
    let two_i = Cyclotomic::i() * c(2);
    let with = |pos: usize, v: Cyclotomic| (0..d).map(|p| if p == pos { v } else { c(2) }).collect::<Vec<_>>();
    let mut values = vec![vec![c(1); d], vec![c(4); d]];
    for j in 0..k {
        values.push(with(j, c(-2)));
    }
    for j in 0..l {
        values.push(with(k + j, -two_i));
        values.push(with(k + j, two_i));
    }
    MultiplicativeModel::new(values).unwrap()
}

/// Triples the first coordinate of the first nontrivial element.
pub fn mutate_multiplicative(m: &MultiplicativeModel) -> MultiplicativeModel {
    let mut v = m.values().to_vec();
    v[2][0] = v[2][0] * Cyclotomic::integer(3);
    MultiplicativeModel::new(v).unwrap()
}

/// Halves the first coordinate of the first nontrivial element, or sets it
/// to 1/97 when it is zero.
pub fn mutate_fuzzy(f: &FuzzyAssignment) -> FuzzyAssignment {
    let mut v = f.vectors().to_vec();
    let x = v[2][0];
    v[2][0] = if x == Rational::from_integer(0) { Rational::new(1, 97) } else { x / 2 };
    FuzzyAssignment::new(v).unwrap()
}

pub fn verify(alg: &EffectAlgebra, m: &ModelFile) -> bool {
    match m {
        ModelFile::Multiplicative(mm) => verify_multiplicative(alg, mm).unwrap().holds(),
        ModelFile::Fuzzy { assignment, weak } => verify_fuzzy(alg, assignment, *weak).unwrap().holds(),
        ModelFile::Quantum(q) => verify_quantum_matrices(alg, q, 1e-9).unwrap().holds(),
    }
}

/// The eight-element matrices with the third generator replaced by the
/// second.
pub fn e8_quantum_with_duplicate(q: &QuantumAssignment) -> QuantumAssignment {
    let mut mats: Vec<_> = (0..8).map(|i| q.matrix(ElementId(i)).clone()).collect();
    mats[4] = mats[3].clone();
    QuantumAssignment::new(mats).unwrap()
}

pub fn validated(t: &effect_algebra::SumTable) -> EffectAlgebra {
    validate(t).unwrap()
}
