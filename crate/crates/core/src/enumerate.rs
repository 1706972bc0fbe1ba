//! Isomorph-free exhaustive generation of all effect algebras of a given
//! order.
//!
//! The search fills the upper triangle of the sum table row by row. Each
//! assignment is checked against the one-unit-per-row rule, the ET5–ET7
//! patterns, the at-most-one-full-row bound, every associativity triple whose
//! cells are already known, and (in orderly mode) against every relabeling
//! that already yields a strictly smaller prefix. Complete tables go through
//! [`validate`]. In orderly mode only canonical tables survive, so no
//! post-hoc deduplication is needed.

use std::ops::AddAssign;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{validate, EffectAlgebra};
use crate::canon::canonical_form;
use crate::table::SumTable;

const UNKNOWN: u8 = u8::MAX;
const UNDEF: u8 = u8::MAX - 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("order must be at least 2, got {0}")]
    OrderTooSmall(usize),
    #[error("order {0} is beyond the supported range (at most {MAX_ORDER})")]
    OrderTooLarge(usize),
}

/// Largest order the enumerator accepts. Orders above 9 are not practical.
pub const MAX_ORDER: usize = 12;

/// Prune counters, one per rule.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PruneCounts {
    pub unit_per_row: u64,
    pub rule_et5: u64,
    pub rule_et6: u64,
    pub rule_et7: u64,
    pub full_rows: u64,
    pub associativity: u64,
    pub non_canonical: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EnumerationStats {
    /// Cell assignments tried.
    pub nodes: u64,
    /// Complete tables that reached full validation.
    pub complete_tables: u64,
    /// Complete tables rejected by full validation.
    pub rejected_complete: u64,
    pub pruned: PruneCounts,
}

impl AddAssign for EnumerationStats {
    fn add_assign(&mut self, o: Self) {
        self.nodes += o.nodes;
        self.complete_tables += o.complete_tables;
        self.rejected_complete += o.rejected_complete;
        let p = &mut self.pruned;
        let q = o.pruned;
        p.unit_per_row += q.unit_per_row;
        p.rule_et5 += q.rule_et5;
        p.rule_et6 += q.rule_et6;
        p.rule_et7 += q.rule_et7;
        p.full_rows += q.full_rows;
        p.associativity += q.associativity;
        p.non_canonical += q.non_canonical;
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerationResult {
    pub n: usize,
    pub count: usize,
    /// Canonical tables in ascending canonical order; empty when only
    /// counting.
    pub algebras: Vec<EffectAlgebra>,
    pub stats: EnumerationStats,
}

#[derive(Clone, Copy, Debug)]
pub struct EnumerateOptions {
    pub count_only: bool,
    /// Reject non-canonical partial tables during the search. When off, every
    /// labeled table is generated and deduplicated afterwards.
    pub orderly: bool,
    /// Worker threads; `None` uses the global rayon pool, `Some(1)` runs
    /// sequentially.
    pub jobs: Option<usize>,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { count_only: false, orderly: true, jobs: None }
    }
}

/// All effect algebras of order `n` up to isomorphism.
pub fn enumerate(n: usize, count_only: bool) -> Result<EnumerationResult, EnumerateError> {
    enumerate_with(n, &EnumerateOptions { count_only, ..EnumerateOptions::default() })
}

pub fn enumerate_with(n: usize, opts: &EnumerateOptions) -> Result<EnumerationResult, EnumerateError> {
    if n < 2 {
        return Err(EnumerateError::OrderTooSmall(n));
    }
    if n > MAX_ORDER {
        return Err(EnumerateError::OrderTooLarge(n));
    }
    let ctx = Context::new(n, opts.orderly);
    let m = n - 2;

    // The first row is expanded sequentially; its completions are the units
    // of parallel work.
    let split = m.min(ctx.positions.len());
    let mut root = Search::new(&ctx);
    root.split_at = Some(split);
    root.dfs(0);
    let mut stats = root.stats;
    let prefixes = std::mem::take(&mut root.prefixes);
    let mut found = std::mem::take(&mut root.found);

    let run = |prefix: &State| {
        let mut s = Search::new(&ctx);
        s.state = prefix.clone();
        s.dfs(split);
        (s.found, s.stats)
    };
    let parts: Vec<(Vec<Vec<u8>>, EnumerationStats)> = match opts.jobs {
        Some(1) => prefixes.iter().map(run).collect(),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .expect("thread pool")
            .install(|| prefixes.par_iter().map(run).collect()),
        None => prefixes.par_iter().map(run).collect(),
    };
    for (f, s) in parts {
        found.extend(f);
        stats += s;
    }

    let mut tables: Vec<SumTable> = found.iter().map(|c| SumTable::from_codes(n, c)).collect();
    if !opts.orderly {
        tables = tables.iter().map(|t| canonical_form(t).table).collect();
    }
    tables.sort();
    tables.dedup();
    let count = tables.len();
    let algebras = if opts.count_only {
        Vec::new()
    } else {
        tables.iter().map(|t| validate(t).expect("enumerated tables are valid")).collect()
    };
    Ok(EnumerationResult { n, count, algebras, stats })
}

struct Context {
    n: usize,
    m: usize,
    /// Upper-triangle cells in row-major order, as zero-based nontrivial
    /// indices.
    positions: Vec<(usize, usize)>,
    /// Non-identity relabelings as (forward, inverse) on zero-based indices.
    perms: Vec<(Vec<u8>, Vec<u8>)>,
}

impl Context {
    fn new(n: usize, orderly: bool) -> Context {
        use itertools::Itertools;
        let m = n - 2;
        let positions = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
        let perms = if orderly {
            (0..m as u8)
                .permutations(m)
                .filter(|p| p.iter().enumerate().any(|(i, &v)| i as u8 != v))
                .map(|fwd| {
                    let mut inv = vec![0u8; m];
                    for (o, &nw) in fwd.iter().enumerate() {
                        inv[nw as usize] = o as u8;
                    }
                    (fwd, inv)
                })
                .collect()
        } else {
            Vec::new()
        };
        Context { n, m, positions, perms }
    }
}

#[derive(Clone)]
struct State {
    /// `m × m` cell codes, [`UNKNOWN`] where unassigned.
    cells: Vec<u8>,
    units: Vec<u8>,
    full_rows: u8,
}

struct Search<'a> {
    ctx: &'a Context,
    state: State,
    found: Vec<Vec<u8>>,
    stats: EnumerationStats,
    split_at: Option<usize>,
    prefixes: Vec<State>,
}

enum Verdict {
    Ok,
    Prune(fn(&mut PruneCounts)),
}

impl<'a> Search<'a> {
    fn new(ctx: &'a Context) -> Search<'a> {
        Search {
            ctx,
            state: State { cells: vec![UNKNOWN; ctx.m * ctx.m], units: vec![0; ctx.m], full_rows: 0 },
            found: Vec::new(),
            stats: EnumerationStats::default(),
            split_at: None,
            prefixes: Vec::new(),
        }
    }

    #[inline]
    fn cell(&self, i: usize, j: usize) -> u8 {
        self.state.cells[i * self.ctx.m + j]
    }

    /// Sum over element ids (0 zero, 1 unit, k ≥ 2 effects); returns an
    /// element id, [`UNDEF`] or [`UNKNOWN`].
    #[inline]
    fn sum(&self, x: u8, y: u8) -> u8 {
        if x == UNKNOWN || y == UNKNOWN {
            return UNKNOWN;
        }
        if x == UNDEF || y == UNDEF {
            return UNDEF;
        }
        if x == 0 {
            return y;
        }
        if y == 0 {
            return x;
        }
        if x == 1 || y == 1 {
            return UNDEF;
        }
        match self.cell(x as usize - 2, y as usize - 2) {
            UNKNOWN => UNKNOWN,
            0 => UNDEF,
            v => v,
        }
    }

    #[inline]
    fn triple_ok(&self, a: u8, b: u8, c: u8) -> bool {
        let left = self.sum(self.sum(a, b), c);
        if left == UNKNOWN {
            return true;
        }
        let right = self.sum(a, self.sum(b, c));
        right == UNKNOWN || left == right
    }

    fn associativity_ok(&self, i: usize, j: usize) -> bool {
        let n = self.ctx.n as u8;
        for pivot in [i as u8 + 2, j as u8 + 2] {
            for x in 2..n {
                for y in 2..n {
                    if !self.triple_ok(pivot, x, y) || !self.triple_ok(x, pivot, y) || !self.triple_ok(x, y, pivot) {
                        return false;
                    }
                }
            }
            if i == j {
                break;
            }
        }
        true
    }

    /// ET5–ET7 on patterns involving `e` or `f` in `{i, j}`.
    fn rules(&self, i: usize, j: usize) -> Verdict {
        let m = self.ctx.m;
        let pivots = [i, j];
        for &p in &pivots[..if i == j { 1 } else { 2 }] {
            for q in 0..m {
                if q == p {
                    continue;
                }
                for (e, f) in [(p, q), (q, p)] {
                    let ee = self.cell(e, e);
                    let ff = self.cell(f, f);
                    let ef = self.cell(e, f);
                    if ee == 1 && ff == 1 && ef != UNKNOWN && ef != 0 {
                        return Verdict::Prune(|c| c.rule_et5 += 1);
                    }
                    let ee_def = ee != UNKNOWN && ee != 0;
                    let ff_def = ff != UNKNOWN && ff != 0;
                    if ee_def && ef == 1 && ff_def {
                        return Verdict::Prune(|c| c.rule_et6 += 1);
                    }
                    if ee as usize == f + 2 && ff_def && ef == 0 {
                        return Verdict::Prune(|c| c.rule_et7 += 1);
                    }
                }
            }
        }
        Verdict::Ok
    }

    /// Some relabeling gives a strictly smaller known prefix up to `p`.
    fn beaten(&self, p: usize) -> bool {
        let m = self.ctx.m;
        let cells = &self.state.cells;
        'perm: for (fwd, inv) in &self.ctx.perms {
            for &(r, c) in &self.ctx.positions[..=p] {
                let old = cells[inv[r] as usize * m + inv[c] as usize];
                if old == UNKNOWN {
                    continue 'perm;
                }
                let pv = if old < 2 { old } else { fwd[old as usize - 2] + 2 };
                let cur = cells[r * m + c];
                if pv < cur {
                    return true;
                }
                if pv > cur {
                    continue 'perm;
                }
            }
        }
        false
    }

    fn check(&mut self, p: usize) -> Verdict {
        let (i, j) = self.ctx.positions[p];
        let m = self.ctx.m;
        if j == m - 1 {
            if self.state.units[i] != 1 {
                return Verdict::Prune(|c| c.unit_per_row += 1);
            }
        }
        if j == m - 1 && (0..m).all(|k| self.cell(i, k) != 0) && self.state.full_rows > 1 {
            return Verdict::Prune(|c| c.full_rows += 1);
        }
        if let Verdict::Prune(f) = self.rules(i, j) {
            return Verdict::Prune(f);
        }
        if !self.associativity_ok(i, j) {
            return Verdict::Prune(|c| c.associativity += 1);
        }
        if !self.ctx.perms.is_empty() && self.beaten(p) {
            return Verdict::Prune(|c| c.non_canonical += 1);
        }
        Verdict::Ok
    }

    fn dfs(&mut self, p: usize) {
        let ctx = self.ctx;
        if p == ctx.positions.len() {
            self.leaf();
            return;
        }
        if self.split_at == Some(p) {
            self.prefixes.push(self.state.clone());
            return;
        }
        let (i, j) = ctx.positions[p];
        let m = ctx.m;
        let unit_free = self.state.units[i] == 0 && self.state.units[j] == 0;
        let mut candidates: Vec<u8> = vec![0];
        if unit_free {
            candidates.push(1);
        }
        candidates.extend((0..m).filter(|&k| k != i && k != j).map(|k| k as u8 + 2));

        for v in candidates {
            self.stats.nodes += 1;
            self.state.cells[i * m + j] = v;
            self.state.cells[j * m + i] = v;
            if v == 1 {
                self.state.units[i] += 1;
                if i != j {
                    self.state.units[j] += 1;
                }
            }
            let row_full = j == m - 1 && (0..m).all(|k| self.cell(i, k) != 0);
            if row_full {
                self.state.full_rows += 1;
            }
            match self.check(p) {
                Verdict::Ok => self.dfs(p + 1),
                Verdict::Prune(count) => count(&mut self.stats.pruned),
            }
            if row_full {
                self.state.full_rows -= 1;
            }
            if v == 1 {
                self.state.units[i] -= 1;
                if i != j {
                    self.state.units[j] -= 1;
                }
            }
            self.state.cells[i * m + j] = UNKNOWN;
            self.state.cells[j * m + i] = UNKNOWN;
        }
    }

    fn leaf(&mut self) {
        self.stats.complete_tables += 1;
        let table = SumTable::from_codes(self.ctx.n, &self.state.cells);
        if validate(&table).is_ok() {
            self.found.push(self.state.cells.clone());
        } else {
            self.stats.rejected_complete += 1;
        }
    }
}
