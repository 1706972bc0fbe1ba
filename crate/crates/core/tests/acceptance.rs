//! Acceptance suite. Prints one `[PASS]` or `[FAIL]` line per criterion and
//! exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use effect_algebra::canon::canonical_form;
use effect_algebra::catalog::identify;
use effect_algebra::classify::{classify, max_defined, min_defined, sparse_count};
use effect_algebra::compose::{compose, is_composite};
use effect_algebra::io::ModelFile;
use effect_algebra::models::{verify_fuzzy_dimension_bound, DimensionBound};
use effect_algebra::rational::{q, Rational};
use effect_algebra::states::{
    is_order_determining, is_quantum, is_separating, marginal_state, min_fuzzy_dimension, product_state, state_space,
};
use effect_algebra::{
    enumerate, make_scale, make_sparse, table_from_tokens, validate, EffectAlgebra, ElementId, Side, ViolationKind,
};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn secs(d: Duration) -> String {
    format!("{:.3}s", d.as_secs_f64())
}

fn enumeration_counts() -> Check {
    const TABLE: [(usize, usize); 5] = [(2, 1), (3, 1), (4, 3), (5, 4), (6, 10)];
    let mut notes = Vec::new();
    for (n, want) in TABLE {
        let t = Instant::now();
        let r = enumerate(n, true).map_err(|e| e.to_string())?;
        let took = t.elapsed();
        ensure(r.count == want, || format!("n={n}: {} algebras, expected {want}", r.count))?;
        ensure(took < Duration::from_secs(5), || format!("n={n} took {}", secs(took)))?;
        let full = enumerate(n, false).map_err(|e| e.to_string())?;
        let lib: BTreeSet<_> = full.algebras.iter().map(key_of).collect();
        ensure(lib == NaiveEnumerator::run(n), || format!("n={n}: differs from naive oracle"))?;
    }
    for n in [7, 8] {
        let t = Instant::now();
        let r = enumerate(n, false).map_err(|e| e.to_string())?;
        let took = t.elapsed();
        ensure(took < Duration::from_secs(600), || format!("n={n} took {}", secs(took)))?;
        let t = Instant::now();
        let oracle = NaiveEnumerator::run(n);
        let oracle_took = t.elapsed();
        let lib: BTreeSet<_> = r.algebras.iter().map(key_of).collect();
        ensure(lib.len() == r.count, || format!("n={n}: duplicate isomorphism classes"))?;
        ensure(lib == oracle, || format!("n={n}: {} vs naive oracle {}", lib.len(), oracle.len()))?;
        notes.push(format!("n={n}: {} in {} (oracle {})", r.count, secs(took), secs(oracle_took)));
    }
    Ok(format!("1,1,3,4,10 for n=2..6, oracle agrees through n=8; {}", notes.join(", ")))
}

fn quantum_split() -> Check {
    let quantum: BTreeSet<&str> = ["S2", "S3", "S4", "P4", "S5", "E5(1,1)", "S6", "E6(7)", "P6", "E6(4)"].into();
    let mut seen = 0;
    for n in 2..=6 {
        for a in enumerate(n, false).map_err(|e| e.to_string())?.algebras {
            let entry = identify(a.table()).ok_or_else(|| format!("unidentified algebra of order {n}"))?;
            let want = quantum.contains(entry.name.as_str());
            ensure(is_quantum(&a) == want, || format!("{}: is_quantum should be {want}", entry.name))?;
            seen += 1;
        }
    }
    Ok(format!("{seen} algebras, {} quantum", quantum.len()))
}

fn defined_bounds() -> Check {
    for n in 2..=8 {
        let algs = enumerate(n, false).map_err(|e| e.to_string())?.algebras;
        let counts: Vec<usize> = algs.iter().map(|a| a.count_defined().0).collect();
        let (lo, hi) = (min_defined(n), max_defined(n));
        ensure(counts.iter().all(|&c| lo <= c && c <= hi), || format!("n={n}: count outside [{lo}, {hi}]"))?;
        let top: Vec<&EffectAlgebra> = algs.iter().zip(&counts).filter(|(_, &c)| c == hi).map(|(a, _)| a).collect();
        ensure(top.len() == 1, || format!("n={n}: {} algebras attain the maximum", top.len()))?;
        ensure(classify(top[0]).is_scale, || format!("n={n}: maximum is not a scale"))?;
        let bottom = counts.iter().filter(|&&c| c == lo).count();
        ensure(bottom == sparse_count(n), || format!("n={n}: {bottom} sparse, expected {}", sparse_count(n)))?;
    }
    Ok("n=2..8".into())
}

fn unique_state_is(a: &EffectAlgebra, name: &str, want: &[Rational]) -> Result<(), String> {
    let p = state_space(a);
    let s = p.unique_state().ok_or_else(|| format!("{name}: state not unique (dim {})", p.dimension))?;
    ensure(&s.values()[2..] == want, || format!("{name}: state {:?}", s.values()))
}

fn state_examples() -> Check {
    let t = Instant::now();
    for n in 3..=8usize {
        let want: Vec<Rational> = (1..n as i64 - 1).map(|k| q(k, n as i64 - 1)).collect();
        unique_state_is(&make_scale(n).unwrap(), &format!("S{n}"), &want)?;
        unique_state_is(&make_sparse(n - 2, 0).unwrap(), &format!("D{n}"), &vec![q(1, 2); n - 2])?;
    }
    for l in 1..=4usize {
        let p = state_space(&make_sparse(0, l).unwrap());
        ensure(p.dimension == l as isize && p.vertices.len() == 1 << l, || {
            format!("P{}: dimension {} with {} vertices", 2 * l + 2, p.dimension, p.vertices.len())
        })?;
    }
    let e53 = validated(&table_file("e5-3.txt"));
    unique_state_is(&e53, "E5(3)", &[q(1, 3), q(1, 2), q(2, 3)])?;
    let p = state_space(&e53);
    ensure(is_separating(&e53, &p) && !is_order_determining(&e53, &p), || "E5(3): separation".into())?;
    let printed: [(&str, [Rational; 4]); 4] = [
        ("E6(5)", [q(1, 3), q(2, 3), q(1, 2), q(1, 2)]),
        ("E6(6)", [q(1, 3), q(2, 3), q(1, 3), q(2, 3)]),
        ("E6(8)", [q(1, 4), q(1, 2), q(3, 4), q(1, 2)]),
        ("E6(9)", [q(1, 3), q(1, 3), q(2, 3), q(2, 3)]),
    ];
    for (name, want) in printed {
        let a = algebra(name);
        unique_state_is(&a, name, &want)?;
        ensure(!is_separating(&a, &state_space(&a)), || format!("{name} should not separate"))?;
    }
    let e63 = algebra("E6(3)");
    let p = state_space(&e63);
    ensure(p.dimension >= 1 && !is_separating(&e63, &p), || "E6(3): expected infinite, non-separating".into())?;
    ensure(state_space(&algebra("R9")).is_empty(), || "R9 has states".into())?;
    let took = t.elapsed();
    ensure(took < Duration::from_secs(1), || format!("took {}", secs(took)))?;
    Ok(format!("in {}", secs(took)))
}

fn model_verification() -> Check {
    let mut checked = 0;
    let mut expect = |name: &str, a: &EffectAlgebra, good: &ModelFile, bad: &ModelFile| -> Result<(), String> {
        ensure(verify(a, good), || format!("{name}: model rejected"))?;
        ensure(!verify(a, bad), || format!("{name}: mutated model accepted"))?;
        checked += 1;
        Ok(())
    };
    for n in 3..=8 {
        let m = sparse_vector_model(n - 2, 0);
        let a = make_sparse(n - 2, 0).unwrap();
        expect(&format!("D{n}"), &a, &ModelFile::Multiplicative(m.clone()), &ModelFile::Multiplicative(mutate_multiplicative(&m)))?;
    }
    for (k, l) in [(1, 1), (2, 1), (1, 2), (3, 1), (2, 2), (1, 3)] {
        let m = sparse_vector_model(k, l);
        let a = make_sparse(k, l).unwrap();
        let name = format!("E({k},{l})");
        expect(&name, &a, &ModelFile::Multiplicative(m.clone()), &ModelFile::Multiplicative(mutate_multiplicative(&m)))?;
    }
    let files = [
        ("D5", "d5-vector"),
        ("E6(5)", "e6-5-complex"),
        ("E6(6)", "e6-6-complex"),
        ("E6(8)", "e6-8-complex"),
        ("E6(9)", "e6-9-real"),
        ("P4", "p4-fuzzy"),
        ("E5(1,1)", "e5-1-1-fuzzy"),
        ("P6", "p6-fuzzy"),
        ("E6(4)", "e6-4-fuzzy"),
        ("E6(7)", "e6-7-fuzzy"),
        ("E8", "e8-fuzzy"),
        ("E5(3)", "e5-3-weak"),
        ("E8", "e8-quantum"),
    ];
    for (alg, file) in files {
        let a = algebra(alg);
        let good = model_file(&a, file);
        let bad = match &good {
            ModelFile::Multiplicative(m) => ModelFile::Multiplicative(mutate_multiplicative(m)),
            ModelFile::Fuzzy { assignment, weak } => ModelFile::Fuzzy { assignment: mutate_fuzzy(assignment), weak: *weak },
            ModelFile::Quantum(q) => ModelFile::Quantum(e8_quantum_with_duplicate(q)),
        };
        expect(file, &a, &good, &bad)?;
    }
    Ok(format!("{checked} models, each mutation rejected"))
}

fn e8_gap() -> Check {
    let e8 = algebra("E8");
    ensure(min_fuzzy_dimension(&e8) == Some(3), || format!("fuzzy dimension {:?}", min_fuzzy_dimension(&e8)))?;
    let bound = verify_fuzzy_dimension_bound(&e8, 2).map_err(|e| e.to_string())?;
    ensure(matches!(bound, DimensionBound::RefutedAnalytically(_)), || format!("bound 2: {bound:?}"))?;
    ensure(is_quantum(&e8), || "E8 not quantum".into())?;
    Ok("fuzzy dimension 3, bound 2 refuted by pigeonhole, quantum".into())
}

fn printed_s2_s4() -> EffectAlgebra {
    let rows: [&[&str]; 6] = [
        &["f", "g", "-", "i", "j", "I"],
        &["g", "-", "-", "j", "I", "-"],
        &["-", "-", "-", "I", "-", "-"],
        &["i", "j", "I", "-", "-", "-"],
        &["j", "I", "-", "-", "-", "-"],
        &["I", "-", "-", "-", "-", "-"],
    ];
    validated(&table_from_tokens(&["e", "f", "g", "h", "i", "j"], &rows).unwrap())
}

fn composition() -> Check {
    let s = |n| make_scale(n).unwrap();
    let canon = |a: &EffectAlgebra| canonical_form(a.table()).table;
    ensure(canon(compose(&s(2), &s(2)).algebra()) == canon(&algebra("P4")), || "S2xS2 is not P4".into())?;
    ensure(canon(compose(&s(2), &s(3)).algebra()) == canon(&algebra("E6(7)")), || "S2xS3 is not E6(7)".into())?;
    ensure(compose(&s(2), &s(4)).algebra().table() == printed_s2_s4().table(), || "S2xS4 table differs".into())?;
    for n in 2..=8 {
        ensure(is_composite(&s(n)).is_none(), || format!("S{n} factored"))?;
    }
    let mut prime6 = 0;
    for a in enumerate(6, false).map_err(|e| e.to_string())?.algebras {
        let name = identify(a.table()).map(|e| e.name.clone()).unwrap_or_default();
        let f = is_composite(&a);
        if name == "E6(7)" {
            ensure(f.is_some(), || "E6(7) not factored".into())?;
        } else {
            ensure(f.is_none(), || format!("{name} factored"))?;
            prime6 += 1;
        }
    }
    ensure(prime6 == 9, || format!("{prime6} non-composite algebras of order 6"))?;

    let mut factors: Vec<EffectAlgebra> = Vec::new();
    for n in 2..=6 {
        factors.extend(enumerate(n, false).map_err(|e| e.to_string())?.algebras);
    }
    let ts = [q(1, 4), q(1, 3), q(1, 2), q(2, 3)];
    let mut trips = 0;
    for a in &factors {
        for b in &factors {
            if a.order() * b.order() > 12 {
                continue;
            }
            let (pa, pb) = (state_space(a), state_space(b));
            if pa.is_empty() || pb.is_empty() {
                continue;
            }
            let c = compose(a, b);
            for s1 in &pa.vertices {
                for s2 in &pb.vertices {
                    for &t in &ts {
                        let p = product_state(&c, s1, s2, t).map_err(|e| e.to_string())?;
                        ensure(p.is_state_on(c.algebra()), || "product is not a state".into())?;
                        ensure(marginal_state(&c, &p, Side::First).as_ref() == Some(s1), || "first marginal".into())?;
                        ensure(marginal_state(&c, &p, Side::Second).as_ref() == Some(s2), || "second marginal".into())?;
                        trips += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{prime6} prime algebras of order 6, {trips} product/marginal round trips"))
}

fn negative_fixtures() -> Check {
    let id = |v: [usize; 3]| v.map(ElementId).to_vec();
    let cases: [(&str, Option<[usize; 3]>); 5] = [
        ("spade4.txt", Some([2, 2, 3])),
        ("spade5a.txt", Some([2, 3, 4])),
        ("spade5b.txt", None),
        ("spade5c.txt", None),
        ("sixths.txt", Some([2, 2, 3])),
    ];
    for (file, triple) in cases {
        let reports = match validate(&table_file(file)) {
            Ok(_) => return Err(format!("{file} accepted")),
            Err(r) => r,
        };
        let assoc: Vec<_> = reports.iter().filter(|r| r.kind == ViolationKind::AssociativityDefinedness).collect();
        ensure(!assoc.is_empty(), || format!("{file}: no associativity witness"))?;
        if let Some(t) = triple {
            ensure(assoc.iter().any(|r| r.witness == id(t)), || format!("{file}: stated triple not reported"))?;
        }
    }
    Ok("4 spade tables and the sixths set rejected with stated triples".into())
}

fn derived_laws() -> Check {
    let mut all: Vec<EffectAlgebra> = Vec::new();
    for n in 2..=6 {
        all.extend(enumerate(n, false).map_err(|e| e.to_string())?.algebras);
    }
    all.push(algebra("E8"));
    all.push(algebra("R9"));
    for a in &all {
        let v = a.check_derived_laws();
        ensure(v.is_empty(), || format!("order {}: {}", a.order(), v[0]))?;
    }
    Ok(format!("{} algebras", all.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("enumeration counts", enumeration_counts),
        ("classification split", quantum_split),
        ("bounds theorem", defined_bounds),
        ("state-space examples", state_examples),
        ("model verification", model_verification),
        ("E8 dimension gap", e8_gap),
        ("composition", composition),
        ("negative fixtures", negative_fixtures),
        ("derived laws", derived_laws),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("[PASS] {}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {}. {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
