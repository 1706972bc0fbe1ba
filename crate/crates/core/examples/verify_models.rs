//! Checks model files against catalog algebras: vector models, fuzzy
//! assignments and quantum matrices.
//!
//!     cargo run --example verify_models

use effect_algebra::io::{parse_model, ModelFile};
use effect_algebra::lookup;
use effect_algebra::rational::format_rational;
use effect_algebra::models::{DimensionBound, verify_fuzzy, verify_fuzzy_dimension_bound, verify_multiplicative, verify_quantum_matrices};

const MODELS: [(&str, &str); 8] = [
    ("D5", "d5-vector"),
    ("E6(5)", "e6-5-complex"),
    ("E6(9)", "e6-9-real"),
    ("P6", "p6-fuzzy"),
    ("E6(7)", "e6-7-fuzzy"),
    ("E5(3)", "e5-3-weak"),
    ("E8", "e8-fuzzy"),
    ("E8", "e8-quantum"),
];

fn main() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data/models");
    for (name, file) in MODELS {
        let a = &lookup(name).unwrap().algebra;
        let text = std::fs::read_to_string(format!("{dir}/{file}.json")).unwrap();
        let outcome = match parse_model(a.table(), &text).unwrap() {
            ModelFile::Multiplicative(m) => verify_multiplicative(a, &m),
            ModelFile::Fuzzy { assignment, weak } => verify_fuzzy(a, &assignment, weak),
            ModelFile::Quantum(q) => verify_quantum_matrices(a, &q, 1e-9),
        }
        .unwrap();
        match outcome.counterexample() {
            None => println!("{name:<7} {file:<14} holds"),
            Some(c) => println!("{name:<7} {file:<14} fails: {c}"),
        }
    }
    let e8 = &lookup("E8").unwrap().algebra;
    for m in 1..=3 {
        match verify_fuzzy_dimension_bound(e8, m).unwrap() {
            DimensionBound::Found(f) => {
                let rows: Vec<String> = e8.elements().map(|e| format!("{}={:?}", e8.label(e), f.vector(e).iter().map(format_rational).collect::<Vec<_>>())).collect();
                println!("E8 in [0,1]^{m}: {}", rows.join(" "));
            }
            other => println!("E8 in [0,1]^{m}: {other:?}"),
        }
    }
}
