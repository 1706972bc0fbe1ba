//! Classifies every algebra up to the given order and marks the ones that
//! cannot be quantum.
//!
//!     cargo run --example classify -- 6

use effect_algebra::classify::classify_with_factors;
use effect_algebra::states::is_quantum;
use effect_algebra::enumerate;

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(6);
    for n in 2..=max {
        for a in enumerate(n, false).expect("order at least 2").algebras {
            let c = classify_with_factors(&a);
            let name = c.family_name.clone().unwrap_or_else(|| "?".into());
            let mut notes = Vec::new();
            if c.is_scale {
                notes.push("scale".to_string());
            }
            if let Some((k, l)) = c.sparse_params {
                notes.push(format!("sparse k={k} l={l}"));
            }
            if c.is_composite == Some(true) {
                notes.push("composite".into());
            }
            if let Some(w) = c.not_quantum_witness {
                notes.push(format!("{}·{} = {}·{}", w.multiplicity, a.label(w.e), w.multiplicity, a.label(w.f)));
            }
            let q = if is_quantum(&a) { "quantum" } else { "not quantum" };
            println!("{name:<9} defined={:<3} {q:<12} {}", c.defined_count, notes.join(", "));
        }
    }
}
