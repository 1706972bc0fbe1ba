//! Lists the named algebras and identifies tables up to isomorphism.
//!
//!     cargo run --example catalog

use effect_algebra::catalog::identify;
use effect_algebra::{apply_permutation, catalog, ElementId};

fn main() {
    for e in catalog() {
        let x = &e.expected;
        println!(
            "{:<8} n={} quantum={:<5} {} {}",
            e.name,
            e.order(),
            x.quantum,
            e.description,
            if e.aliases.is_empty() { String::new() } else { format!("[{}]", e.aliases.join(", ")) }
        );
    }
    let e = &catalog().iter().find(|e| e.name == "E6(8)").unwrap().algebra;
    let swapped: Vec<ElementId> = [0, 1, 5, 4, 3, 2].map(ElementId).to_vec();
    let t = apply_permutation(e.table(), &swapped).unwrap();
    println!("a relabeled copy of E6(8) is identified as {}", identify(&t).unwrap().name);
}
