//! State spaces of catalog algebras in exact arithmetic.
//!
//!     cargo run --example states -- E6(5) P6 R9

use effect_algebra::rational::format_rational;
use effect_algebra::{analyze, catalog, lookup};

fn main() {
    let names: Vec<String> = std::env::args().skip(1).collect();
    let entries: Vec<_> = if names.is_empty() {
        catalog().iter().collect()
    } else {
        names.iter().map(|n| lookup(n).unwrap_or_else(|| panic!("unknown algebra {n}"))).collect()
    };
    for e in entries {
        let a = &e.algebra;
        let s = analyze(a);
        let p = &s.polytope;
        print!("{:<8} ", e.name);
        if p.is_empty() {
            println!("no states");
            continue;
        }
        println!(
            "dimension {} with {} vertices, separating {}, order-determining {}, fuzzy dimension {:?}",
            p.dimension,
            p.vertices.len(),
            s.is_separating,
            s.is_order_determining,
            s.min_fuzzy_dimension
        );
        for v in p.vertices.iter().take(8) {
            let vals: Vec<String> = a.nontrivial().map(|x| format!("{}={}", a.label(x), format_rational(&v.value(x)))).collect();
            println!("         {}", vals.join(" "));
        }
    }
}
