//! Enumerates every effect algebra of the given orders and prints counts,
//! search statistics and (for small orders) the tables themselves.
//!
//!     cargo run --release --example enumerate -- 2 8

use std::time::Instant;

use effect_algebra::enumerate;

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (lo, hi) = match args.as_slice() {
        [] => (2, 6),
        [n] => (*n, *n),
        [a, b, ..] => (*a, *b),
    };
    for n in lo..=hi {
        let start = Instant::now();
        let r = enumerate(n, n > 5).expect("order at least 2");
        println!("n={n}: {} algebras in {:.2?}", r.count, start.elapsed());
        println!("  nodes {}  complete {}  pruned {:?}", r.stats.nodes, r.stats.complete_tables, r.stats.pruned);
        for a in &r.algebras {
            let (def, _) = a.count_defined();
            println!("  defined sums {def}:");
            for e in a.nontrivial() {
                let row: Vec<String> = a
                    .nontrivial()
                    .map(|f| a.sum(e, f).map(|s| a.label(s)).unwrap_or_else(|| "-".into()))
                    .collect();
                println!("    {}: {}", a.label(e), row.join(" "));
            }
        }
    }
}
