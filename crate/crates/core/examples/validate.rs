//! Validates sum tables given as files, or a built-in non-example when run
//! without arguments.
//!
//!     cargo run --example validate -- data/tables/spade4.txt

use effect_algebra::io::parse;
use effect_algebra::validate;

const SIXTHS: &str = "n=6
a: b - d I
b: - c I -
c: d I - -
d: I - - -
";

fn main() {
    let files: Vec<String> = std::env::args().skip(1).collect();
    let inputs: Vec<(String, String)> = if files.is_empty() {
        vec![("{0, 1/6, 1/3, 2/3, 5/6, 1}".into(), SIXTHS.into())]
    } else {
        files.into_iter().map(|f| (f.clone(), std::fs::read_to_string(&f).expect("readable file"))).collect()
    };
    for (name, text) in inputs {
        let table = match parse(&text) {
            Ok(t) => t,
            Err(e) => {
                println!("{name}: parse error: {e}");
                continue;
            }
        };
        match validate(&table) {
            Ok(a) => println!("{name}: effect algebra of order {} with {} defined sums", a.order(), a.count_defined().0),
            Err(reports) => {
                println!("{name}: rejected");
                for r in reports {
                    let w: Vec<String> = r.witness.iter().map(|&e| table.label(e)).collect();
                    println!("  {r}  [{}]", w.join(", "));
                }
            }
        }
    }
}
