//! Renders a table as text, LaTeX and JSON and parses each back.
//!
//!     cargo run --example render -- E6(9)

use effect_algebra::io::{parse, render, Format, LATEX_PREAMBLE};
use effect_algebra::lookup;

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "E6(9)".into());
    let t = lookup(&name).unwrap_or_else(|| panic!("unknown algebra {name}")).algebra.table();
    for f in [Format::Ascii, Format::Json] {
        let text = render(t, f);
        print!("{text}");
        assert_eq!(&parse(&text).unwrap(), t);
    }
    let latex = render(t, Format::Latex);
    assert!(latex.starts_with(LATEX_PREAMBLE));
    print!("{latex}");
}
