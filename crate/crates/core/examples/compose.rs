//! Composite algebras, their factorization and product states.
//!
//!     cargo run --example compose

use effect_algebra::io::{render, Format};
use effect_algebra::rational::q;
use effect_algebra::states::{marginal_state, product_state};
use effect_algebra::catalog::identify;
use effect_algebra::{compose, is_composite, make_scale, state_space, Side};

fn main() {
    for (m, n) in [(2, 2), (2, 3), (2, 4), (3, 3)] {
        let c = compose(&make_scale(m).unwrap(), &make_scale(n).unwrap());
        let a = c.algebra();
        println!("S{m} x S{n}: order {}, {}", a.order(), identify(a.table()).map_or("not in the catalog", |e| e.name.as_str()));
        print!("{}", render(a.table(), Format::Ascii));
        let (x, y) = is_composite(a).expect("a product factors");
        println!("factors found: orders {} and {}", x.order(), y.order());

        let s1 = &state_space(c.factor(Side::First)).vertices[0];
        let s2 = &state_space(c.factor(Side::Second)).vertices[0];
        let p = product_state(&c, s1, s2, q(1, 3)).unwrap();
        assert_eq!(marginal_state(&c, &p, Side::First).as_ref(), Some(s1));
        assert_eq!(marginal_state(&c, &p, Side::Second).as_ref(), Some(s2));
        println!("product state at t=1/3 recovers both marginals\n");
    }
}
