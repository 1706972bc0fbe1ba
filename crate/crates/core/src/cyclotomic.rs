//! Exact arithmetic in `Q(i, ω)` with `ω = e^{2πi/3}`.
//!
//! Elements are written `a + b·i + c·ω + d·iω` with rational coefficients.
//! Writing `x = p + qω` with Gaussian rationals `p, q` and using
//! `ω² = −1 − ω`, a product is `(p₁p₂ − q₁q₂) + (p₁q₂ + q₁p₂ − q₁q₂)ω`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::rational::{format_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclotomic {
    /// Coefficients of `1, i, ω, iω`.
    pub coeffs: [Rational; 4],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Gauss(Rational, Rational);

impl Gauss {
    fn mul(self, o: Gauss) -> Gauss {
        Gauss(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
    fn add(self, o: Gauss) -> Gauss {
        Gauss(self.0 + o.0, self.1 + o.1)
    }
    fn sub(self, o: Gauss) -> Gauss {
        Gauss(self.0 - o.0, self.1 - o.1)
    }
}

impl Cyclotomic {
    pub fn new(one: Rational, i: Rational, omega: Rational, i_omega: Rational) -> Cyclotomic {
        Cyclotomic { coeffs: [one, i, omega, i_omega] }
    }

    pub fn rational(r: Rational) -> Cyclotomic {
        Cyclotomic::new(r, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn integer(k: i64) -> Cyclotomic {
        Cyclotomic::rational(Rational::from_integer(k))
    }

    pub fn i() -> Cyclotomic {
        Cyclotomic::new(Rational::zero(), Rational::one(), Rational::zero(), Rational::zero())
    }

    pub fn omega() -> Cyclotomic {
        Cyclotomic::new(Rational::zero(), Rational::zero(), Rational::one(), Rational::zero())
    }

    fn split(self) -> (Gauss, Gauss) {
        let [a, b, c, d] = self.coeffs;
        (Gauss(a, b), Gauss(c, d))
    }

    fn join(p: Gauss, q: Gauss) -> Cyclotomic {
        Cyclotomic::new(p.0, p.1, q.0, q.1)
    }

    pub fn pow(self, k: u32) -> Cyclotomic {
        (0..k).fold(Cyclotomic::one(), |acc, _| acc * self)
    }

    /// Floating-point value, for display.
    pub fn to_complex(self) -> (f64, f64) {
        let f = |r: Rational| *r.numer() as f64 / *r.denom() as f64;
        let [a, b, c, d] = self.coeffs;
        let (wr, wi) = (-0.5, 3f64.sqrt() / 2.0);
        // c·ω + d·iω = (c + d i)(wr + wi i)
        (f(a) + f(c) * wr - f(d) * wi, f(b) + f(c) * wi + f(d) * wr)
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::integer(0)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Cyclotomic::integer(1)
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, o: Cyclotomic) -> Cyclotomic {
        let mut c = self.coeffs;
        for (x, y) in c.iter_mut().zip(o.coeffs) {
            *x += y;
        }
        Cyclotomic { coeffs: c }
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, o: Cyclotomic) -> Cyclotomic {
        self + -o
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { coeffs: self.coeffs.map(|x| -x) }
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, o: Cyclotomic) -> Cyclotomic {
        let (p1, q1) = self.split();
        let (p2, q2) = o.split();
        let qq = q1.mul(q2);
        Cyclotomic::join(p1.mul(p2).sub(qq), p1.mul(q2).add(q1.mul(p2)).sub(qq))
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "i", "ω", "iω"];
        let mut parts = Vec::new();
        for (c, name) in self.coeffs.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            parts.push(match (name, c == &Rational::one()) {
                ("", _) => format_rational(c),
                (_, true) => name.to_string(),
                _ => format!("{}{}", format_rational(c), name),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let [a, b, c, d] = self.coeffs;
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("re", &format_rational(&a))?;
        m.serialize_entry("im", &format_rational(&b))?;
        m.serialize_entry("omega", &format_rational(&c))?;
        if !d.is_zero() {
            m.serialize_entry("omega_im", &format_rational(&d))?;
        }
        m.end()
    }
}
