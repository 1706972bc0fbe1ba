//! Exact rationals, their string form, and Gaussian elimination.

use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Rational = Ratio<i64>;

pub fn q(p: i64, d: i64) -> Rational {
    Rational::new(p, d)
}

/// `"p/q"`, or `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(pub String);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not a rational number: {:?}", self.0)
    }
}

impl std::error::Error for ParseRationalError {}

/// Accepts `"p/q"`, integers and finite decimals such as `"0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    if let Some((a, b)) = t.split_once('/') {
        let p: i64 = a.trim().parse().map_err(|_| err())?;
        let d: i64 = b.trim().parse().map_err(|_| err())?;
        if d == 0 {
            return Err(err());
        }
        return Ok(Rational::new(p, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || frac.len() > 15 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let neg = int.starts_with('-');
        let whole: i64 = if int.is_empty() || int == "-" { 0 } else { int.parse().map_err(|_| err())? };
        let scale = 10i64.pow(frac.len() as u32);
        let f: i64 = frac.parse().map_err(|_| err())?;
        let mag = whole.abs().checked_mul(scale).and_then(|w| w.checked_add(f)).ok_or_else(err)?;
        return Ok(Rational::new(if neg { -mag } else { mag }, scale));
    }
    t.parse::<i64>().map(Rational::from_integer).map_err(|_| err())
}

/// Serde adapter writing rationals as strings.
pub mod as_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod vec_as_string {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = v.iter().map(format_rational).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter().map(|s| parse_rational(s).map_err(serde::de::Error::custom)).collect()
    }
}

/// Serializes a list of rational vectors as nested string arrays.
pub fn serialize_vectors<S: Serializer>(v: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
    let strings: Vec<Vec<String>> = v.iter().map(|x| x.iter().map(format_rational).collect()).collect();
    strings.serialize(s)
}

/// Reduced row echelon form of an augmented system `[A | b]`.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Nonzero rows, each of length `cols + 1`.
    pub rows: Vec<Vec<Rational>>,
    /// Pivot column of each row.
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl Echelon {
    /// Row-reduces `rows` (each `cols` coefficients followed by the right-hand
    /// side). Returns `None` when the system is inconsistent.
    pub fn reduce(mut rows: Vec<Vec<Rational>>, cols: usize) -> Option<Echelon> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
            rows.swap(r, p);
            let inv = rows[r][c].recip();
            for x in rows[r].iter_mut() {
                *x *= inv;
            }
            for i in 0..rows.len() {
                if i != r && !rows[i][c].is_zero() {
                    let factor = rows[i][c];
                    for k in c..=cols {
                        let delta = factor * rows[r][k];
                        rows[i][k] -= delta;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if rows[r..].iter().any(|row| !row[cols].is_zero()) {
            return None;
        }
        rows.truncate(r);
        Some(Echelon { rows, pivots, cols })
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.cols).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// The solution set as `x = base + Σ t_k · directions[k]`, one direction
    /// per free column.
    pub fn parametrize(&self) -> (Vec<Rational>, Vec<Vec<Rational>>) {
        let mut base = vec![Rational::zero(); self.cols];
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            base[p] = row[self.cols];
        }
        let directions = self
            .free_columns()
            .into_iter()
            .map(|f| {
                let mut d = vec![Rational::zero(); self.cols];
                d[f] = Rational::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    d[p] = -row[f];
                }
                d
            })
            .collect();
        (base, directions)
    }
}

/// Unique solution of a square system, if the matrix is nonsingular.
pub fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = b.len();
    let rows: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| row.iter().copied().chain(std::iter::once(rhs)).collect())
        .collect();
    let e = Echelon::reduce(rows, n)?;
    (e.rank() == n).then(|| e.parametrize().0)
}

/// Rank of a set of vectors.
pub fn rank(vectors: &[Vec<Rational>]) -> usize {
    let Some(first) = vectors.first() else { return 0 };
    let cols = first.len();
    let rows = vectors.iter().map(|v| v.iter().copied().chain(std::iter::once(Rational::zero())).collect()).collect();
    Echelon::reduce(rows, cols).map_or(0, |e| e.rank())
}

pub(crate) fn clamp_check(r: &Rational) -> bool {
    !r.is_negative() && *r <= Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("2/6").unwrap(), q(1, 3));
        assert_eq!(parse_rational("-3").unwrap(), q(-3, 1));
        assert_eq!(parse_rational("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_rational("-.5").unwrap(), q(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&q(4, 6)), "2/3");
        assert_eq!(format_rational(&q(4, 2)), "2");
    }

    #[test]
    fn elimination() {
        // x + y = 1, y + z = 1
        let rows = vec![vec![q(1, 1), q(1, 1), q(0, 1), q(1, 1)], vec![q(0, 1), q(1, 1), q(1, 1), q(1, 1)]];
        let e = Echelon::reduce(rows, 3).unwrap();
        assert_eq!(e.rank(), 2);
        let (base, dirs) = e.parametrize();
        assert_eq!(dirs.len(), 1);
        for t in [q(0, 1), q(1, 3), q(5, 2)] {
            let x: Vec<Rational> = (0..3).map(|i| base[i] + t * dirs[0][i]).collect();
            assert_eq!(x[0] + x[1], q(1, 1));
            assert_eq!(x[1] + x[2], q(1, 1));
        }
        let bad = vec![vec![q(1, 1), q(1, 1)], vec![q(2, 1), q(3, 1)]];
        assert!(Echelon::reduce(bad, 1).is_none());
    }

    #[test]
    fn square_solve() {
        let a = vec![vec![q(2, 1), q(1, 1)], vec![q(1, 1), q(3, 1)]];
        assert_eq!(solve_square(&a, &[q(3, 1), q(4, 1)]).unwrap(), vec![q(1, 1), q(1, 1)]);
        let singular = vec![vec![q(1, 1), q(1, 1)], vec![q(2, 1), q(2, 1)]];
        assert!(solve_square(&singular, &[q(1, 1), q(2, 1)]).is_none());
    }
}
