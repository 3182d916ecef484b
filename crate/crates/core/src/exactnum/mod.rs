//! Exact rational scalars, vectors and matrices.

mod linalg;
mod simplex;

pub use linalg::{
    det, injective_coordinates, inverse, nullspace, rank, solve_linear, LinearSolution,
};
pub use simplex::{feasible_point, is_extreme_point, maximize, LpOutcome};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;
pub type RationalVector = Vec<Rational>;
pub type RationalMatrix = Vec<RationalVector>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rvec(entries: &[i64]) -> RationalVector {
    entries.iter().map(|&e| rat(e)).collect()
}

pub fn rmat(rows: &[&[i64]]) -> RationalMatrix {
    rows.iter().map(|r| rvec(r)).collect()
}

/// Parses `"p"`, `"p/q"` or a terminating decimal such as `"-0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let mag: BigInt = digits.parse().map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let v = Rational::new(mag, den);
        return Ok(if neg { -v } else { v });
    }
    let p: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(p))
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn format_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(","))
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Rational], b: &[Rational]) -> RationalVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> RationalVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rational], s: &Rational) -> RationalVector {
    a.iter().map(|x| x * s).collect()
}

pub fn neg(a: &[Rational]) -> RationalVector {
    a.iter().map(|x| -x).collect()
}

pub fn zero_vector(d: usize) -> RationalVector {
    vec![Rational::zero(); d]
}

pub fn unit_vector(d: usize, i: usize) -> RationalVector {
    let mut v = zero_vector(d);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vector(a: &[Rational]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn transpose(m: &[RationalVector]) -> RationalMatrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Scales to the primitive integer vector with the same direction.
///
/// Zero vectors are returned unchanged.
pub fn primitive_integer(v: &[Rational]) -> RationalVector {
    let (_, p) = primitive_with_scale(v);
    p
}

/// Returns `(s, p)` with `p` primitive integer, `s > 0` and `v = s * p`.
pub fn primitive_with_scale(v: &[Rational]) -> (Rational, RationalVector) {
    if is_zero_vector(v) {
        return (Rational::one(), v.to_vec());
    }
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let p: RationalVector = ints
        .iter()
        .map(|x| Rational::from_integer(x / &g))
        .collect();
    (Rational::new(g, lcm), p)
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

/// Product of two matrices, `a` is `m x k` and `b` is `k x n`.
pub fn mat_mul(a: &[RationalVector], b: &[RationalVector]) -> RationalMatrix {
    let bt = transpose(b);
    a.iter()
        .map(|row| bt.iter().map(|col| dot(row, col)).collect())
        .collect()
}

pub fn mat_vec(a: &[RationalVector], x: &[Rational]) -> RationalVector {
    a.iter().map(|row| dot(row, x)).collect()
}
