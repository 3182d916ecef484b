use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Rational, RationalMatrix, RationalVector};
use crate::error::{Error, Result};

/// Outcome of an exact linear solve.
#[derive(Clone, Debug, PartialEq)]
pub enum LinearSolution {
    Unique(RationalVector),
    NoSolution,
    Underdetermined,
}

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// Each row is first scaled to integers, so the elimination runs on `BigInt`.
pub fn det(m: &[RationalVector]) -> Result<Rational> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension(
            "determinant of a non-square matrix".into(),
        ));
    }
    if n == 0 {
        return Ok(Rational::one());
    }
    let mut denom = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for row in m {
        let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        a.push(row.iter().map(|x| (x * &l).to_integer()).collect());
        denom *= l;
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(Rational::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(Rational::new(sign * &a[n - 1][n - 1], denom))
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(a: &mut [RationalVector], cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..a[i].len() {
                    let t = &a[r][j] * &f;
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[RationalVector]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut a = m.to_vec();
    rref(&mut a, cols).len()
}

/// Inverse of a square matrix; `None` if singular.
pub fn inverse(m: &[RationalVector]) -> Option<RationalMatrix> {
    let n = m.len();
    let mut a: Vec<RationalVector> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    if rref(&mut a, n).len() < n {
        return None;
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of `{x : m x = 0}`; `cols` is the number of unknowns.
pub fn nullspace(m: &[RationalVector], cols: usize) -> Vec<RationalVector> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); cols];
            x[f] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = -a[r][f].clone();
            }
            x
        })
        .collect()
}

/// Solves `a x = b` exactly.
pub fn solve_linear(a: &[RationalVector], b: &[Rational]) -> Result<LinearSolution> {
    if a.len() != b.len() {
        return Err(Error::Dimension(format!(
            "system has {} rows but right-hand side has {} entries",
            a.len(),
            b.len()
        )));
    }
    let cols = a.first().map_or(0, Vec::len);
    if a.iter().any(|r| r.len() != cols) {
        return Err(Error::Dimension("ragged coefficient matrix".into()));
    }
    let mut aug: RationalMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return Ok(LinearSolution::NoSolution);
    }
    if pivots.len() < cols {
        return Ok(LinearSolution::Underdetermined);
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][cols].clone();
    }
    Ok(LinearSolution::Unique(x))
}

/// Picks `k` coordinates on which the span of `vectors` projects injectively.
///
/// Requires `rank(vectors) == k`; returns `None` otherwise.
pub fn injective_coordinates(vectors: &[RationalVector], k: usize) -> Option<Vec<usize>> {
    let d = vectors.first().map_or(0, Vec::len);
    let mut chosen = Vec::new();
    let mut current = 0;
    for c in 0..d {
        if current == k {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(c);
        let proj: RationalMatrix = vectors
            .iter()
            .map(|v| trial.iter().map(|&i| v[i].clone()).collect())
            .collect();
        let r = rank(&proj);
        if r > current {
            chosen = trial;
            current = r;
        }
    }
    (current == k).then_some(chosen)
}
