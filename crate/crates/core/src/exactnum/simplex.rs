//! Two-phase primal simplex over exact rationals with Bland's rule.
//!
//! Problems are in equality form: maximize `c.x` subject to `A x = b`, `x >= 0`.

use num_traits::{One, Signed, Zero};

use super::{Rational, RationalVector};

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: RationalVector, value: Rational },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<RationalVector>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= p * &f;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations for objective `cost` over columns `< allowed`.
    /// Returns false when unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: usize) -> bool {
        loop {
            let mut entering = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut rc = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                        rc -= &cost[b] * &self.rows[i][j];
                    }
                }
                if rc.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(j) = entering else { return true };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return false,
                Some((i, _)) => self.pivot(i, j),
            }
        }
    }
}

/// Maximizes `c.x` subject to `a x = b`, `x >= 0`.
pub fn maximize(c: &[Rational], a: &[RationalVector], b: &[Rational]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    let width = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut r: RationalVector = row
            .iter()
            .map(|x| if flip { -x } else { x.clone() })
            .collect();
        r.extend((0..m).map(|k| {
            if k == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        }));
        r.push(if flip { -bi } else { bi.clone() });
        rows.push(r);
    }
    let mut t = Tableau {
        rows,
        basis: (n..n + m).collect(),
        width,
    };

    // Phase I: drive the artificial variables to zero.
    let mut phase1 = vec![Rational::zero(); width];
    for x in phase1.iter_mut().skip(n) {
        *x = -Rational::one();
    }
    t.optimize(&phase1, width);
    let infeas: Rational = t
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &bv)| bv >= n)
        .map(|(i, _)| t.rhs(i).clone())
        .sum();
    if infeas.is_positive() {
        return LpOutcome::Infeasible;
    }
    // Pivot remaining zero-level artificials out, dropping redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }

    let mut cost = c.to_vec();
    cost.resize(width, Rational::zero());
    if !t.optimize(&cost, n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &bv) in t.basis.iter().enumerate() {
        x[bv] = t.rhs(i).clone();
    }
    let value = super::dot(c, &x);
    LpOutcome::Optimal { x, value }
}

/// Some `x >= 0` with `a x = b`, if one exists.
pub fn feasible_point(a: &[RationalVector], b: &[Rational]) -> Option<RationalVector> {
    let n = a.first().map_or(0, Vec::len);
    match maximize(&vec![Rational::zero(); n], a, b) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

/// True iff `p` is not a convex combination of `others`.
pub fn is_extreme_point(p: &[Rational], others: &[RationalVector]) -> bool {
    if others.is_empty() {
        return true;
    }
    let d = p.len();
    let k = others.len();
    let mut a: Vec<RationalVector> = (0..d)
        .map(|i| others.iter().map(|o| o[i].clone()).collect())
        .collect();
    a.push(vec![Rational::one(); k]);
    let mut b = p.to_vec();
    b.push(Rational::one());
    feasible_point(&a, &b).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, ratio, rvec};

    #[test]
    fn small_lp() {
        // max x + y, x + 2y + s1 = 4, 3x + y + s2 = 6
        let a = vec![rvec(&[1, 2, 1, 0]), rvec(&[3, 1, 0, 1])];
        let out = maximize(&rvec(&[1, 1, 0, 0]), &a, &rvec(&[4, 6]));
        match out {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, ratio(14, 5)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = vec![rvec(&[1, 1])];
        assert_eq!(
            maximize(&rvec(&[0, 0]), &a, &rvec(&[-1])),
            LpOutcome::Infeasible
        );
        let a = vec![rvec(&[1, -1])];
        assert_eq!(
            maximize(&rvec(&[1, 0]), &a, &rvec(&[0])),
            LpOutcome::Unbounded
        );
    }

    #[test]
    fn redundant_rows_are_handled() {
        let a = vec![rvec(&[1, 1]), rvec(&[2, 2])];
        let x = feasible_point(&a, &rvec(&[1, 2])).unwrap();
        assert_eq!(&x[0] + &x[1], rat(1));
    }

    #[test]
    fn extreme_point_examples() {
        assert!(is_extreme_point(
            &rvec(&[0, 0]),
            &[rvec(&[1, 0]), rvec(&[0, 1])]
        ));
        assert!(!is_extreme_point(
            &[ratio(1, 2), ratio(1, 2)],
            &[rvec(&[0, 0]), rvec(&[1, 1])]
        ));
        let quad_rest = [rvec(&[1, -1]), rvec(&[2, 1]), rvec(&[3, -1])];
        assert!(is_extreme_point(&rvec(&[1, 1]), &quad_rest));
        assert!(is_extreme_point(&rvec(&[5]), &[]));
    }
}
