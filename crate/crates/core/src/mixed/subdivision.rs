use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::cell::{fine_cell_dmv, FineMixedCell, MixedCell};
use super::{dual_mixed_volume_z, MinkowskiSequence};
use crate::error::{Error, Result};
use crate::exactnum::{feasible_point, injective_coordinates, sub, Rational, RationalVector};
use crate::geometry::{affine_dim, minkowski_sum, normalized_volume, Polytope};
use crate::symfun::RationalFunction;

/// A list of mixed cells claimed to tile `P_1 + … + P_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedSubdivision {
    pub cells: Vec<MixedCell>,
}

impl MixedSubdivision {
    pub fn new(cells: Vec<MixedCell>) -> Self {
        MixedSubdivision { cells }
    }

    pub fn fine_cells(&self, seq: &MinkowskiSequence) -> Vec<bool> {
        self.cells
            .iter()
            .map(|c| {
                c.points(seq)
                    .is_ok_and(|p| FineMixedCell::from_points(seq.dim(), c.clone(), p).is_ok())
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionReport {
    pub valid: bool,
    pub volume_sum: Rational,
    pub total_volume: Rational,
    /// First offending pair of cells, if any.
    pub overlapping: Option<(usize, usize)>,
    pub reason: Option<String>,
}

/// Projection to coordinates on which the affine hull of `points` is injective.
fn chart(points: &[RationalVector], k: usize) -> Option<Vec<usize>> {
    let base = points.first()?;
    let diffs: Vec<RationalVector> = points.iter().map(|p| sub(p, base)).collect();
    if k == 0 {
        return Some(Vec::new());
    }
    injective_coordinates(&diffs, k)
}

fn project(points: &[RationalVector], coords: &[usize]) -> Vec<RationalVector> {
    points
        .iter()
        .map(|p| coords.iter().map(|&i| p[i].clone()).collect())
        .collect()
}

/// Labelled Cayley points of a cell: `(part, vertex)` pairs and coordinates.
fn cayley_of(seq: &MinkowskiSequence, cell: &MixedCell) -> Vec<((usize, usize), RationalVector)> {
    let r = seq.len();
    let mut out = Vec::new();
    for (i, idx) in cell.parts.iter().enumerate() {
        for &a in idx {
            let mut v = seq.parts()[i].vertices()[a].clone();
            v.extend((0..r).map(|k| {
                if k == i {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            out.push(((i, a), v));
        }
    }
    out
}

/// Whether an affine function is `<= -1` on `A \ B`, `0` on `A ∩ B` and
/// `>= 1` on `B \ A`, which forces the two Cayley cells to meet in a common face.
fn properly_separated(
    a: &[((usize, usize), RationalVector)],
    b: &[((usize, usize), RationalVector)],
) -> bool {
    let n = a.first().map_or(0, |p| p.1.len());
    let only_a: Vec<&RationalVector> = a
        .iter()
        .filter(|p| !b.iter().any(|q| q.0 == p.0))
        .map(|p| &p.1)
        .collect();
    let only_b: Vec<&RationalVector> = b
        .iter()
        .filter(|p| !a.iter().any(|q| q.0 == p.0))
        .map(|p| &p.1)
        .collect();
    let both: Vec<&RationalVector> = a
        .iter()
        .filter(|p| b.iter().any(|q| q.0 == p.0))
        .map(|p| &p.1)
        .collect();
    let slacks = only_a.len() + only_b.len();
    // Variables: a⁺ (n), a⁻ (n), c⁺, c⁻, slacks.
    let width = 2 * n + 2 + slacks;
    let row = |p: &RationalVector, slack: Option<(usize, Rational)>| {
        let mut r = vec![Rational::zero(); width];
        for j in 0..n {
            r[j] = p[j].clone();
            r[n + j] = -p[j].clone();
        }
        r[2 * n] = -Rational::one();
        r[2 * n + 1] = Rational::one();
        if let Some((k, s)) = slack {
            r[2 * n + 2 + k] = s;
        }
        r
    };
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let mut k = 0;
    for p in only_a {
        rows.push(row(p, Some((k, Rational::one()))));
        rhs.push(-Rational::one());
        k += 1;
    }
    for p in only_b {
        rows.push(row(p, Some((k, -Rational::one()))));
        rhs.push(Rational::one());
        k += 1;
    }
    for p in both {
        rows.push(row(p, None));
        rhs.push(Rational::zero());
    }
    feasible_point(&rows, &rhs).is_some()
}

/// Normalised volume of a sum of simplices with independent edge directions,
/// `k! / Π d_i! · |det(edges)|` in the chart; `None` for any other cell.
fn product_volume(pts: &[Vec<RationalVector>], coords: &[usize], k: usize) -> Option<Rational> {
    let mut edges = Vec::new();
    let mut denom = Rational::one();
    for q in pts {
        for p in &q[1..] {
            edges.push(
                coords
                    .iter()
                    .map(|&i| p[i].clone() - &q[0][i])
                    .collect::<RationalVector>(),
            );
        }
        denom *= factorial(q.len() - 1);
    }
    if edges.len() != k {
        return None;
    }
    let det = crate::exactnum::det(&edges).ok()?;
    if det.is_zero() {
        return None;
    }
    Some(factorial(k) / denom * det.abs())
}

fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |a, i| {
        a * Rational::from_integer((i as i64).into())
    })
}

type Labelled = Vec<(Label, RationalVector)>;

/// Offending cell pair, if one is known, with a reason.
type Overlap = (Option<(usize, usize)>, String);

/// Cayley label `(part, vertex)`.
type Label = (usize, usize);

/// Exact check for cells whose Cayley points are simplices: every facet lies
/// on the boundary or is shared by exactly one other cell on the opposite
/// side. With the volume identity this makes the cells a subdivision.
/// `None` when some cell is not a simplex.
fn simplicial_check(
    seq: &MinkowskiSequence,
    cells: &[Labelled],
    k: usize,
) -> Option<std::result::Result<(), Overlap>> {
    let dim = k + seq.len() - 1;
    if cells.iter().any(|c| c.len() != dim + 1) {
        return None;
    }
    let all: Vec<RationalVector> = super::cayley_points(seq)
        .into_iter()
        .map(|c| c.coords)
        .collect();
    let coords = chart(&all, dim)?;
    let all = project(&all, &coords);
    let proj: Vec<Vec<((usize, usize), RationalVector)>> = cells
        .iter()
        .map(|c| {
            c.iter()
                .map(|(l, v)| (*l, coords.iter().map(|&i| v[i].clone()).collect()))
                .collect()
        })
        .collect();
    let mut facets: BTreeMap<Vec<Label>, Vec<Label>> = BTreeMap::new();
    for (ci, cell) in proj.iter().enumerate() {
        for skip in 0..cell.len() {
            let mut key: Vec<(usize, usize)> = cell
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, p)| p.0)
                .collect();
            key.sort_unstable();
            facets.entry(key).or_default().push((ci, skip));
        }
    }
    // Barycentric functionals: row `i` of the inverse of `[v_j; 1]` is the
    // affine function equal to 1 at vertex `i` and 0 on the opposite facet.
    let mut bary = Vec::with_capacity(proj.len());
    for (ci, cell) in proj.iter().enumerate() {
        let cols: Vec<RationalVector> = cell
            .iter()
            .map(|(_, v)| {
                let mut c = v.clone();
                c.push(Rational::one());
                c
            })
            .collect();
        match crate::exactnum::inverse(&crate::exactnum::transpose(&cols)) {
            Some(inv) => bary.push(inv),
            None => return Some(Err((None, format!("cell {ci} is not full-dimensional")))),
        }
    }
    let eval = |f: &RationalVector, q: &RationalVector| -> Rational {
        q.iter().zip(f).map(|(x, c)| x * c).sum::<Rational>() + &f[dim]
    };
    for (key, owners) in &facets {
        let (c0, s0) = owners[0];
        let lambda = &bary[c0][s0];
        match owners.as_slice() {
            [_] => {
                if all.iter().any(|q| eval(lambda, q) < Rational::zero()) {
                    return Some(Err((
                        None,
                        format!(
                            "cell {c0} has an interior facet {key:?} shared with no other cell"
                        ),
                    )));
                }
            }
            [_, (c1, s1)] => {
                if eval(lambda, &proj[*c1][*s1].1) >= Rational::zero() {
                    return Some(Err((
                        Some((c0.min(*c1), c0.max(*c1))),
                        format!("cells {c0} and {c1} overlap across a facet"),
                    )));
                }
            }
            [_, (c1, _), ..] => {
                return Some(Err((
                    Some((c0.min(*c1), c0.max(*c1))),
                    format!("facet {key:?} lies in more than two cells"),
                )));
            }
            [] => unreachable!("facet entries are nonempty"),
        }
    }
    Some(Ok(()))
}

pub fn validation_report(
    seq: &MinkowskiSequence,
    sub: &MixedSubdivision,
) -> Result<SubdivisionReport> {
    let total = seq.minkowski_total()?;
    let k = total.affine_dim();
    let coords = chart(total.vertices(), k)
        .ok_or_else(|| Error::InvalidTiling("no coordinate chart for the sum".into()))?;
    let vol = |pts: &[RationalVector]| -> Result<Rational> {
        Ok(normalized_volume(&Polytope::new(k, project(pts, &coords))?))
    };
    let total_volume = vol(total.vertices())?;
    let mut report = SubdivisionReport {
        valid: false,
        volume_sum: Rational::zero(),
        total_volume,
        overlapping: None,
        reason: None,
    };
    let mut cayley = Vec::with_capacity(sub.cells.len());
    for (n, cell) in sub.cells.iter().enumerate() {
        let pts = cell.points(seq)?;
        if let Some(v) = product_volume(&pts, &coords, k) {
            report.volume_sum += v;
            cayley.push(cayley_of(seq, cell));
            continue;
        }
        let qs = pts
            .into_iter()
            .map(|v| Polytope::new(seq.dim(), v))
            .collect::<Result<Vec<_>>>()?;
        let sum = minkowski_sum(&qs, &vec![Rational::one(); qs.len()])?;
        if affine_dim(sum.vertices()) != k {
            report.reason = Some(format!("cell {n} is lower-dimensional"));
            return Ok(report);
        }
        report.volume_sum += vol(sum.vertices())?;
        cayley.push(cayley_of(seq, cell));
    }
    if report.volume_sum != report.total_volume {
        report.reason = Some(format!(
            "cell volumes sum to {} but the sum has volume {}",
            report.volume_sum, report.total_volume
        ));
        return Ok(report);
    }
    match simplicial_check(seq, &cayley, k) {
        Some(Ok(())) => {
            report.valid = true;
            return Ok(report);
        }
        Some(Err((pair, reason))) => {
            report.overlapping = pair;
            report.reason = Some(reason);
            return Ok(report);
        }
        None => {}
    }
    for i in 0..cayley.len() {
        for j in i + 1..cayley.len() {
            if !properly_separated(&cayley[i], &cayley[j]) {
                report.overlapping = Some((i, j));
                report.reason = Some(format!("cells {i} and {j} do not meet in a common face"));
                return Ok(report);
            }
        }
    }
    report.valid = true;
    Ok(report)
}

/// Errors with `InvalidTiling` unless the cells form a mixed subdivision.
pub fn validate_mixed_subdivision(seq: &MinkowskiSequence, sub: &MixedSubdivision) -> Result<()> {
    let r = validation_report(seq, sub)?;
    if r.valid {
        Ok(())
    } else {
        Err(Error::InvalidTiling(r.reason.unwrap_or_default()))
    }
}

/// `m_P(x, z)` next to the sum of its cell contributions.
pub fn subdivision_sides(
    seq: &MinkowskiSequence,
    sub: &MixedSubdivision,
) -> Result<(RationalFunction, RationalFunction)> {
    let whole = dual_mixed_volume_z(seq)?;
    let mut sum = RationalFunction::zero(whole.vars().clone());
    for cell in &sub.cells {
        let pts = cell.points(seq)?;
        let piece = match FineMixedCell::from_points(seq.dim(), cell.clone(), pts) {
            Ok(fc) => fine_cell_dmv(&fc, true)?,
            Err(Error::SingularCellGeometry(_)) => {
                let cs = cell.sequence(seq)?;
                if cs.minkowski_total()?.is_full_dimensional() {
                    dual_mixed_volume_z(&cs)?
                } else {
                    RationalFunction::zero(whole.vars().clone())
                }
            }
            Err(e) => return Err(e),
        };
        sum = sum.add(&piece)?;
    }
    Ok((whole, sum))
}

/// Exact check that `m_P(x, z)` is the sum over the cells.
pub fn verify_subdivision_additivity(
    seq: &MinkowskiSequence,
    sub: &MixedSubdivision,
) -> Result<bool> {
    let (whole, sum) = subdivision_sides(seq, sub)?;
    whole.equals(&sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig2() -> MinkowskiSequence {
        let p1 = Polytope::from_i64(&[&[1, 0], &[0, 2], &[-1, -1]]).unwrap();
        let p2 = Polytope::from_i64(&[&[0, 0], &[2, 0], &[0, 2]]).unwrap();
        MinkowskiSequence::new(vec![p1, p2]).unwrap()
    }

    #[test]
    fn trivial_subdivision_of_two_segments() {
        let s1 = Polytope::from_i64(&[&[0, 0], &[1, 0]]).unwrap();
        let s2 = Polytope::from_i64(&[&[0, 0], &[0, 1]]).unwrap();
        let seq = MinkowskiSequence::new(vec![s1, s2]).unwrap();
        let sub = MixedSubdivision::new(vec![MixedCell::new(vec![vec![0, 1], vec![0, 1]])]);
        validate_mixed_subdivision(&seq, &sub).unwrap();
        assert!(verify_subdivision_additivity(&seq, &sub).unwrap());
    }

    #[test]
    fn overlapping_cells_are_rejected() {
        let seq = fig2();
        // two copies of the same full cell double the volume
        let c = MixedCell::new(vec![vec![0, 1, 2], vec![0]]);
        let sub = MixedSubdivision::new(vec![c.clone(), c]);
        let r = validation_report(&seq, &sub).unwrap();
        assert!(!r.valid);
        assert!(validate_mixed_subdivision(&seq, &sub).is_err());
    }
}
