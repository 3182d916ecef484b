use num_traits::{One, Signed, Zero};

use super::{support_form, x_vars, xz_vars, MinkowskiSequence};
use crate::error::{Error, Result};
use crate::exactnum::{
    det, dot, rank, solve_linear, sub, LinearSolution, Rational, RationalVector,
};
use crate::geometry::{affine_dim, Polytope};
use crate::symfun::{LinearForm, RationalFunction};

/// One vertex subset per part, indexing the part's sorted vertex list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MixedCell {
    pub parts: Vec<Vec<usize>>,
}

impl MixedCell {
    pub fn new(parts: Vec<Vec<usize>>) -> Self {
        let parts = parts
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p.dedup();
                p
            })
            .collect();
        MixedCell { parts }
    }

    /// The cell's vertex lists, checked against the sequence.
    pub fn points(&self, seq: &MinkowskiSequence) -> Result<Vec<Vec<RationalVector>>> {
        if self.parts.len() != seq.len() {
            return Err(Error::InvalidInput(format!(
                "cell has {} parts, sequence has {}",
                self.parts.len(),
                seq.len()
            )));
        }
        self.parts
            .iter()
            .zip(seq.parts())
            .map(|(idx, p)| {
                if idx.is_empty() {
                    return Err(Error::InvalidInput("empty cell part".into()));
                }
                idx.iter()
                    .map(|&i| {
                        p.vertices().get(i).cloned().ok_or_else(|| {
                            Error::InvalidInput(format!("vertex index {i} out of range"))
                        })
                    })
                    .collect()
            })
            .collect()
    }

    /// The sub-polytopes `(Q_1, …, Q_r)` as a sequence.
    pub fn sequence(&self, seq: &MinkowskiSequence) -> Result<MinkowskiSequence> {
        let pts = self.points(seq)?;
        MinkowskiSequence::new(
            pts.into_iter()
                .map(|v| Polytope::new(seq.dim(), v))
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

/// A mixed cell whose parts are simplices with dimensions summing to `d`
/// and a full-dimensional sum, with its rays and normalising constant.
#[derive(Clone, Debug)]
pub struct FineMixedCell {
    pub cell: MixedCell,
    pub points: Vec<Vec<RationalVector>>,
    pub dims: Vec<usize>,
    /// `rays[i][a]` for parts with positive dimension; empty otherwise.
    pub rays: Vec<Vec<RationalVector>>,
    pub kappa: Rational,
}

impl FineMixedCell {
    pub fn new(seq: &MinkowskiSequence, cell: &MixedCell) -> Result<Self> {
        let points = cell.points(seq)?;
        Self::from_points(seq.dim(), cell.clone(), points)
    }

    pub(crate) fn from_points(
        d: usize,
        cell: MixedCell,
        points: Vec<Vec<RationalVector>>,
    ) -> Result<Self> {
        let mut dims = Vec::with_capacity(points.len());
        for q in &points {
            let k = affine_dim(q);
            if k + 1 != q.len() {
                return Err(Error::SingularCellGeometry(
                    "a cell part is not a simplex".into(),
                ));
            }
            dims.push(k);
        }
        if dims.iter().sum::<usize>() != d {
            return Err(Error::SingularCellGeometry(
                "part dimensions do not sum to d".into(),
            ));
        }
        let directions: Vec<RationalVector> = points
            .iter()
            .flat_map(|q| q[1..].iter().map(move |p| sub(p, &q[0])))
            .collect();
        if rank(&directions) != d {
            return Err(Error::SingularCellGeometry(
                "cell sum is not full-dimensional".into(),
            ));
        }
        let mut rays = Vec::with_capacity(points.len());
        for (i, q) in points.iter().enumerate() {
            if dims[i] == 0 {
                rays.push(Vec::new());
                continue;
            }
            let mut vi = Vec::with_capacity(q.len());
            for a in 0..q.len() {
                let mut rows = Vec::with_capacity(d);
                let mut rhs = Vec::with_capacity(d);
                for b in 0..q.len() {
                    if b != a {
                        rows.push(sub(&q[a], &q[b]));
                        rhs.push(Rational::one());
                    }
                }
                for (k, qk) in points.iter().enumerate() {
                    if k != i {
                        for p in &qk[1..] {
                            rows.push(sub(p, &qk[0]));
                            rhs.push(Rational::zero());
                        }
                    }
                }
                match solve_linear(&rows, &rhs)? {
                    LinearSolution::Unique(v) => vi.push(v),
                    _ => {
                        return Err(Error::SingularCellGeometry(
                            "ray system is not uniquely solvable".into(),
                        ))
                    }
                }
            }
            let total = vi.iter().fold(vec![Rational::zero(); d], |acc, v| {
                crate::exactnum::add(&acc, v)
            });
            assert!(
                total.iter().all(Zero::is_zero),
                "cell rays must sum to zero"
            );
            rays.push(vi);
        }
        let basis: Vec<RationalVector> = rays
            .iter()
            .zip(&dims)
            .flat_map(|(vi, &k)| vi.iter().take(k).cloned())
            .collect();
        let kappa = det(&basis)?.abs();
        Ok(FineMixedCell {
            cell,
            points,
            dims,
            rays,
            kappa,
        })
    }
}

pub fn fine_cell_rays(cell: &FineMixedCell) -> &[Vec<RationalVector>] {
    &cell.rays
}

/// `κ Π x_i / Π (h_{xQ}(v_{i,a}) + <v_{i,a}, z>)` over parts of positive
/// dimension. With `with_z = false` the `z` terms are dropped.
pub fn fine_cell_dmv(cell: &FineMixedCell, with_z: bool) -> Result<RationalFunction> {
    let r = cell.points.len();
    let d = cell
        .points
        .iter()
        .find_map(|q| q.first().map(Vec::len))
        .unwrap_or(0);
    let vars = if with_z { xz_vars(r, d) } else { x_vars(r) };
    let qs: Vec<Polytope> = cell
        .points
        .iter()
        .map(|q| Polytope::from_vertices_unchecked(d, q.clone()))
        .collect();
    let mut numer = Vec::new();
    let mut factors = Vec::new();
    for (i, vi) in cell.rays.iter().enumerate() {
        if vi.is_empty() {
            continue;
        }
        numer.push(LinearForm::var(i));
        let forms: Vec<LinearForm> = vi.iter().map(|v| support_form(&qs, v, with_z)).collect();
        let total = forms.iter().fold(LinearForm::zero(), |a, f| a.add(f));
        assert_eq!(
            total,
            LinearForm::var(i),
            "support values must telescope to x_i"
        );
        factors.extend(forms);
    }
    RationalFunction::from_term(vars, cell.kappa.clone(), numer, factors)
}

/// Value of `<v, p>` for each cell point; used by tests of the scaling rule.
pub fn ray_gaps(cell: &FineMixedCell, i: usize, a: usize) -> Vec<Rational> {
    cell.points[i]
        .iter()
        .map(|p| dot(&cell.rays[i][a], p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, ratio, rvec};

    fn section7() -> (MinkowskiSequence, MixedCell) {
        let p1 = Polytope::from_i64(&[&[0, 2, 1], &[1, -1, 1], &[-1, 0, 1]]).unwrap();
        let p2 = Polytope::from_i64(&[&[0, 0, -2], &[-1, 1, -1]]).unwrap();
        let seq = MinkowskiSequence::new(vec![p1, p2]).unwrap();
        (seq, MixedCell::new(vec![vec![0, 1, 2], vec![0, 1]]))
    }

    #[test]
    fn section7_rays_and_kappa() {
        let (seq, cell) = section7();
        let f = FineMixedCell::new(&seq, &cell).unwrap();
        assert_eq!(f.kappa, ratio(1, 5));
        // vertex order is lexicographic: (-1,0,1), (0,2,1), (1,-1,1)
        let v_top = &f.rays[0][1];
        assert_eq!(v_top, &vec![ratio(1, 5), ratio(2, 5), ratio(-1, 5)]);
        assert!(f.rays[1].contains(&rvec(&[0, 0, -1])));
        let gaps = ray_gaps(&f, 0, 1);
        assert_eq!(&gaps[1] - &gaps[0], rat(1));
    }

    #[test]
    fn section7_dmv_matches_fan_formula() {
        let (seq, cell) = section7();
        let f = FineMixedCell::new(&seq, &cell).unwrap();
        let m = fine_cell_dmv(&f, false).unwrap();
        let direct = super::super::dual_mixed_volume(&seq).unwrap();
        assert!(m.equals(&direct).unwrap());
        let mz = fine_cell_dmv(&f, true).unwrap();
        let direct_z = super::super::dual_mixed_volume_z(&seq).unwrap();
        assert!(mz.equals(&direct_z).unwrap());
    }

    #[test]
    fn non_simplex_part_is_rejected() {
        let sq = Polytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let seq = MinkowskiSequence::new(vec![sq]).unwrap();
        let cell = MixedCell::new(vec![vec![0, 1, 2, 3]]);
        assert!(matches!(
            FineMixedCell::new(&seq, &cell),
            Err(Error::SingularCellGeometry(_))
        ));
    }
}
