//! Dual volumes of polytopes lying in a hyperplane `y_1 + … + y_d = k`.
//!
//! Rays come from the boundary of the dual of the cone over the polytope,
//! and determinants are normalised by appending a normal vector (the
//! all-ones vector unless stated otherwise).

use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{det, rank, solve_linear, sub, LinearSolution, Rational, RationalVector};
use crate::geometry::{
    affine_dim, cone_facets, minkowski_sum, support_value, triangulate_fan, Fan, Polytope,
};
use crate::mixed::{xz_vars, MinkowskiSequence, MixedCell, MixedSubdivision};
use crate::symfun::{LinearForm, RationalFunction, VariableTable};

/// A polytope together with the level `k` of the hyperplane containing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffinePolytope {
    base: Polytope,
    level: Rational,
}

impl AffinePolytope {
    /// Infers the level from the vertices, which must share one coordinate sum.
    pub fn new(base: Polytope) -> Result<Self> {
        let level: Rational = base.vertices()[0].iter().sum();
        Self::with_level(base, level)
    }

    pub fn with_level(base: Polytope, level: Rational) -> Result<Self> {
        if base
            .vertices()
            .iter()
            .any(|v| v.iter().sum::<Rational>() != level)
        {
            return Err(Error::InvalidInput(
                "vertices do not lie on the stated level".into(),
            ));
        }
        Ok(AffinePolytope { base, level })
    }

    pub fn base(&self) -> &Polytope {
        &self.base
    }

    pub fn level(&self) -> &Rational {
        &self.level
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }
}

/// Fan on the boundary of `Cone(points)*`: rays are the inward facet
/// normals of the cone over `points`, one maximal cone per point.
pub(crate) fn boundary_fan(points: &[RationalVector]) -> Result<Fan> {
    let d = points.first().map_or(0, Vec::len);
    if d < 1 || rank(points) < d {
        return Err(Error::NotFullDimensionalInHyperplane);
    }
    let fs = cone_facets(points)?;
    let rays: Vec<RationalVector> = fs.iter().map(|f| f.normal.clone()).collect();
    let cones: Vec<Vec<usize>> = (0..points.len())
        .map(|j| {
            (0..fs.len())
                .filter(|&k| fs[k].tight.contains(&j))
                .collect()
        })
        .filter(|c: &Vec<usize>| !c.is_empty())
        .collect();
    Ok(Fan {
        dim: d,
        rays,
        maximal_cones: cones,
        pure_dim: d - 1,
    })
}

/// `Σ |det(rays, normal)| / Π values` over a triangulation of `fan`.
pub(crate) fn evol_on_fan(
    fan: &Fan,
    normal: &[Rational],
    vars: Arc<VariableTable>,
    values: &[LinearForm],
) -> Result<RationalFunction> {
    let tri = triangulate_fan(fan)?;
    let mut out = RationalFunction::zero(vars);
    for c in &tri.maximal_cones {
        let mut m: Vec<RationalVector> = c.iter().map(|&i| fan.rays[i].clone()).collect();
        m.push(normal.to_vec());
        let k = det(&m)?.abs();
        out.push_term(
            k,
            Vec::new(),
            c.iter().map(|&i| values[i].clone()).collect(),
        )?;
    }
    Ok(out)
}

fn check_hyperplane_dim(points: &[RationalVector]) -> Result<()> {
    let d = points.first().map_or(0, Vec::len);
    if affine_dim(points) + 1 != d {
        return Err(Error::NotFullDimensionalInHyperplane);
    }
    Ok(())
}

pub fn boundary_cone_rays(p: &AffinePolytope) -> Result<Fan> {
    if p.level.is_zero() {
        return Err(Error::InvalidInput("level must be nonzero".into()));
    }
    check_hyperplane_dim(p.base.vertices())?;
    boundary_fan(p.base.vertices())
}

pub fn ones(d: usize) -> RationalVector {
    vec![Rational::one(); d]
}

/// `EVol_z(P)` in variables `z1..zd`; zero below full dimension in the hyperplane.
pub fn hyperplane_dual_volume(p: &AffinePolytope) -> Result<RationalFunction> {
    let d = p.dim();
    let vars = crate::dualvol::z_vars(d);
    if affine_dim(p.base.vertices()) + 1 < d {
        return Ok(RationalFunction::zero(vars));
    }
    let fan = boundary_cone_rays(p)?;
    let values: Vec<LinearForm> = fan
        .rays
        .iter()
        .map(|w| LinearForm::from_dense(support_value(&p.base, w), w, 0))
        .collect();
    evol_on_fan(&fan, &ones(d), vars, &values)
}

fn parts_of(seq: &[AffinePolytope]) -> Result<Vec<Polytope>> {
    if seq.is_empty() {
        return Err(Error::InvalidInput("empty sequence".into()));
    }
    Ok(seq.iter().map(|p| p.base.clone()).collect())
}

/// `m̃_P(x, z)` in variables `x1..xr, z1..zd`.
pub fn hyperplane_dual_mixed_volume(seq: &[AffinePolytope]) -> Result<RationalFunction> {
    hdmv_impl(&parts_of(seq)?, true)
}

/// `m̃_P(x, 0)` in variables `x1..xr`.
pub fn hyperplane_dual_mixed_volume_x(seq: &[AffinePolytope]) -> Result<RationalFunction> {
    hdmv_impl(&parts_of(seq)?, false)
}

fn hdmv_impl(parts: &[Polytope], with_z: bool) -> Result<RationalFunction> {
    let d = parts[0].dim();
    let r = parts.len();
    let vars = if with_z {
        xz_vars(r, d)
    } else {
        crate::mixed::x_vars(r)
    };
    let total = minkowski_sum(parts, &vec![Rational::one(); r])?;
    if affine_dim(total.vertices()) + 1 < d {
        return Ok(RationalFunction::zero(vars));
    }
    let level: Rational = total.vertices()[0].iter().sum();
    if level.is_zero() {
        return Err(Error::InvalidInput(
            "sum lies in a hyperplane through the origin".into(),
        ));
    }
    let fan = boundary_fan(total.vertices())?;
    let values: Vec<LinearForm> = fan
        .rays
        .iter()
        .map(|w| crate::mixed::support_form(parts, w, with_z))
        .collect();
    if let Some(i) = values.iter().position(LinearForm::is_zero) {
        return Err(Error::NotRegular {
            ray: crate::exactnum::format_vector(&fan.rays[i]),
        });
    }
    evol_on_fan(&fan, &ones(d), vars, &values)
}

/// Rays and normalising constant of a fine mixed cell inside a hyperplane.
#[derive(Clone, Debug)]
pub struct AffineFineCell {
    pub points: Vec<Vec<RationalVector>>,
    pub dims: Vec<usize>,
    pub rays: Vec<Vec<RationalVector>>,
    pub kappa: Rational,
}

impl AffineFineCell {
    pub fn new(seq: &[AffinePolytope], cell: &MixedCell) -> Result<Self> {
        let mseq = MinkowskiSequence::new(parts_of(seq)?)?;
        let points = cell.points(&mseq)?;
        Self::from_points(points)
    }

    pub fn from_points(points: Vec<Vec<RationalVector>>) -> Result<Self> {
        let d = points.first().and_then(|q| q.first()).map_or(0, Vec::len);
        let r = points.len();
        let mut dims = Vec::with_capacity(r);
        for q in &points {
            let k = affine_dim(q);
            if k + 1 != q.len() {
                return Err(Error::SingularCellGeometry(
                    "a cell part is not a simplex".into(),
                ));
            }
            dims.push(k);
        }
        if dims.iter().sum::<usize>() + 1 != d {
            return Err(Error::SingularCellGeometry(
                "part dimensions do not sum to d - 1".into(),
            ));
        }
        let base_point: RationalVector = points.iter().fold(vec![Rational::zero(); d], |acc, q| {
            crate::exactnum::add(&acc, &q[0])
        });
        let mut rays = Vec::with_capacity(r);
        for (i, q) in points.iter().enumerate() {
            if dims[i] == 0 {
                rays.push(Vec::new());
                continue;
            }
            let mut vi = Vec::new();
            for a in 0..q.len() {
                let mut rows = Vec::new();
                let mut rhs = Vec::new();
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
                // Minimum over the cell sum is zero, attained at some p_{i,b}.
                let b = if a == 0 { 1 } else { 0 };
                let anchor = crate::exactnum::add(&sub(&base_point, &q[0]), &q[b]);
                rows.push(anchor);
                rhs.push(Rational::zero());
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
            let expected = vec![Rational::new(1.into(), (r as i64).into()); d];
            assert_eq!(total, expected, "affine cell rays must sum to (1/r) 1");
            rays.push(vi);
        }
        let mut basis: Vec<RationalVector> = rays
            .iter()
            .zip(&dims)
            .flat_map(|(vi, &k)| vi.iter().take(k).cloned())
            .collect();
        basis.push(ones(d));
        let kappa = det(&basis)?.abs();
        Ok(AffineFineCell {
            points,
            dims,
            rays,
            kappa,
        })
    }
}

/// Cell formula in variables `x1..xr, z1..zd`. With `slice` the numerator
/// factors are replaced by `x_i`, valid where `<x,1> = <z,1>`.
pub fn affine_fine_cell_dmv(cell: &AffineFineCell, slice: bool) -> Result<RationalFunction> {
    let r = cell.points.len();
    let d = cell.points[0][0].len();
    let vars = xz_vars(r, d);
    let qs: Vec<Polytope> = cell
        .points
        .iter()
        .map(|q| Polytope::from_vertices_unchecked(d, q.clone()))
        .collect();
    let rinv = Rational::new(1.into(), (r as i64).into());
    let mut shift = LinearForm::zero();
    for i in 0..r {
        shift.add_term(i, &-rinv.clone());
    }
    for j in 0..d {
        shift.add_term(r + j, &rinv);
    }
    let mut numer = Vec::new();
    let mut factors = Vec::new();
    for (i, vi) in cell.rays.iter().enumerate() {
        if vi.is_empty() {
            continue;
        }
        let full = LinearForm::var(i).add(&shift);
        let forms: Vec<LinearForm> = vi
            .iter()
            .map(|v| crate::mixed::support_form(&qs, v, true))
            .collect();
        let total = forms.iter().fold(LinearForm::zero(), |a, f| a.add(f));
        assert_eq!(total, full, "affine cell support values must telescope");
        numer.push(if slice { LinearForm::var(i) } else { full });
        factors.extend(forms);
    }
    RationalFunction::from_term(vars, cell.kappa.clone(), numer, factors)
}

/// Substitution `z_d = Σ x_i - Σ_{j<d} z_j`, restricting to the slice.
pub fn restrict_to_slice(f: &RationalFunction, r: usize, d: usize) -> Result<RationalFunction> {
    let vars = f.vars().clone();
    let mut images: Vec<LinearForm> = (0..r + d).map(LinearForm::var).collect();
    let mut last = LinearForm::zero();
    for i in 0..r {
        last.add_term(i, &Rational::one());
    }
    for j in 0..d - 1 {
        last.add_term(r + j, &-Rational::one());
    }
    images[r + d - 1] = last;
    f.substitute(vars, &images)
}

/// Additivity of `m̃` over a mixed subdivision, compared on the slice.
pub fn verify_affine_additivity(seq: &[AffinePolytope], sub: &MixedSubdivision) -> Result<bool> {
    let parts = parts_of(seq)?;
    let r = parts.len();
    let d = parts[0].dim();
    let mseq = MinkowskiSequence::new(parts.clone())?;
    let whole = hdmv_impl(&parts, true)?;
    let mut sum = RationalFunction::zero(whole.vars().clone());
    for cell in &sub.cells {
        let points = cell.points(&mseq)?;
        let piece = match AffineFineCell::from_points(points.clone()) {
            Ok(fc) => affine_fine_cell_dmv(&fc, false)?,
            Err(Error::SingularCellGeometry(_)) => {
                let qs = points
                    .into_iter()
                    .map(|v| Polytope::new(d, v))
                    .collect::<Result<Vec<_>>>()?;
                hdmv_impl(&qs, true)?
            }
            Err(e) => return Err(e),
        };
        sum = sum.add(&piece)?;
    }
    let lhs = restrict_to_slice(&whole, r, d)?;
    let rhs = restrict_to_slice(&sum, r, d)?;
    lhs.equals(&rhs)
}

/// Dual volume of `(t/k) P - z0` with `t = <1, z0>`, in the chart of the
/// hyperplane that drops `y_d`.
pub fn chart_dual_volume(p: &AffinePolytope, z0: &[Rational]) -> Result<Rational> {
    let d = p.dim();
    if z0.len() != d {
        return Err(Error::Dimension(format!(
            "point of length {} in dimension {d}",
            z0.len()
        )));
    }
    let t: Rational = z0.iter().sum();
    let s = t / &p.level;
    let pts: Vec<RationalVector> = p
        .base
        .vertices()
        .iter()
        .map(|v| (0..d - 1).map(|i| &v[i] * &s - &z0[i]).collect())
        .collect();
    crate::dualvol::dual_volume(&Polytope::new(d - 1, pts)?)
}
