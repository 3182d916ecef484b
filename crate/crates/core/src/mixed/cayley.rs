use num_traits::{One, Zero};

use super::{dual_mixed_volume_z, xz_vars, MinkowskiSequence};
use crate::affine::{boundary_fan, evol_on_fan};
use crate::error::{Error, Result};
use crate::exactnum::{Rational, RationalVector};
use crate::geometry::Polytope;
use crate::symfun::{LinearForm, RationalFunction};

/// A point `(p, e_i)` of the Cayley embedding, tagged with its origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyPoint {
    pub part: usize,
    pub vertex: usize,
    pub coords: RationalVector,
}

pub fn cayley_points(seq: &MinkowskiSequence) -> Vec<CayleyPoint> {
    let r = seq.len();
    let mut out = Vec::new();
    for (i, p) in seq.parts().iter().enumerate() {
        for (a, v) in p.vertices().iter().enumerate() {
            let mut coords = v.clone();
            coords.extend((0..r).map(|k| {
                if k == i {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            out.push(CayleyPoint {
                part: i,
                vertex: a,
                coords,
            });
        }
    }
    out
}

pub fn cayley_polytope(seq: &MinkowskiSequence) -> Result<Polytope> {
    let pts = cayley_points(seq).into_iter().map(|c| c.coords).collect();
    Polytope::new(seq.dim() + seq.len(), pts)
}

/// `EVol_{(z,x)}` of the Cayley polytope with normal `(0, …, 0, 1, …, 1)`,
/// in variables `x1..xr, z1..zd`.
pub fn cayley_side_evol(seq: &MinkowskiSequence) -> Result<RationalFunction> {
    let d = seq.dim();
    let r = seq.len();
    let pts: Vec<RationalVector> = cayley_points(seq).into_iter().map(|c| c.coords).collect();
    let fan = boundary_fan(&pts).map_err(|e| match e {
        Error::NotFullDimensionalInHyperplane => Error::NotFullDimensional {
            found: crate::geometry::affine_dim(&pts).saturating_sub(r - 1),
            ambient: d,
        },
        other => other,
    })?;
    let values: Vec<LinearForm> = fan
        .rays
        .iter()
        .map(|w| {
            let mut f = LinearForm::zero();
            for (j, c) in w[..d].iter().enumerate() {
                f.add_term(r + j, c);
            }
            for i in 0..r {
                f.add_term(i, &w[d + i]);
            }
            f
        })
        .collect();
    let mut normal = vec![Rational::zero(); d];
    normal.extend(std::iter::repeat_n(Rational::one(), r));
    evol_on_fan(&fan, &normal, xz_vars(r, d), &values)
}

/// `(Π x_i / Σ x_i) · EVol_{(z,x)}(Cayley)` as a function of `(x, z)`.
pub fn cayley_side(seq: &MinkowskiSequence) -> Result<RationalFunction> {
    let r = seq.len();
    let evol = cayley_side_evol(seq)?;
    let numer: Vec<LinearForm> = (0..r).map(LinearForm::var).collect();
    let sum = (0..r).fold(LinearForm::zero(), |a, i| a.add(&LinearForm::var(i)));
    evol.mul_monomial_ratio(&numer, &[sum])
}

/// Compares `m_P(x, z)` with the Cayley side.
pub fn verify_cayley_identity(seq: &MinkowskiSequence) -> Result<bool> {
    let lhs = dual_mixed_volume_z(seq)?;
    lhs.equals(&cayley_side(seq)?)
}
