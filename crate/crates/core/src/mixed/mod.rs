//! Dual mixed volumes of Minkowski sequences, fine mixed cells, mixed
//! subdivisions and the Cayley embedding.

mod cayley;
mod cell;
mod lifting;
mod subdivision;

pub use cayley::{
    cayley_points, cayley_polytope, cayley_side, cayley_side_evol, verify_cayley_identity,
    CayleyPoint,
};
pub use cell::{fine_cell_dmv, fine_cell_rays, ray_gaps, FineMixedCell, MixedCell};
pub use lifting::{generate_fine_subdivision, GeneratedSubdivision, Lifting};
pub use subdivision::{
    subdivision_sides, validate_mixed_subdivision, validation_report,
    verify_subdivision_additivity, MixedSubdivision, SubdivisionReport,
};

use std::sync::Arc;

use crate::dualvol::f_fan_symbolic;
use crate::error::{Error, Result};
use crate::exactnum::{format_vector, rat, Rational};
use crate::geometry::{minkowski_sum, normal_fan, support_value, Polytope};
use crate::symfun::{LinearForm, RationalFunction, VariableTable};

/// The tuple `(P_1, …, P_r)` of polytopes in a common `R^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinkowskiSequence {
    dim: usize,
    parts: Vec<Polytope>,
}

impl MinkowskiSequence {
    pub fn new(parts: Vec<Polytope>) -> Result<Self> {
        let dim = parts
            .first()
            .ok_or_else(|| Error::InvalidInput("empty Minkowski sequence".into()))?
            .dim();
        if parts.iter().any(|p| p.dim() != dim) {
            return Err(Error::Dimension(
                "parts live in different dimensions".into(),
            ));
        }
        Ok(MinkowskiSequence { dim, parts })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn parts(&self) -> &[Polytope] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `P_1 + … + P_r`.
    pub fn minkowski_total(&self) -> Result<Polytope> {
        minkowski_sum(&self.parts, &vec![rat(1); self.parts.len()])
    }

    /// `Σ x_i P_i` for positive weights.
    pub fn weighted_sum(&self, x: &[Rational]) -> Result<Polytope> {
        minkowski_sum(&self.parts, x)
    }
}

/// Variables `x1..xr`.
pub fn x_vars(r: usize) -> Arc<VariableTable> {
    Arc::new(VariableTable::indexed("x", r))
}

/// Variables `x1..xr, z1..zd`.
pub fn xz_vars(r: usize, d: usize) -> Arc<VariableTable> {
    Arc::new(VariableTable::indexed("x", r).concat(&VariableTable::indexed("z", d)))
}

/// `Σ_i x_i h_{P_i}(v)`, plus `<v, z>` when `with_z` (z after the x block).
pub(crate) fn support_form(parts: &[Polytope], v: &[Rational], with_z: bool) -> LinearForm {
    let r = parts.len();
    let mut f = LinearForm::zero();
    for (i, p) in parts.iter().enumerate() {
        f.add_term(i, &support_value(p, v));
    }
    if with_z {
        for (j, c) in v.iter().enumerate() {
            f.add_term(r + j, c);
        }
    }
    f
}

/// True iff every ray of the common normal fan has a nonzero support value
/// on some part.
pub fn is_regular(seq: &MinkowskiSequence) -> Result<bool> {
    Ok(regularity_certificate(seq)?.is_none())
}

/// A ray on which every part's support function vanishes, if any.
pub fn regularity_certificate(seq: &MinkowskiSequence) -> Result<Option<crate::RationalVector>> {
    let total = seq.minkowski_total()?;
    let fan = normal_fan(&total)?;
    Ok(fan
        .rays
        .iter()
        .find(|v| seq.parts.iter().all(|p| support_value(p, v) == rat(0)))
        .cloned())
}

fn dmv_impl(seq: &MinkowskiSequence, with_z: bool) -> Result<RationalFunction> {
    let r = seq.len();
    let vars = if with_z {
        xz_vars(r, seq.dim)
    } else {
        x_vars(r)
    };
    let total = seq.minkowski_total()?;
    if !total.is_full_dimensional() {
        return Ok(RationalFunction::zero(vars));
    }
    let fan = normal_fan(&total)?;
    let values: Vec<LinearForm> = fan
        .rays
        .iter()
        .map(|v| support_form(&seq.parts, v, with_z))
        .collect();
    if let Some(i) = values.iter().position(LinearForm::is_zero) {
        return Err(Error::NotRegular {
            ray: format_vector(&fan.rays[i]),
        });
    }
    f_fan_symbolic(&fan, vars, &values)
}

/// `m_P(x)` in variables `x1..xr`; zero when the sum is lower-dimensional.
pub fn dual_mixed_volume(seq: &MinkowskiSequence) -> Result<RationalFunction> {
    dmv_impl(seq, false)
}

/// `m_P(x, z)` in variables `x1..xr, z1..zd`.
pub fn dual_mixed_volume_z(seq: &MinkowskiSequence) -> Result<RationalFunction> {
    let total = seq.minkowski_total()?;
    if !total.is_full_dimensional() {
        return Err(Error::NotFullDimensional {
            found: total.affine_dim(),
            ambient: seq.dim,
        });
    }
    dmv_impl(seq, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;

    fn seg(a: &[i64], b: &[i64]) -> Polytope {
        Polytope::from_i64(&[a, b]).unwrap()
    }

    #[test]
    fn single_segment() {
        let seq = MinkowskiSequence::new(vec![seg(&[1], &[3])]).unwrap();
        let m = dual_mixed_volume(&seq).unwrap();
        assert_eq!(m.eval(&[rat(1)]).unwrap(), ratio(-2, 3));
        assert!(is_regular(&seq).unwrap());
    }

    #[test]
    fn unit_parallelogram() {
        let seq =
            MinkowskiSequence::new(vec![seg(&[-1, 0], &[1, 0]), seg(&[0, -1], &[0, 1])]).unwrap();
        let m = dual_mixed_volume(&seq).unwrap();
        let vars = x_vars(2);
        let expected = RationalFunction::from_term(
            vars,
            rat(4),
            vec![],
            vec![LinearForm::var(0), LinearForm::var(1)],
        )
        .unwrap();
        assert!(m.equals(&expected).unwrap());
    }

    #[test]
    fn irregular_sequence() {
        let tri = Polytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let seq = MinkowskiSequence::new(vec![tri]).unwrap();
        assert!(!is_regular(&seq).unwrap());
        assert!(matches!(
            dual_mixed_volume(&seq),
            Err(Error::NotRegular { .. })
        ));
        assert!(dual_mixed_volume_z(&seq).is_ok());
    }

    #[test]
    fn lower_dimensional_sum_is_zero() {
        let seq = MinkowskiSequence::new(vec![seg(&[1, 0], &[2, 0])]).unwrap();
        assert!(dual_mixed_volume(&seq).unwrap().terms().is_empty());
    }
}
