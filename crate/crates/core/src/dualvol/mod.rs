//! Dual volumes, dual volume functions and adjoint polynomials.
//!
//! The universal fan function sums `|det(rays)| / Π values` over the
//! simplicial cones of a triangulated fan. Fed with the support values
//! `h_P(v) + <v, z>` of a polytope it yields the dual volume function, whose
//! single-fraction numerator is the adjoint of the dual cone over `P`.

mod integral;

pub use integral::{integral_check, integral_estimate};

use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{det, format_vector, rank, Rational, RationalVector};
use crate::geometry::{
    cone_over, dual_cone, facets, is_pointed, triangulate_cone, triangulate_fan, Fan, Polytope,
    SupportData, SupportValues,
};
use crate::symfun::{LinearForm, RationalFunction, SparsePolynomial, VariableTable};

/// Result of [`f_fan`]: a number for numeric values, a function otherwise.
#[derive(Clone, Debug)]
pub enum FanValue {
    Number(Rational),
    Function(RationalFunction),
}

pub fn f_fan(s: &SupportData) -> Result<FanValue> {
    match &s.values {
        SupportValues::Numeric(v) => f_fan_numeric(&s.fan, v).map(FanValue::Number),
        SupportValues::Symbolic { vars, values } => {
            f_fan_symbolic(&s.fan, vars.clone(), values).map(FanValue::Function)
        }
    }
}

fn cone_dets(fan: &Fan) -> Result<Vec<(Vec<usize>, Rational)>> {
    let t = triangulate_fan(fan)?;
    t.maximal_cones
        .into_iter()
        .map(|c| {
            let m: Vec<RationalVector> = c.iter().map(|&i| fan.rays[i].clone()).collect();
            let d = det(&m)?.abs();
            Ok((c, d))
        })
        .collect()
}

pub fn f_fan_numeric(fan: &Fan, values: &[Rational]) -> Result<Rational> {
    if fan.pure_dim < fan.dim {
        return Ok(Rational::zero());
    }
    let mut acc = Rational::zero();
    for (c, d) in cone_dets(fan)? {
        let mut term = d;
        for &i in &c {
            if values[i].is_zero() {
                return Err(Error::ZeroSupportValue {
                    ray: format_vector(&fan.rays[i]),
                });
            }
            term /= &values[i];
        }
        acc += term;
    }
    Ok(acc)
}

/// Symbolic version; a value that is the zero form raises `ZeroSupportValue`.
pub fn f_fan_symbolic(
    fan: &Fan,
    vars: Arc<VariableTable>,
    values: &[LinearForm],
) -> Result<RationalFunction> {
    let mut out = RationalFunction::zero(vars.clone());
    if fan.pure_dim < fan.dim {
        return Ok(out);
    }
    if let Some(i) = values.iter().position(LinearForm::is_zero) {
        return Err(Error::ZeroSupportValue {
            ray: format_vector(&fan.rays[i]),
        });
    }
    for (c, d) in cone_dets(fan)? {
        out.push_term(
            d,
            Vec::new(),
            c.iter().map(|&i| values[i].clone()).collect(),
        )?;
    }
    Ok(out)
}

pub fn z_vars(d: usize) -> Arc<VariableTable> {
    Arc::new(VariableTable::indexed("z", d))
}

/// `h + <v, z>` over variables `z_1..z_d` starting at index `offset`.
pub(crate) fn shifted_value(h: &Rational, v: &[Rational], offset: usize) -> LinearForm {
    LinearForm::from_dense(h.clone(), v, offset)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValueAtOrigin {
    Value(Rational),
    PoleAtOrigin,
}

/// Dual volume function with its single-fraction presentation.
#[derive(Clone, Debug)]
pub struct DualVolumeResult {
    pub function: RationalFunction,
    pub value_at_origin: ValueAtOrigin,
    /// Numerator against `denominator_factors`.
    pub numerator: SparsePolynomial,
    /// One factor `h_P(v) + <v, z>` per ray of the normal fan.
    pub denominator_factors: Vec<LinearForm>,
    /// Set when produced through [`canonical_form`].
    pub canonical_form: bool,
}

pub fn dual_volume_function(p: &Polytope) -> Result<DualVolumeResult> {
    let fs = facets(p)?;
    let d = p.dim();
    let vars = z_vars(d);
    let fan = crate::geometry::normal_fan(p)?;
    let values: Vec<LinearForm> = fs
        .iter()
        .map(|f| shifted_value(&f.offset, &f.normal, 0))
        .collect();
    let function = f_fan_symbolic(&fan, vars, &values)?;

    let value_at_origin = if fs.iter().any(|f| f.offset.is_zero()) {
        ValueAtOrigin::PoleAtOrigin
    } else {
        ValueAtOrigin::Value(function.eval(&vec![Rational::zero(); d])?)
    };
    // The normal form uses canonical factors; rescale to the raw ray forms.
    let nf = function.normal_form();
    let mut numerator = nf.numerator.clone();
    if !numerator.is_zero() {
        for v in &values {
            let (s, _) = v.canonicalize();
            numerator = numerator.scale(&s);
        }
    }
    Ok(DualVolumeResult {
        function,
        value_at_origin,
        numerator,
        denominator_factors: values,
        canonical_form: false,
    })
}

/// The canonical form coefficient of `P`; same data as the dual volume function.
pub fn canonical_form(p: &Polytope) -> Result<DualVolumeResult> {
    let mut r = dual_volume_function(p)?;
    r.canonical_form = true;
    Ok(r)
}

/// Exact dual volume; zero for lower-dimensional polytopes.
pub fn dual_volume(p: &Polytope) -> Result<Rational> {
    if !p.is_full_dimensional() {
        return Ok(Rational::zero());
    }
    let fs = facets(p)?;
    if let Some(f) = fs.iter().find(|f| f.offset.is_zero()) {
        return Err(Error::Codegenerate {
            ray: format_vector(&f.normal),
        });
    }
    let fan = crate::geometry::normal_fan(p)?;
    let values: Vec<Rational> = fs.iter().map(|f| f.offset.clone()).collect();
    f_fan_numeric(&fan, &values)
}

/// Adjoint of a pointed full-dimensional cone in `R^{d+1}`, as a polynomial
/// in `z_1..z_d` with `z̄ = (1, z)`.
pub fn adjoint_polynomial(gens: &[RationalVector]) -> Result<SparsePolynomial> {
    let n = gens.first().map_or(0, Vec::len);
    if n == 0 {
        return Err(Error::InvalidInput("no cone generators".into()));
    }
    let r = rank(gens);
    if r < n {
        return Err(Error::NotFullDimensional {
            found: r,
            ambient: n,
        });
    }
    if !is_pointed(gens) {
        return Err(Error::NotPointed);
    }
    let nv = n - 1;
    let forms: Vec<LinearForm> = gens
        .iter()
        .map(|w| LinearForm::from_dense(w[0].clone(), &w[1..], 0))
        .collect();
    let idx: Vec<usize> = (0..gens.len()).collect();
    let mut adj = SparsePolynomial::zero(nv);
    for s in triangulate_cone(gens, &idx, n)? {
        let m: Vec<RationalVector> = s.iter().map(|&i| gens[i].clone()).collect();
        let mut term = SparsePolynomial::constant(nv, det(&m)?.abs());
        for (i, f) in forms.iter().enumerate() {
            if !s.contains(&i) {
                term = term.mul_linear(f);
            }
        }
        adj.add_assign(&term);
    }
    Ok(adj)
}

/// Compares the adjoint of `C(P)*` with the numerator of the dual volume function.
pub fn verify_adjoint_identity(p: &Polytope) -> Result<bool> {
    let gens = dual_cone(&cone_over(p.vertices()))?;
    let adj = adjoint_polynomial(&gens)?;
    let dv = dual_volume_function(p)?;
    Ok(adj == dv.numerator)
}
