//! Symbolic linear forms, sparse polynomials and rational functions.
//!
//! Rational functions are sums of simple fractions whose denominators are
//! products of linear forms. Equality is decided exactly.

mod linear;
mod poly;
mod ratfun;

pub use linear::{LinearForm, VariableTable};
pub use poly::SparsePolynomial;
pub use ratfun::{NormalForm, RationalFunction, Term, EQUALITY_SEED};

use crate::error::Result;

pub fn rf_add(a: &RationalFunction, b: &RationalFunction) -> Result<RationalFunction> {
    a.add(b)
}

pub fn rf_normalize(a: &RationalFunction) -> NormalForm {
    a.normal_form().clone()
}

pub fn rf_equal(a: &RationalFunction, b: &RationalFunction) -> Result<bool> {
    a.equals(b)
}

pub fn rf_eval(
    a: &RationalFunction,
    point: &std::collections::BTreeMap<String, crate::exactnum::Rational>,
) -> Result<crate::exactnum::Rational> {
    a.eval_named(point)
}

pub fn rf_substitute(
    a: &RationalFunction,
    target: std::sync::Arc<VariableTable>,
    map: &std::collections::BTreeMap<String, LinearForm>,
) -> Result<RationalFunction> {
    a.substitute_named(target, map)
}
