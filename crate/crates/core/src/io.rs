//! JSON records for polytopes, fans, sequences, subdivisions, polynomials
//! and rational functions.
//!
//! Rationals are written as strings `"p/q"`; on input plain JSON integers
//! are accepted too. Every `*_to_json` function has a matching parser, and
//! parsing the output of a writer gives back an equal object.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::affine::AffinePolytope;
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational, Rational, RationalVector};
use crate::geometry::{Fan, Polytope, SupportData, SupportValues};
use crate::mixed::{MinkowskiSequence, MixedCell, MixedSubdivision};
use crate::symfun::{LinearForm, RationalFunction, SparsePolynomial, Term, VariableTable};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Num {
    Int(i64),
    Str(String),
}

impl Num {
    fn value(&self) -> Result<Rational> {
        match self {
            Num::Int(i) => Ok(Rational::from_integer((*i).into())),
            Num::Str(s) => parse_rational(s),
        }
    }
}

fn num(r: &Rational) -> Num {
    Num::Str(format_rational(r))
}

fn values(v: &[Num]) -> Result<RationalVector> {
    v.iter().map(Num::value).collect()
}

fn decode<T: serde::de::DeserializeOwned>(v: &Value) -> Result<T> {
    T::deserialize(v).map_err(|e| Error::Parse(e.to_string()))
}

fn encode<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("records serialize")
}

/// Parses a JSON document.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Serialize, Deserialize)]
struct LinearFormRec {
    #[serde(default = "zero_num")]
    constant: Num,
    #[serde(default)]
    coeffs: BTreeMap<String, Num>,
}

fn zero_num() -> Num {
    Num::Int(0)
}

impl LinearFormRec {
    fn from(f: &LinearForm, vars: &VariableTable) -> Self {
        LinearFormRec {
            constant: num(f.constant_term()),
            coeffs: f
                .coeffs()
                .map(|(i, c)| (vars.name(i).to_string(), num(c)))
                .collect(),
        }
    }

    fn build(&self, vars: &VariableTable) -> Result<LinearForm> {
        let mut coeffs = Vec::new();
        for (name, c) in &self.coeffs {
            coeffs.push((vars.require(name)?, c.value()?));
        }
        Ok(LinearForm::from_parts(self.constant.value()?, coeffs))
    }
}

pub fn linear_form_to_json(f: &LinearForm, vars: &VariableTable) -> Value {
    encode(&LinearFormRec::from(f, vars))
}

pub fn linear_form_from_json(v: &Value, vars: &VariableTable) -> Result<LinearForm> {
    decode::<LinearFormRec>(v)?.build(vars)
}

#[derive(Serialize, Deserialize)]
struct MonomialRec {
    coeff: Num,
    monomial: BTreeMap<String, u32>,
}

#[derive(Serialize, Deserialize)]
struct PolynomialRec {
    vars: Vec<String>,
    terms: Vec<MonomialRec>,
}

fn monomials(p: &SparsePolynomial, vars: &VariableTable) -> Vec<MonomialRec> {
    p.terms()
        .rev()
        .map(|(e, c)| MonomialRec {
            coeff: num(c),
            monomial: e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| (vars.name(i).to_string(), k))
                .collect(),
        })
        .collect()
}

fn build_polynomial(terms: &[MonomialRec], vars: &VariableTable) -> Result<SparsePolynomial> {
    let mut p = SparsePolynomial::zero(vars.len());
    for t in terms {
        let mut e = vec![0; vars.len()];
        for (name, &k) in &t.monomial {
            e[vars.require(name)?] += k;
        }
        p.add_monomial(e, t.coeff.value()?);
    }
    Ok(p)
}

/// `{"vars":[…],"terms":[{"coeff","monomial":{name:exp}}]}`, lex-leading first.
pub fn polynomial_to_json(p: &SparsePolynomial, vars: &VariableTable) -> Value {
    encode(&PolynomialRec {
        vars: vars.names().to_vec(),
        terms: monomials(p, vars),
    })
}

pub fn polynomial_from_json(v: &Value) -> Result<(SparsePolynomial, VariableTable)> {
    let rec: PolynomialRec = decode(v)?;
    let vars = VariableTable::new(rec.vars)?;
    Ok((build_polynomial(&rec.terms, &vars)?, vars))
}

#[derive(Serialize, Deserialize)]
struct TermRec {
    coeff: Num,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    numer: Vec<LinearFormRec>,
    #[serde(default)]
    factors: Vec<LinearFormRec>,
}

#[derive(Serialize, Deserialize)]
struct FactorRec {
    factor: LinearFormRec,
    mult: u32,
}

#[derive(Serialize, Deserialize)]
struct NormalRec {
    numerator: Vec<MonomialRec>,
    denominator: Vec<FactorRec>,
}

#[derive(Serialize, Deserialize)]
struct RationalFunctionRec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vars: Option<Vec<String>>,
    terms: Vec<TermRec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    normal: Option<NormalRec>,
}

/// Writes the term list; `with_normal` adds the single-fraction form.
pub fn rational_function_to_json(f: &RationalFunction, with_normal: bool) -> Value {
    let vars = f.vars();
    let terms = f
        .collect_like_terms()
        .terms()
        .iter()
        .map(|t| TermRec {
            coeff: num(&t.coeff),
            numer: t
                .numer
                .iter()
                .map(|g| LinearFormRec::from(g, vars))
                .collect(),
            factors: t
                .factors
                .iter()
                .map(|g| LinearFormRec::from(g, vars))
                .collect(),
        })
        .collect();
    let normal = with_normal.then(|| {
        let nf = f.normal_form();
        NormalRec {
            numerator: monomials(&nf.numerator, vars),
            denominator: nf
                .denominator
                .iter()
                .map(|(g, k)| FactorRec {
                    factor: LinearFormRec::from(g, vars),
                    mult: *k,
                })
                .collect(),
        }
    });
    encode(&RationalFunctionRec {
        vars: Some(vars.names().to_vec()),
        terms,
        normal,
    })
}

/// Sort key putting `x2` before `x10`.
fn natural_key(name: &str) -> (String, u64, String) {
    let head: String = name.chars().take_while(|c| !c.is_ascii_digit()).collect();
    let rest = &name[head.len()..];
    let digits: String = rest.chars().take_while(char::is_ascii_digit).collect();
    let n = digits.parse().unwrap_or(0);
    (head, n, rest[digits.len()..].to_string())
}

/// Parses a rational function. Without a `"vars"` key the variables are
/// the names that occur, in natural order. The `"normal"` block, if present,
/// must agree with the terms.
pub fn rational_function_from_json(v: &Value) -> Result<RationalFunction> {
    let rec: RationalFunctionRec = decode(v)?;
    let vars = match &rec.vars {
        Some(names) => VariableTable::new(names.clone())?,
        None => {
            let mut names: Vec<String> = rec
                .terms
                .iter()
                .flat_map(|t| t.numer.iter().chain(&t.factors))
                .flat_map(|f| f.coeffs.keys().cloned())
                .collect();
            names.sort_by_key(|n| natural_key(n));
            names.dedup();
            VariableTable::new(names)?
        }
    };
    let vars = Arc::new(vars);
    let mut raw = Vec::with_capacity(rec.terms.len());
    for t in &rec.terms {
        raw.push(Term {
            coeff: t.coeff.value()?,
            numer: t
                .numer
                .iter()
                .map(|f| f.build(&vars))
                .collect::<Result<_>>()?,
            factors: t
                .factors
                .iter()
                .map(|f| f.build(&vars))
                .collect::<Result<_>>()?,
        });
    }
    let out = RationalFunction::from_terms(vars.clone(), raw)?;
    if let Some(n) = &rec.normal {
        let numer = build_polynomial(&n.numerator, &vars)?;
        let mut den: Vec<(LinearForm, u32)> = Vec::new();
        for d in &n.denominator {
            den.push((d.factor.build(&vars)?, d.mult));
        }
        let nf = out.normal_form();
        if nf.numerator != numer || nf.denominator != den {
            return Err(Error::InvalidInput(
                "normal form does not match the terms".into(),
            ));
        }
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct PolytopeRec {
    dim: usize,
    vertices: Vec<Vec<Num>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    level: Option<Num>,
}

impl PolytopeRec {
    fn from(p: &Polytope) -> Self {
        PolytopeRec {
            dim: p.dim(),
            vertices: p
                .vertices()
                .iter()
                .map(|v| v.iter().map(num).collect())
                .collect(),
            level: None,
        }
    }

    fn build(&self) -> Result<Polytope> {
        let pts = self
            .vertices
            .iter()
            .map(|v| values(v))
            .collect::<Result<Vec<_>>>()?;
        Polytope::new(self.dim, pts)
    }
}

/// `{"dim":d,"vertices":[["p/q",…],…]}`.
pub fn polytope_to_json(p: &Polytope) -> Value {
    encode(&PolytopeRec::from(p))
}

/// Accepts any point list; non-extreme points are dropped.
pub fn polytope_from_json(v: &Value) -> Result<Polytope> {
    decode::<PolytopeRec>(v)?.build()
}

/// Polytope record with an extra `"level"`.
pub fn affine_polytope_to_json(p: &AffinePolytope) -> Value {
    let mut rec = PolytopeRec::from(p.base());
    rec.level = Some(num(p.level()));
    encode(&rec)
}

/// The level is inferred from the vertices when absent.
pub fn affine_polytope_from_json(v: &Value) -> Result<AffinePolytope> {
    let rec: PolytopeRec = decode(v)?;
    let base = rec.build()?;
    match &rec.level {
        Some(l) => AffinePolytope::with_level(base, l.value()?),
        None => AffinePolytope::new(base),
    }
}

#[derive(Serialize, Deserialize)]
struct FanRec {
    dim: usize,
    rays: Vec<Vec<Num>>,
    cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pure_dim: Option<usize>,
}

impl FanRec {
    fn build(&self) -> Result<Fan> {
        let rays = self
            .rays
            .iter()
            .map(|r| values(r))
            .collect::<Result<Vec<_>>>()?;
        let fan = Fan::new(self.dim, rays, self.cones.clone())?;
        if let Some(k) = self.pure_dim {
            if k != fan.pure_dim {
                return Err(Error::InvalidInput(format!(
                    "declared pure_dim {k}, cones have dimension {}",
                    fan.pure_dim
                )));
            }
        }
        Ok(fan)
    }
}

/// `{"dim":d,"rays":[[int,…]],"cones":[[rayIdx,…]],"pure_dim":k}`.
pub fn fan_to_json(f: &Fan) -> Value {
    encode(&FanRec {
        dim: f.dim,
        rays: f.rays.iter().map(|r| r.iter().map(num).collect()).collect(),
        cones: f.maximal_cones.clone(),
        pure_dim: Some(f.pure_dim),
    })
}

pub fn fan_from_json(v: &Value) -> Result<Fan> {
    decode::<FanRec>(v)?.build()
}

#[derive(Serialize, Deserialize)]
struct SupportRec {
    fan: FanRec,
    values: Vec<Num>,
}

/// `{"fan":Fan,"values":["p/q",…]}` with one support value per ray.
pub fn support_data_from_json(v: &Value) -> Result<SupportData> {
    let rec: SupportRec = decode(v)?;
    SupportData::new(
        rec.fan.build()?,
        SupportValues::Numeric(values(&rec.values)?),
    )
}

#[derive(Serialize, Deserialize)]
struct SequenceRec {
    dim: usize,
    parts: Vec<PolytopeRec>,
}

/// `{"dim":d,"parts":[Polytope…]}`.
pub fn sequence_to_json(seq: &MinkowskiSequence) -> Value {
    encode(&SequenceRec {
        dim: seq.dim(),
        parts: seq.parts().iter().map(PolytopeRec::from).collect(),
    })
}

pub fn sequence_from_json(v: &Value) -> Result<MinkowskiSequence> {
    let rec: SequenceRec = decode(v)?;
    let parts = rec
        .parts
        .iter()
        .map(PolytopeRec::build)
        .collect::<Result<Vec<_>>>()?;
    if parts.iter().any(|p| p.dim() != rec.dim) {
        return Err(Error::Dimension(format!(
            "parts must live in dimension {}",
            rec.dim
        )));
    }
    MinkowskiSequence::new(parts)
}

/// Parts of a sequence living on hyperplanes `Σ y_i = k`.
pub fn affine_sequence_from_json(v: &Value) -> Result<Vec<AffinePolytope>> {
    let parts = v
        .get("parts")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing `parts` array".into()))?;
    parts.iter().map(affine_polytope_from_json).collect()
}

#[derive(Serialize, Deserialize)]
struct SubdivisionRec {
    cells: Vec<Vec<Vec<usize>>>,
}

/// `{"cells":[[[vertexIdx…] per part]…]}` indexing each part's sorted vertices.
pub fn subdivision_to_json(sub: &MixedSubdivision) -> Value {
    encode(&SubdivisionRec {
        cells: sub.cells.iter().map(|c| c.parts.clone()).collect(),
    })
}

pub fn subdivision_from_json(v: &Value) -> Result<MixedSubdivision> {
    let rec: SubdivisionRec = decode(v)?;
    Ok(MixedSubdivision::new(
        rec.cells.into_iter().map(MixedCell::new).collect(),
    ))
}

/// A JSON list of rational vectors, e.g. zonotope generators.
pub fn vectors_from_json(v: &Value) -> Result<Vec<RationalVector>> {
    let rows: Vec<Vec<Num>> = decode(v)?;
    rows.iter().map(|r| values(r)).collect()
}

pub fn vector_to_json(v: &[Rational]) -> Value {
    encode(&v.iter().map(num).collect::<Vec<_>>())
}
