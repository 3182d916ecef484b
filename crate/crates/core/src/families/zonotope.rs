use num_traits::{One, Signed, Zero};

use crate::dualvol::{f_fan_symbolic, z_vars};
use crate::error::{Error, Result};
use crate::exactnum::{dot, neg, rank, Rational, RationalVector};
use crate::geometry::{minkowski_sum, normal_fan, support_value, Fan, Polytope};
use crate::mixed::{
    dual_mixed_volume, fine_cell_dmv, validate_mixed_subdivision, x_vars, FineMixedCell,
    MinkowskiSequence, MixedCell, MixedSubdivision,
};
use crate::symfun::{LinearForm, RationalFunction, Term, VariableTable};

/// Minkowski sum of the segments `[-p_i, p_i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zonotope {
    generators: Vec<RationalVector>,
}

impl Zonotope {
    /// Generators must be nonzero, pairwise non-parallel and spanning.
    pub fn new(generators: Vec<RationalVector>) -> Result<Self> {
        let d = generators
            .first()
            .ok_or_else(|| Error::InvalidInput("zonotope without generators".into()))?
            .len();
        if generators.iter().any(|p| p.len() != d) {
            return Err(Error::Dimension("generators of different lengths".into()));
        }
        if generators.iter().any(|p| p.iter().all(Zero::is_zero)) {
            return Err(Error::InvalidInput("zero generator".into()));
        }
        for i in 0..generators.len() {
            for j in 0..i {
                if rank(&[generators[i].clone(), generators[j].clone()]) < 2 {
                    return Err(Error::InvalidInput(format!(
                        "generators {j} and {i} are parallel"
                    )));
                }
            }
        }
        let k = rank(&generators);
        if k < d {
            return Err(Error::NotFullDimensional {
                found: k,
                ambient: d,
            });
        }
        Ok(Zonotope { generators })
    }

    pub fn generators(&self) -> &[RationalVector] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.generators[0].len()
    }

    /// The segment sequence `([-p_1, p_1], …, [-p_r, p_r])`.
    pub fn sequence(&self) -> MinkowskiSequence {
        let d = self.dim();
        let parts = self
            .generators
            .iter()
            .map(|p| {
                Polytope::new(d, vec![neg(p), p.clone()]).expect("segment of a nonzero vector")
            })
            .collect();
        MinkowskiSequence::new(parts).expect("nonempty sequence")
    }
}

/// Sign of one generator in a tiling cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Zero,
    Plus,
    Minus,
}

/// A zonotopal tiling cell `Σ_{ε_i=0} [-p_i, p_i] + Σ_{ε_i≠0} ε_i p_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    pub entries: Vec<Sign>,
}

impl SignVector {
    pub fn new(entries: Vec<Sign>) -> Self {
        SignVector { entries }
    }

    /// Parses a string over `0`, `+`, `-`.
    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(Sign::Zero),
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                other => Err(Error::Parse(format!("unexpected sign `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(SignVector::new)
    }

    pub fn render(&self) -> String {
        self.entries
            .iter()
            .map(|s| match s {
                Sign::Zero => '0',
                Sign::Plus => '+',
                Sign::Minus => '-',
            })
            .collect()
    }

    /// Reads a mixed cell of the segment sequence as a sign vector.
    pub fn from_cell(z: &Zonotope, cell: &MixedCell) -> Result<Self> {
        let seq = z.sequence();
        let pts = cell.points(&seq)?;
        let entries = pts
            .iter()
            .zip(z.generators())
            .map(|(q, p)| match q.as_slice() {
                [_, _] => Ok(Sign::Zero),
                [v] if v == p => Ok(Sign::Plus),
                [_] => Ok(Sign::Minus),
                _ => Err(Error::InvalidTiling(
                    "cell part is not a vertex or the segment".into(),
                )),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SignVector { entries })
    }

    /// The mixed cell picking `{-p, p}`, `{p}` or `{-p}` from each segment.
    pub fn to_cell(&self, z: &Zonotope) -> Result<MixedCell> {
        if self.entries.len() != z.generators().len() {
            return Err(Error::Dimension(format!(
                "sign vector of length {} for {} generators",
                self.entries.len(),
                z.generators().len()
            )));
        }
        let seq = z.sequence();
        let parts = self
            .entries
            .iter()
            .zip(seq.parts())
            .zip(z.generators())
            .map(|((s, seg), p)| {
                let plus = seg.vertex_index(p).expect("segment vertex");
                let minus = seg.vertex_index(&neg(p)).expect("segment vertex");
                match s {
                    Sign::Zero => vec![minus, plus],
                    Sign::Plus => vec![plus],
                    Sign::Minus => vec![minus],
                }
            })
            .collect();
        Ok(MixedCell::new(parts))
    }
}

/// `m(x)` of the segment sequence in variables `x1..xr`.
pub fn zonotope_dmv(z: &Zonotope) -> Result<RationalFunction> {
    dual_mixed_volume(&z.sequence())
}

/// Sum of the parallelotope cell formulas over a zonotopal tiling.
pub fn tiling_dmv(z: &Zonotope, tiling: &[SignVector]) -> Result<RationalFunction> {
    let d = z.dim();
    let seq = z.sequence();
    let mut cells = Vec::with_capacity(tiling.len());
    for eps in tiling {
        let zeros: Vec<RationalVector> = eps
            .entries
            .iter()
            .zip(z.generators())
            .filter(|(s, _)| **s == Sign::Zero)
            .map(|(_, p)| p.clone())
            .collect();
        if zeros.len() != d || rank(&zeros) < d {
            return Err(Error::InvalidTiling(format!(
                "zero set of {} is not a basis",
                eps.render()
            )));
        }
        cells.push(eps.to_cell(z)?);
    }
    let sub = MixedSubdivision::new(cells);
    validate_mixed_subdivision(&seq, &sub)?;
    let mut acc = RationalFunction::zero(x_vars(seq.len()));
    for cell in &sub.cells {
        let fc = FineMixedCell::new(&seq, cell)?;
        acc = acc.add(&fine_cell_dmv(&fc, false)?)?;
    }
    Ok(acc)
}

/// The two halves `(W₊, W₋)` of the dual volume function of `P`, supported on
/// the cones of `𝒩(P + [-p, p])` with `<p, ·> ≥ 0` and `≤ 0` respectively.
pub fn deletion_contraction_split(
    p: &Polytope,
    dir: &[Rational],
) -> Result<(RationalFunction, RationalFunction)> {
    let d = p.dim();
    if dir.len() != d {
        return Err(Error::Dimension(format!(
            "direction of length {} in dimension {d}",
            dir.len()
        )));
    }
    if dir.iter().all(Zero::is_zero) {
        return Err(Error::InvalidInput("zero direction".into()));
    }
    if !p.is_full_dimensional() {
        return Err(Error::NotFullDimensional {
            found: p.affine_dim(),
            ambient: d,
        });
    }
    let seg = Polytope::new(d, vec![neg(dir), dir.to_vec()])?;
    let sum = minkowski_sum(&[p.clone(), seg], &[Rational::one(), Rational::one()])?;
    let fan = normal_fan(&sum)?;
    let values: Vec<LinearForm> = fan
        .rays
        .iter()
        .map(|v| LinearForm::from_dense(support_value(p, v), v, 0))
        .collect();
    let (mut plus, mut minus) = (Vec::new(), Vec::new());
    for cone in &fan.maximal_cones {
        if cone.iter().any(|&k| dot(dir, &fan.rays[k]).is_positive()) {
            plus.push(cone.clone());
        } else {
            minus.push(cone.clone());
        }
    }
    let half = |cones: Vec<Vec<usize>>| -> Result<RationalFunction> {
        if cones.is_empty() {
            return Ok(RationalFunction::zero(z_vars(d)));
        }
        let sub = Fan {
            dim: d,
            rays: fan.rays.clone(),
            maximal_cones: cones,
            pure_dim: fan.pure_dim,
        };
        f_fan_symbolic(&sub, z_vars(d), &values)
    };
    Ok((half(plus)?, half(minus)?))
}

/// Checks `W₊(z + x p) + W₋(z - x p) = Vol^∨_z(P + x[-p, p])` in `(x, z)`.
pub fn verify_deletion_contraction(p: &Polytope, dir: &[Rational]) -> Result<bool> {
    let d = p.dim();
    let (wp, wm) = deletion_contraction_split(p, dir)?;
    let vars =
        std::sync::Arc::new(VariableTable::indexed("x", 1).concat(&VariableTable::indexed("z", d)));
    let shifted = |sign: i64| -> Vec<LinearForm> {
        (0..d)
            .map(|j| {
                let mut f = LinearForm::var(1 + j);
                f.add_term(0, &(&dir[j] * Rational::from_integer(sign.into())));
                f
            })
            .collect()
    };
    let lhs = wp
        .substitute(vars.clone(), &shifted(1))?
        .add(&wm.substitute(vars.clone(), &shifted(-1))?)?;
    // m(x1, x2, z) of (P, [-p, p]) at x1 = 1, x2 = x.
    let seg = Polytope::new(d, vec![neg(dir), dir.to_vec()])?;
    let m = crate::mixed::dual_mixed_volume_z(&MinkowskiSequence::new(vec![p.clone(), seg])?)?;
    let mut images = vec![LinearForm::constant(Rational::one()), LinearForm::var(0)];
    images.extend((0..d).map(|j| LinearForm::var(1 + j)));
    let rhs = m.substitute(vars, &images)?;
    lhs.equals(&rhs)
}

/// `lim_{t→∞} t · W(z + t p)`, read off term by term.
///
/// Only terms whose `t`-degree is exactly `-1` survive; a term of degree at
/// least zero makes the limit diverge and is reported as an error.
pub fn contraction_limit(w: &RationalFunction, dir: &[Rational]) -> Result<RationalFunction> {
    if dir.len() != w.vars().len() {
        return Err(Error::Dimension(
            "direction must match the variable count".into(),
        ));
    }
    let slope = |f: &LinearForm| -> Rational { f.coeffs().map(|(i, c)| c * &dir[i]).sum() };
    let mut out = RationalFunction::zero(w.vars().clone());
    for Term {
        coeff,
        numer,
        factors,
    } in w.terms()
    {
        let mut c = coeff.clone();
        let (mut num, mut den) = (Vec::new(), Vec::new());
        let mut degree: i64 = 0;
        for f in numer {
            let s = slope(f);
            if s.is_zero() {
                num.push(f.clone());
            } else {
                c *= s;
                degree += 1;
            }
        }
        for f in factors {
            let s = slope(f);
            if s.is_zero() {
                den.push(f.clone());
            } else {
                c /= s;
                degree -= 1;
            }
        }
        match degree {
            -1 => out.push_term(c, num, den)?,
            d if d >= 0 => {
                return Err(Error::InvalidInput("contraction limit diverges".into()));
            }
            _ => {}
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rvec};

    #[test]
    fn rejects_parallel_generators() {
        assert!(Zonotope::new(vec![rvec(&[1, 0]), rvec(&[-2, 0])]).is_err());
        assert!(matches!(
            Zonotope::new(vec![rvec(&[1, 1]), rvec(&[2, 2])]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn sign_vector_round_trip() {
        let z = Zonotope::new(vec![rvec(&[1, 0]), rvec(&[0, 1]), rvec(&[1, 1])]).unwrap();
        let eps = SignVector::parse("0+0").unwrap();
        let cell = eps.to_cell(&z).unwrap();
        assert_eq!(SignVector::from_cell(&z, &cell).unwrap(), eps);
        assert_eq!(eps.render(), "0+0");
    }

    #[test]
    fn limit_picks_degree_minus_one() {
        // 1/((1 + z1)(1 + z2)) along (1, 0) contracts to 1/(1 + z2).
        let vars = z_vars(2);
        let f = |c: i64, a: i64, b: i64| LinearForm::from_parts(rat(c), [(0, rat(a)), (1, rat(b))]);
        let w =
            RationalFunction::from_term(vars.clone(), rat(1), vec![], vec![f(1, 1, 0), f(1, 0, 1)])
                .unwrap();
        let lim = contraction_limit(&w, &[rat(1), rat(0)]).unwrap();
        let expected = RationalFunction::from_term(vars, rat(1), vec![], vec![f(1, 0, 1)]).unwrap();
        assert!(lim.equals(&expected).unwrap());
    }
}
