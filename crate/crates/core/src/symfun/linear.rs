use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, Rational};

/// Ordered list of distinct variable names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VariableTable {
    names: Vec<String>,
}

impl VariableTable {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = std::collections::HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(Error::InvalidInput(format!("duplicate variable `{n}`")));
            }
        }
        Ok(VariableTable { names })
    }

    /// `prefix1, …, prefixN`.
    pub fn indexed(prefix: &str, n: usize) -> Self {
        VariableTable {
            names: (1..=n).map(|i| format!("{prefix}{i}")).collect(),
        }
    }

    /// Concatenation; panics if names collide.
    pub fn concat(&self, other: &VariableTable) -> Self {
        let mut names = self.names.clone();
        names.extend(other.names.iter().cloned());
        VariableTable::new(names).expect("disjoint variable tables")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }
}

/// Affine-linear form `constant + Σ coeff_i · var_i` over a variable table.
///
/// Variables are referenced by index; the table lives with the owning
/// `RationalFunction`. Field order makes the derived `Ord` compare
/// coefficients before the constant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LinearForm {
    coeffs: BTreeMap<usize, Rational>,
    constant: Rational,
}

impl LinearForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        LinearForm {
            coeffs: BTreeMap::new(),
            constant: c,
        }
    }

    pub fn var(i: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(i, Rational::one());
        LinearForm {
            coeffs,
            constant: Rational::zero(),
        }
    }

    pub fn from_parts(
        constant: Rational,
        coeffs: impl IntoIterator<Item = (usize, Rational)>,
    ) -> Self {
        let mut f = LinearForm::constant(constant);
        for (i, c) in coeffs {
            f.add_term(i, &c);
        }
        f
    }

    /// Dense coefficients `c` with `Σ c_i · var_{offset+i}`.
    pub fn from_dense(constant: Rational, coeffs: &[Rational], offset: usize) -> Self {
        LinearForm::from_parts(
            constant,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (offset + i, c.clone())),
        )
    }

    pub fn constant_term(&self) -> &Rational {
        &self.constant
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn max_var(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_term(&mut self, i: usize, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(i).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    pub fn add_constant(&mut self, c: &Rational) {
        self.constant += c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.constant.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        let mut out = self.clone();
        out.constant += &other.constant;
        for (&i, c) in &other.coeffs {
            out.add_term(i, c);
        }
        out
    }

    pub fn sub(&self, other: &LinearForm) -> LinearForm {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> LinearForm {
        if s.is_zero() {
            return LinearForm::zero();
        }
        LinearForm {
            coeffs: self.coeffs.iter().map(|(&i, c)| (i, c * s)).collect(),
            constant: &self.constant * s,
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .fold(self.constant.clone(), |acc, (&i, c)| acc + c * &point[i])
    }

    /// Replaces each variable `i` by `images[i]`.
    pub fn substitute(&self, images: &[LinearForm]) -> LinearForm {
        let mut out = LinearForm::constant(self.constant.clone());
        for (&i, c) in &self.coeffs {
            out = out.add(&images[i].scale(c));
        }
        out
    }

    /// Splits `self = s · canonical` with `canonical` primitive integer and
    /// its first nonzero entry (variables in order, then the constant) positive.
    pub fn canonicalize(&self) -> (Rational, LinearForm) {
        if self.is_zero() {
            return (Rational::one(), LinearForm::zero());
        }
        let entries = self.coeffs.values().chain(std::iter::once(&self.constant));
        let lcm = entries.clone().fold(BigInt::one(), |a, x| a.lcm(x.denom()));
        let g = entries.fold(BigInt::zero(), |a, x| a.gcd(&(x * &lcm).to_integer()));
        let lead = self.coeffs.values().next().unwrap_or(&self.constant);
        let mut s = Rational::new(g, lcm);
        if lead.is_negative() {
            s = -s;
        }
        let inv = s.recip();
        (s, self.scale(&inv))
    }

    pub fn is_canonical(&self) -> bool {
        let (s, _) = self.canonicalize();
        s.is_one()
    }

    /// Inverse of [`LinearForm::render`]: terms like `2*z1`, `-z2`, `3/4`.
    pub fn parse(s: &str, vars: &VariableTable) -> Result<LinearForm> {
        let bad = || Error::Parse(format!("cannot read linear form `{s}`"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut f = LinearForm::zero();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let mut sign = Rational::one();
            while let Some(c) = rest.chars().next().filter(|c| *c == '+' || *c == '-') {
                if c == '-' {
                    sign = -sign;
                }
                rest = &rest[1..];
            }
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let (term, tail) = rest.split_at(end);
            rest = tail;
            let split = term
                .find(|c: char| c.is_ascii_alphabetic())
                .unwrap_or(term.len());
            let (coef, name) = term.split_at(split);
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let c = if coef.is_empty() {
                if name.is_empty() {
                    return Err(bad());
                }
                Rational::one()
            } else {
                crate::exactnum::parse_rational(coef).map_err(|_| bad())?
            } * sign;
            if name.is_empty() {
                f.add_constant(&c);
            } else {
                f.add_term(vars.require(name)?, &c);
            }
        }
        Ok(f)
    }

    pub fn render(&self, vars: &VariableTable) -> String {
        let mut out = String::new();
        for (&i, c) in &self.coeffs {
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                let _ = write!(out, "{}*", format_rational(&mag));
            }
            out.push_str(vars.name(i));
        }
        if out.is_empty() {
            return format_rational(&self.constant);
        }
        if !self.constant.is_zero() {
            let neg = self.constant.is_negative();
            let _ = write!(
                out,
                "{}{}",
                if neg { " - " } else { " + " },
                format_rational(&self.constant.abs())
            );
        }
        out
    }
}
