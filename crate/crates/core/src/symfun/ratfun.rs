use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{LinearForm, SparsePolynomial, VariableTable};
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, rat, Rational};

/// Seed of the random evaluation pre-check used by [`RationalFunction::equals`].
pub const EQUALITY_SEED: u64 = 0;

/// `coeff · Π numer / Π factors` with every linear form canonical.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub coeff: Rational,
    pub numer: Vec<LinearForm>,
    pub factors: Vec<LinearForm>,
}

impl Term {
    /// Canonicalizes all forms, absorbing scalars into the coefficient.
    /// Returns `Ok(None)` when the term vanishes identically.
    pub fn canonical(
        coeff: Rational,
        numer: impl IntoIterator<Item = LinearForm>,
        factors: impl IntoIterator<Item = LinearForm>,
    ) -> Result<Option<Term>> {
        let mut c = coeff;
        let mut den = Vec::new();
        for f in factors {
            if f.is_zero() {
                return Err(Error::DegenerateSubstitution { factor: "0".into() });
            }
            let (s, g) = f.canonicalize();
            c /= s;
            if !g.is_constant() {
                den.push(g);
            }
        }
        let mut num = Vec::new();
        for f in numer {
            if f.is_zero() {
                return Ok(None);
            }
            let (s, g) = f.canonicalize();
            c *= s;
            if !g.is_constant() {
                num.push(g);
            }
        }
        if c.is_zero() {
            return Ok(None);
        }
        den.sort();
        num.sort();
        // Cancel numerator factors against equal denominator factors.
        let (mut i, mut j) = (0, 0);
        let (mut keep_n, mut keep_d) = (Vec::new(), Vec::new());
        while i < num.len() && j < den.len() {
            match num[i].cmp(&den[j]) {
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
                std::cmp::Ordering::Less => {
                    keep_n.push(num[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    keep_d.push(den[j].clone());
                    j += 1;
                }
            }
        }
        keep_n.extend_from_slice(&num[i..]);
        keep_d.extend_from_slice(&den[j..]);
        Ok(Some(Term {
            coeff: c,
            numer: keep_n,
            factors: keep_d,
        }))
    }

    pub fn eval(&self, point: &[Rational], vars: &VariableTable) -> Result<Rational> {
        let mut v = self.coeff.clone();
        for f in &self.numer {
            v *= f.eval(point);
        }
        for f in &self.factors {
            let x = f.eval(point);
            if x.is_zero() {
                return Err(Error::Pole {
                    factor: f.render(vars),
                });
            }
            v /= x;
        }
        Ok(v)
    }
}

/// Single-fraction presentation `numerator / Π factor^mult`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub numerator: SparsePolynomial,
    pub denominator: Vec<(LinearForm, u32)>,
}

/// Rational function kept as a sum of simple fractions over linear forms.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    vars: Arc<VariableTable>,
    terms: Vec<Term>,
    normal: OnceLock<NormalForm>,
}

impl PartialEq for RationalFunction {
    /// Structural equality of the term lists; use [`RationalFunction::equals`]
    /// for mathematical equality.
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

impl RationalFunction {
    pub fn zero(vars: Arc<VariableTable>) -> Self {
        RationalFunction {
            vars,
            terms: Vec::new(),
            normal: OnceLock::new(),
        }
    }

    pub fn constant(vars: Arc<VariableTable>, c: Rational) -> Self {
        Self::from_term(vars, c, Vec::new(), Vec::new()).expect("constant term")
    }

    /// `coeff · Π numer / Π factors`.
    pub fn from_term(
        vars: Arc<VariableTable>,
        coeff: Rational,
        numer: Vec<LinearForm>,
        factors: Vec<LinearForm>,
    ) -> Result<Self> {
        let mut out = Self::zero(vars);
        if let Some(t) = Term::canonical(coeff, numer, factors)? {
            out.terms.push(t);
        }
        Ok(out)
    }

    /// Builds from raw terms, canonicalizing each.
    pub fn from_terms(vars: Arc<VariableTable>, raw: Vec<Term>) -> Result<Self> {
        let mut out = Self::zero(vars);
        for t in raw {
            if let Some(t) = Term::canonical(t.coeff, t.numer, t.factors)? {
                out.terms.push(t);
            }
        }
        Ok(out)
    }

    pub fn vars(&self) -> &Arc<VariableTable> {
        &self.vars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn push_term(
        &mut self,
        coeff: Rational,
        numer: Vec<LinearForm>,
        factors: Vec<LinearForm>,
    ) -> Result<()> {
        if let Some(t) = Term::canonical(coeff, numer, factors)? {
            self.terms.push(t);
            self.normal = OnceLock::new();
        }
        Ok(())
    }

    fn check_vars(&self, other: &RationalFunction) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &RationalFunction) -> Result<RationalFunction> {
        self.check_vars(other)?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(RationalFunction {
            vars: self.vars.clone(),
            terms,
            normal: OnceLock::new(),
        })
    }

    pub fn sub(&self, other: &RationalFunction) -> Result<RationalFunction> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RationalFunction {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, s: &Rational) -> RationalFunction {
        if s.is_zero() {
            return Self::zero(self.vars.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: &t.coeff * s,
                ..t.clone()
            })
            .collect();
        RationalFunction {
            vars: self.vars.clone(),
            terms,
            normal: OnceLock::new(),
        }
    }

    pub fn sum<'a>(
        vars: Arc<VariableTable>,
        items: impl IntoIterator<Item = &'a RationalFunction>,
    ) -> Result<RationalFunction> {
        let mut acc = Self::zero(vars);
        for f in items {
            acc.check_vars(f)?;
            acc.terms.extend(f.terms.iter().cloned());
        }
        Ok(acc)
    }

    /// Product, distributing over terms.
    pub fn mul(&self, other: &RationalFunction) -> Result<RationalFunction> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.vars.clone());
        for a in &self.terms {
            for b in &other.terms {
                let numer = a.numer.iter().chain(&b.numer).cloned().collect();
                let factors = a.factors.iter().chain(&b.factors).cloned().collect();
                out.push_term(&a.coeff * &b.coeff, numer, factors)?;
            }
        }
        Ok(out)
    }

    /// Multiplies every term by `Π numer / Π factors`.
    pub fn mul_monomial_ratio(
        &self,
        numer: &[LinearForm],
        factors: &[LinearForm],
    ) -> Result<RationalFunction> {
        let one = RationalFunction::from_term(
            self.vars.clone(),
            Rational::one(),
            numer.to_vec(),
            factors.to_vec(),
        )?;
        self.mul(&one)
    }

    /// Merges terms with identical forms and drops zero coefficients.
    pub fn collect_like_terms(&self) -> RationalFunction {
        RationalFunction {
            vars: self.vars.clone(),
            terms: combine_like(self.terms.clone()),
            normal: OnceLock::new(),
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.vars.len() {
            return Err(Error::Dimension(format!(
                "expected {} values, got {}",
                self.vars.len(),
                point.len()
            )));
        }
        let mut acc = Rational::zero();
        for t in &self.terms {
            acc += t.eval(point, &self.vars)?;
        }
        Ok(acc)
    }

    pub fn eval_named(&self, point: &BTreeMap<String, Rational>) -> Result<Rational> {
        let mut dense = Vec::with_capacity(self.vars.len());
        for name in self.vars.names() {
            dense.push(
                point
                    .get(name)
                    .cloned()
                    .ok_or_else(|| Error::UnknownVariable(name.clone()))?,
            );
        }
        self.eval(&dense)
    }

    /// Substitutes `images[i]` (forms over `target`) for variable `i`.
    pub fn substitute(
        &self,
        target: Arc<VariableTable>,
        images: &[LinearForm],
    ) -> Result<RationalFunction> {
        if images.len() != self.vars.len() {
            return Err(Error::Dimension(
                "substitution must map every variable".into(),
            ));
        }
        let mut out = Self::zero(target.clone());
        for t in &self.terms {
            let mut factors = Vec::with_capacity(t.factors.len());
            for f in &t.factors {
                let g = f.substitute(images);
                if g.is_zero() {
                    return Err(Error::DegenerateSubstitution {
                        factor: f.render(&self.vars),
                    });
                }
                factors.push(g);
            }
            let numer = t.numer.iter().map(|f| f.substitute(images)).collect();
            out.push_term(t.coeff.clone(), numer, factors)?;
        }
        Ok(out)
    }

    /// Substitution by variable name; unmapped variables go to the
    /// same-named variable of `target`.
    pub fn substitute_named(
        &self,
        target: Arc<VariableTable>,
        map: &BTreeMap<String, LinearForm>,
    ) -> Result<RationalFunction> {
        let mut images = Vec::with_capacity(self.vars.len());
        for name in self.vars.names() {
            match map.get(name) {
                Some(f) => images.push(f.clone()),
                None => images.push(LinearForm::var(target.require(name)?)),
            }
        }
        self.substitute(target, &images)
    }

    /// Common-denominator form. Denominator factors appear at their maximal
    /// multiplicity over terms; the numerator is expanded exactly.
    pub fn normal_form(&self) -> &NormalForm {
        self.normal
            .get_or_init(|| normalize_terms(self.vars.len(), &combine_like(self.terms.clone())))
    }

    /// Exact zero test by recursive partial fractions.
    pub fn is_zero(&self) -> bool {
        is_identically_zero(self.terms.clone())
    }

    /// Mathematical equality with the default seed.
    pub fn equals(&self, other: &RationalFunction) -> Result<bool> {
        self.equals_seeded(other, EQUALITY_SEED)
    }

    /// Random evaluation pre-check followed by an exact zero test of the difference.
    pub fn equals_seeded(&self, other: &RationalFunction, seed: u64) -> Result<bool> {
        let diff = self.sub(other)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut checked = 0;
        for _ in 0..32 {
            if checked == 3 {
                break;
            }
            let point: Vec<Rational> = (0..self.vars.len())
                .map(|_| {
                    Rational::new(
                        rng.gen_range(-5000i64..=5000).into(),
                        rng.gen_range(1i64..=97).into(),
                    )
                })
                .collect();
            match diff.eval(&point) {
                Ok(v) if !v.is_zero() => return Ok(false),
                Ok(_) => checked += 1,
                Err(_) => continue,
            }
        }
        Ok(diff.is_zero())
    }

    /// Sum of fractions, e.g. `1/((z1 - 1)(z2 + 1)) - 2/(z1)`.
    pub fn render(&self) -> String {
        let terms = combine_like(self.terms.clone());
        if terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for t in &terms {
            let neg = t.coeff.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = t.coeff.abs();
            let mut num = String::new();
            if !t.numer.is_empty() {
                if !mag.is_one() {
                    num.push_str(&format_rational(&mag));
                }
                for f in &t.numer {
                    num.push_str(&format!("({})", f.render(&self.vars)));
                }
            } else {
                num.push_str(&format_rational(&mag));
            }
            out.push_str(&num);
            if !t.factors.is_empty() {
                out.push_str("/(");
                for f in &t.factors {
                    out.push_str(&format!("({})", f.render(&self.vars)));
                }
                out.push(')');
            }
        }
        out
    }
}

pub(crate) fn combine_like(terms: Vec<Term>) -> Vec<Term> {
    let mut map: BTreeMap<(Vec<LinearForm>, Vec<LinearForm>), Rational> = BTreeMap::new();
    for t in terms {
        *map.entry((t.numer, t.factors))
            .or_insert_with(Rational::zero) += t.coeff;
    }
    map.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((numer, factors), coeff)| Term {
            coeff,
            numer,
            factors,
        })
        .collect()
}

fn normalize_terms(nvars: usize, terms: &[Term]) -> NormalForm {
    let mut den: BTreeMap<LinearForm, u32> = BTreeMap::new();
    let counts: Vec<BTreeMap<&LinearForm, u32>> = terms
        .iter()
        .map(|t| {
            let mut m = BTreeMap::new();
            for f in &t.factors {
                *m.entry(f).or_insert(0) += 1;
            }
            m
        })
        .collect();
    for m in &counts {
        for (f, &k) in m {
            let e = den.entry((*f).clone()).or_insert(0);
            *e = (*e).max(k);
        }
    }
    let mut numerator = SparsePolynomial::zero(nvars);
    for (t, m) in terms.iter().zip(&counts) {
        let mut p = SparsePolynomial::constant(nvars, t.coeff.clone());
        for f in &t.numer {
            p = p.mul_linear(f);
        }
        for (f, &k) in &den {
            let have = m.get(f).copied().unwrap_or(0);
            for _ in have..k {
                p = p.mul_linear(f);
            }
        }
        numerator.add_assign(&p);
    }
    if numerator.is_zero() {
        den.clear();
    }
    NormalForm {
        numerator,
        denominator: den.into_iter().collect(),
    }
}

/// Decides `Σ terms ≡ 0` by partial fractions in one variable at a time.
///
/// Over the field of rational functions in the remaining variables, the
/// partial fraction decomposition in `y` is unique, so the sum vanishes iff
/// every principal-part coefficient and every polynomial-part coefficient
/// vanishes. Those coefficients are again sums of terms over linear forms.
fn is_identically_zero(terms: Vec<Term>) -> bool {
    let terms = combine_like(terms);
    if terms.is_empty() {
        return true;
    }
    let mut occurrences: BTreeMap<usize, usize> = BTreeMap::new();
    for t in &terms {
        for f in t.factors.iter().chain(&t.numer) {
            for (i, _) in f.coeffs() {
                *occurrences.entry(i).or_insert(0) += 1;
            }
        }
    }
    if occurrences.is_empty() {
        return false;
    }
    let y = *occurrences
        .iter()
        .min_by_key(|(i, c)| (**c, std::cmp::Reverse(**i)))
        .map(|(i, _)| i)
        .unwrap();

    #[derive(PartialEq, Eq, PartialOrd, Ord)]
    enum Key {
        Pole(LinearForm, u32),
        Poly(i64),
    }
    let mut groups: BTreeMap<Key, Vec<Term>> = BTreeMap::new();
    let mut push = |key: Key, coeff: Rational, numer: Vec<LinearForm>, den: Vec<LinearForm>| {
        if let Ok(Some(t)) = Term::canonical(coeff, numer, den) {
            groups.entry(key).or_default().push(t);
        }
    };

    for t in terms {
        // y-dependent denominators as α (y - a) with multiplicity.
        let mut poles: Vec<(LinearForm, u32)> = Vec::new();
        let mut base_den = Vec::new();
        let mut coeff = t.coeff.clone();
        for f in &t.factors {
            let alpha = f.coeff(y);
            if alpha.is_zero() {
                base_den.push(f.clone());
                continue;
            }
            let mut rest = f.clone();
            rest.add_term(y, &-alpha.clone());
            let a = rest.scale(&-alpha.recip());
            coeff /= &alpha;
            match poles.iter_mut().find(|(p, _)| *p == a) {
                Some((_, m)) => *m += 1,
                None => poles.push((a, 1)),
            }
        }
        let mut ynum: Vec<(Rational, LinearForm)> = Vec::new();
        let mut base_num = Vec::new();
        for f in &t.numer {
            let g = f.coeff(y);
            if g.is_zero() {
                base_num.push(f.clone());
            } else {
                let mut rest = f.clone();
                rest.add_term(y, &-g.clone());
                ynum.push((g, rest));
            }
        }
        let p = ynum.len() as i64;
        let mdeg: i64 = poles.iter().map(|(_, m)| *m as i64).sum();

        // Polynomial part, from the expansion at infinity.
        if p >= mdeg {
            for w in 0..=(p - mdeg) as u32 {
                for s_count in 0..=w.min(p as u32) {
                    for subset in subsets(ynum.len(), s_count as usize) {
                        let mut c = coeff.clone();
                        let mut numer = base_num.clone();
                        for (i, (g, d)) in ynum.iter().enumerate() {
                            if subset.contains(&i) {
                                numer.push(d.clone());
                            } else {
                                c *= g;
                            }
                        }
                        for dist in distributions(poles.len(), w - s_count) {
                            let mut c2 = c.clone();
                            let mut numer2 = numer.clone();
                            for ((a, m), &s) in poles.iter().zip(&dist) {
                                c2 *= binom(*m + s - 1, s);
                                for _ in 0..s {
                                    numer2.push(a.clone());
                                }
                            }
                            push(Key::Poly(p - mdeg - w as i64), c2, numer2, base_den.clone());
                        }
                    }
                }
            }
        }

        // Principal parts at each pole.
        for (j, (aj, mj)) in poles.iter().enumerate() {
            let others: Vec<(LinearForm, u32)> = poles
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != j)
                .map(|(_, (ak, mk))| (aj.sub(ak), *mk))
                .collect();
            let e: Vec<(Rational, LinearForm)> = ynum
                .iter()
                .map(|(g, d)| (g.clone(), aj.scale(g).add(d)))
                .collect();
            for q in 0..*mj {
                for s_count in 0..=q.min(e.len() as u32) {
                    for subset in subsets(e.len(), s_count as usize) {
                        let mut c = coeff.clone();
                        let mut numer = base_num.clone();
                        for (i, (g, ei)) in e.iter().enumerate() {
                            if subset.contains(&i) {
                                c *= g;
                            } else {
                                numer.push(ei.clone());
                            }
                        }
                        for dist in distributions(others.len(), q - s_count) {
                            let mut c2 = c.clone();
                            let mut den = base_den.clone();
                            for ((dk, mk), &s) in others.iter().zip(&dist) {
                                c2 *= binom(*mk + s - 1, s);
                                if s % 2 == 1 {
                                    c2 = -c2;
                                }
                                for _ in 0..(*mk + s) {
                                    den.push(dk.clone());
                                }
                            }
                            push(Key::Pole(aj.clone(), mj - q), c2, numer.clone(), den);
                        }
                    }
                }
            }
        }
    }
    groups.into_values().all(is_identically_zero)
}

fn binom(n: u32, k: u32) -> Rational {
    let mut r = Rational::one();
    for i in 0..k {
        r = r * rat((n - i) as i64) / rat((i + 1) as i64);
    }
    r
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// All vectors of `parts` nonnegative integers summing to `total`.
fn distributions(parts: usize, total: u32) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in distributions(parts - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
