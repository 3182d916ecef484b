use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::{LinearForm, VariableTable};
use crate::exactnum::{format_rational, Rational};

/// Sparse polynomial with dense exponent vectors as keys.
///
/// Keys are ordered lexicographically in variable order, so iteration in
/// reverse yields the lex-leading monomial first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparsePolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl SparsePolynomial {
    pub fn zero(nvars: usize) -> Self {
        SparsePolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_monomial(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn from_linear(nvars: usize, f: &LinearForm) -> Self {
        let mut p = Self::constant(nvars, f.constant_term().clone());
        for (i, c) in f.coeffs() {
            let mut e = vec![0; nvars];
            e[i] = 1;
            p.add_monomial(e, c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_monomial(&mut self, exps: Vec<u32>, c: Rational) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &SparsePolynomial) {
        for (e, c) in &other.terms {
            self.add_monomial(e.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &SparsePolynomial) -> SparsePolynomial {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &SparsePolynomial) -> SparsePolynomial {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> SparsePolynomial {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        SparsePolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &SparsePolynomial) -> SparsePolynomial {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_monomial(e, c1 * c2);
            }
        }
        out
    }

    /// Multiplies by a linear form without building it as a polynomial.
    pub fn mul_linear(&self, f: &LinearForm) -> SparsePolynomial {
        let mut out = self.scale(f.constant_term());
        for (i, c) in f.coeffs() {
            for (e, a) in &self.terms {
                let mut e = e.clone();
                e[i] += 1;
                out.add_monomial(e, a * c);
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= num_traits::pow(point[i].clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Human-readable rendering, lex-leading monomial first.
    pub fn render(&self, vars: &VariableTable) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        vars.name(i).to_string()
                    } else {
                        format!("{}^{}", vars.name(i), k)
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&format_rational(&mag));
            } else {
                if !mag.is_one() {
                    out.push_str(&format_rational(&mag));
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn product_of_linear_forms() {
        let t = VariableTable::indexed("z", 2);
        let a = LinearForm::from_parts(rat(1), [(0, rat(1))]);
        let b = LinearForm::from_parts(rat(-1), [(0, rat(1))]);
        let p = SparsePolynomial::one(2).mul_linear(&a).mul_linear(&b);
        assert_eq!(p.render(&t), "z1^2 - 1");
        let q = SparsePolynomial::from_linear(2, &a).mul(&SparsePolynomial::from_linear(2, &b));
        assert_eq!(p, q);
        assert_eq!(p.eval(&[rat(3), rat(0)]), rat(8));
        assert_eq!(p.total_degree(), Some(2));
    }

    #[test]
    fn cancellation_removes_terms() {
        let f = LinearForm::var(0);
        let p = SparsePolynomial::from_linear(1, &f);
        assert!(p.sub(&p).is_zero());
    }
}
