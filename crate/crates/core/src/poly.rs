//! Sparse multivariate Laurent polynomials over the rationals.
//!
//! Terms live in a `BTreeMap` keyed by exponent vector, so iteration is
//! lexicographic and serialized output is canonical. The zero polynomial is
//! the empty map. A `laurent` flag records whether negative exponents are
//! permitted; plain polynomials reject them at construction.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::rational::{rat_to_string, Rat};

/// Exponent vector of a monomial; negative entries are Laurent exponents.
pub type MultiIndex = Vec<i64>;

pub fn zero_index(n: usize) -> MultiIndex {
    vec![0; n]
}

pub fn unit_index(n: usize, i: usize) -> MultiIndex {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

pub fn add_index(a: &MultiIndex, b: &MultiIndex) -> MultiIndex {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    pub n: usize,
    pub laurent: bool,
    terms: BTreeMap<MultiIndex, Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    DimensionMismatch { left: usize, right: usize },
    NegativeExponent,
    ZeroToNegativePower { var: usize },
    IndexOutOfRange { var: usize, n: usize },
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::DimensionMismatch { left, right } => {
                write!(f, "variable count mismatch: {left} vs {right}")
            }
            PolyError::NegativeExponent => {
                write!(f, "negative exponent in a non-Laurent polynomial")
            }
            PolyError::ZeroToNegativePower { var } => {
                write!(f, "evaluation raises zero to a negative power in t{}", var + 1)
            }
            PolyError::IndexOutOfRange { var, n } => {
                write!(f, "variable index {} out of range 1..={n}", var + 1)
            }
        }
    }
}

impl std::error::Error for PolyError {}

impl MultiPoly {
    pub fn zero(n: usize, laurent: bool) -> Self {
        MultiPoly { n, laurent, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, laurent: bool, c: Rat) -> Self {
        let mut p = Self::zero(n, laurent);
        p.add_term(zero_index(n), c);
        p
    }

    pub fn one(n: usize, laurent: bool) -> Self {
        Self::constant(n, laurent, Rat::from_integer(1.into()))
    }

    /// The monomial `c * t^e`.
    pub fn monomial(n: usize, laurent: bool, e: MultiIndex, c: Rat) -> Result<Self, PolyError> {
        assert_eq!(e.len(), n);
        if !laurent && e.iter().any(|&x| x < 0) {
            return Err(PolyError::NegativeExponent);
        }
        let mut p = Self::zero(n, laurent);
        p.add_term(e, c);
        Ok(p)
    }

    /// The variable `t_{i+1}` (zero-based `i`).
    pub fn var(n: usize, laurent: bool, i: usize) -> Self {
        let mut p = Self::zero(n, laurent);
        p.add_term(unit_index(n, i), Rat::from_integer(1.into()));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &MultiIndex) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&zero_index(self.n))
    }

    /// Adds `c * t^e` in place, dropping the term if the sum cancels.
    pub fn add_term(&mut self, e: MultiIndex, c: Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(e.len(), self.n);
        let entry = self.terms.entry(e);
        match entry {
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

    fn check_compatible(&self, other: &Self) -> Result<(), PolyError> {
        if self.n != other.n {
            return Err(PolyError::DimensionMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.laurent = self.laurent || other.laurent;
        for (e, c) in other.terms() {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.n, self.laurent);
        for (e, c) in self.terms() {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.n, self.laurent || other.laurent);
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(add_index(e1, e2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero(self.n, self.laurent);
        if c.is_zero() {
            return out;
        }
        for (e, k) in self.terms() {
            out.add_term(e.clone(), k * c);
        }
        out
    }

    /// Exact partial derivative in variable `i` (zero-based).
    /// On Laurent monomials, `d_i t^m = m_i t^(m - e_i)`.
    pub fn diff(&self, i: usize) -> Result<Self, PolyError> {
        if i >= self.n {
            return Err(PolyError::IndexOutOfRange { var: i, n: self.n });
        }
        let mut out = Self::zero(self.n, self.laurent);
        for (e, c) in self.terms() {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * Rat::from_integer(e[i].into()));
        }
        Ok(out)
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rat]) -> Result<Rat, PolyError> {
        assert_eq!(point.len(), self.n);
        let mut acc = Rat::zero();
        for (e, c) in self.terms() {
            let mut term = c.clone();
            for (i, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                if point[i].is_zero() {
                    if exp < 0 {
                        return Err(PolyError::ZeroToNegativePower { var: i });
                    }
                    term = Rat::zero();
                    break;
                }
                let base = if exp > 0 { point[i].clone() } else { point[i].recip() };
                for _ in 0..exp.unsigned_abs() {
                    term *= &base;
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Substitutes `h_i -> h_i - s_i` for every variable; used by shift operators.
    pub fn shift_vars(&self, s: &[i64]) -> Self {
        assert_eq!(s.len(), self.n);
        let mut out = Self::zero(self.n, self.laurent);
        for (e, c) in self.terms() {
            // expand prod_i (h_i - s_i)^{e_i} by binomials
            let mut partial: Vec<(MultiIndex, Rat)> = vec![(zero_index(self.n), c.clone())];
            for (i, &exp) in e.iter().enumerate() {
                assert!(exp >= 0, "shift substitution needs polynomial exponents");
                if s[i] == 0 {
                    for (idx, _) in partial.iter_mut() {
                        idx[i] = exp;
                    }
                    continue;
                }
                let mut next: Vec<(MultiIndex, Rat)> = Vec::new();
                for (idx, coef) in &partial {
                    // (h - s)^exp = sum_k C(exp,k) h^k (-s)^(exp-k)
                    let mut binom = Rat::from_integer(1.into());
                    for k in (0..=exp).rev() {
                        // binom holds C(exp, k) built from the top down
                        let mut pow = Rat::from_integer(1.into());
                        for _ in 0..(exp - k) {
                            pow *= Rat::from_integer((-s[i]).into());
                        }
                        let mut idx2 = idx.clone();
                        idx2[i] = k;
                        next.push((idx2, coef * &binom * pow));
                        if k > 0 {
                            // C(exp, k-1) = C(exp, k) * k / (exp - k + 1)
                            binom = binom * Rat::from_integer(k.into())
                                / Rat::from_integer((exp - k + 1).into());
                        }
                    }
                }
                partial = next;
            }
            for (idx, coef) in partial {
                out.add_term(idx, coef);
            }
        }
        out
    }

    /// Canonical text form with variables named `prefix1..prefixN`. Signs
    /// are folded into the separators so the output re-parses.
    pub fn to_string_with(&self, prefix: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, c) in self.terms() {
            let negative = c < &Rat::from_integer(0.into());
            let magnitude = if negative { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut factors = Vec::new();
            for (i, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                if exp == 1 {
                    factors.push(format!("{prefix}{}", i + 1));
                } else {
                    factors.push(format!("{prefix}{}^{exp}", i + 1));
                }
            }
            if factors.is_empty() {
                out.push_str(&rat_to_string(&magnitude));
            } else {
                out.push_str(&format!("{}*{}", rat_to_string(&magnitude), factors.join("*")));
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rint};

    fn tvar(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, false, i)
    }

    #[test]
    fn difference_of_squares() {
        let n = 2;
        let t1 = tvar(n, 0);
        let t2 = tvar(n, 1);
        let p = t1.add(&t2).unwrap();
        let q = t1.sub(&t2).unwrap();
        let prod = p.mul(&q).unwrap();
        let expect = t1.mul(&t1).unwrap().sub(&t2.mul(&t2).unwrap()).unwrap();
        assert_eq!(prod, expect);
    }

    #[test]
    fn add_zero_is_identity() {
        let p = tvar(3, 0).mul(&tvar(3, 1)).unwrap();
        let z = MultiPoly::zero(3, false);
        assert_eq!(p.add(&z).unwrap(), p);
    }

    #[test]
    fn scalar_monomial_product() {
        // (1/2 t1) * (2/3 t1^2) = 1/3 t1^3
        let a = tvar(1, 0).scale(&rat(1, 2));
        let b = MultiPoly::monomial(1, false, vec![2], rat(2, 3)).unwrap();
        let prod = a.mul(&b).unwrap();
        let expect = MultiPoly::monomial(1, false, vec![3], rat(1, 3)).unwrap();
        assert_eq!(prod, expect);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let p = tvar(2, 0);
        let q = tvar(3, 0);
        assert!(matches!(p.add(&q), Err(PolyError::DimensionMismatch { .. })));
    }

    #[test]
    fn derivative_cases() {
        // d1(t1^2 t2) = 2 t1 t2
        let p = MultiPoly::monomial(2, false, vec![2, 1], rint(1)).unwrap();
        let d = p.diff(0).unwrap();
        assert_eq!(d, MultiPoly::monomial(2, false, vec![1, 1], rint(2)).unwrap());
        // d1(t1^-2) = -2 t1^-3
        let q = MultiPoly::monomial(1, true, vec![-2], rint(1)).unwrap();
        assert_eq!(q.diff(0).unwrap(), MultiPoly::monomial(1, true, vec![-3], rint(-2)).unwrap());
        // d2(t1^3) = 0
        let r = MultiPoly::monomial(2, false, vec![3, 0], rint(1)).unwrap();
        assert!(r.diff(1).unwrap().is_zero());
    }

    #[test]
    fn evaluation_cases() {
        // h1^2 + h2 at (2,3) = 7
        let mut p = MultiPoly::zero(2, false);
        p.add_term(vec![2, 0], rint(1));
        p.add_term(vec![0, 1], rint(1));
        assert_eq!(p.eval(&[rint(2), rint(3)]).unwrap(), rint(7));
        // constant 5/7 anywhere
        let c = MultiPoly::constant(2, false, rat(5, 7));
        assert_eq!(c.eval(&[rint(9), rint(-4)]).unwrap(), rat(5, 7));
        // t1^-1 at 1/2 = 2
        let inv = MultiPoly::monomial(1, true, vec![-1], rint(1)).unwrap();
        assert_eq!(inv.eval(&[rat(1, 2)]).unwrap(), rint(2));
        // zero to a negative power is rejected
        assert!(inv.eval(&[rint(0)]).is_err());
    }

    #[test]
    fn mixed_partials_commute() {
        let mut p = MultiPoly::zero(3, true);
        p.add_term(vec![2, -1, 3], rat(3, 5));
        p.add_term(vec![-2, 4, 0], rat(-1, 7));
        p.add_term(vec![0, 0, 1], rint(11));
        for i in 0..3 {
            for j in 0..3 {
                let a = p.diff(i).unwrap().diff(j).unwrap();
                let b = p.diff(j).unwrap().diff(i).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn shift_vars_expands_binomially() {
        // (h1 - 1)^2 = h1^2 - 2 h1 + 1
        let p = MultiPoly::monomial(1, false, vec![2], rint(1)).unwrap();
        let shifted = p.shift_vars(&[1]);
        let mut expect = MultiPoly::zero(1, false);
        expect.add_term(vec![2], rint(1));
        expect.add_term(vec![1], rint(-2));
        expect.add_term(vec![0], rint(1));
        assert_eq!(shifted, expect);
    }

    #[test]
    fn canonical_form_sorted() {
        let mut p = MultiPoly::zero(2, false);
        p.add_term(vec![1, 0], rat(1, 2));
        p.add_term(vec![0, 2], rint(-3));
        assert_eq!(p.to_string_with("t"), "-3*t2^2 + 1/2*t1");
    }
}
