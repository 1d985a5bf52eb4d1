//! The algebra generated by C[h_1..h_n] and the shifts s_i^{±1}.
//!
//! `s_i` substitutes `h_i -> h_i - 1`. Elements are kept in normal form with
//! polynomial coefficients on the left: each term means `p(h) * s^k` with
//! `k` an integer shift vector. Products renormalize through
//! `s^k * p(h) = p(h - k) * s^k`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::poly::{MultiIndex, MultiPoly};
use crate::rational::Rat;
use crate::weyl::OpRing;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftOp {
    pub n: usize,
    terms: BTreeMap<MultiIndex, MultiPoly>,
}

impl ShiftOp {
    pub fn zero(n: usize) -> Self {
        ShiftOp { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::from_poly(&MultiPoly::one(n, false))
    }

    pub fn constant(n: usize, c: Rat) -> Self {
        Self::from_poly(&MultiPoly::constant(n, false, c))
    }

    /// Multiplication by a polynomial in h.
    pub fn from_poly(p: &MultiPoly) -> Self {
        let mut s = Self::zero(p.n);
        s.add_term(vec![0; p.n], p.clone());
        s
    }

    /// The variable `h_i` as a multiplication operator (zero-based).
    pub fn h(n: usize, i: usize) -> Self {
        Self::from_poly(&MultiPoly::var(n, false, i))
    }

    /// The shift `s_i^e` for `e = ±1` (or any integer power).
    pub fn sigma(n: usize, i: usize, e: i64) -> Self {
        let mut k = vec![0; n];
        k[i] = e;
        let mut s = Self::zero(n);
        s.add_term(k, MultiPoly::one(n, false));
        s
    }

    pub fn sigma_vec(n: usize, k: MultiIndex) -> Self {
        let mut s = Self::zero(n);
        s.add_term(k, MultiPoly::one(n, false));
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &MultiPoly)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, k: MultiIndex, p: MultiPoly) {
        if p.is_zero() {
            return;
        }
        debug_assert_eq!(k.len(), self.n);
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&p).expect("same variable count");
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (k, p) in other.terms() {
            out.add_term(k.clone(), p.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (k, p) in self.terms() {
            out.add_term(k.clone(), p.neg());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero(self.n);
        for (k, p) in self.terms() {
            out.add_term(k.clone(), p.scale(c));
        }
        out
    }

    /// Exact product in normal form via `s^k p(h) = p(h - k) s^k`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = Self::zero(self.n);
        for (k1, p1) in self.terms() {
            for (k2, p2) in other.terms() {
                let shifted = p2.shift_vars(k1);
                let prod = p1.mul(&shifted).expect("same variable count");
                let mut k = k1.clone();
                for (i, &e) in k2.iter().enumerate() {
                    k[i] += e;
                }
                out.add_term(k, prod);
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Applies the operator to a vector of polynomials in h (a single
    /// coordinate of C\[h\] (x) V): `p(h) s^k . f = p(h) f(h - k)`.
    pub fn apply(&self, f: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.n, false);
        for (k, p) in self.terms() {
            let shifted = f.shift_vars(k);
            out = out.add(&p.mul(&shifted).expect("same n")).expect("same n");
        }
        out
    }

    pub fn text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (k, p) in self.terms() {
            let mut shifts = Vec::new();
            for (i, &e) in k.iter().enumerate() {
                if e == 1 {
                    shifts.push(format!("s{}", i + 1));
                } else if e != 0 {
                    shifts.push(format!("s{}^{e}", i + 1));
                }
            }
            let coeff = format!("({})", p.to_string_with("h"));
            if shifts.is_empty() {
                parts.push(coeff);
            } else {
                parts.push(format!("{}*{}", coeff, shifts.join("*")));
            }
        }
        parts.join(" + ")
    }

    /// True when the operator is multiplication by a polynomial (no shifts).
    pub fn is_multiplication(&self) -> bool {
        self.terms.keys().all(|k| k.iter().all(|&e| e == 0))
    }

    /// If the operator is `c * q` for the given operator `q` and a rational
    /// constant, returns `c`. Used for scalar-quotient comparisons.
    pub fn scalar_ratio_to(&self, other: &Self) -> Option<Rat> {
        if self.is_zero() && other.is_zero() {
            return Some(Rat::one());
        }
        if self.is_zero() || other.is_zero() {
            return None;
        }
        let (k0, p0) = other.terms().next().expect("nonzero");
        let q0 = self.terms.get(k0)?;
        // candidate ratio from the leading coefficients
        let (e0, c0) = p0.terms().next().expect("nonzero poly");
        let d0 = q0.coeff(e0);
        if d0.is_zero() {
            return None;
        }
        let ratio = d0 / c0.clone();
        if &other.scale(&ratio) == self {
            Some(ratio)
        } else {
            None
        }
    }
}

impl OpRing for ShiftOp {
    fn ring_zero(n: usize) -> Self {
        ShiftOp::zero(n)
    }
    fn ring_one(n: usize) -> Self {
        ShiftOp::one(n)
    }
    fn ring_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
    fn ring_scale(&self, c: &Rat) -> Self {
        self.scale(c)
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_text(&self) -> String {
        self.text()
    }
}
