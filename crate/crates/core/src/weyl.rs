//! The Weyl algebra D(n) of polynomial differential operators.
//!
//! Elements are kept in normal order: every stored monomial means
//! `t^a d^b` with all multiplication operators to the left of all partial
//! derivatives. Products are renormalized through the defining relation
//! `d_i t_i = t_i d_i + 1`, variable by variable.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::poly::{MultiIndex, MultiPoly};
use crate::rational::{falling, rat_to_string, rint, Rat};

/// Exponents of a normal-ordered Weyl monomial `t^t_exp d^d_exp`.
pub type WeylKey = (MultiIndex, MultiIndex);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylOp {
    pub n: usize,
    terms: BTreeMap<WeylKey, Rat>,
}

/// Automorphism twists of D(n).
#[derive(Debug, Clone)]
pub enum Twist {
    /// `t_i -> d_i, d_i -> -t_i` for `i` in the set, identity elsewhere.
    Fourier(Vec<usize>),
    /// `t_i -> t_i, d_i -> d_i + dg/dt_i`; `g` must have zero constant term.
    Exp(MultiPoly),
}

impl WeylOp {
    pub fn zero(n: usize) -> Self {
        WeylOp { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rat::one())
    }

    pub fn constant(n: usize, c: Rat) -> Self {
        let mut w = Self::zero(n);
        w.add_term((vec![0; n], vec![0; n]), c);
        w
    }

    /// The multiplication operator `t_i` (zero-based index).
    pub fn t(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        let mut w = Self::zero(n);
        w.add_term((e, vec![0; n]), Rat::one());
        w
    }

    /// The derivative `d_i` (zero-based index).
    pub fn d(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        let mut w = Self::zero(n);
        w.add_term((vec![0; n], e), Rat::one());
        w
    }

    pub fn monomial(n: usize, t_exp: MultiIndex, d_exp: MultiIndex, c: Rat) -> Self {
        assert!(t_exp.iter().all(|&x| x >= 0) && d_exp.iter().all(|&x| x >= 0));
        let mut w = Self::zero(n);
        w.add_term((t_exp, d_exp), c);
        w
    }

    /// Multiplication operator by a polynomial (non-negative exponents).
    pub fn from_poly(p: &MultiPoly) -> Self {
        let mut w = Self::zero(p.n);
        for (e, c) in p.terms() {
            assert!(e.iter().all(|&x| x >= 0), "Laurent multiplier is not in D(n)");
            w.add_term((e.clone(), vec![0; p.n]), c.clone());
        }
        w
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylKey, &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, key: WeylKey, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
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

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (k, c) in self.terms() {
            out.add_term(k.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (k, v) in self.terms() {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    /// Exact product, renormal-ordered.
    ///
    /// Per variable, `d^b t^c = sum_k C(b,k) C(c,k) k! t^(c-k) d^(b-k)`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zero(n);
        for ((a1, b1), c1) in self.terms() {
            for ((a2, b2), c2) in other.terms() {
                // (t^a1 d^b1)(t^a2 d^b2): commute d^b1 past t^a2 variable-wise
                let mut partial: Vec<(MultiIndex, MultiIndex, Rat)> =
                    vec![(vec![0; n], vec![0; n], c1 * c2)];
                for i in 0..n {
                    let b = b1[i];
                    let c = a2[i];
                    let kmax = b.min(c);
                    let mut next = Vec::with_capacity(partial.len() * (kmax as usize + 1));
                    for (te, de, coef) in &partial {
                        for k in 0..=kmax {
                            // C(b,k) C(c,k) k!
                            let factor = binom(b, k) * binom(c, k) * fact(k);
                            let mut te2 = te.clone();
                            let mut de2 = de.clone();
                            te2[i] = a1[i] + c - k;
                            de2[i] = b - k + b2[i];
                            next.push((te2, de2, coef * factor));
                        }
                    }
                    partial = next;
                }
                for (te, de, coef) in partial {
                    out.add_term((te, de), coef);
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Applies a D(n) automorphism, renormal-ordering the result.
    ///
    /// The twist is applied generator-wise: each stored monomial is rebuilt as
    /// a product of generator images.
    pub fn twist(&self, twist: &Twist) -> Self {
        let n = self.n;
        match twist {
            Twist::Fourier(s) => {
                let in_s = membership(n, s);
                let mut out = Self::zero(n);
                for ((te, de), c) in self.terms() {
                    let mut acc = Self::constant(n, c.clone());
                    for i in 0..n {
                        for _ in 0..te[i] {
                            let img = if in_s[i] { Self::d(n, i) } else { Self::t(n, i) };
                            acc = acc.mul(&img);
                        }
                    }
                    for i in 0..n {
                        for _ in 0..de[i] {
                            let img =
                                if in_s[i] { Self::t(n, i).neg() } else { Self::d(n, i) };
                            acc = acc.mul(&img);
                        }
                    }
                    out = out.add(&acc);
                }
                out
            }
            Twist::Exp(g) => {
                assert!(g.constant_term().is_zero(), "exp twist needs constant-free g");
                let grads: Vec<WeylOp> = (0..n)
                    .map(|i| {
                        let gi = g.diff(i).expect("index in range");
                        Self::d(n, i).add(&Self::from_poly(&gi))
                    })
                    .collect();
                let mut out = Self::zero(n);
                for ((te, de), c) in self.terms() {
                    let mut acc = Self::monomial(n, te.clone(), vec![0; n], c.clone());
                    for i in 0..n {
                        for _ in 0..de[i] {
                            acc = acc.mul(&grads[i]);
                        }
                    }
                    out = out.add(&acc);
                }
                out
            }
        }
    }

    /// Applies the operator to the Laurent monomial `t^m`.
    ///
    /// With `corner = Some(S)` the result is projected to the corner region
    /// of `D+_(S)`: every output monomial with `m_i >= 0` for some `i` in `S`
    /// is discarded.
    pub fn apply_to_monomial(
        &self,
        m: &MultiIndex,
        corner: Option<&[usize]>,
    ) -> BTreeMap<MultiIndex, Rat> {
        assert_eq!(m.len(), self.n);
        let in_s = corner.map(|s| membership(self.n, s));
        let mut out: BTreeMap<MultiIndex, Rat> = BTreeMap::new();
        for ((te, de), c) in self.terms() {
            let mut coef = c.clone();
            let mut e = m.clone();
            for i in 0..self.n {
                if de[i] > 0 {
                    coef *= falling(&rint(m[i]), de[i] as u32);
                    if coef.is_zero() {
                        break;
                    }
                    e[i] -= de[i];
                }
            }
            if coef.is_zero() {
                continue;
            }
            for i in 0..self.n {
                e[i] += te[i];
            }
            if let Some(ref mask) = in_s {
                if (0..self.n).any(|i| mask[i] && e[i] >= 0) {
                    continue;
                }
            }
            let entry = out.entry(e).or_insert_with(Rat::zero);
            *entry += coef;
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Applies the operator to a formal monomial `t^(offset + k)` with
    /// rational offset; used by coherent families. No corner projection.
    pub fn apply_to_offset_monomial(
        &self,
        offset: &[Rat],
        k: &MultiIndex,
    ) -> BTreeMap<MultiIndex, Rat> {
        assert_eq!(offset.len(), self.n);
        let mut out: BTreeMap<MultiIndex, Rat> = BTreeMap::new();
        for ((te, de), c) in self.terms() {
            let mut coef = c.clone();
            let mut e = k.clone();
            for i in 0..self.n {
                if de[i] > 0 {
                    let x = &offset[i] + rint(k[i]);
                    coef *= falling(&x, de[i] as u32);
                    if coef.is_zero() {
                        break;
                    }
                    e[i] -= de[i];
                }
            }
            if coef.is_zero() {
                continue;
            }
            for i in 0..self.n {
                e[i] += te[i];
            }
            let entry = out.entry(e).or_insert_with(Rat::zero);
            *entry += coef;
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Canonical text: `c * t1^a*.. * d1^b*..` terms, lexicographic order.
    pub fn text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for ((te, de), c) in self.terms() {
            let mut factors = Vec::new();
            for (i, &e) in te.iter().enumerate() {
                if e == 1 {
                    factors.push(format!("t{}", i + 1));
                } else if e != 0 {
                    factors.push(format!("t{}^{e}", i + 1));
                }
            }
            for (i, &e) in de.iter().enumerate() {
                if e == 1 {
                    factors.push(format!("d{}", i + 1));
                } else if e != 0 {
                    factors.push(format!("d{}^{e}", i + 1));
                }
            }
            if factors.is_empty() {
                parts.push(rat_to_string(c));
            } else {
                parts.push(format!("{}*{}", rat_to_string(c), factors.join("*")));
            }
        }
        parts.join(" + ")
    }
}

fn membership(n: usize, s: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &i in s {
        assert!(i < n, "corner index out of range");
        mask[i] = true;
    }
    mask
}

fn binom(n: i64, k: i64) -> Rat {
    let mut acc = Rat::one();
    for j in 0..k {
        acc = acc * rint(n - j) / rint(j + 1);
    }
    acc
}

fn fact(k: i64) -> Rat {
    let mut acc = Rat::one();
    for j in 1..=k {
        acc *= rint(j);
    }
    acc
}

/// Operator coefficient rings that can sit inside a presentation matrix.
pub trait OpRing: Clone + PartialEq + std::fmt::Debug {
    fn ring_zero(n: usize) -> Self;
    fn ring_one(n: usize) -> Self;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    fn ring_scale(&self, c: &Rat) -> Self;
    fn ring_is_zero(&self) -> bool;
    fn ring_text(&self) -> String;
}

impl OpRing for WeylOp {
    fn ring_zero(n: usize) -> Self {
        WeylOp::zero(n)
    }
    fn ring_one(n: usize) -> Self {
        WeylOp::one(n)
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

/// Square matrix over an operator ring; realizes D(n) tensor End(V).
#[derive(Debug, Clone, PartialEq)]
pub struct OpMatrix<T: OpRing> {
    pub n: usize,
    pub dim: usize,
    pub entries: Vec<Vec<T>>,
}

impl<T: OpRing> OpMatrix<T> {
    pub fn zero(n: usize, dim: usize) -> Self {
        let entries = (0..dim).map(|_| (0..dim).map(|_| T::ring_zero(n)).collect()).collect();
        OpMatrix { n, dim, entries }
    }

    /// `c * identity` as an operator matrix.
    pub fn scalar(n: usize, dim: usize, c: &Rat) -> Self {
        let mut m = Self::zero(n, dim);
        for i in 0..dim {
            m.entries[i][i] = T::ring_one(n).ring_scale(c);
        }
        m
    }

    /// Adds `op (x) e` where `e` is a rational matrix acting on V.
    pub fn accumulate(&mut self, op: &T, e: &crate::matrix::RatMatrix) {
        assert_eq!(e.rows, self.dim);
        assert_eq!(e.cols, self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                if !e[(r, c)].is_zero() {
                    self.entries[r][c] =
                        self.entries[r][c].ring_add(&op.ring_scale(&e[(r, c)]));
                }
            }
        }
    }

    /// Adds `op (x) 1`.
    pub fn accumulate_scalar(&mut self, op: &T) {
        for r in 0..self.dim {
            self.entries[r][r] = self.entries[r][r].ring_add(op);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.n, self.dim), (other.n, other.dim));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(r1, r2)| r1.iter().zip(r2).map(|(a, b)| a.ring_add(b)).collect())
            .collect();
        OpMatrix { n: self.n, dim: self.dim, entries }
    }

    pub fn neg(&self) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|r| r.iter().map(|a| a.ring_neg()).collect())
            .collect();
        OpMatrix { n: self.n, dim: self.dim, entries }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!((self.n, self.dim), (other.n, other.dim));
        let mut out = Self::zero(self.n, self.dim);
        for i in 0..self.dim {
            for k in 0..self.dim {
                if self.entries[i][k].ring_is_zero() {
                    continue;
                }
                for j in 0..self.dim {
                    if other.entries[k][j].ring_is_zero() {
                        continue;
                    }
                    let prod = self.entries[i][k].ring_mul(&other.entries[k][j]);
                    out.entries[i][j] = out.entries[i][j].ring_add(&prod);
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.iter().all(|e| e.ring_is_zero()))
    }

    pub fn equals(&self, other: &Self) -> bool {
        self == other
    }

    /// Maps every entry through an operator-level function.
    pub fn map_entries<F: Fn(&T) -> T>(&self, f: F) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|r| r.iter().map(&f).collect())
            .collect();
        OpMatrix { n: self.n, dim: self.dim, entries }
    }

    pub fn text(&self) -> String {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|e| e.ring_text()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

impl OpMatrix<WeylOp> {
    /// Scalar detection specialized to Weyl entries.
    pub fn weyl_scalar(&self) -> Option<Rat> {
        let mut found: Option<Rat> = None;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let e = &self.entries[i][j];
                if i != j {
                    if !e.is_zero() {
                        return None;
                    }
                    continue;
                }
                let c = if e.is_zero() {
                    Rat::zero()
                } else {
                    let mut it = e.terms();
                    let ((te, de), c) = it.next()?;
                    if it.next().is_some()
                        || te.iter().any(|&x| x != 0)
                        || de.iter().any(|&x| x != 0)
                    {
                        return None;
                    }
                    c.clone()
                };
                match &found {
                    None => found = Some(c),
                    Some(prev) if *prev == c => {}
                    _ => return None,
                }
            }
        }
        found
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn defining_relation() {
        // d1 t1 = t1 d1 + 1
        let n = 1;
        let prod = WeylOp::d(n, 0).mul(&WeylOp::t(n, 0));
        let mut expect = WeylOp::zero(n);
        expect.add_term((vec![1], vec![1]), rint(1));
        expect.add_term((vec![0], vec![0]), rint(1));
        assert_eq!(prod, expect);
    }

    #[test]
    fn second_order_relation() {
        // d1^2 t1 = t1 d1^2 + 2 d1
        let n = 1;
        let d2 = WeylOp::d(n, 0).mul(&WeylOp::d(n, 0));
        let prod = d2.mul(&WeylOp::t(n, 0));
        let mut expect = WeylOp::zero(n);
        expect.add_term((vec![1], vec![2]), rint(1));
        expect.add_term((vec![0], vec![1]), rint(2));
        assert_eq!(prod, expect);
    }

    #[test]
    fn cross_variable_product_stays_normal() {
        let n = 2;
        let prod = WeylOp::t(n, 0).mul(&WeylOp::d(n, 1));
        let mut expect = WeylOp::zero(n);
        expect.add_term((vec![1, 0], vec![0, 1]), rint(1));
        assert_eq!(prod, expect);
    }

    #[test]
    fn commutators() {
        let n = 2;
        assert_eq!(WeylOp::d(n, 0).commutator(&WeylOp::t(n, 0)), WeylOp::one(n));
        assert!(WeylOp::t(n, 0).commutator(&WeylOp::t(n, 1)).is_zero());
        // [t1 d1, t1] = t1
        let euler = WeylOp::t(n, 0).mul(&WeylOp::d(n, 0));
        assert_eq!(euler.commutator(&WeylOp::t(n, 0)), WeylOp::t(n, 0));
    }

    #[test]
    fn fourier_images_and_order_four() {
        let n = 2;
        let tw = Twist::Fourier(vec![0]);
        assert_eq!(WeylOp::t(n, 0).twist(&tw), WeylOp::d(n, 0));
        assert_eq!(WeylOp::d(n, 0).twist(&tw), WeylOp::t(n, 0).neg());
        assert_eq!(WeylOp::t(n, 1).twist(&tw), WeylOp::t(n, 1));
        let mut u = WeylOp::t(n, 0).mul(&WeylOp::d(n, 0)).mul(&WeylOp::d(n, 1));
        u = u.add(&WeylOp::t(n, 1).scale(&rat(3, 2)));
        let mut v = u.clone();
        for _ in 0..4 {
            v = v.twist(&tw);
        }
        assert_eq!(v, u);
    }

    #[test]
    fn exp_twist_adds_gradient() {
        // exp(t1 t2): d1 -> d1 + t2
        let n = 2;
        let g = MultiPoly::var(n, false, 0).mul(&MultiPoly::var(n, false, 1)).unwrap();
        let tw = Twist::Exp(g);
        let img = WeylOp::d(n, 0).twist(&tw);
        let expect = WeylOp::d(n, 0).add(&WeylOp::t(n, 1));
        assert_eq!(img, expect);
    }

    #[test]
    fn exp_twist_inverse() {
        let n = 2;
        let g = MultiPoly::var(n, false, 0)
            .mul(&MultiPoly::var(n, false, 1))
            .unwrap()
            .add(&MultiPoly::var(n, false, 0))
            .unwrap();
        let fwd = Twist::Exp(g.clone());
        let back = Twist::Exp(g.neg());
        for gen in [WeylOp::t(n, 0), WeylOp::t(n, 1), WeylOp::d(n, 0), WeylOp::d(n, 1)] {
            assert_eq!(gen.twist(&fwd).twist(&back), gen);
        }
    }

    #[test]
    fn apply_with_corner_projection() {
        let n = 1;
        // d1 on t^-2 in the corner: -2 t^-3
        let out = WeylOp::d(n, 0).apply_to_monomial(&vec![-2], Some(&[0]));
        assert_eq!(out.get(&vec![-3]), Some(&rint(-2)));
        assert_eq!(out.len(), 1);
        // t1 on t^-1 in the corner: projected to zero
        let out = WeylOp::t(n, 0).apply_to_monomial(&vec![-1], Some(&[0]));
        assert!(out.is_empty());
        // Euler operator without corner: t1 d1 on t^3 = 3 t^3
        let euler = WeylOp::t(n, 0).mul(&WeylOp::d(n, 0));
        let out = euler.apply_to_monomial(&vec![3], None);
        assert_eq!(out.get(&vec![3]), Some(&rint(3)));
    }

    #[test]
    fn canonical_text_form() {
        let n = 2;
        let u = WeylOp::t(n, 0)
            .mul(&WeylOp::d(n, 0))
            .add(&WeylOp::one(n).scale(&rat(-1, 2)));
        assert_eq!(u.text(), "-1/2 + 1*t1*d1");
    }
}
