//! The exponential tensor modules in two concrete models.
//!
//! Corner model: Laurent monomials `t^m` with `m_i < 0` on S and `m_i >= 0`
//! off S, acted on by the S-empty presentation pre-twisted by the
//! exponential, with boundary-crossing terms projected away.
//!
//! Polynomial model: plain monomials `t^k`, acted on by the S-twisted
//! presentation followed by the exponential twist. For twists touching the S
//! variables the two realizations genuinely differ as modules; the basis
//! bijection below intertwines them exactly when the twist polynomial avoids
//! the S variables, and the equivalence check enforces that precondition.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::glmod::GlModule;
use crate::poly::{MultiIndex, MultiPoly};
use crate::present::{build_omega, SlPresentation};
use crate::rational::{rat_to_string, rint, Rat};
use crate::sl::{sl_basis, SlElement};
use crate::weyl::{Twist, WeylOp};

#[derive(Debug, Clone)]
pub struct TensorContext {
    pub n: usize,
    /// 1-based variable subset, sorted.
    pub s: Vec<usize>,
    /// Constant-free exponential twist.
    pub g: MultiPoly,
    pub module: GlModule,
}

impl TensorContext {
    pub fn new(
        n: usize,
        mut s: Vec<usize>,
        g: MultiPoly,
        module: GlModule,
    ) -> Result<Self, String> {
        s.sort_unstable();
        s.dedup();
        if s.iter().any(|&i| i < 1 || i > n) {
            return Err("S must be a subset of 1..=n".to_string());
        }
        if g.n != n {
            return Err("twist polynomial has the wrong variable count".to_string());
        }
        if !g.constant_term().is_zero() {
            return Err("twist polynomial must have zero constant term".to_string());
        }
        if module.n != n {
            return Err("module rank does not match n".to_string());
        }
        Ok(TensorContext { n, s, g, module })
    }

    pub fn s_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.n];
        for &i in &self.s {
            mask[i - 1] = true;
        }
        mask
    }

    /// Zero-based S indices for corner projection.
    pub fn s_zero_based(&self) -> Vec<usize> {
        self.s.iter().map(|&i| i - 1).collect()
    }

    pub fn in_corner(&self, m: &MultiIndex) -> bool {
        let mask = self.s_mask();
        (0..self.n).all(|i| if mask[i] { m[i] < 0 } else { m[i] >= 0 })
    }

    /// True when the twist polynomial involves none of the S variables.
    pub fn g_avoids_s(&self) -> bool {
        let mask = self.s_mask();
        self.g
            .terms()
            .all(|(e, _)| (0..self.n).all(|i| !mask[i] || e[i] == 0))
    }

    /// Weight of the corner basis vector `t^m (x) v_l` (meaningful for a
    /// zero twist).
    pub fn corner_weight(&self, m: &MultiIndex, l: usize) -> Vec<Rat> {
        (0..self.n)
            .map(|k| -rint(m[k]) + &self.module.weights[l][k] - rint(1))
            .collect()
    }

    /// The complete corner weight space of a given weight: the exponent is
    /// determined per basis vector, so the enumeration is exact.
    pub fn weight_space_cells(&self, w: &[Rat]) -> Vec<(MultiIndex, usize)> {
        let mut out = Vec::new();
        for l in 0..self.module.dim {
            let mut m = Vec::with_capacity(self.n);
            let mut ok = true;
            for k in 0..self.n {
                // w_k = -m_k + wt_k - 1  =>  m_k = wt_k - 1 - w_k
                let val = &self.module.weights[l][k] - rint(1) - &w[k];
                match crate::rational::to_i64(&val) {
                    Some(v) if crate::rational::is_integer(&val) => m.push(v),
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && self.in_corner(&m) {
                out.push((m, l));
            }
        }
        out
    }
}

/// Finite-support vector in either model: terms keyed by (exponent, basis
/// index of V).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorVector {
    pub terms: BTreeMap<(MultiIndex, usize), Rat>,
}

impl TensorVector {
    pub fn zero() -> Self {
        TensorVector { terms: BTreeMap::new() }
    }

    pub fn basis(m: MultiIndex, l: usize) -> Self {
        let mut v = Self::zero();
        v.add_term(m, l, Rat::one());
        v
    }

    pub fn add_term(&mut self, m: MultiIndex, l: usize, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((m, l)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((m, l), c) in &other.terms {
            out.add_term(m.clone(), *l, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero();
        if c.is_zero() {
            return out;
        }
        for ((m, l), v) in &self.terms {
            out.add_term(m.clone(), *l, v * c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((m, l), c)| {
                let mono: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e != 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            format!("t{}", i + 1)
                        } else {
                            format!("t{}^{e}", i + 1)
                        }
                    })
                    .collect();
                let head = if mono.is_empty() { "1".to_string() } else { mono.join("*") };
                format!("{}*{}(x)v{}", rat_to_string(c), head, l + 1)
            })
            .collect();
        parts.join(" + ")
    }
}

/// Precomputed operators for one of the two module realizations.
pub struct ModelAction {
    pub n: usize,
    corner: Option<Vec<usize>>,
    presentation: SlPresentation<WeylOp>,
}

impl ModelAction {
    /// Corner model: the S-empty table, exp-twisted, applied to Laurent data
    /// with corner projection.
    pub fn corner(ctx: &TensorContext) -> Self {
        let base = build_omega(&ctx.module, &[]);
        let twisted = if ctx.g.is_zero() {
            base
        } else {
            base.twist_operator(&Twist::Exp(ctx.g.clone()))
        };
        ModelAction {
            n: ctx.n,
            corner: Some(ctx.s_zero_based()),
            presentation: twisted,
        }
    }

    /// Polynomial model: the S table followed by the exponential twist.
    pub fn polynomial(ctx: &TensorContext) -> Self {
        let base = build_omega(&ctx.module, &ctx.s);
        let twisted = if ctx.g.is_zero() {
            base
        } else {
            base.twist_operator(&Twist::Exp(ctx.g.clone()))
        };
        ModelAction { n: ctx.n, corner: None, presentation: twisted }
    }

    pub fn presentation(&self) -> &SlPresentation<WeylOp> {
        &self.presentation
    }

    pub fn apply(&self, x: &SlElement, w: &TensorVector) -> TensorVector {
        let mat = self.presentation.image(x);
        let dim = mat.dim;
        let mut out = TensorVector::zero();
        for ((m, l), c) in &w.terms {
            for r in 0..dim {
                let op = &mat.entries[r][*l];
                if op.is_zero() {
                    continue;
                }
                let applied = op.apply_to_monomial(m, self.corner.as_deref());
                for (m2, coef) in applied {
                    out.add_term(m2, r, &coef * c);
                }
            }
        }
        out
    }

    /// Applies the image of a linear combination of basis elements.
    pub fn apply_combination(
        &self,
        comb: &[(SlElement, Rat)],
        w: &TensorVector,
    ) -> TensorVector {
        let mut out = TensorVector::zero();
        for (x, c) in comb {
            out = out.add(&self.apply(x, w).scale(c));
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct EquivalenceFailure {
    pub generator: SlElement,
    pub k: MultiIndex,
    pub l: usize,
    pub difference: String,
}

#[derive(Debug, Clone, Default)]
pub struct EquivalenceVerdict {
    pub checked: usize,
    pub failures: Vec<EquivalenceFailure>,
}

impl EquivalenceVerdict {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The basis bijection realizing the corner localization: `t^k (x) v` maps
/// to `prod_{i in S} k_i! * t^m (x) v` with `m_i = -1 - k_i` on S and
/// `m_j = k_j` off S.
pub fn corner_bijection(ctx: &TensorContext, k: &MultiIndex, l: usize) -> TensorVector {
    let mask = ctx.s_mask();
    let mut m = k.clone();
    let mut scalar = Rat::one();
    for i in 0..ctx.n {
        if mask[i] {
            assert!(k[i] >= 0);
            for j in 1..=k[i] {
                scalar *= rint(j);
            }
            m[i] = -1 - k[i];
        }
    }
    let mut v = TensorVector::zero();
    v.add_term(m, l, scalar);
    v
}

fn map_through_bijection(ctx: &TensorContext, w: &TensorVector) -> TensorVector {
    let mut out = TensorVector::zero();
    for ((k, l), c) in &w.terms {
        out = out.add(&corner_bijection(ctx, k, *l).scale(c));
    }
    out
}

/// Checks that the bijection intertwines the polynomial and corner models on
/// every generator and every basis vector of total degree at most `deg`.
pub fn model_equivalence_check(
    ctx: &TensorContext,
    deg: i64,
) -> Result<EquivalenceVerdict, String> {
    if !ctx.g_avoids_s() {
        return Err(
            "model equivalence via the basis bijection requires the twist to avoid the S variables"
                .to_string(),
        );
    }
    let poly = ModelAction::polynomial(ctx);
    let corner = ModelAction::corner(ctx);
    let mut verdict = EquivalenceVerdict::default();
    for k in monomials_up_to(ctx.n, deg) {
        for l in 0..ctx.module.dim {
            let e = TensorVector::basis(k.clone(), l);
            let mapped = map_through_bijection(ctx, &e);
            for x in sl_basis(ctx.n) {
                let lhs = map_through_bijection(ctx, &poly.apply(&x, &e));
                let rhs = corner.apply(&x, &mapped);
                verdict.checked += 1;
                let diff = lhs.sub(&rhs);
                if !diff.is_zero() {
                    verdict.failures.push(EquivalenceFailure {
                        generator: x,
                        k: k.clone(),
                        l,
                        difference: diff.text(),
                    });
                }
            }
        }
    }
    Ok(verdict)
}

/// All exponent vectors with non-negative entries and total degree <= deg.
pub fn monomials_up_to(n: usize, deg: i64) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    fn rec(i: usize, remaining: i64, cur: &mut MultiIndex, out: &mut Vec<MultiIndex>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=remaining {
            cur[i] = v;
            rec(i + 1, remaining - v, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, deg, &mut cur, &mut out);
    out.sort();
    out
}

/// Corner cells with `-box_n <= m_i <= -1` on S and `0 <= m_i <= box_n` off
/// S; the standard finite window for witnesses.
pub fn corner_box(ctx: &TensorContext, box_n: i64) -> Vec<MultiIndex> {
    let mask = ctx.s_mask();
    let mut out = Vec::new();
    let mut cur = vec![0i64; ctx.n];
    fn rec(
        i: usize,
        mask: &[bool],
        box_n: i64,
        cur: &mut MultiIndex,
        out: &mut Vec<MultiIndex>,
    ) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        let (lo, hi) = if mask[i] { (-box_n, -1) } else { (0, box_n) };
        for v in lo..=hi {
            cur[i] = v;
            rec(i + 1, mask, box_n, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, &mask, box_n, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn ctx(n: usize, s: Vec<usize>, g: MultiPoly, module: GlModule) -> TensorContext {
        TensorContext::new(n, s, g, module).unwrap()
    }

    #[test]
    fn corner_action_exponential_shift() {
        // n=1, S=empty, g=t1, V=one_dim(a): h1 . 1 = -t1 + (a-1)
        let a = rat(2, 7);
        let c = ctx(1, vec![], MultiPoly::var(1, false, 0), GlModule::one_dim(1, a.clone()));
        let act = ModelAction::corner(&c);
        let out = act.apply(&SlElement::H(1), &TensorVector::basis(vec![0], 0));
        let mut expect = TensorVector::zero();
        expect.add_term(vec![0], 0, a - rint(1));
        expect.add_term(vec![1], 0, rint(-1));
        assert_eq!(out, expect);
    }

    #[test]
    fn corner_ladder_coefficient() {
        // n=1, S=empty, g=0, V=one_dim(a): e(1,2) t^m = m(m+1-2a) t^(m-1)
        let a = rat(1, 3);
        let c = ctx(1, vec![], MultiPoly::zero(1, false), GlModule::one_dim(1, a));
        let act = ModelAction::corner(&c);
        for m in 0..5i64 {
            let out = act.apply(&SlElement::E(1, 2), &TensorVector::basis(vec![m], 0));
            let coeff = rint(m) * (rint(m + 1) - rat(2, 3));
            let mut expect = TensorVector::zero();
            expect.add_term(vec![m - 1], 0, coeff);
            assert_eq!(out, expect, "m = {m}");
        }
    }

    #[test]
    fn corner_quotient_kills_boundary() {
        // n=1, S={1}, g=0: e(2,1) t^-1 = 0
        let c = ctx(1, vec![1], MultiPoly::zero(1, false), GlModule::one_dim(1, rint(0)));
        let act = ModelAction::corner(&c);
        let out = act.apply(&SlElement::E(2, 1), &TensorVector::basis(vec![-1], 0));
        assert!(out.is_zero());
    }

    #[test]
    fn polynomial_action_fourier_image() {
        // n=1, S={1}, g=0, V=one_dim(a): e(2,1) t^k = -k t^(k-1)
        let c = ctx(1, vec![1], MultiPoly::zero(1, false), GlModule::one_dim(1, rat(1, 2)));
        let act = ModelAction::polynomial(&c);
        let out = act.apply(&SlElement::E(2, 1), &TensorVector::basis(vec![3], 0));
        let mut expect = TensorVector::zero();
        expect.add_term(vec![2], 0, rint(-3));
        assert_eq!(out, expect);
    }

    #[test]
    fn polynomial_action_multiplication_row() {
        // n=2, S=empty, g=0: e(3,1) acts by -t1
        let c = ctx(2, vec![], MultiPoly::zero(2, false), GlModule::exterior(2, 1));
        let act = ModelAction::polynomial(&c);
        let out = act.apply(&SlElement::E(3, 1), &TensorVector::basis(vec![1, 1], 0));
        let mut expect = TensorVector::zero();
        expect.add_term(vec![2, 1], 0, rint(-1));
        assert_eq!(out, expect);
    }

    #[test]
    fn h_eigenvalues_match_weight_formula() {
        let module = GlModule::exterior(2, 1);
        let c = ctx(2, vec![1], MultiPoly::zero(2, false), module);
        let act = ModelAction::corner(&c);
        let m = vec![-2, 3];
        for l in 0..2 {
            let w = c.corner_weight(&m, l);
            for k in 1..=2 {
                let out = act.apply(&SlElement::H(k), &TensorVector::basis(m.clone(), l));
                let expect = TensorVector::basis(m.clone(), l).scale(&w[k - 1]);
                assert_eq!(out, expect);
            }
        }
    }

    #[test]
    fn nonzero_twist_breaks_weightness() {
        // with d_1(g) != 0 the h1 image of a corner vector has a term with a
        // different exponent
        let g = MultiPoly::var(1, false, 0);
        let c = ctx(1, vec![], g, GlModule::one_dim(1, rat(1, 2)));
        let act = ModelAction::corner(&c);
        let m = vec![2];
        let out = act.apply(&SlElement::H(1), &TensorVector::basis(m.clone(), 0));
        assert!(out.terms.keys().any(|(m2, _)| *m2 != m));
    }

    #[test]
    fn model_equivalence_zero_twist() {
        let c = ctx(1, vec![1], MultiPoly::zero(1, false), GlModule::one_dim(1, rint(0)));
        let verdict = model_equivalence_check(&c, 5).unwrap();
        assert!(verdict.passed(), "failures: {:?}", verdict.failures);
        assert!(verdict.checked > 0);
    }

    #[test]
    fn model_equivalence_twist_off_s() {
        // n=2, S={2}, g=t1, V=wedge:1
        let g = MultiPoly::var(2, false, 0);
        let c = ctx(2, vec![2], g, GlModule::exterior(2, 1));
        let verdict = model_equivalence_check(&c, 4).unwrap();
        assert!(verdict.passed(), "first failure: {:?}", verdict.failures.first());
    }

    #[test]
    fn model_equivalence_rejects_twist_on_s() {
        let g = MultiPoly::var(1, false, 0);
        let c = ctx(1, vec![1], g, GlModule::one_dim(1, rint(0)));
        assert!(model_equivalence_check(&c, 3).is_err());
    }

    #[test]
    fn representation_property_on_random_vectors() {
        // [x, y] . w computed via structure constants equals x.(y.w) - y.(x.w)
        let g = MultiPoly::var(2, false, 0);
        let c = ctx(2, vec![2], g, GlModule::exterior(2, 1));
        let act = ModelAction::corner(&c);
        let mut w = TensorVector::zero();
        w.add_term(vec![1, -2], 0, rat(3, 2));
        w.add_term(vec![0, -1], 1, rint(-1));
        let basis = sl_basis(2);
        for x in &basis {
            for y in &basis {
                let lhs = act.apply_combination(&crate::sl::sl_bracket(2, x, y), &w);
                let rhs = act.apply(x, &act.apply(y, &w)).sub(&act.apply(y, &act.apply(x, &w)));
                assert_eq!(lhs, rhs, "x = {}, y = {}", x.text(), y.text());
            }
        }
    }
}
