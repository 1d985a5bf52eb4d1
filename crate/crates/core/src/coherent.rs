//! Coherent-family slices: formal Laurent monomials with a rational offset.
//!
//! The family attached to (V, S) restricts, over a fixed offset, to the span
//! of `t^(lam + k) (x) v_l` for integer k. Weight bookkeeping is exact: the
//! h_k eigenvalue of a basis vector is `mu_k + wt_k` on S and
//! `-mu_k + wt_k - 1` off S where `mu = lam + k`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::glmod::GlModule;
use crate::matrix::RatMatrix;
use crate::poly::MultiIndex;
use crate::present::{build_omega, SlPresentation};
use crate::rational::{is_integer, rint, Rat};
use crate::sl::SlElement;
use crate::weyl::{Twist, WeylOp};

/// Direction of the variable twist defining the family action.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistDirection {
    Forward,
    Inverse,
}

#[derive(Debug, Clone)]
pub struct CoherentContext {
    pub n: usize,
    /// 1-based twist subset of the family.
    pub s: Vec<usize>,
    /// Rational exponent offset.
    pub lam: Vec<Rat>,
    pub module: GlModule,
    presentation: SlPresentation<WeylOp>,
}

/// Finite-support vector: integer offsets against the rational base point.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoherentVector {
    pub terms: BTreeMap<(MultiIndex, usize), Rat>,
}

impl CoherentVector {
    pub fn zero() -> Self {
        CoherentVector { terms: BTreeMap::new() }
    }

    pub fn basis(k: MultiIndex, l: usize) -> Self {
        let mut v = Self::zero();
        v.add_term(k, l, Rat::one());
        v
    }

    pub fn add_term(&mut self, k: MultiIndex, l: usize, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((k, l)) {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl CoherentContext {
    pub fn new(
        n: usize,
        mut s: Vec<usize>,
        lam: Vec<Rat>,
        module: GlModule,
        direction: TwistDirection,
    ) -> Result<Self, String> {
        s.sort_unstable();
        s.dedup();
        if s.iter().any(|&i| i < 1 || i > n) {
            return Err("S must be a subset of 1..=n".to_string());
        }
        if lam.len() != n || module.n != n {
            return Err("rank mismatch".to_string());
        }
        let presentation = match direction {
            TwistDirection::Forward => build_omega(&module, &s),
            TwistDirection::Inverse => {
                // psi^{-1} = psi^3 applied entrywise to the S-empty table
                let tw = Twist::Fourier(s.iter().map(|&i| i - 1).collect());
                build_omega(&module, &[])
                    .twist_operator(&tw)
                    .twist_operator(&tw)
                    .twist_operator(&tw)
            }
        };
        Ok(CoherentContext { n, s, lam, module, presentation })
    }

    pub fn s_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.n];
        for &i in &self.s {
            mask[i - 1] = true;
        }
        mask
    }

    pub fn apply(&self, x: &SlElement, v: &CoherentVector) -> CoherentVector {
        let mat = self.presentation.image(x);
        let mut out = CoherentVector::zero();
        for ((k, l), c) in &v.terms {
            for r in 0..mat.dim {
                let op = &mat.entries[r][*l];
                if op.is_zero() {
                    continue;
                }
                for (k2, coef) in op.apply_to_offset_monomial(&self.lam, k) {
                    out.add_term(k2, r, &coef * c);
                }
            }
        }
        out
    }

    /// Exact weight of `t^(lam + k) (x) v_l`.
    pub fn weight(&self, k: &MultiIndex, l: usize) -> Vec<Rat> {
        let mask = self.s_mask();
        (0..self.n)
            .map(|j| {
                let mu = &self.lam[j] + rint(k[j]);
                if mask[j] {
                    mu + &self.module.weights[l][j]
                } else {
                    -mu + &self.module.weights[l][j] - rint(1)
                }
            })
            .collect()
    }

    /// The basis cells of the full family carrying the given weight: for
    /// each l there is at most one integer solution.
    pub fn weight_space(&self, w: &[Rat]) -> Vec<(MultiIndex, usize)> {
        let mask = self.s_mask();
        let mut out = Vec::new();
        for l in 0..self.module.dim {
            let mut k = Vec::with_capacity(self.n);
            let mut ok = true;
            for j in 0..self.n {
                let mu = if mask[j] {
                    &w[j] - &self.module.weights[l][j]
                } else {
                    &self.module.weights[l][j] - rint(1) - &w[j]
                };
                let off = mu - &self.lam[j];
                if is_integer(&off) {
                    k.push(crate::rational::to_i64(&off).expect("window-sized"));
                } else {
                    ok = false;
                    break;
                }
            }
            if ok {
                out.push((k, l));
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct CoherentReport {
    pub weights_checked: usize,
    pub multiplicity_failures: Vec<String>,
    pub injectivity_failures: Vec<String>,
    /// Informational: injectivity status of the remaining corner-row maps.
    pub extra_notes: Vec<String>,
}

impl CoherentReport {
    pub fn passed(&self) -> bool {
        self.multiplicity_failures.is_empty() && self.injectivity_failures.is_empty()
    }
}

/// Checks constant weight multiplicity on a window and injectivity of the
/// root maps attached to `S union {n+1}`.
pub fn coherent_checks(
    n: usize,
    s: Vec<usize>,
    lam: Vec<Rat>,
    module: GlModule,
    radius: i64,
) -> Result<CoherentReport, String> {
    let ctx = CoherentContext::new(n, s, lam, module, TwistDirection::Forward)?;
    let dim_v = ctx.module.dim;
    let mut report = CoherentReport {
        weights_checked: 0,
        multiplicity_failures: Vec::new(),
        injectivity_failures: Vec::new(),
        extra_notes: Vec::new(),
    };

    // (a) multiplicity dim V at every window weight
    let window = window_offsets(n, radius);
    for k in &window {
        let w = ctx.weight(k, 0);
        let cells = ctx.weight_space(&w);
        report.weights_checked += 1;
        if cells.len() != dim_v {
            report.multiplicity_failures.push(format!(
                "weight of k={k:?} has multiplicity {} (expected {dim_v})",
                cells.len()
            ));
        }
    }

    // (b) injectivity of the root vectors for S union {n+1}
    let mask = ctx.s_mask();
    let mut asserted: Vec<SlElement> = Vec::new();
    let mut informational: Vec<SlElement> = Vec::new();
    for i in 1..=(n + 1) {
        let i_in = i == n + 1 || mask[i - 1];
        for j in 1..=n {
            if i == j {
                continue;
            }
            let j_in = mask[j - 1];
            if i_in && !j_in {
                asserted.push(SlElement::E(i, j));
            } else {
                informational.push(SlElement::E(i, j));
            }
        }
    }
    for x in &asserted {
        for k in &window {
            let w = ctx.weight(k, 0);
            match root_map_rank(&ctx, x, &w) {
                Ok(rank) => {
                    if rank < dim_v {
                        report.injectivity_failures.push(format!(
                            "{} has rank {rank} < {dim_v} on the weight space of k={k:?}",
                            x.text()
                        ));
                    }
                }
                Err(e) => report.injectivity_failures.push(e),
            }
        }
    }
    for x in &informational {
        let mut all_full = true;
        for k in &window {
            let w = ctx.weight(k, 0);
            if let Ok(rank) = root_map_rank(&ctx, x, &w) {
                if rank < dim_v {
                    all_full = false;
                }
            }
        }
        report.extra_notes.push(format!(
            "{}: {} on the window (not asserted)",
            x.text(),
            if all_full { "injective" } else { "singular somewhere" }
        ));
    }
    Ok(report)
}

/// Exact rank of a root-vector map between adjacent weight spaces.
fn root_map_rank(ctx: &CoherentContext, x: &SlElement, w: &[Rat]) -> Result<usize, String> {
    let source = ctx.weight_space(w);
    let alpha = x.root(ctx.n);
    let target_w: Vec<Rat> = w.iter().zip(&alpha).map(|(a, b)| a + b).collect();
    let target = ctx.weight_space(&target_w);
    let index: BTreeMap<(MultiIndex, usize), usize> =
        target.iter().cloned().enumerate().map(|(p, c)| (c, p)).collect();
    let mut m = RatMatrix::zero(target.len(), source.len());
    for (col, (k, l)) in source.iter().enumerate() {
        let image = ctx.apply(x, &CoherentVector::basis(k.clone(), *l));
        for (key, c) in &image.terms {
            let Some(&row) = index.get(key) else {
                return Err(format!(
                    "root map {} leaves the computed weight space",
                    x.text()
                ));
            };
            m[(row, col)] = c.clone();
        }
    }
    Ok(m.rank())
}

pub fn window_offsets(n: usize, radius: i64) -> Vec<MultiIndex> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for k in &out {
            for v in -radius..=radius {
                let mut k2 = k.clone();
                k2.push(v);
                next.push(k2);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::sl::sl_bracket;

    #[test]
    fn family_action_is_a_representation() {
        let module = GlModule::exterior(2, 1);
        let ctx = CoherentContext::new(
            2,
            vec![1],
            vec![rat(1, 2), rat(1, 3)],
            module,
            TwistDirection::Forward,
        )
        .unwrap();
        let v = CoherentVector::basis(vec![1, -2], 1);
        for x in crate::sl::sl_basis(2) {
            for y in crate::sl::sl_basis(2) {
                let mut lhs = CoherentVector::zero();
                for (z, c) in sl_bracket(2, &x, &y) {
                    let img = ctx.apply(&z, &v);
                    for ((k, l), cc) in img.terms {
                        lhs.add_term(k, l, cc * &c);
                    }
                }
                let xy = ctx.apply(&x, &ctx.apply(&y, &v));
                let yx = ctx.apply(&y, &ctx.apply(&x, &v));
                let mut rhs = xy;
                for ((k, l), c) in yx.terms {
                    rhs.add_term(k, l, -c);
                }
                assert_eq!(lhs, rhs, "{} {}", x.text(), y.text());
            }
        }
    }

    #[test]
    fn weights_are_exact_eigenvalues() {
        let module = GlModule::exterior(2, 1);
        let ctx = CoherentContext::new(
            2,
            vec![1],
            vec![rat(1, 2), rat(1, 3)],
            module,
            TwistDirection::Forward,
        )
        .unwrap();
        let k = vec![2, -1];
        for l in 0..2 {
            let w = ctx.weight(&k, l);
            for h in 1..=2 {
                let img = ctx.apply(&SlElement::H(h), &CoherentVector::basis(k.clone(), l));
                let mut expect = CoherentVector::zero();
                expect.add_term(k.clone(), l, w[h - 1].clone());
                assert_eq!(img, expect);
            }
        }
    }

    #[test]
    fn multiplicity_and_injectivity_window() {
        let module = GlModule::exterior(2, 1);
        let report = coherent_checks(
            2,
            vec![1],
            vec![rat(1, 2), rat(1, 3)],
            module,
            2,
        )
        .unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.weights_checked, 25);
    }

    #[test]
    fn non_asserted_maps_are_reported() {
        // S = {}: only the e(n+1, j) maps are asserted; interior maps such
        // as e(2,1) show up as information
        let module = GlModule::exterior(2, 1);
        let report = coherent_checks(
            2,
            vec![],
            vec![rat(1, 2), rat(1, 3)],
            module,
            1,
        )
        .unwrap();
        assert!(report.passed(), "{report:?}");
        assert!(report.extra_notes.iter().any(|n| n.starts_with("e2,1")));
    }
}
