//! Differential-operator presentations of sl(n+1).
//!
//! `build_omega` realizes the ten-case table sending the fixed basis into
//! D(n) (x) End(V) for a gl(n)-module V and a subset S of the variables.
//! Presentations over the shift algebra reuse the same container; relation
//! checking is generic over the operator ring.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::glmod::GlModule;
use crate::matrix::RatMatrix;
use crate::poly::MultiPoly;
use crate::rational::{rint, Rat};
use crate::sl::{sl_basis, sl_bracket, SlCombination, SlElement};
use crate::weyl::{OpMatrix, OpRing, Twist, WeylOp};

#[derive(Debug, Clone, PartialEq, Eq, Copy)]
pub enum AlgebraKind {
    Weyl,
    Shift,
}

#[derive(Debug, Clone)]
pub struct SlPresentation<T: OpRing> {
    pub n: usize,
    pub kind: AlgebraKind,
    pub module: GlModule,
    images: BTreeMap<SlElement, OpMatrix<T>>,
}

#[derive(Debug, Clone)]
pub struct RelationFailure {
    pub x: SlElement,
    pub y: SlElement,
    pub residual: String,
}

#[derive(Debug, Clone, Default)]
pub struct PresentationVerdict {
    pub failures: Vec<RelationFailure>,
}

impl PresentationVerdict {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl<T: OpRing> SlPresentation<T> {
    pub fn new(n: usize, kind: AlgebraKind, module: GlModule) -> Self {
        SlPresentation { n, kind, module, images: BTreeMap::new() }
    }

    pub fn set_image(&mut self, x: SlElement, m: OpMatrix<T>) {
        self.images.insert(x, m);
    }

    pub fn image(&self, x: &SlElement) -> &OpMatrix<T> {
        self.images.get(x).expect("image defined for the full basis")
    }

    pub fn dim_v(&self) -> usize {
        self.module.dim
    }

    pub fn image_of_combination(&self, comb: &SlCombination) -> OpMatrix<T> {
        let mut acc = OpMatrix::zero(self.n, self.dim_v());
        for (x, c) in comb {
            acc = acc.add(&self.image(x).map_entries(|e| e.ring_scale(c)));
        }
        acc
    }

    /// Checks `[P(x), P(y)] = P([x, y])` for every basis pair.
    pub fn verify(&self) -> PresentationVerdict {
        let basis = sl_basis(self.n);
        let mut verdict = PresentationVerdict::default();
        for x in &basis {
            for y in &basis {
                let lhs = self.image(x).commutator(self.image(y));
                let rhs = self.image_of_combination(&sl_bracket(self.n, x, y));
                let residual = lhs.sub(&rhs);
                if !residual.is_zero() {
                    verdict.failures.push(RelationFailure {
                        x: *x,
                        y: *y,
                        residual: residual.text(),
                    });
                }
            }
        }
        verdict
    }

    /// Pullback along the negative-transpose involution:
    /// `tau(e_ij) = -e_ji`, `tau(h_k) = -h_k`.
    pub fn twist_tau(&self) -> Self {
        let mut out = Self::new(self.n, self.kind, self.module.clone());
        for x in sl_basis(self.n) {
            let img = match x {
                SlElement::H(_) => self.image(&x).neg(),
                SlElement::E(i, j) => self.image(&SlElement::E(j, i)).neg(),
            };
            out.set_image(x, img);
        }
        out
    }

    /// Diagonal rescaling `phi_a(e_ij) = (a_i / a_j) e_ij` for a vector of
    /// n+1 nonzero rationals.
    pub fn twist_phi(&self, a: &[Rat]) -> Result<Self, String> {
        if a.len() != self.n + 1 {
            return Err(format!("phi needs {} entries, got {}", self.n + 1, a.len()));
        }
        if a.iter().any(|x| x.is_zero()) {
            return Err("phi twist requires nonzero entries".to_string());
        }
        let mut out = Self::new(self.n, self.kind, self.module.clone());
        for x in sl_basis(self.n) {
            let img = match x {
                SlElement::H(_) => self.image(&x).clone(),
                SlElement::E(i, j) => {
                    let ratio = &a[i - 1] / &a[j - 1];
                    self.image(&x).map_entries(|e| e.ring_scale(&ratio))
                }
            };
            out.set_image(x, img);
        }
        Ok(out)
    }
}

impl SlPresentation<WeylOp> {
    /// Applies a D(n) automorphism to every image entrywise.
    pub fn twist_operator(&self, tw: &Twist) -> Self {
        if let Twist::Exp(g) = tw {
            assert!(g.constant_term().is_zero(), "exp twist needs constant-free g");
        }
        let mut out = Self::new(self.n, self.kind, self.module.clone());
        for (x, m) in &self.images {
            out.set_image(*x, m.map_entries(|e| e.twist(tw)));
        }
        out
    }
}

/// One of the three presentation twists named by the interface.
pub enum PresentationTwist {
    Tau,
    Phi(Vec<Rat>),
    Exp(MultiPoly),
}

pub fn twist_presentation(
    p: &SlPresentation<WeylOp>,
    twist: &PresentationTwist,
) -> Result<SlPresentation<WeylOp>, String> {
    match twist {
        PresentationTwist::Tau => Ok(p.twist_tau()),
        PresentationTwist::Phi(a) => p.twist_phi(a),
        PresentationTwist::Exp(g) => {
            if !g.constant_term().is_zero() {
                return Err("exp twist requires a constant-free polynomial".to_string());
            }
            Ok(p.twist_operator(&Twist::Exp(g.clone())))
        }
    }
}

/// The differential-operator presentation omega_{V,S} on D(n) (x) End(V).
pub fn build_omega(module: &GlModule, s: &[usize]) -> SlPresentation<WeylOp> {
    let n = module.n;
    let dim = module.dim;
    let in_s = {
        let mut mask = vec![false; n];
        for &i in s {
            assert!(i >= 1 && i <= n, "S must be a subset of 1..=n");
            mask[i - 1] = true;
        }
        mask
    };
    let s_size = in_s.iter().filter(|&&b| b).count() as i64;
    let identity = RatMatrix::identity(dim);
    let t = |i: usize| WeylOp::t(n, i - 1);
    let d = |i: usize| WeylOp::d(n, i - 1);

    let mut p = SlPresentation::new(n, AlgebraKind::Weyl, module.clone());

    for k in 1..=n {
        let mut m = OpMatrix::zero(n, dim);
        if in_s[k - 1] {
            // t_k d_k (x) 1 + 1 (x) E_kk
            m.accumulate(&t(k).mul(&d(k)), &identity);
            m.accumulate(&WeylOp::one(n), module.e(k - 1, k - 1));
        } else {
            // -t_k d_k (x) 1 + 1 (x) E_kk - 1 (x) 1
            m.accumulate(&t(k).mul(&d(k)).neg(), &identity);
            m.accumulate(&WeylOp::one(n), module.e(k - 1, k - 1));
            m.accumulate(&WeylOp::one(n).neg(), &identity);
        }
        p.set_image(SlElement::H(k), m);
    }

    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let mut m = OpMatrix::zero(n, dim);
            m.accumulate(&WeylOp::one(n), module.e(i - 1, j - 1));
            let op = match (in_s[i - 1], in_s[j - 1]) {
                (false, false) => t(j).mul(&d(i)).neg(),
                (true, true) => t(i).mul(&d(j)),
                (true, false) => t(i).mul(&t(j)),
                (false, true) => d(i).mul(&d(j)).neg(),
            };
            m.accumulate(&op, &identity);
            p.set_image(SlElement::E(i, j), m);
        }
    }

    for j in 1..=n {
        let mut m = OpMatrix::zero(n, dim);
        let op = if in_s[j - 1] { d(j).neg() } else { t(j).neg() };
        m.accumulate(&op, &identity);
        p.set_image(SlElement::E(n + 1, j), m);
    }

    for i in 1..=n {
        let mut m = OpMatrix::zero(n, dim);
        for j in 1..=n {
            if in_s[j - 1] {
                // + t_l (x) E_il
                m.accumulate(&t(j), module.e(i - 1, j - 1));
            } else {
                // - d_j (x) E_ij
                m.accumulate(&d(j).neg(), module.e(i - 1, j - 1));
            }
        }
        if in_s[i - 1] {
            for j in 1..=n {
                let op = t(i).mul(&t(j)).mul(&d(j));
                if in_s[j - 1] {
                    m.accumulate(&op, &identity);
                } else {
                    m.accumulate(&op.neg(), &identity);
                }
            }
            for j in 1..=n {
                m.accumulate(&t(i), module.e(j - 1, j - 1));
            }
            let c = -rint(n as i64 - s_size);
            m.accumulate(&t(i).scale(&c), &identity);
        } else {
            for j in 1..=n {
                let op = t(j).mul(&d(j)).mul(&d(i));
                if in_s[j - 1] {
                    m.accumulate(&op.neg(), &identity);
                } else {
                    m.accumulate(&op, &identity);
                }
            }
            for j in 1..=n {
                m.accumulate(&d(i).neg(), module.e(j - 1, j - 1));
            }
            let c = rint((n as i64 + 1) - s_size);
            m.accumulate(&d(i).scale(&c), &identity);
        }
        p.set_image(SlElement::E(i, n + 1), m);
    }

    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn subsets_of(n: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for i in 1..=n {
            let mut more = Vec::new();
            for s in &out {
                let mut s2 = s.clone();
                s2.push(i);
                more.push(s2);
            }
            out.extend(more);
        }
        out
    }

    #[test]
    fn h1_image_one_dim_empty_s() {
        // n=1, S=empty, V_a: h1 -> -t1 d1 + (a - 1)
        let a = rat(2, 5);
        let v = GlModule::one_dim(1, a.clone());
        let p = build_omega(&v, &[]);
        let img = p.image(&SlElement::H(1));
        let mut expect = WeylOp::t(1, 0).mul(&WeylOp::d(1, 0)).neg();
        expect = expect.add(&WeylOp::constant(1, a - rint(1)));
        assert_eq!(img.entries[0][0], expect);
    }

    #[test]
    fn corner_row_image_full_s() {
        // n=2, S={1,2}: e(3,1) -> -d1 (x) 1
        let v = GlModule::exterior(2, 1);
        let p = build_omega(&v, &[1, 2]);
        let img = p.image(&SlElement::E(3, 1));
        assert_eq!(img.entries[0][0], WeylOp::d(2, 0).neg());
        assert_eq!(img.entries[1][1], WeylOp::d(2, 0).neg());
        assert!(img.entries[0][1].is_zero());
    }

    #[test]
    fn presentations_satisfy_relations() {
        for s in subsets_of(2) {
            let v = GlModule::exterior(2, 1);
            assert!(build_omega(&v, &s).verify().passed(), "S = {s:?}");
            let w = GlModule::one_dim(2, rat(1, 3));
            assert!(build_omega(&w, &s).verify().passed(), "S = {s:?}");
        }
    }

    #[test]
    fn fourier_factorization() {
        // omega_{V,S} = (psi_S (x) 1) omega_{V,empty}
        let v = GlModule::exterior(2, 1);
        let base = build_omega(&v, &[]);
        for s in subsets_of(2) {
            let direct = build_omega(&v, &s);
            let tw = Twist::Fourier(s.iter().map(|&i| i - 1).collect());
            let twisted = base.twist_operator(&tw);
            for x in sl_basis(2) {
                assert!(
                    direct.image(&x).equals(twisted.image(&x)),
                    "mismatch at {} for S = {s:?}",
                    x.text()
                );
            }
        }
    }

    #[test]
    fn factorization_through_the_full_table() {
        // the S table also factors through the full-set table with the
        // inverse twist on the complement
        let v = GlModule::exterior(2, 1);
        let full = build_omega(&v, &[1, 2]);
        for s in subsets_of(2) {
            let direct = build_omega(&v, &s);
            let complement: Vec<usize> =
                (1..=2).filter(|i| !s.contains(i)).map(|i| i - 1).collect();
            let tw = Twist::Fourier(complement);
            let mut twisted = full.clone();
            for _ in 0..3 {
                twisted = twisted.twist_operator(&tw);
            }
            for x in sl_basis(2) {
                assert!(
                    direct.image(&x).equals(twisted.image(&x)),
                    "mismatch at {} for S = {s:?}",
                    x.text()
                );
            }
        }
    }

    #[test]
    fn tau_is_involutive() {
        let v = GlModule::one_dim(2, rat(1, 2));
        let p = build_omega(&v, &[1]);
        let q = p.twist_tau().twist_tau();
        for x in sl_basis(2) {
            assert!(p.image(&x).equals(q.image(&x)));
        }
        assert!(p.twist_tau().verify().passed());
    }

    #[test]
    fn phi_with_proportional_vector_is_identity() {
        let v = GlModule::exterior(2, 1);
        let p = build_omega(&v, &[2]);
        let c = rat(3, 7);
        let a = vec![c.clone(), c.clone(), c];
        let q = p.twist_phi(&a).unwrap();
        for x in sl_basis(2) {
            assert!(p.image(&x).equals(q.image(&x)));
        }
        assert!(p.twist_phi(&[rint(1), rint(0), rint(1)]).is_err());
    }

    #[test]
    fn phi_twist_preserves_relations() {
        let v = GlModule::exterior(2, 1);
        let p = build_omega(&v, &[1]);
        let q = p.twist_phi(&[rat(1, 2), rint(3), rint(-1)]).unwrap();
        assert!(q.verify().passed());
    }

    #[test]
    fn exp_twist_on_h_image() {
        // exp(t1) on n=1, S=empty, V_a: h1 -> -t1 d1 - t1 + (a - 1)
        let a = rat(1, 3);
        let v = GlModule::one_dim(1, a.clone());
        let p = build_omega(&v, &[]);
        let g = MultiPoly::var(1, false, 0);
        let q = p.twist_operator(&Twist::Exp(g));
        let img = &q.image(&SlElement::H(1)).entries[0][0];
        let mut expect = WeylOp::t(1, 0).mul(&WeylOp::d(1, 0)).neg();
        expect = expect.add(&WeylOp::t(1, 0).neg());
        expect = expect.add(&WeylOp::constant(1, a - rint(1)));
        assert_eq!(img, &expect);
        assert!(q.verify().passed());
    }

    #[test]
    fn full_s_corner_column_matches_display() {
        // n=2, S={1,2}: e_{i,n+1} is the sum of t_l (x) E_il, t_i t_l d_l (x) 1,
        // and t_i (x) E_jj over l, j = 1..n, with no constant correction
        let v = GlModule::exterior(2, 1);
        let p = build_omega(&v, &[1, 2]);
        for i in 1..=2usize {
            let mut expect = OpMatrix::<WeylOp>::zero(2, 2);
            for l in 1..=2usize {
                expect.accumulate(&WeylOp::t(2, l - 1), v.e(i - 1, l - 1));
                let op = WeylOp::t(2, i - 1)
                    .mul(&WeylOp::t(2, l - 1))
                    .mul(&WeylOp::d(2, l - 1));
                expect.accumulate_scalar(&op);
                expect.accumulate(&WeylOp::t(2, i - 1), v.e(l - 1, l - 1));
            }
            assert!(p.image(&SlElement::E(i, 3)).equals(&expect), "i = {i}");
        }
    }

    #[test]
    fn corrupted_presentation_fails_with_witness() {
        let v = GlModule::one_dim(2, rat(1, 2));
        let mut p = build_omega(&v, &[]);
        let img = p.image(&SlElement::E(1, 2)).neg();
        p.set_image(SlElement::E(1, 2), img);
        let verdict = p.verify();
        assert!(!verdict.passed());
        assert!(!verdict.failures[0].residual.is_empty());
    }
}
