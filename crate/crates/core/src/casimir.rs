//! The quadratic central element and central-character checks.
//!
//! The element is built from dual bases under the trace form: the dual of
//! `e_ij` is `e_ji`, and the dual basis of `{h_k}` is `{h_k + sum_l h_l}`
//! (the Gram matrix `I - J/(n+1)` inverts to `I + J`). When the attached
//! gl(n)-module is simple, the image of the element is a rational multiple of
//! the identity; the multiple is the central character value checked against
//! a brute-force finite-dimensional oracle where one exists.

use num_traits::Zero;

use crate::glmod::GlModule;
use crate::matrix::RatMatrix;
use crate::present::SlPresentation;
use crate::rational::{is_integer, rint, to_i64, Rat};
use crate::sl::{element_matrix, sl_basis, SlElement};
use crate::weyl::{OpMatrix, WeylOp};

#[derive(Debug, Clone)]
pub enum CasimirOutcome {
    Scalar(Rat),
    NotScalar { residual: String },
}

/// Evaluates the quadratic central element on a Weyl presentation.
pub fn casimir_scalar(p: &SlPresentation<WeylOp>) -> CasimirOutcome {
    let image = casimir_image(p);
    match image.weyl_scalar() {
        Some(c) => CasimirOutcome::Scalar(c),
        None => CasimirOutcome::NotScalar { residual: image.text() },
    }
}

impl CasimirOutcome {
    pub fn scalar(&self) -> Option<&Rat> {
        match self {
            CasimirOutcome::Scalar(c) => Some(c),
            CasimirOutcome::NotScalar { .. } => None,
        }
    }
}

/// The image of the central element under the presentation:
/// `sum_{i != j} P(e_ij) P(e_ji) + sum_k P(h_k)^2 + (sum_k P(h_k))^2`.
pub fn casimir_image(p: &SlPresentation<WeylOp>) -> OpMatrix<WeylOp> {
    let n = p.n;
    let dim = p.dim_v();
    let mut acc = OpMatrix::<WeylOp>::zero(n, dim);
    for i in 1..=(n + 1) {
        for j in 1..=(n + 1) {
            if i != j {
                let a = p.image(&SlElement::E(i, j));
                let b = p.image(&SlElement::E(j, i));
                acc = acc.add(&a.mul(b));
            }
        }
    }
    let mut h_sum = OpMatrix::<WeylOp>::zero(n, dim);
    for k in 1..=n {
        let h = p.image(&SlElement::H(k));
        acc = acc.add(&h.mul(h));
        h_sum = h_sum.add(h);
    }
    acc.add(&h_sum.mul(&h_sum))
}

/// The same central element evaluated on an explicit matrix realization of
/// sl(n+1); used by the brute-force oracle.
fn casimir_matrix(n: usize, rep: &dyn Fn(&SlElement) -> RatMatrix, dim: usize) -> RatMatrix {
    let mut acc = RatMatrix::zero(dim, dim);
    for i in 1..=(n + 1) {
        for j in 1..=(n + 1) {
            if i != j {
                acc = acc.add(&rep(&SlElement::E(i, j)).mul(&rep(&SlElement::E(j, i))));
            }
        }
    }
    let mut h_sum = RatMatrix::zero(dim, dim);
    for k in 1..=n {
        let h = rep(&SlElement::H(k));
        acc = acc.add(&h.mul(&h));
        h_sum = h_sum.add(&h);
    }
    acc.add(&h_sum.mul(&h_sum))
}

/// Brute-force central character: builds the finite-dimensional simple
/// sl(n+1)-module of highest weight `mu` (given as the n-tuple of h-values),
/// evaluates the central element as an honest matrix, and returns the scalar.
///
/// `mu` must satisfy the finiteness conditions: integral steps
/// `mu_i - mu_{i+1}` and `mu_n + sum(mu)` a non-negative integer. Returns
/// `None` when the weight is outside this cone.
pub fn casimir_oracle(n: usize, mu: &[Rat]) -> Option<Rat> {
    assert_eq!(mu.len(), n);
    for i in 0..n - 1 {
        let d = &mu[i] - &mu[i + 1];
        if !is_integer(&d) || d < Rat::zero() {
            return None;
        }
    }
    let total: Rat = mu.iter().fold(Rat::zero(), |acc, x| acc + x);
    let last_step = &mu[n - 1] + &total;
    if !is_integer(&last_step) || last_step < Rat::zero() {
        return None;
    }
    // integralize: nu = (mu_1..mu_n, -sum mu) + c * 1 with c chosen so the
    // last entry is 0; the shift acts trivially on sl(n+1)
    let c = total.clone();
    let mut nu: Vec<Rat> = mu.iter().map(|x| x + &c).collect();
    nu.push(Rat::zero());
    let nu_int: Vec<i64> = nu.iter().map(|x| to_i64(x).expect("integralized")).collect();
    debug_assert!(nu_int.windows(2).all(|w| w[0] >= w[1]));

    let module = GlModule::highest_weight(
        n + 1,
        &nu_int.iter().map(|&x| rint(x)).collect::<Vec<_>>(),
    )
    .ok()?;
    let dim = module.dim;
    let rep = |x: &SlElement| -> RatMatrix {
        // express the sl element through the gl(n+1) action
        match x {
            SlElement::E(i, j) => module.e(i - 1, j - 1).clone(),
            SlElement::H(k) => {
                let mut m = module.e(k - 1, k - 1).clone();
                let share = Rat::from_integer(1.into()) / rint(n as i64 + 1);
                for i in 0..=n {
                    m = m.sub(&module.e(i, i).scale(&share));
                }
                m
            }
        }
    };
    let cm = casimir_matrix(n, &rep, dim);
    // must be scalar on a simple module
    let c0 = cm[(0, 0)].clone();
    for i in 0..dim {
        for j in 0..dim {
            let expect = if i == j { c0.clone() } else { Rat::zero() };
            if cm[(i, j)] != expect {
                return None;
            }
        }
    }
    Some(c0)
}

/// Sanity check used in tests: the element is central on the matrix level.
pub fn casimir_commutes_with_basis(n: usize) -> bool {
    let dim = n + 1;
    let rep = |x: &SlElement| element_matrix(n, x);
    let cm = casimir_matrix(n, &rep, dim);
    sl_basis(n)
        .iter()
        .all(|x| cm.commutator(&element_matrix(n, x)).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::present::build_omega;
    use crate::rational::rat;

    #[test]
    fn central_on_the_natural_module() {
        for n in 1..=3 {
            assert!(casimir_commutes_with_basis(n));
        }
    }

    #[test]
    fn trivial_module_scalar_zero() {
        // V = one_dim(1) at n = 2: the shifted weight is 0
        let v = GlModule::one_dim(2, rint(1));
        let p = build_omega(&v, &[]);
        match casimir_scalar(&p) {
            CasimirOutcome::Scalar(c) => assert!(c.is_zero()),
            CasimirOutcome::NotScalar { residual } => panic!("not scalar: {residual}"),
        }
        // and the oracle agrees on mu = 0
        let oracle = casimir_oracle(2, &[rint(0), rint(0)]).unwrap();
        assert!(oracle.is_zero());
    }

    #[test]
    fn scalar_independent_of_s() {
        let v = GlModule::one_dim(1, rat(1, 3));
        let c_empty = casimir_scalar(&build_omega(&v, &[]));
        let c_full = casimir_scalar(&build_omega(&v, &[1]));
        assert_eq!(c_empty.scalar(), c_full.scalar());
        assert!(c_empty.scalar().is_some());
    }

    #[test]
    fn oracle_matches_presentation_on_dominant_shift() {
        // V = one_dim(4/3) at n = 2: lam - 1 = (1/3, 1/3) is dominant
        let a = rat(4, 3);
        let v = GlModule::one_dim(2, a.clone());
        let p = build_omega(&v, &[]);
        let got = match casimir_scalar(&p) {
            CasimirOutcome::Scalar(c) => c,
            CasimirOutcome::NotScalar { residual } => panic!("not scalar: {residual}"),
        };
        let mu = vec![a.clone() - rint(1), a - rint(1)];
        let oracle = casimir_oracle(2, &mu).unwrap();
        assert_eq!(got, oracle);
    }

    #[test]
    fn oracle_rejects_non_dominant() {
        assert!(casimir_oracle(2, &[rint(-1), rint(-1)]).is_none());
    }
}
