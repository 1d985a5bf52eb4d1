//! Whittaker-vector verification for linear twists.
//!
//! With `g = sum b_i t_i` and nonempty S, the vector `e^g (x) v` is a
//! common eigenvector for the abelian subalgebra spanned by `e_ij` with
//! `i` outside S (including the extra row index) and `j` in S, with
//! eigenvalue `-b_i b_j` where the extra index carries `b_{n+1} = 1`.
//! The candidate `v` must be annihilated by the matching `E_ij`.

use num_traits::Zero;

use crate::glmod::GlModule;
use crate::poly::MultiPoly;
use crate::rational::{rat_to_string, Rat};
use crate::sl::SlElement;
use crate::tensor::{ModelAction, TensorContext, TensorVector};

#[derive(Debug, Clone)]
pub enum WhittakerOutcome {
    Pass { pairs_checked: usize },
    PreconditionFailed { i: usize, j: usize },
    EigenFailed { i: usize, j: usize, residual: String },
}

impl WhittakerOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, WhittakerOutcome::Pass { .. })
    }
}

/// Runs the check for `w = e^g (x) v_l`.
///
/// `b` has n+1 entries with the last equal to 1; the twist is
/// `g = sum_{i<=n} b_i t_i`. `s` is nonempty and 1-based.
pub fn whittaker_check(
    n: usize,
    b: &[Rat],
    s: &[usize],
    module: &GlModule,
    l: usize,
) -> Result<WhittakerOutcome, String> {
    if b.len() != n + 1 {
        return Err(format!("b needs {} entries", n + 1));
    }
    if b[n] != Rat::from_integer(1.into()) {
        return Err("the last entry of b must be 1".to_string());
    }
    if s.is_empty() {
        return Err("S must be nonempty".to_string());
    }
    if l >= module.dim {
        return Err("basis index out of range".to_string());
    }
    let mut mask = vec![false; n];
    for &i in s {
        if i < 1 || i > n {
            return Err("S must be a subset of 1..=n".to_string());
        }
        mask[i - 1] = true;
    }

    // precondition: E_ij v = 0 for i outside S, j in S (gl(n) indices)
    for i in 1..=n {
        if mask[i - 1] {
            continue;
        }
        for j in 1..=n {
            if !mask[j - 1] {
                continue;
            }
            let col: Vec<Rat> = (0..module.dim)
                .map(|r| module.e(i - 1, j - 1)[(r, l)].clone())
                .collect();
            if col.iter().any(|c| !c.is_zero()) {
                return Ok(WhittakerOutcome::PreconditionFailed { i, j });
            }
        }
    }

    let mut g = MultiPoly::zero(n, false);
    for i in 0..n {
        g = g.add(&MultiPoly::var(n, false, i).scale(&b[i])).expect("same n");
    }
    let ctx = TensorContext::new(n, s.to_vec(), g, module.clone())?;
    let act = ModelAction::polynomial(&ctx);
    let w = TensorVector::basis(vec![0; n], l);

    let mut pairs = 0;
    for i in 1..=(n + 1) {
        if i <= n && mask[i - 1] {
            continue;
        }
        for j in 1..=n {
            if !mask[j - 1] {
                continue;
            }
            let x = SlElement::E(i, j);
            let image = act.apply(&x, &w);
            let chi = -(&b[i - 1] * &b[j - 1]);
            let residual = image.sub(&w.scale(&chi));
            if !residual.is_zero() {
                return Ok(WhittakerOutcome::EigenFailed {
                    i,
                    j,
                    residual: format!(
                        "expected eigenvalue {}, residual {}",
                        rat_to_string(&chi),
                        residual.text()
                    ),
                });
            }
            pairs += 1;
        }
    }
    Ok(WhittakerOutcome::Pass { pairs_checked: pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rint;

    #[test]
    fn natural_module_eigenvalue() {
        // n=2, S={2}, V = natural, v = e1, b = (2,3,1): e(1,2) w = -6 w
        let module = GlModule::exterior(2, 1);
        let b = vec![rint(2), rint(3), rint(1)];
        let out = whittaker_check(2, &b, &[2], &module, 0).unwrap();
        assert!(out.passed(), "{out:?}");
    }

    #[test]
    fn full_s_passes() {
        // S = {1,2}: only the extra-row pairs remain and they carry -b_j
        let module = GlModule::exterior(2, 1);
        let b = vec![rint(2), rint(3), rint(1)];
        let out = whittaker_check(2, &b, &[1, 2], &module, 0).unwrap();
        assert!(out.passed());
        let out = whittaker_check(2, &b, &[1, 2], &module, 1).unwrap();
        assert!(out.passed());
    }

    #[test]
    fn precondition_rejects_bad_vector() {
        // v = e2 fails: E12 e2 = e1 != 0
        let module = GlModule::exterior(2, 1);
        let b = vec![rint(2), rint(3), rint(1)];
        let out = whittaker_check(2, &b, &[2], &module, 1).unwrap();
        assert!(matches!(out, WhittakerOutcome::PreconditionFailed { i: 1, j: 2 }));
    }
}
