//! The fixed basis of sl(n+1) and its structure constants.
//!
//! Basis: `h_k = e_kk - (1/(n+1)) sum_i e_ii` for `k = 1..n`, together with
//! the off-diagonal elementary matrices `e_ij`, `1 <= i != j <= n+1`.
//! Brackets are computed on (n+1)x(n+1) matrices and re-expressed in the
//! basis, so the constants are exact by construction.

use num_traits::Zero;

use crate::matrix::RatMatrix;
use crate::rational::{rat, rint, Rat};

/// A basis element of sl(n+1). Indices are 1-based to match the usual
/// matrix-entry naming; `E { i, j }` requires `i != j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SlElement {
    H(usize),
    E(usize, usize),
}

impl SlElement {
    pub fn text(&self) -> String {
        match self {
            SlElement::H(k) => format!("h{k}"),
            SlElement::E(i, j) => format!("e{i},{j}"),
        }
    }

    /// The root of the element as a tuple of `h_k`-eigenvalues; zero for
    /// Cartan elements.
    pub fn root(&self, n: usize) -> Vec<Rat> {
        match self {
            SlElement::H(_) => vec![Rat::zero(); n],
            SlElement::E(i, j) => (1..=n)
                .map(|k| {
                    let mut v = Rat::zero();
                    if k == *i {
                        v += rint(1);
                    }
                    if k == *j {
                        v -= rint(1);
                    }
                    v
                })
                .collect(),
        }
    }
}

/// The full basis in a fixed deterministic order: h_1..h_n, then e_ij sorted
/// by (i, j).
pub fn sl_basis(n: usize) -> Vec<SlElement> {
    let mut out: Vec<SlElement> = (1..=n).map(SlElement::H).collect();
    for i in 1..=(n + 1) {
        for j in 1..=(n + 1) {
            if i != j {
                out.push(SlElement::E(i, j));
            }
        }
    }
    out
}

/// A rational linear combination of basis elements.
pub type SlCombination = Vec<(SlElement, Rat)>;

/// The (n+1)x(n+1) matrix of a basis element.
pub fn element_matrix(n: usize, x: &SlElement) -> RatMatrix {
    let mut m = RatMatrix::zero(n + 1, n + 1);
    match x {
        SlElement::H(k) => {
            let share = rat(1, (n as i64) + 1);
            for i in 0..=n {
                m[(i, i)] = -share.clone();
            }
            m[(k - 1, k - 1)] += rint(1);
        }
        SlElement::E(i, j) => {
            m[(i - 1, j - 1)] = rint(1);
        }
    }
    m
}

/// Expresses a traceless (n+1)x(n+1) matrix in the fixed basis.
pub fn matrix_to_combination(n: usize, m: &RatMatrix) -> SlCombination {
    let mut out: SlCombination = Vec::new();
    // h-part: with d the diagonal, the coefficient of h_k is d_k - d_{n+1}
    let d_last = m[(n, n)].clone();
    for k in 1..=n {
        let c = &m[(k - 1, k - 1)] - &d_last;
        if !c.is_zero() {
            out.push((SlElement::H(k), c));
        }
    }
    for i in 1..=(n + 1) {
        for j in 1..=(n + 1) {
            if i != j && !m[(i - 1, j - 1)].is_zero() {
                out.push((SlElement::E(i, j), m[(i - 1, j - 1)].clone()));
            }
        }
    }
    out
}

/// Exact structure constants: `[x, y]` as a combination of basis elements.
pub fn sl_bracket(n: usize, x: &SlElement, y: &SlElement) -> SlCombination {
    let a = element_matrix(n, x);
    let b = element_matrix(n, y);
    matrix_to_combination(n, &a.commutator(&b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn single(c: &SlCombination) -> Option<(SlElement, Rat)> {
        if c.len() == 1 {
            Some(c[0].clone())
        } else {
            None
        }
    }

    #[test]
    fn bracket_e12_e21_is_h1_minus_h2() {
        let c = sl_bracket(2, &SlElement::E(1, 2), &SlElement::E(2, 1));
        assert_eq!(
            c,
            vec![(SlElement::H(1), Rat::one()), (SlElement::H(2), -Rat::one())]
        );
    }

    #[test]
    fn bracket_e12_e23_is_e13() {
        let c = sl_bracket(2, &SlElement::E(1, 2), &SlElement::E(2, 3));
        assert_eq!(single(&c), Some((SlElement::E(1, 3), Rat::one())));
    }

    #[test]
    fn corner_bracket_hits_full_cartan() {
        // [e_{1,n+1}, e_{n+1,1}] = h_1 + sum_j h_j
        let n = 3;
        let c = sl_bracket(n, &SlElement::E(1, n + 1), &SlElement::E(n + 1, 1));
        let mut expect: Vec<(SlElement, Rat)> = vec![(SlElement::H(1), rint(2))];
        for k in 2..=n {
            expect.push((SlElement::H(k), rint(1)));
        }
        assert_eq!(c, expect);
    }

    #[test]
    fn cartan_weights_on_roots() {
        // [h_k, e_ij] = (delta_ki - delta_kj) e_ij
        let n = 2;
        for k in 1..=n {
            for x in sl_basis(n) {
                if let SlElement::E(i, j) = x {
                    let c = sl_bracket(n, &SlElement::H(k), &x);
                    let expect_coeff = rint((k == i) as i64 - (k == j) as i64);
                    if expect_coeff.is_zero() {
                        assert!(c.is_empty());
                    } else {
                        assert_eq!(single(&c), Some((x, expect_coeff)));
                    }
                }
            }
        }
    }

    #[test]
    fn roots_match_brackets() {
        let n = 3;
        for x in sl_basis(n) {
            let r = x.root(n);
            for k in 1..=n {
                let c = sl_bracket(n, &SlElement::H(k), &x);
                let coeff = c
                    .iter()
                    .find(|(e, _)| *e == x)
                    .map(|(_, v)| v.clone())
                    .unwrap_or_else(Rat::zero);
                assert_eq!(coeff, r[k - 1]);
            }
        }
    }
}
