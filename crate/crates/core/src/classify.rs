//! Classification of the shifted weight and the simplicity prediction.
//!
//! For a dominant gl(n)-weight `lam`, the shifted weight `lam - 1` falls into
//! exactly one of: the nonintegral class N, a singular class S(k), or a
//! regular integral class R(k). The membership tests are the closed-form
//! conditions on `lam_m - m` against `-sum(lam)`, with the convention
//! `lam_0 = +infinity`. The simplicity prediction per class:
//!
//! * N: simple for every S;
//! * S(k): simple iff S is empty or full;
//! * R(0): simple iff S is full;
//! * R(n): simple iff S is empty;
//! * R(k), 0 < k < n: not simple for any S.

use num_traits::Zero;

use crate::rational::{is_integer, rat_to_string, rint, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightClass {
    /// Nonintegral linkage class.
    N,
    /// Singular class, `1 <= k <= n`.
    S(usize),
    /// Regular integral class, `0 <= k <= n`.
    R(usize),
}

impl WeightClass {
    pub fn text(&self) -> String {
        match self {
            WeightClass::N => "N".to_string(),
            WeightClass::S(k) => format!("S({k})"),
            WeightClass::R(k) => format!("R({k})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prediction {
    Simple,
    NotSimple,
}

#[derive(Debug, Clone)]
pub enum ClassifyError {
    NotDominant(String),
    OutsideDomain(String),
}

impl std::fmt::Display for ClassifyError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClassifyError::NotDominant(s) => write!(f, "not dominant: {s}"),
            ClassifyError::OutsideDomain(s) => write!(f, "outside classification domain: {s}"),
        }
    }
}

impl std::error::Error for ClassifyError {}

/// Classifies `lam - 1` and predicts simplicity of the tensor module built
/// on the simple module of highest weight `lam` with variable subset `s`
/// (1-based indices into 1..=n).
pub fn classify_and_predict(
    lam: &[Rat],
    s: &[usize],
) -> Result<(WeightClass, Prediction), ClassifyError> {
    let class = classify_shifted(lam)?;
    let n = lam.len();
    let s_empty = s.is_empty();
    let s_full = {
        let mut mask = vec![false; n];
        for &i in s {
            if i >= 1 && i <= n {
                mask[i - 1] = true;
            }
        }
        mask.iter().all(|&b| b)
    };
    let simple = match &class {
        WeightClass::N => true,
        WeightClass::S(_) => s_empty || s_full,
        WeightClass::R(0) => s_full,
        WeightClass::R(k) if *k == n => s_empty,
        WeightClass::R(_) => false,
    };
    Ok((class, if simple { Prediction::Simple } else { Prediction::NotSimple }))
}

/// The class of `lam - 1` for dominant `lam`.
pub fn classify_shifted(lam: &[Rat]) -> Result<WeightClass, ClassifyError> {
    let n = lam.len();
    assert!(n >= 1);
    for i in 0..n - 1 {
        if lam[i] < lam[i + 1] {
            return Err(ClassifyError::NotDominant(format!(
                "lam{} < lam{}",
                i + 1,
                i + 2
            )));
        }
    }
    let total: Rat = lam.iter().fold(Rat::zero(), |acc, x| acc + x);
    let gate = &lam[n - 1] + &total;
    if !is_integer(&gate) {
        return Ok(WeightClass::N);
    }
    // integral case needs integral steps for the linkage analysis
    for i in 0..n - 1 {
        let diff = &lam[i] - &lam[i + 1];
        if !is_integer(&diff) {
            return Err(ClassifyError::OutsideDomain(format!(
                "lam{} - lam{} = {} is not an integer while the linkage sum is",
                i + 1,
                i + 2,
                rat_to_string(&diff)
            )));
        }
    }
    let target = -total.clone();
    // singular: lam_{n-k} - (n-k) = target for some k = 0..n-1
    for k in 0..n {
        let m = n - k; // index into lam, 1-based
        let value = &lam[m - 1] - rint(m as i64);
        if value == target {
            return Ok(WeightClass::S(k + 1));
        }
    }
    // regular: lam_{n-k} - (n-k) > target > lam_{n-k+1} - (n-k+1), lam_0 = inf
    for k in 0..=n {
        let left_ok = if k == n {
            true
        } else {
            let m = n - k;
            (&lam[m - 1] - rint(m as i64)) > target
        };
        let m2 = n - k + 1;
        let right = if m2 <= n {
            &lam[m2 - 1] - rint(m2 as i64)
        } else {
            // lam_{n+1} = -sum(lam), shifted by -(n+1)
            -&total - rint(n as i64 + 1)
        };
        if left_ok && target > right {
            return Ok(WeightClass::R(k));
        }
    }
    unreachable!("the linkage classes partition the integral dominant cone")
}
