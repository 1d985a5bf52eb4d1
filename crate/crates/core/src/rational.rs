//! Exact rational scalars.
//!
//! Every coefficient in the library is a `BigRational`: arbitrary-precision
//! numerator, positive denominator, always reduced. `num-rational` maintains
//! both invariants on construction, so a `Rat` is canonical by construction.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// Shorthand for `p/q` from machine integers.
pub fn rat(p: i64, q: i64) -> Rat {
    assert!(q != 0, "zero denominator");
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Shorthand for an integer rational.
pub fn rint(p: i64) -> Rat {
    BigRational::from_integer(BigInt::from(p))
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// The value as an `i64` when it is an integer that fits; `None` otherwise.
pub fn to_i64(r: &Rat) -> Option<i64> {
    if !is_integer(r) {
        return None;
    }
    let n = r.numer();
    let max = BigInt::from(i64::MAX);
    let min = BigInt::from(i64::MIN);
    if *n > max || *n < min {
        return None;
    }
    let (sign, digits) = n.to_u64_digits();
    let mag = digits.first().copied().unwrap_or(0);
    Some(match sign {
        num_bigint::Sign::Minus => -(mag as i64),
        _ => mag as i64,
    })
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn rat_to_string(r: &Rat) -> String {
    if is_integer(r) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` with an optional leading sign.
pub fn rat_from_str(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRational::from_integer(n))
    }
}

/// Falling factorial `x(x-1)...(x-k+1)` of a rational point.
pub fn falling(x: &Rat, k: u32) -> Rat {
    let mut acc = Rat::one();
    let mut cur = x.clone();
    for _ in 0..k {
        acc *= &cur;
        cur -= Rat::one();
    }
    acc
}

pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}
