//! Exact rationals.
//!
//! The kernel works over `Q` throughout; `Rational` is the arbitrary-precision
//! reduced fraction from `num-rational`, which already keeps
//! `gcd(|num|, den) = 1` and `den > 0`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qf(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// `(-1)^e` as a rational.
pub fn sign(e: u8) -> Rational {
    if e.is_multiple_of(2) {
        one()
    } else {
        -one()
    }
}

/// Canonical string form: `"p"` when the denominator is one, else `"p/q"`.
pub fn to_canonical(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
        Some((p, d)) => {
            let n: BigInt = p.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Nonnegative integer test, used by dominance checks.
pub fn is_nonneg_integer(x: &Rational) -> bool {
    x.is_integer() && !x.is_negative()
}
