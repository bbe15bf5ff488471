//! Exact rational helpers.
//!
//! Counts (word lengths, star counts, level multipliers) are kept in integer
//! arithmetic throughout; the proportion and certificate identities are
//! checked in `BigRational` so they are exact relative to the floating inputs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational value of a finite `f64` (every finite float is a dyadic rational).
pub fn exact_ratio(x: f64) -> BigRational {
    assert!(x.is_finite(), "exact_ratio requires a finite value");
    if x == 0.0 {
        return BigRational::zero();
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1i64 } else { 1i64 };
    let exponent = ((bits >> 52) & 0x7ff) as i64;
    let fraction = bits & 0x000f_ffff_ffff_ffff;
    // subnormals have an implicit leading 0 and exponent -1074
    let (mantissa, exp) = if exponent == 0 {
        (fraction, -1074i64)
    } else {
        (fraction | 0x0010_0000_0000_0000, exponent - 1075)
    };
    let mut value = BigRational::from_integer(BigInt::from(mantissa as i128 * sign as i128));
    let two = BigRational::from_integer(BigInt::from(2));
    if exp >= 0 {
        for _ in 0..exp {
            value *= &two;
        }
    } else {
        for _ in 0..(-exp) {
            value /= &two;
        }
    }
    value
}

pub fn big_ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_int(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn to_f64(r: &BigRational) -> f64 {
    // good enough for reporting; exact comparisons stay rational
    let num = r.numer();
    let den = r.denom();
    let (fnum, fden) = (bigint_to_f64(num), bigint_to_f64(den));
    fnum / fden
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    let s = n.to_string();
    s.parse::<f64>().unwrap_or(if n.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

/// Floor of a nonnegative rational as u64.
pub fn floor_u64(r: &BigRational) -> u64 {
    assert!(!r.is_negative());
    let f = r.floor();
    let (num, den) = (f.numer().clone(), f.denom().clone());
    assert!(den.is_one());
    let digits = num.to_string();
    digits.parse::<u64>().expect("floor fits in u64")
}
