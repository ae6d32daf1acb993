//! Exact-rational oracles independent of the scaled-decimal kernel.

#![allow(dead_code)]

use eharmonic_core::precision::{PrecisionContext, Real};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `sum_{i=1..n} 1/i` exactly.
pub fn harmonic_exact(n: u64) -> BigRational {
    (1..=n).fold(BigRational::zero(), |acc, i| acc + ratio(1, i as i64))
}

/// Taylor enclosure of `e^x` for `|x| <= 1`: returns `(lo, hi)` with
/// `lo <= e^x <= hi`. The remainder after `N` terms is at most
/// `2 |x|^(N+1) / (N+1)!`.
pub fn exp_enclosure(x: &BigRational, terms: u32) -> (BigRational, BigRational) {
    assert!(x.abs() <= BigRational::one());
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    for k in 0..terms {
        sum += &term;
        term = term * x / BigRational::from_integer(BigInt::from(k + 1));
    }
    let bound = term.abs() * BigRational::from_integer(BigInt::from(2));
    (&sum - &bound, &sum + &bound)
}

/// Exact decimal value of a `Real`.
pub fn exact(r: &Real) -> BigRational {
    let s = r.scale();
    let ten = BigInt::from(10);
    if s >= 0 {
        BigRational::new(r.mantissa().clone(), ten.pow(s as u32))
    } else {
        BigRational::from_integer(r.mantissa() * ten.pow((-s) as u32))
    }
}

/// `10^-p` as a rational.
pub fn ten_pow_neg(p: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10).pow(p))
}

/// `v` rendered with `places` fractional digits, truncated, for diagnostics.
pub fn show(v: &BigRational, places: u32) -> String {
    let scaled = (v * BigRational::from_integer(BigInt::from(10).pow(places))).to_integer();
    format!("{scaled}e-{places}")
}

pub fn real(s: &str, ctx: PrecisionContext) -> Real {
    Real::parse(s, ctx).unwrap()
}
