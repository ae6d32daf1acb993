//! Integer helpers for scaled-decimal arithmetic.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use std::sync::OnceLock;

const CACHED_POWERS: usize = 640;

fn cached_powers() -> &'static [BigUint] {
    static TABLE: OnceLock<Vec<BigUint>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = Vec::with_capacity(CACHED_POWERS);
        let mut p = BigUint::one();
        for _ in 0..CACHED_POWERS {
            table.push(p.clone());
            p *= 10u32;
        }
        table
    })
}

pub(crate) fn pow10(k: u64) -> BigUint {
    match cached_powers().get(k as usize) {
        Some(p) => p.clone(),
        None => BigUint::from(10u32).pow(u32::try_from(k).expect("power of ten exponent too large")),
    }
}

pub(crate) fn pow10_int(k: u64) -> BigInt {
    BigInt::from(pow10(k))
}

/// Number of decimal digits of `m`; zero has zero digits.
pub(crate) fn digit_count(m: &BigUint) -> u64 {
    if m.is_zero() {
        return 0;
    }
    let bits = m.bits();
    // floor((bits - 1) * log10(2)) + 1 is a lower bound, off by at most one.
    let mut d = ((bits - 1) as u128 * 301_029_995_664 / 1_000_000_000_000) as u64 + 1;
    while *m >= pow10(d) {
        d += 1;
    }
    while d > 1 && *m < pow10(d - 1) {
        d -= 1;
    }
    d
}

pub(crate) fn digit_count_int(m: &BigInt) -> u64 {
    digit_count(m.magnitude())
}

pub(crate) fn digit_count_u64(n: u64) -> u64 {
    if n == 0 {
        0
    } else {
        u64::from(n.ilog10()) + 1
    }
}

/// Divides `m` by `10^k`, rounding half to even. `sticky` records that the
/// true value lies strictly beyond `m` in magnitude (a discarded nonzero tail).
pub(crate) fn round_shift(m: &BigInt, k: u64, sticky: bool) -> BigInt {
    if k == 0 {
        return m.clone();
    }
    let divisor = pow10(k);
    let (q, r) = m.magnitude().div_rem(&divisor);
    let twice = &r << 1usize;
    let up = match twice.cmp(&divisor) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => sticky || q.is_odd(),
    };
    let q = if up { q + BigUint::one() } else { q };
    let sign = if q.is_zero() { Sign::NoSign } else { m.sign() };
    BigInt::from_biguint(sign, q)
}

/// Truncating conversion of `m * 10^-from` to scale `to`.
pub(crate) fn rescale_trunc(m: &BigInt, from: i64, to: i64) -> BigInt {
    if to >= from {
        m * pow10_int((to - from) as u64)
    } else {
        m / pow10_int((from - to) as u64)
    }
}
