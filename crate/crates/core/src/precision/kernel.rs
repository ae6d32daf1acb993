//! Fixed-point series behind `exp`, `expm1` and `ln`.
//!
//! Every routine works on integers `m` meaning `m / 10^w` and truncates at
//! each step; callers pick `w` with enough slack to absorb the accumulated
//! truncation (a few hundred units at most).

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::decimal::{digit_count_int, digit_count_u64, pow10_int, rescale_trunc};

/// Halvings applied before the exp Taylor series.
const EXP_HALVINGS: u32 = 12;

/// `atanh(1/q)` at scale `w`.
fn atanh_inverse(q: u64, w: i64) -> BigInt {
    let q2 = BigInt::from(q * q);
    let mut power = pow10_int(w as u64) / q;
    let mut sum = power.clone();
    let mut j: u64 = 1;
    loop {
        power /= &q2;
        if power.is_zero() {
            break;
        }
        sum += &power / (2 * j + 1);
        j += 1;
    }
    sum
}

/// Constants shared by every logarithm at one scale.
pub(crate) struct LnConstants {
    w: i64,
    one: BigInt,
    ln2: BigInt,
    ln10: BigInt,
}

impl LnConstants {
    pub(crate) fn new(w: i64) -> Self {
        // ln 2 = 2 atanh(1/3), ln(5/4) = 2 atanh(1/9), ln 10 = 3 ln 2 + ln(5/4)
        let ln2 = atanh_inverse(3, w) * 2;
        let ln10 = &ln2 * 3 + atanh_inverse(9, w) * 2;
        LnConstants {
            w,
            one: pow10_int(w as u64),
            ln2,
            ln10,
        }
    }

    pub(crate) fn ln10(&self) -> &BigInt {
        &self.ln10
    }

    /// `ln(m * 10^-s)` at scale `w`, for `m > 0`.
    pub(crate) fn ln(&self, m: &BigInt, s: i64) -> BigInt {
        debug_assert!(m.is_positive());
        let w = self.w;
        let d = digit_count_int(m) as i64;
        let k10 = d - 1 - s;
        // y = m / 10^(d-1) in [1, 10)
        let y = rescale_trunc(m, d - 1, w);
        let one = &self.one;
        let (a, z) = if y < one * 3 / 2 {
            (0u32, y)
        } else if y < one * 3 {
            (1, y / 2)
        } else if y < one * 6 {
            (2, y / 4)
        } else {
            (3, y / 8)
        };
        let t = (&z - one) * one / (&z + one);
        let t2 = &t * &t / one;
        let mut term = t.clone();
        let mut sum = t;
        let mut j: u64 = 1;
        loop {
            term = term * &t2 / one;
            if term.is_zero() {
                break;
            }
            sum += &term / (2 * j + 1);
            j += 1;
        }
        sum * 2 + &self.ln2 * a + &self.ln10 * k10
    }
}

/// `exp(x)` for `x = m * 10^-s`, returned as `(mantissa, scale)` with relative
/// error below `10^-(digits)`. `|x|` must already be range checked.
pub(crate) fn exp_parts(m: &BigInt, s: i64, digits: i64) -> (BigInt, i64) {
    let int_digits = (digit_count_int(m) as i64 - s).max(0);
    let w = digits + 16 + int_digits;
    let consts = LnConstants::new(w);
    let one = pow10_int(w as u64);
    let x = rescale_trunc(m, s, w);

    // x = q ln 10 + r, |r| <= ln(10) / 2
    let ln10 = consts.ln10();
    let half = ln10 / 2;
    let q: BigInt = if x.is_negative() {
        (&x - &half) / ln10
    } else {
        (&x + &half) / ln10
    };
    let r = &x - &q * ln10;
    let t: BigInt = r / (1u64 << EXP_HALVINGS);

    let mut term = t.clone();
    let mut sum = &one + &t;
    let mut k: u64 = 2;
    loop {
        term = term * &t / &one / k;
        if term.is_zero() {
            break;
        }
        sum += &term;
        k += 1;
    }
    for _ in 0..EXP_HALVINGS {
        sum = &sum * &sum / &one;
    }
    let q: i64 = q.try_into().expect("exponent fits after range guard");
    (sum, w - q)
}

/// `exp(x) - 1` for `|x| < 1` by its Taylor series, relative to `x`.
/// Returns `(mantissa, scale)`.
pub(crate) fn expm1_series(m: &BigInt, s: i64, digits: i64) -> (BigInt, i64) {
    let leading_zeros = (s - digit_count_int(m) as i64).max(0);
    let w = digits + 12 + leading_zeros;
    let one = pow10_int(w as u64);
    let x = rescale_trunc(m, s, w);
    let mut term = x.clone();
    let mut sum = x.clone();
    let mut k: u64 = 2;
    loop {
        term = term * &x / &one / k;
        if term.is_zero() {
            break;
        }
        sum += &term;
        k += 1;
    }
    (sum, w)
}

/// Scale giving `digits` significant digits for a sum no smaller than `1/hi`.
pub(crate) fn sum_scale(digits: i64, hi: u64) -> i64 {
    digits + 8 + digit_count_u64(hi) as i64
}
