//! Scaled-decimal arithmetic kernel.
//!
//! Every value is a [`Real`] carrying a [`PrecisionContext`]; operations
//! compute at `digits + guard` digits and the result is trusted to `digits`.
//! `harmonic` and `ln_factorial` accumulate error linearly in their
//! argument, so at `n = 10^6` roughly `digits - 6` digits remain exact
//! unless the guard absorbs it (it does for the default policy).

mod context;
pub(crate) mod decimal;
mod kernel;
mod real;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

pub use context::{make_context, PrecisionContext, MIN_DIGITS, MIN_GUARD};
pub use real::Real;

use crate::error::{Error, Result};
use kernel::LnConstants;

/// Largest `|x|` accepted by [`exp`] and [`expm1`].
pub const EXP_RANGE_LIMIT: u64 = 1_000_000;

fn working(ctx: PrecisionContext) -> i64 {
    i64::from(ctx.working_digits())
}

fn check_range(x: &Real) -> Result<()> {
    let limit = Real::from_int(EXP_RANGE_LIMIT, x.context());
    if x.abs() > limit {
        return Err(Error::OverflowRange {
            limit: EXP_RANGE_LIMIT,
        });
    }
    Ok(())
}

/// `e^x`, within a few units of the last target digit.
pub fn exp(x: &Real) -> Result<Real> {
    check_range(x)?;
    let ctx = x.context();
    if x.is_zero() {
        return Ok(Real::one(ctx));
    }
    let (m, s) = kernel::exp_parts(x.mantissa(), x.scale(), working(ctx));
    Ok(Real::from_parts(m, s, ctx, false))
}

/// Natural logarithm; `x` must be positive.
pub fn ln(x: &Real) -> Result<Real> {
    if !x.is_positive() {
        return Err(Error::domain("ln", format!("argument {x} is not positive")));
    }
    let ctx = x.context();
    let consts = LnConstants::new(working(ctx) + 10);
    let m = consts.ln(x.mantissa(), x.scale());
    Ok(Real::from_parts(m, working(ctx) + 10, ctx, false))
}

/// `e^x - 1` with relative accuracy for small `|x|`.
///
/// Below `|x| = 1` the Taylor series is summed directly; above it
/// `exp(x) - 1` does not cancel.
pub fn expm1(x: &Real) -> Result<Real> {
    check_range(x)?;
    let ctx = x.context();
    let Some(e) = x.exponent() else {
        return Ok(Real::zero(ctx));
    };
    let digits = working(ctx);
    if e <= 0 {
        let (m, s) = kernel::expm1_series(x.mantissa(), x.scale(), digits);
        return Ok(Real::from_parts(m, s, ctx, false));
    }
    let (m, s) = kernel::exp_parts(x.mantissa(), x.scale(), digits + 2);
    if s < 0 {
        // e^x is an integer multiple of a large power of ten; the -1 sits
        // far below the last carried digit.
        return Ok(Real::from_parts(m, s, ctx, false));
    }
    Ok(Real::from_parts(m - decimal::pow10_int(s as u64), s, ctx, false))
}

/// `sum_{i=lo..=hi} 1/i` at the context's working precision; zero when `lo > hi`.
pub fn reciprocal_sum(lo: u64, hi: u64, ctx: PrecisionContext) -> Real {
    assert!(lo >= 1, "reciprocal of zero");
    if lo > hi {
        return Real::zero(ctx);
    }
    let scale = kernel::sum_scale(working(ctx), hi);
    let numerator = decimal::pow10(scale as u64);
    let mut acc = BigUint::zero();
    for i in lo..=hi {
        acc += &numerator / i;
    }
    Real::from_parts(BigInt::from(acc), scale, ctx, false)
}

/// Harmonic number `H_n`, with `H_0 = 0`.
pub fn harmonic(n: u64, ctx: PrecisionContext) -> Real {
    reciprocal_sum(1, n, ctx)
}

/// `sum_{i=lo..=hi} ln(i)`, i.e. `ln(hi! / (lo-1)!)`, summed term by term.
pub fn ln_range_sum(lo: u64, hi: u64, ctx: PrecisionContext) -> Real {
    let lo = lo.max(2);
    if lo > hi {
        return Real::zero(ctx);
    }
    let scale = working(ctx) + 8 + decimal::digit_count_u64(hi) as i64;
    let consts = LnConstants::new(scale);
    let mut acc = BigInt::zero();
    for i in lo..=hi {
        acc += consts.ln(&BigInt::from(i), 0);
    }
    Real::from_parts(acc, scale, ctx, false)
}

/// `ln(k!)` as `sum_{i=2..=k} ln(i)`; never an asymptotic expansion.
pub fn ln_factorial(k: u64, ctx: PrecisionContext) -> Real {
    ln_range_sum(2, k, ctx)
}
