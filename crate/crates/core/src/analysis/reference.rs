use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::formulas::gamma_prod;
use crate::precision::{make_context, PrecisionContext, Real};

/// The Euler-Mascheroni constant to 110 significant digits (rounded).
pub const GAMMA_110: &str = "0.57721566490153286060651209008240243104215933593992359880576723488486772677766467093694706329174674951463144725";

pub const STORED_DIGITS: u32 = 110;

/// Largest target precision [`reference_gamma`] serves.
pub const MAX_REFERENCE_DIGITS: u32 = 100;

const SELF_CHECK_N: u64 = 1_000_000;
const SELF_CHECK_DIGITS: u32 = 30;
const SELF_CHECK_TOLERANCE: &str = "1e-11";

fn stored() -> Real {
    let ctx = make_context(STORED_DIGITS).expect("valid context");
    Real::parse(GAMMA_110, ctx).expect("stored constant parses")
}

/// Compares the stored digits with `H_n - ln(n^2+n)/2` at `n = 10^6`,
/// whose error is about `1/(6 n^2)`. Runs once per process.
fn self_check() -> Result<()> {
    static CHECK: OnceLock<Result<()>> = OnceLock::new();
    CHECK
        .get_or_init(|| {
            let ctx = make_context(SELF_CHECK_DIGITS)?;
            let stored = stored().with_context(ctx);
            let approx = gamma_prod(SELF_CHECK_N, false, ctx)?;
            let gap = (&approx - &stored).abs();
            let tolerance = Real::parse(SELF_CHECK_TOLERANCE, ctx)?;
            if gap < tolerance {
                Ok(())
            } else {
                Err(Error::SelfCheck(format!(
                    "stored gamma differs from the n = {SELF_CHECK_N} approximation by {gap}"
                )))
            }
        })
        .clone()
}

/// The stored constant rounded to the context's target digits.
pub fn reference_gamma(ctx: PrecisionContext) -> Result<Real> {
    if ctx.digits() > MAX_REFERENCE_DIGITS {
        return Err(Error::PrecisionUnavailable {
            requested: ctx.digits(),
            available: MAX_REFERENCE_DIGITS,
        });
    }
    self_check()?;
    Ok(stored().round_significant(ctx.digits()).with_context(ctx))
}
