use crate::error::{Error, Result};

/// Smallest number of significant digits a context may target.
pub const MIN_DIGITS: u32 = 10;

/// Smallest number of guard digits carried beyond the target.
pub const MIN_GUARD: u32 = 10;

/// Working precision: `digits` significant decimal digits are trusted,
/// arithmetic is carried out with `digits + guard` digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    digits: u32,
    guard: u32,
}

impl PrecisionContext {
    /// Builds a context with the default guard policy `max(10, ceil(digits / 4))`.
    pub fn new(digits: u32) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(Error::InvalidPrecision {
                digits,
                min: MIN_DIGITS,
            });
        }
        let guard = MIN_GUARD.max(digits.div_ceil(4));
        Ok(PrecisionContext { digits, guard })
    }

    pub fn digits(self) -> u32 {
        self.digits
    }

    pub fn guard(self) -> u32 {
        self.guard
    }

    /// Internal digit count, `digits + guard`.
    pub fn working_digits(self) -> u32 {
        self.digits + self.guard
    }

    /// The finer of two contexts; used when operands disagree.
    pub(crate) fn finer(self, other: Self) -> Self {
        if other.working_digits() > self.working_digits() {
            other
        } else {
            self
        }
    }
}

/// Creates a context targeting `digits` significant digits.
pub fn make_context(digits: u32) -> Result<PrecisionContext> {
    PrecisionContext::new(digits)
}
