//! The E-Harmonic function `E(n) = e^{H_n}` and the approximations to the
//! Euler-Mascheroni constant built from it.
//!
//! Every inner `e^s - 1` goes through [`expm1`] so large `n` keeps its
//! relative accuracy. `n^2 + n` is evaluated as `ln(n) + ln(n + 1)` and
//! `ln((n+k)!/(n-1)!)` as a direct sum of logarithms over `n..=n+k`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::precision::{
    exp, expm1, harmonic, ln, ln_range_sum, reciprocal_sum, PrecisionContext, Real,
};

/// The implemented approximations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FormulaId {
    /// `H_n - ln n`
    #[serde(rename = "classic")]
    Classic,
    /// `H_n + ln(e^{1/(n+1)} - 1)`
    #[serde(rename = "diff")]
    Diff,
    /// `H_n + 1/(2(n+1)) - ln(n^2 + n)/2`
    #[serde(rename = "prod-leftover")]
    ProdLeftover,
    /// `H_n - ln(n^2 + n)/2`
    #[serde(rename = "prod-no-leftover")]
    ProdNoLeftover,
    /// `L(n, k) = H_n + ln(e^{sum_{i=1..k} 1/(n+i)} - 1) - ln k`
    #[serde(rename = "family-diff")]
    FamilyDiff,
    /// `ln(E(k) - 1) - ln k`
    #[serde(rename = "l-zero")]
    LZero,
    /// `P(n, k)`, the product family
    #[serde(rename = "family-prod")]
    FamilyProd,
    /// `H_k + H_k/k - 1 - ln(k!)/k`
    #[serde(rename = "p-simple")]
    PSimple,
}

impl FormulaId {
    pub const ALL: [FormulaId; 8] = [
        FormulaId::Classic,
        FormulaId::Diff,
        FormulaId::ProdLeftover,
        FormulaId::ProdNoLeftover,
        FormulaId::FamilyDiff,
        FormulaId::LZero,
        FormulaId::FamilyProd,
        FormulaId::PSimple,
    ];

    /// Formulas evaluated at a single parameter.
    pub const SINGLE: [FormulaId; 6] = [
        FormulaId::Classic,
        FormulaId::Diff,
        FormulaId::ProdLeftover,
        FormulaId::ProdNoLeftover,
        FormulaId::LZero,
        FormulaId::PSimple,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FormulaId::Classic => "classic",
            FormulaId::Diff => "diff",
            FormulaId::ProdLeftover => "prod-leftover",
            FormulaId::ProdNoLeftover => "prod-no-leftover",
            FormulaId::FamilyDiff => "family-diff",
            FormulaId::LZero => "l-zero",
            FormulaId::FamilyProd => "family-prod",
            FormulaId::PSimple => "p-simple",
        }
    }

    /// Whether the formula takes the second parameter `k`.
    pub fn takes_k(self) -> bool {
        matches!(self, FormulaId::FamilyDiff | FormulaId::FamilyProd)
    }

    /// Smallest admissible value of the first (or only) parameter.
    pub fn min_n(self) -> u64 {
        match self {
            FormulaId::FamilyDiff => 0,
            _ => 1,
        }
    }

    /// Checks the parameter domain without evaluating.
    pub fn check_domain(self, n: u64, k: Option<u64>) -> Result<()> {
        match (self.takes_k(), k) {
            (true, None) => {
                return Err(Error::domain(self.name(), "second parameter k is required"))
            }
            (false, Some(_)) => {
                return Err(Error::domain(self.name(), "takes a single parameter"))
            }
            (true, Some(0)) => return Err(Error::domain(self.name(), "k must be at least 1")),
            _ => {}
        }
        if n < self.min_n() {
            return Err(Error::domain(
                self.name(),
                format!("parameter must be at least {}, got {n}", self.min_n()),
            ));
        }
        Ok(())
    }

    /// Evaluates the formula. Single-parameter formulas read their parameter
    /// from `n` (for `l-zero` and `p-simple` that parameter is `k`).
    pub fn evaluate(self, n: u64, k: Option<u64>, ctx: PrecisionContext) -> Result<Real> {
        self.check_domain(n, k)?;
        match self {
            FormulaId::Classic => gamma_classic(n, ctx),
            FormulaId::Diff => gamma_diff(n, ctx),
            FormulaId::ProdLeftover => gamma_prod(n, true, ctx),
            FormulaId::ProdNoLeftover => gamma_prod(n, false, ctx),
            FormulaId::FamilyDiff => family_diff(n, k.unwrap_or_default(), ctx),
            FormulaId::LZero => gamma_l0(n, ctx),
            FormulaId::FamilyProd => family_prod(n, k.unwrap_or_default(), ctx),
            FormulaId::PSimple => gamma_p_simple(n, ctx),
        }
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FormulaId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FormulaId::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = FormulaId::ALL.iter().map(|f| f.name()).collect();
                format!("unknown formula {s:?}; expected one of {}", names.join(", "))
            })
    }
}

/// One evaluated approximation.
#[derive(Debug, Clone, PartialEq)]
pub struct Approximation {
    pub formula: FormulaId,
    pub n: u64,
    pub k: Option<u64>,
    pub value: Real,
    /// `value - gamma`, present only when a reference was supplied.
    pub signed_error: Option<Real>,
}

impl Approximation {
    pub fn evaluate(
        formula: FormulaId,
        n: u64,
        k: Option<u64>,
        ctx: PrecisionContext,
        reference: Option<&Real>,
    ) -> Result<Approximation> {
        let value = formula.evaluate(n, k, ctx)?;
        let signed_error = reference.map(|g| &value - g);
        Ok(Approximation {
            formula,
            n,
            k,
            value,
            signed_error,
        })
    }
}

fn int(v: u64, ctx: PrecisionContext) -> Real {
    Real::from_int(v, ctx)
}

fn require(cond: bool, operation: &'static str, reason: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::domain(operation, reason))
    }
}

/// `E(n) = e^{H_n}`; `E(0) = 1`.
pub fn e_harmonic(n: u64, ctx: PrecisionContext) -> Result<Real> {
    exp(&harmonic(n, ctx))
}

/// `H_n - ln n`.
pub fn gamma_classic(n: u64, ctx: PrecisionContext) -> Result<Real> {
    require(n >= 1, "gamma_classic", "n must be at least 1 (ln 0)")?;
    Ok(harmonic(n, ctx) - ln(&int(n, ctx))?)
}

/// `H_n + ln(e^{1/(n+1)} - 1)`.
pub fn gamma_diff(n: u64, ctx: PrecisionContext) -> Result<Real> {
    require(n >= 1, "gamma_diff", "n must be at least 1")?;
    let step = Real::from_ratio(1, n + 1, ctx);
    Ok(harmonic(n, ctx) + ln(&expm1(&step)?)?)
}

/// `H_n + 1/(2(n+1)) - ln(n^2+n)/2`, or without the `1/(2(n+1))` term.
pub fn gamma_prod(n: u64, include_leftover: bool, ctx: PrecisionContext) -> Result<Real> {
    require(n >= 1, "gamma_prod", "n must be at least 1")?;
    let half = Real::from_ratio(1, 2, ctx);
    let log_term = (ln(&int(n, ctx))? + ln(&int(n + 1, ctx))?) * &half;
    let mut value = harmonic(n, ctx) - log_term;
    if include_leftover {
        value = value + Real::from_ratio(1, 2 * (n + 1), ctx);
    }
    Ok(value)
}

/// `L(n, k) = H_n + ln(e^{sum_{i=1..k} 1/(n+i)} - 1) - ln k`, `n >= 0`, `k >= 1`.
pub fn family_diff(n: u64, k: u64, ctx: PrecisionContext) -> Result<Real> {
    require(k >= 1, "family_diff", "k must be at least 1")?;
    let tail = reciprocal_sum(n + 1, n + k, ctx);
    Ok(harmonic(n, ctx) + ln(&expm1(&tail)?)? - ln(&int(k, ctx))?)
}

/// `ln(E(k) - 1) - ln k`, evaluated as `ln(expm1(H_k)) - ln k`.
pub fn gamma_l0(k: u64, ctx: PrecisionContext) -> Result<Real> {
    require(k >= 1, "gamma_l0", "k must be at least 1")?;
    Ok(ln(&expm1(&harmonic(k, ctx))?)? - ln(&int(k, ctx))?)
}

/// `P(n, k) = H_{n+k} - (1/(k+1)) sum_{i=1..k} i/(n+i) - (1/(k+1)) ln((n+k)!/(n-1)!)`.
pub fn family_prod(n: u64, k: u64, ctx: PrecisionContext) -> Result<Real> {
    require(n >= 1, "family_prod", "n must be at least 1 ((n-1)! term)")?;
    require(k >= 1, "family_prod", "k must be at least 1")?;
    let weights = (1..=k).fold(Real::zero(ctx), |acc, i| {
        acc + Real::from_ratio(i, n + i, ctx)
    });
    let logs = ln_range_sum(n, n + k, ctx);
    let scale = int(k + 1, ctx);
    Ok(harmonic(n + k, ctx) - (weights + logs) / scale)
}

/// `H_k + H_k/k - 1 - ln(k!)/k`.
pub fn gamma_p_simple(k: u64, ctx: PrecisionContext) -> Result<Real> {
    require(k >= 1, "gamma_p_simple", "k must be at least 1")?;
    let h = harmonic(k, ctx);
    let kk = int(k, ctx);
    let log_fact = ln_range_sum(2, k, ctx);
    Ok(&h + &h / &kk - Real::one(ctx) - log_fact / kk)
}

/// `E(n)/n`, which tends to `e^gamma`.
pub fn e_gamma_ratio(n: u64, ctx: PrecisionContext) -> Result<Real> {
    require(n >= 1, "e_gamma_ratio", "n must be at least 1")?;
    Ok(e_harmonic(n, ctx)? / int(n, ctx))
}
