use rayon::prelude::*;

use super::reference::reference_gamma;
use crate::error::{Error, Result};
use crate::formulas::{Approximation, FormulaId};
use crate::precision::{ln, PrecisionContext, Real};

/// Errors smaller than this many target ulps of gamma are treated as noise.
pub const NOISE_ULPS: u32 = 10;

/// How grid rows are evaluated. Both produce identical reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Evaluation {
    #[default]
    Parallel,
    Sequential,
}

/// Approximations over a parameter grid plus the fitted empirical order.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub formula: FormulaId,
    /// Fixed second parameter for the two-parameter families.
    pub k: Option<u64>,
    pub ctx: PrecisionContext,
    pub grid: Vec<Approximation>,
    /// One estimate per consecutive pair of grid points.
    pub order_samples: Vec<Real>,
    /// Mean of the trailing samples; absent when fewer than two usable rows.
    pub estimated_order: Option<Real>,
}

/// Grid `n0 * 2^i` for `i = 0..=doublings`.
pub fn doubling_grid(n0: u64, doublings: u32) -> Result<Vec<u64>> {
    (0..=doublings)
        .map(|i| {
            1u64.checked_shl(i)
                .and_then(|f| n0.checked_mul(f))
                .ok_or_else(|| Error::InvalidGrid(format!("{n0} * 2^{i} overflows")))
        })
        .collect()
}

fn check_grid(grid: &[u64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid("grid is empty".into()));
    }
    if let Some(w) = grid.windows(2).find(|w| w[0] >= w[1]) {
        return Err(Error::InvalidGrid(format!(
            "grid must be strictly increasing ({} then {})",
            w[0], w[1]
        )));
    }
    Ok(())
}

fn evaluate_rows<F>(grid: &[u64], mode: Evaluation, eval: F) -> Result<Vec<Real>>
where
    F: Fn(u64) -> Result<Real> + Sync,
{
    let results: Vec<Result<Real>> = match mode {
        Evaluation::Parallel => grid.par_iter().map(|&n| eval(n)).collect(),
        Evaluation::Sequential => grid.iter().map(|&n| eval(n)).collect(),
    };
    // first failing row by grid index, independent of completion order
    results
        .into_iter()
        .zip(grid)
        .enumerate()
        .map(|(index, (r, &n))| {
            r.map_err(|e| Error::Row {
                index,
                parameter: n,
                source: Box::new(e),
            })
        })
        .collect()
}

/// Per-step orders `ln(|e_i| / |e_{i+1}|) / ln(n_{i+1} / n_i)`.
fn order_samples(grid: &[u64], errors: &[Real], ctx: PrecisionContext) -> Result<Vec<Real>> {
    let logs: Vec<Real> = errors.iter().map(|e| ln(&e.abs())).collect::<Result<_>>()?;
    grid.windows(2)
        .zip(logs.windows(2))
        .map(|(n, l)| {
            let span = ln(&Real::from_int(n[1], ctx))? - ln(&Real::from_int(n[0], ctx))?;
            Ok((&l[0] - &l[1]) / span)
        })
        .collect()
}

/// Mean of the last `max(3, len/2)` samples; with five or more in that tail
/// the smallest and largest are dropped first.
pub fn summarize_orders(samples: &[Real]) -> Option<Real> {
    let first = samples.first()?;
    let ctx = first.context();
    let take = samples.len().min(3.max(samples.len().div_ceil(2)));
    let mut tail: Vec<Real> = samples[samples.len() - take..].to_vec();
    if tail.len() >= 5 {
        tail.sort();
        tail = tail[1..tail.len() - 1].to_vec();
    }
    let count = Real::from_int(tail.len() as u64, ctx);
    let sum = tail.into_iter().fold(Real::zero(ctx), |a, b| a + b);
    Some(sum / count)
}

fn noise_floor(reference: &Real) -> Real {
    reference.ulp() * Real::from_int(NOISE_ULPS, reference.context())
}

pub fn convergence_table(
    formula: FormulaId,
    k: Option<u64>,
    grid: &[u64],
    ctx: PrecisionContext,
) -> Result<ConvergenceReport> {
    convergence_table_with(formula, k, grid, ctx, Evaluation::Parallel)
}

/// Evaluates `formula` at every grid point against [`reference_gamma`].
pub fn convergence_table_with(
    formula: FormulaId,
    k: Option<u64>,
    grid: &[u64],
    ctx: PrecisionContext,
    mode: Evaluation,
) -> Result<ConvergenceReport> {
    check_grid(grid)?;
    let reference = reference_gamma(ctx)?;
    for (index, &n) in grid.iter().enumerate() {
        formula.check_domain(n, k).map_err(|e| Error::Row {
            index,
            parameter: n,
            source: Box::new(e),
        })?;
    }
    let values = evaluate_rows(grid, mode, |n| formula.evaluate(n, k, ctx))?;
    let rows: Vec<Approximation> = grid
        .iter()
        .zip(values)
        .map(|(&n, value)| {
            let err = &value - &reference;
            Approximation {
                formula,
                n,
                k,
                value,
                signed_error: Some(err),
            }
        })
        .collect();
    let floor = noise_floor(&reference);
    let errors: Vec<Real> = rows
        .iter()
        .map(|r| r.signed_error.clone().expect("set above"))
        .collect();
    let usable = grid.len() >= 2 && errors.iter().all(|e| e.abs() >= floor);
    let order_samples = if usable {
        order_samples(grid, &errors, ctx)?
    } else {
        Vec::new()
    };
    let estimated_order = summarize_orders(&order_samples);
    Ok(ConvergenceReport {
        formula,
        k,
        ctx,
        grid: rows,
        order_samples,
        estimated_order,
    })
}

/// Empirical order of an arbitrary approximation over `n0 * 2^i`.
pub fn estimate_order_with<F>(
    n0: u64,
    doublings: u32,
    ctx: PrecisionContext,
    eval: F,
) -> Result<(Vec<Real>, Real)>
where
    F: Fn(u64) -> Result<Real> + Sync,
{
    if doublings < 3 {
        return Err(Error::InvalidGrid(format!(
            "at least 3 doublings required, got {doublings}"
        )));
    }
    let grid = doubling_grid(n0, doublings)?;
    let reference = reference_gamma(ctx)?;
    let values = evaluate_rows(&grid, Evaluation::Parallel, eval)?;
    let floor = noise_floor(&reference);
    let errors: Vec<Real> = values.iter().map(|v| v - &reference).collect();
    if let Some((n, e)) = grid.iter().zip(&errors).find(|(_, e)| e.abs() < floor) {
        return Err(Error::InsufficientPrecision(format!(
            "error {e} at n = {n} is below {NOISE_ULPS} ulp at {} digits; raise the precision",
            ctx.digits()
        )));
    }
    let samples = order_samples(&grid, &errors, ctx)?;
    let order = summarize_orders(&samples).expect("at least three samples");
    Ok((samples, order))
}

/// Empirical convergence order of `formula` over the doubling grid from `n0`.
pub fn estimate_order(
    formula: FormulaId,
    k: Option<u64>,
    n0: u64,
    doublings: u32,
    ctx: PrecisionContext,
) -> Result<Real> {
    for (index, n) in doubling_grid(n0, doublings)?.into_iter().enumerate() {
        formula.check_domain(n, k).map_err(|e| Error::Row {
            index,
            parameter: n,
            source: Box::new(e),
        })?;
    }
    estimate_order_with(n0, doublings, ctx, |n| formula.evaluate(n, k, ctx)).map(|(_, p)| p)
}
