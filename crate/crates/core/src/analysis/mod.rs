//! Reference constant, error measurement, convergence-order estimation and
//! the published leftover-term table.

mod convergence;
mod paper_table;
mod reference;

pub use convergence::{
    convergence_table, convergence_table_with, doubling_grid, estimate_order,
    estimate_order_with, summarize_orders, ConvergenceReport, Evaluation, NOISE_ULPS,
};
pub use paper_table::{
    verify_paper_table, CellMatch, TableCheckResult, TableRow, PUBLISHED_TABLE,
    TABLE_MIN_DIGITS,
};
pub use reference::{reference_gamma, GAMMA_110, MAX_REFERENCE_DIGITS, STORED_DIGITS};
