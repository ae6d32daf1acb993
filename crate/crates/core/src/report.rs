//! Text, CSV and JSON rendering of evaluations and reports.
//!
//! Values are rendered with the context's target digits; signed errors are
//! rounded to the same absolute resolution (`10^-digits`). JSON keeps every
//! number as a string so no digits are lost to binary floats.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::analysis::{ConvergenceReport, TableCheckResult};
use crate::formulas::{Approximation, FormulaId};
use crate::precision::{PrecisionContext, Real};

/// CSV header for approximation rows.
pub const CSV_HEADER: &str = "formula,n,k,digits,value,signed_error";

/// Significant digits shown for convergence orders.
pub const ORDER_DIGITS: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format {other:?}; expected text, csv or json")),
        }
    }
}

pub fn format_value(value: &Real, ctx: PrecisionContext) -> String {
    value.to_sig_string(ctx.digits())
}

pub fn format_error(err: &Real, ctx: PrecisionContext) -> String {
    match err.exponent() {
        None => "0".to_string(),
        Some(e) => {
            let digits = (i64::from(ctx.digits()) + e).max(1);
            err.to_sig_string(digits as u32)
        }
    }
}

pub fn format_order(order: &Real) -> String {
    order.to_sig_string(ORDER_DIGITS)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproximationRecord {
    pub formula: FormulaId,
    pub n: u64,
    pub k: Option<u64>,
    pub digits: u32,
    pub value: String,
    pub signed_error: Option<String>,
}

impl ApproximationRecord {
    pub fn new(a: &Approximation, ctx: PrecisionContext) -> Self {
        ApproximationRecord {
            formula: a.formula,
            n: a.n,
            k: a.k,
            digits: ctx.digits(),
            value: format_value(&a.value, ctx),
            signed_error: a.signed_error.as_ref().map(|e| format_error(e, ctx)),
        }
    }

    fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.formula,
            self.n,
            self.k.map(|k| k.to_string()).unwrap_or_default(),
            self.digits,
            self.value,
            self.signed_error.as_deref().unwrap_or("")
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceRecord {
    pub formula: FormulaId,
    pub k: Option<u64>,
    pub digits: u32,
    pub rows: Vec<ApproximationRecord>,
    pub order_samples: Vec<String>,
    pub estimated_order: Option<String>,
}

impl ConvergenceRecord {
    pub fn new(report: &ConvergenceReport) -> Self {
        ConvergenceRecord {
            formula: report.formula,
            k: report.k,
            digits: report.ctx.digits(),
            rows: report
                .grid
                .iter()
                .map(|a| ApproximationRecord::new(a, report.ctx))
                .collect(),
            order_samples: report.order_samples.iter().map(format_order).collect(),
            estimated_order: report.estimated_order.as_ref().map(format_order),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderRecord {
    pub formula: FormulaId,
    pub k: Option<u64>,
    pub start: u64,
    pub doublings: u32,
    pub digits: u32,
    pub order_samples: Vec<String>,
    pub estimated_order: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRowRecord {
    pub n: u64,
    pub expected_with: String,
    pub got_with: String,
    pub with_match: String,
    pub expected_without: String,
    pub got_without: String,
    pub without_match: String,
    pub matched: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCheckRecord {
    pub digits: u32,
    pub passed: bool,
    pub matched_cells: usize,
    pub total_cells: usize,
    pub rows: Vec<TableRowRecord>,
}

impl TableCheckRecord {
    pub fn new(result: &TableCheckResult, ctx: PrecisionContext) -> Self {
        TableCheckRecord {
            digits: ctx.digits(),
            passed: result.passed,
            matched_cells: result.matched_cells(),
            total_cells: 2 * result.rows.len(),
            rows: result
                .rows
                .iter()
                .map(|r| TableRowRecord {
                    n: r.n,
                    expected_with: r.expected_with.to_string(),
                    got_with: r.got_with.clone(),
                    with_match: r.with_match.label().to_string(),
                    expected_without: r.expected_without.to_string(),
                    got_without: r.got_without.clone(),
                    without_match: r.without_match.label().to_string(),
                    matched: r.matched,
                })
                .collect(),
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

fn csv_rows(rows: &[ApproximationRecord]) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}

fn k_label(k: Option<u64>) -> String {
    k.map_or_else(|| "-".to_string(), |k| k.to_string())
}

pub fn render_approximation(a: &Approximation, ctx: PrecisionContext, format: OutputFormat) -> String {
    let record = ApproximationRecord::new(a, ctx);
    match format {
        OutputFormat::Json => to_json(&record),
        OutputFormat::Csv => csv_rows(std::slice::from_ref(&record)),
        OutputFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "formula       {}", record.formula);
            let _ = writeln!(out, "n             {}", record.n);
            let _ = writeln!(out, "k             {}", k_label(record.k));
            let _ = writeln!(out, "digits        {}", record.digits);
            let _ = writeln!(out, "value         {}", record.value);
            if let Some(e) = &record.signed_error {
                let _ = writeln!(out, "signed_error  {e}");
            }
            out
        }
    }
}

pub fn render_report(report: &ConvergenceReport, format: OutputFormat) -> String {
    let record = ConvergenceRecord::new(report);
    match format {
        OutputFormat::Json => to_json(&record),
        OutputFormat::Csv => csv_rows(&record.rows),
        OutputFormat::Text => {
            let width = record
                .rows
                .iter()
                .map(|r| r.value.len())
                .max()
                .unwrap_or(5)
                .max(5);
            let mut out = String::new();
            let _ = writeln!(
                out,
                "formula {}  k {}  digits {}",
                record.formula,
                k_label(record.k),
                record.digits
            );
            let _ = writeln!(out, "{:>12}  {:<width$}  signed_error", "n", "value");
            for r in &record.rows {
                let _ = writeln!(
                    out,
                    "{:>12}  {:<width$}  {}",
                    r.n,
                    r.value,
                    r.signed_error.as_deref().unwrap_or("")
                );
            }
            match &record.estimated_order {
                Some(p) => {
                    let _ = writeln!(
                        out,
                        "estimated order {p} from samples [{}]",
                        record.order_samples.join(", ")
                    );
                }
                None => {
                    let _ = writeln!(out, "estimated order unavailable");
                }
            }
            out
        }
    }
}

pub fn render_order(record: &OrderRecord, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_json(record),
        OutputFormat::Csv => format!(
            "formula,k,start,doublings,digits,estimated_order\n{},{},{},{},{},{}\n",
            record.formula,
            record.k.map(|k| k.to_string()).unwrap_or_default(),
            record.start,
            record.doublings,
            record.digits,
            record.estimated_order
        ),
        OutputFormat::Text => format!(
            "formula {}  k {}  grid {} * 2^0..{}  digits {}\nsamples [{}]\nestimated order {}\n",
            record.formula,
            k_label(record.k),
            record.start,
            record.doublings,
            record.digits,
            record.order_samples.join(", "),
            record.estimated_order
        ),
    }
}

pub fn render_table_check(result: &TableCheckResult, ctx: PrecisionContext, format: OutputFormat) -> String {
    let record = TableCheckRecord::new(result, ctx);
    match format {
        OutputFormat::Json => to_json(&record),
        OutputFormat::Csv => {
            let mut out = String::from(
                "n,expected_with,got_with,with_match,expected_without,got_without,without_match,matched\n",
            );
            for r in &record.rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    r.n,
                    r.expected_with,
                    r.got_with,
                    r.with_match,
                    r.expected_without,
                    r.got_without,
                    r.without_match,
                    r.matched
                );
            }
            out
        }
        OutputFormat::Text => {
            let mut out = String::new();
            let header = format!(
                "{:>6}  {:<16} {:<16} {:<12} {:<19} {:<19}",
                "n", "with (published)", "with (computed)", "", "without (published)", "without (computed)"
            );
            let _ = writeln!(out, "{}", header.trim_end());
            for r in &record.rows {
                let _ = writeln!(
                    out,
                    "{:>6}  {:<16} {:<16} {:<12} {:<19} {:<19} {}",
                    r.n,
                    r.expected_with,
                    r.got_with,
                    r.with_match,
                    r.expected_without,
                    r.got_without,
                    r.without_match
                );
            }
            let _ = writeln!(
                out,
                "{}/{} values matched at {} digits: {}",
                record.matched_cells,
                record.total_cells,
                record.digits,
                if record.passed { "PASS" } else { "FAIL" }
            );
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::make_context;

    #[test]
    fn error_resolution() {
        let ctx = make_context(12).unwrap();
        let e = Real::parse("-0.000123456789012345678", ctx).unwrap();
        assert_eq!(format_error(&e, ctx), "-0.000123456789");
        assert_eq!(format_error(&Real::zero(ctx), ctx), "0");
        let tiny = Real::parse("3.2e-15", ctx).unwrap();
        assert_eq!(format_error(&tiny, ctx), "3e-15");
    }

    #[test]
    fn csv_single_parameter_has_empty_k() {
        let ctx = make_context(12).unwrap();
        let a = Approximation::evaluate(FormulaId::Classic, 1, None, ctx, None).unwrap();
        let csv = render_approximation(&a, ctx, OutputFormat::Csv);
        assert_eq!(csv, format!("{CSV_HEADER}\nclassic,1,,12,1.00000000000,\n"));
    }

    #[test]
    fn format_names() {
        assert_eq!("csv".parse::<OutputFormat>(), Ok(OutputFormat::Csv));
        assert!("xml".parse::<OutputFormat>().is_err());
    }
}
