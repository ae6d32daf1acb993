//! Argument parsing and command dispatch for the `eharmonic` binary.
//!
//! Exit codes: 0 success, 1 computation or verification failure, 2 usage error.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use eharmonic_core::analysis::{
    convergence_table, doubling_grid, estimate_order_with, reference_gamma, verify_paper_table,
    MAX_REFERENCE_DIGITS, TABLE_MIN_DIGITS,
};
use eharmonic_core::precision::{make_context, MIN_DIGITS};
use eharmonic_core::report::{
    format_order, render_approximation, render_order, render_report, render_table_check,
    OrderRecord, OutputFormat,
};
use eharmonic_core::{Approximation, FormulaId};

pub const DEFAULT_DIGITS: u32 = 20;
pub const DEFAULT_ORDER_START: u64 = 64;
pub const DEFAULT_DOUBLINGS: u32 = 6;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Eval,
    Table,
    Order,
    VerifyPaper,
}

/// Geometric grid `start * factor^i`, `i = 0..count`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub start: u64,
    pub factor: u64,
    pub count: u32,
}

impl GridSpec {
    pub fn points(&self) -> Option<Vec<u64>> {
        let mut out = Vec::with_capacity(self.count as usize);
        let mut p = self.start;
        for i in 0..self.count {
            if i > 0 {
                p = p.checked_mul(self.factor)?;
            }
            out.push(p);
        }
        Some(out)
    }
}

/// A validated invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub formula: Option<FormulaId>,
    pub n: Option<u64>,
    pub k: Option<u64>,
    pub digits: u32,
    pub grid: Option<GridSpec>,
    pub doublings: u32,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Invalid invocation; the message names the offending flag.
    Usage(String),
    /// `--help` or `--version` output.
    Display(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Display(m) => f.write_str(m),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "eharmonic",
    version,
    about = "E-Harmonic approximations of the Euler-Mascheroni constant"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args, Debug)]
struct Common {
    /// Significant digits to trust in the output
    #[arg(long, default_value_t = DEFAULT_DIGITS)]
    digits: u32,
    /// text, csv or json
    #[arg(long, default_value = "text", value_parser = parse_format)]
    format: OutputFormat,
    /// Write output here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Evaluate one formula at one parameter
    Eval {
        #[arg(long, value_parser = parse_formula)]
        formula: FormulaId,
        /// First (or only) parameter
        #[arg(long)]
        n: u64,
        /// Second parameter of family-diff and family-prod
        #[arg(long)]
        k: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate a formula over a geometric grid
    Table {
        #[arg(long, value_parser = parse_formula)]
        formula: FormulaId,
        /// start,factor,count
        #[arg(long, value_parser = parse_grid)]
        grid: GridSpec,
        #[arg(long)]
        k: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Estimate the convergence order over a doubling grid
    Order {
        #[arg(long, value_parser = parse_formula)]
        formula: FormulaId,
        #[arg(long, default_value_t = DEFAULT_ORDER_START)]
        start: u64,
        #[arg(long, default_value_t = DEFAULT_DOUBLINGS)]
        doublings: u32,
        #[arg(long)]
        k: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Recompute the published leftover-term table
    VerifyPaper {
        #[command(flatten)]
        common: Common,
    },
}

fn parse_formula(s: &str) -> Result<FormulaId, String> {
    s.parse()
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse()
}

fn parse_grid(s: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [start, factor, count] = parts.as_slice() else {
        return Err(format!("expected start,factor,count, got {s:?}"));
    };
    let num = |v: &str, what: &str| -> Result<u64, String> {
        v.parse().map_err(|_| format!("{what} {v:?} is not a non-negative integer"))
    };
    let grid = GridSpec {
        start: num(start, "start")?,
        factor: num(factor, "factor")?,
        count: u32::try_from(num(count, "count")?).map_err(|_| "count is too large".to_string())?,
    };
    if grid.factor < 2 {
        return Err(format!("factor must be at least 2, got {}", grid.factor));
    }
    if grid.count < 1 {
        return Err("count must be at least 1".into());
    }
    if grid.points().is_none() {
        return Err("grid overflows 64-bit parameters".into());
    }
    Ok(grid)
}

fn usage(flag: &str, message: impl fmt::Display) -> CliError {
    CliError::Usage(format!("error: invalid value for '{flag}': {message}"))
}

fn check_parameters(formula: FormulaId, n: u64, k: Option<u64>, n_flag: &str) -> Result<(), CliError> {
    match (formula.takes_k(), k) {
        (true, None) => return Err(usage("--k", format!("required by formula {formula}"))),
        (false, Some(_)) => {
            return Err(usage("--k", format!("formula {formula} takes a single parameter")))
        }
        (true, Some(0)) => return Err(usage("--k", "must be at least 1")),
        _ => {}
    }
    if n < formula.min_n() {
        return Err(usage(
            n_flag,
            format!("formula {formula} requires n >= {}, got {n}", formula.min_n()),
        ));
    }
    Ok(())
}

fn check_digits(digits: u32, min: u32) -> Result<(), CliError> {
    if digits < min {
        return Err(usage("--digits", format!("at least {min} digits required, got {digits}")));
    }
    Ok(())
}

/// Parses arguments (without the program name) into a validated config.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = std::iter::once(OsString::from("eharmonic")).chain(argv.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(args).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
            CliError::Display(e.render().to_string())
        }
        _ => CliError::Usage(e.render().to_string()),
    })?;

    let config = match cli.command {
        Sub::Eval { formula, n, k, common } => {
            check_digits(common.digits, MIN_DIGITS)?;
            check_parameters(formula, n, k, "--n")?;
            RunConfig {
                command: Command::Eval,
                formula: Some(formula),
                n: Some(n),
                k,
                digits: common.digits,
                grid: None,
                doublings: 0,
                format: common.format,
                out: common.out,
            }
        }
        Sub::Table { formula, grid, k, common } => {
            check_digits(common.digits, MIN_DIGITS)?;
            for n in grid.points().expect("validated") {
                check_parameters(formula, n, k, "--grid")?;
            }
            RunConfig {
                command: Command::Table,
                formula: Some(formula),
                n: None,
                k,
                digits: common.digits,
                grid: Some(grid),
                doublings: 0,
                format: common.format,
                out: common.out,
            }
        }
        Sub::Order { formula, start, doublings, k, common } => {
            check_digits(common.digits, MIN_DIGITS)?;
            if doublings < 3 {
                return Err(usage("--doublings", format!("at least 3 required, got {doublings}")));
            }
            let points = doubling_grid(start, doublings).map_err(|e| usage("--start", e))?;
            for n in points {
                check_parameters(formula, n, k, "--start")?;
            }
            RunConfig {
                command: Command::Order,
                formula: Some(formula),
                n: Some(start),
                k,
                digits: common.digits,
                grid: Some(GridSpec {
                    start,
                    factor: 2,
                    count: doublings + 1,
                }),
                doublings,
                format: common.format,
                out: common.out,
            }
        }
        Sub::VerifyPaper { common } => {
            check_digits(common.digits, TABLE_MIN_DIGITS)?;
            RunConfig {
                command: Command::VerifyPaper,
                formula: None,
                n: None,
                k: None,
                digits: common.digits,
                grid: None,
                doublings: 0,
                format: common.format,
                out: common.out,
            }
        }
    };
    Ok(config)
}

/// Rendered result of a command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub output: String,
    pub diagnostics: String,
}

fn failure(err: impl fmt::Display) -> RunOutput {
    RunOutput {
        code: EXIT_FAILURE,
        output: String::new(),
        diagnostics: format!("error: {err}\n"),
    }
}

/// Executes a validated config. Numeric failures map to exit code 1.
pub fn run(config: &RunConfig) -> RunOutput {
    match try_run(config) {
        Ok(out) => out,
        Err(e) => failure(e),
    }
}

fn try_run(config: &RunConfig) -> Result<RunOutput, eharmonic_core::Error> {
    let ctx = make_context(config.digits)?;
    let ok = |output: String| RunOutput {
        code: EXIT_OK,
        output,
        diagnostics: String::new(),
    };
    match config.command {
        Command::Eval => {
            let formula = config.formula.expect("validated");
            let reference = if config.digits <= MAX_REFERENCE_DIGITS {
                Some(reference_gamma(ctx)?)
            } else {
                None
            };
            let approx = Approximation::evaluate(
                formula,
                config.n.expect("validated"),
                config.k,
                ctx,
                reference.as_ref(),
            )?;
            Ok(ok(render_approximation(&approx, ctx, config.format)))
        }
        Command::Table => {
            let formula = config.formula.expect("validated");
            let grid = config.grid.and_then(|g| g.points()).expect("validated");
            let report = convergence_table(formula, config.k, &grid, ctx)?;
            Ok(ok(render_report(&report, config.format)))
        }
        Command::Order => {
            let formula = config.formula.expect("validated");
            let start = config.n.expect("validated");
            let (samples, order) = estimate_order_with(start, config.doublings, ctx, |n| {
                formula.evaluate(n, config.k, ctx)
            })?;
            let record = OrderRecord {
                formula,
                k: config.k,
                start,
                doublings: config.doublings,
                digits: config.digits,
                order_samples: samples.iter().map(format_order).collect(),
                estimated_order: format_order(&order),
            };
            Ok(ok(render_order(&record, config.format)))
        }
        Command::VerifyPaper => {
            let result = verify_paper_table(ctx)?;
            let output = render_table_check(&result, ctx, config.format);
            Ok(RunOutput {
                code: if result.passed { EXIT_OK } else { EXIT_FAILURE },
                output,
                diagnostics: if result.passed {
                    String::new()
                } else {
                    "error: published table not reproduced\n".to_string()
                },
            })
        }
    }
}

/// Full invocation: parse, run, and write to `stdout` (or `--out`) and `stderr`.
pub fn execute<I, T, W, E>(argv: I, stdout: &mut W, stderr: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
    E: Write,
{
    let config = match parse_args(argv) {
        Ok(c) => c,
        Err(CliError::Display(text)) => {
            let _ = stdout.write_all(text.as_bytes());
            return EXIT_OK;
        }
        Err(CliError::Usage(text)) => {
            let _ = stderr.write_all(text.as_bytes());
            if !text.ends_with('\n') {
                let _ = stderr.write_all(b"\n");
            }
            return EXIT_USAGE;
        }
    };
    let result = run(&config);
    let _ = stderr.write_all(result.diagnostics.as_bytes());
    let written = match &config.out {
        Some(path) => std::fs::write(path, &result.output),
        None => stdout.write_all(result.output.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_FAILURE;
    }
    result.code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_defaults() {
        let c = parse_args(["eval", "--formula", "diff", "--n", "100"]).unwrap();
        assert_eq!(c.command, Command::Eval);
        assert_eq!(c.formula, Some(FormulaId::Diff));
        assert_eq!((c.n, c.k, c.digits), (Some(100), None, 20));
        assert_eq!(c.format, OutputFormat::Text);
    }

    #[test]
    fn grid_expansion() {
        let c = parse_args(["table", "--formula", "prod-leftover", "--grid", "1,10,5"]).unwrap();
        assert_eq!(c.grid.unwrap().points().unwrap(), vec![1, 10, 100, 1000, 10000]);
    }

    #[test]
    fn family_prod_needs_positive_n() {
        let err = parse_args(["eval", "--formula", "family-prod", "--n", "0", "--k", "3"]).unwrap_err();
        match err {
            CliError::Usage(m) => assert!(m.contains("--n"), "{m}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn usage_errors_name_the_flag() {
        let cases: &[(&[&str], &str)] = &[
            (&["eval", "--formula", "diff", "--n", "1", "--bogus"], "--bogus"),
            (&["eval", "--formula", "nope", "--n", "1"], "--formula"),
            (&["eval", "--formula", "diff"], "--n"),
            (&["eval", "--formula", "diff", "--n", "1", "--digits", "9"], "--digits"),
            (&["eval", "--formula", "family-diff", "--n", "1"], "--k"),
            (&["eval", "--formula", "classic", "--n", "1", "--k", "2"], "--k"),
            (&["table", "--formula", "classic", "--grid", "1,1,3"], "--grid"),
            (&["table", "--formula", "classic", "--grid", "0,2,3"], "--grid"),
            (&["table", "--formula", "classic", "--grid", "1,2"], "--grid"),
            (&["eval", "--formula", "diff", "--n", "1", "--format", "xml"], "--format"),
            (&["order", "--formula", "diff", "--doublings", "2"], "--doublings"),
            (&["verify-paper", "--formula", "diff"], "--formula"),
            (&["verify-paper", "--digits", "12"], "--digits"),
        ];
        for (argv, flag) in cases {
            match parse_args(argv.iter().copied()) {
                Err(CliError::Usage(m)) => assert!(m.contains(flag), "{argv:?}: {m}"),
                other => panic!("{argv:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn order_config() {
        let c = parse_args(["order", "--formula", "family-diff", "--k", "2"]).unwrap();
        assert_eq!((c.n, c.doublings, c.k), (Some(64), 6, Some(2)));
        assert_eq!(c.grid.unwrap().count, 7);
    }
}
