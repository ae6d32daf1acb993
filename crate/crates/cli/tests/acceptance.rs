//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::time::{Duration, Instant};

use eharmonic_cli::{execute, EXIT_OK, EXIT_USAGE};
use eharmonic_core::analysis::{estimate_order, reference_gamma, verify_paper_table};
use eharmonic_core::formulas::*;
use eharmonic_core::precision::{harmonic, ln, make_context, PrecisionContext, Real};
use eharmonic_core::{Error, FormulaId};

const TABLE_DIGITS: u32 = 20;
const TABLE_TIME_LIMIT: Duration = Duration::from_secs(5);
const IDENTITY_DIGITS: u32 = 30;
const ORDER_START: u64 = 64;
const ORDER_DOUBLINGS: u32 = 6;
const AGREEMENT_TOLERANCE: &str = "1e-5";
const SPEEDUP_FACTOR: i64 = 100;
const LEFTOVER_FACTOR: i64 = 10;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn ctx(digits: u32) -> PrecisionContext {
    make_context(digits).expect("valid precision")
}

/// Distance between `got` and `want` in ulps of `want`.
fn ulps(got: &Real, want: &Real) -> f64 {
    ((got - want).abs() / want.ulp()).to_f64()
}

/// Tracks the worst deviation of a sweep against its tolerance.
struct Sweep {
    name: &'static str,
    tolerance: f64,
    cases: usize,
    worst: f64,
    worst_at: String,
    failures: Vec<String>,
}

impl Sweep {
    fn new(name: &'static str, tolerance: u32) -> Self {
        Sweep {
            name,
            tolerance: f64::from(tolerance),
            cases: 0,
            worst: 0.0,
            worst_at: String::new(),
            failures: Vec::new(),
        }
    }

    fn check(&mut self, label: String, got: eharmonic_core::Result<Real>, want: eharmonic_core::Result<Real>) {
        self.cases += 1;
        match (got, want) {
            (Ok(g), Ok(w)) => {
                let d = ulps(&g, &w);
                if d > self.worst {
                    self.worst = d;
                    self.worst_at = label.clone();
                }
                if d > self.tolerance {
                    self.failures.push(format!("{label}: {d:.1} ulp"));
                }
            }
            (g, w) => self.failures.push(format!("{label}: {:?} / {:?}", g.err(), w.err())),
        }
    }

    fn summary(&self) -> String {
        let mut s = format!(
            "{} {} cases, worst {:.2} ulp{} (limit {})",
            self.name,
            self.cases,
            self.worst,
            if self.worst_at.is_empty() {
                String::new()
            } else {
                format!(" at {}", self.worst_at)
            },
            self.tolerance
        );
        if let Some(f) = self.failures.first() {
            s.push_str(&format!(", {} failing, first {f}", self.failures.len()));
        }
        s
    }
}

fn table_reproduction() -> Outcome {
    let start = Instant::now();
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let code = execute(
        ["verify-paper", "--digits", &TABLE_DIGITS.to_string()],
        &mut stdout,
        &mut stderr,
    );
    let elapsed = start.elapsed();
    let result = verify_paper_table(ctx(TABLE_DIGITS));
    let (cells, fallbacks) = match &result {
        Ok(r) => (
            r.matched_cells(),
            r.rows
                .iter()
                .flat_map(|row| [row.with_match, row.without_match])
                .filter(|m| m.label() == "final-digit")
                .count(),
        ),
        Err(_) => (0, 0),
    };
    let passed = code == EXIT_OK && cells == 10 && elapsed < TABLE_TIME_LIMIT;
    outcome(
        passed,
        format!(
            "verify-paper exit {code}, {cells}/10 values matched ({fallbacks} via final-digit fallback), {:.2} s (limit {} s)",
            elapsed.as_secs_f64(),
            TABLE_TIME_LIMIT.as_secs()
        ),
    )
}

fn identity_suite() -> Outcome {
    let c = ctx(IDENTITY_DIGITS);

    let mut i1 = Sweep::new("I1", 16);
    for n in 0..=50u64 {
        for k in 1..=10u64 {
            let want = (|| {
                let diff = &e_harmonic(n + k, c)? - &e_harmonic(n, c)?;
                Ok(&ln(&diff)? - &ln(&Real::from_int(k, c))?)
            })();
            i1.check(format!("({n},{k})"), family_diff(n, k, c), want);
        }
    }

    let mut i2 = Sweep::new("I2", 16);
    for n in 1..=30u64 {
        for k in 1..=8u64 {
            let want = (|| {
                let mut h = Real::zero(c);
                let mut l = Real::zero(c);
                for j in 0..=k {
                    h = &h + &harmonic(n + j, c);
                    l = &l + &ln(&Real::from_int(n + j, c))?;
                }
                Ok(&(&h - &l) / &Real::from_int(k + 1, c))
            })();
            i2.check(format!("({n},{k})"), family_prod(n, k, c), want);
        }
    }

    let mut r1 = Sweep::new("R1", 4);
    let mut r2 = Sweep::new("R2", 8);
    let mut r3 = Sweep::new("R3", 4);
    let mut r4 = Sweep::new("R4", 8);
    for n in 1..=200u64 {
        r1.check(format!("n={n}"), family_diff(n, 1, c), gamma_diff(n, c));
        r2.check(format!("n={n}"), family_prod(n, 1, c), gamma_prod(n, true, c));
        r3.check(format!("k={n}"), gamma_l0(n, c), family_diff(0, n, c));
        if n >= 2 {
            r4.check(format!("k={n}"), gamma_p_simple(n, c), family_prod(1, n - 1, c));
        }
    }

    let sweeps = [i1, i2, r1, r2, r3, r4];
    let passed = sweeps.iter().all(|s| s.failures.is_empty());
    let detail = sweeps.iter().map(Sweep::summary).collect::<Vec<_>>().join("; ");
    outcome(passed, format!("B = {IDENTITY_DIGITS}: {detail}"))
}

enum OrderTarget {
    Within(f64, f64),
    AtLeast(f64),
}

fn order_measurements() -> Outcome {
    let c = ctx(IDENTITY_DIGITS);
    let targets = [
        (FormulaId::Classic, OrderTarget::Within(1.0, 0.1)),
        (FormulaId::ProdLeftover, OrderTarget::Within(1.0, 0.1)),
        (FormulaId::ProdNoLeftover, OrderTarget::Within(2.0, 0.1)),
        (FormulaId::Diff, OrderTarget::AtLeast(2.0)),
        (FormulaId::LZero, OrderTarget::Within(1.0, 0.1)),
        (FormulaId::PSimple, OrderTarget::Within(1.0, 0.15)),
    ];
    let mut passed = true;
    let mut parts = Vec::new();
    for (formula, target) in targets {
        match estimate_order(formula, None, ORDER_START, ORDER_DOUBLINGS, c) {
            Ok(p) => {
                let v = p.to_f64();
                let (ok, want) = match target {
                    OrderTarget::Within(centre, tol) => {
                        ((v - centre).abs() <= tol, format!("{centre} +/- {tol}"))
                    }
                    OrderTarget::AtLeast(min) => (v >= min, format!(">= {min}")),
                };
                passed &= ok;
                parts.push(format!(
                    "{formula} {} (want {want}){}",
                    p.to_sig_string(6),
                    if ok { "" } else { " MISS" }
                ));
            }
            Err(e) => {
                passed = false;
                parts.push(format!("{formula} error: {e}"));
            }
        }
    }
    outcome(
        passed,
        format!(
            "grid {ORDER_START} * 2^0..{ORDER_DOUBLINGS}: {}",
            parts.join(", ")
        ),
    )
}

fn graph_anchors() -> Outcome {
    let c = ctx(TABLE_DIGITS);
    let printed = ["1.000", "2.718", "4.482", "6.255", "8.031", "9.809"];
    let mut got = Vec::new();
    let mut passed = true;
    for (n, want) in printed.iter().enumerate() {
        match e_harmonic(n as u64, c) {
            Ok(v) => {
                let s = v.to_sig_string(4);
                passed &= s == *want;
                got.push(s);
            }
            Err(e) => {
                passed = false;
                got.push(format!("error {e}"));
            }
        }
    }
    outcome(passed, format!("E(0..=5) to 4 digits: {}", got.join(", ")))
}

fn convergence_claims() -> Outcome {
    let c = ctx(IDENTITY_DIGITS);
    let reference = reference_gamma(c).expect("reference available");
    let error = |f: FormulaId, n: u64| f.evaluate(n, None, c).map(|v| (&v - &reference).abs());
    let ns: Vec<u64> = (3..=12).map(|i| 1u64 << i).collect();

    let mut c1_failures = Vec::new();
    let mut c1_cases = 0;
    for f in FormulaId::SINGLE {
        for &n in &ns {
            c1_cases += 1;
            match (error(f, n), error(f, 2 * n)) {
                (Ok(a), Ok(b)) if b < a => {}
                (Ok(_), Ok(_)) => c1_failures.push(format!("{f} at n={n}")),
                (a, b) => c1_failures.push(format!("{f} at n={n}: {:?} {:?}", a.err(), b.err())),
            }
        }
    }

    let ten = Real::from_int(LEFTOVER_FACTOR as u64, c);
    let mut c2_failures = Vec::new();
    let mut c2_worst = f64::INFINITY;
    let c2_grid: Vec<u64> = ns.iter().copied().filter(|&n| n >= 100).collect();
    for &n in &c2_grid {
        match (error(FormulaId::ProdNoLeftover, n), error(FormulaId::ProdLeftover, n)) {
            (Ok(no), Ok(with)) => {
                c2_worst = c2_worst.min((&with / &no).to_f64());
                if no >= &with / &ten {
                    c2_failures.push(format!("n={n}"));
                }
            }
            (a, b) => c2_failures.push(format!("n={n}: {:?} {:?}", a.err(), b.err())),
        }
    }

    let passed = c1_failures.is_empty() && c2_failures.is_empty();
    let mut detail = format!(
        "C1 {c1_cases} pairs over n = 8..4096 ({} failing); C2 n = {}..{} smallest ratio {c2_worst:.1} (want > {LEFTOVER_FACTOR}, {} failing)",
        c1_failures.len(),
        c2_grid[0],
        c2_grid[c2_grid.len() - 1],
        c2_failures.len()
    );
    if let Some(f) = c1_failures.first().or(c2_failures.first()) {
        detail.push_str(&format!(", first {f}"));
    }
    outcome(passed, detail)
}

fn cross_route_agreement() -> Outcome {
    let c = ctx(IDENTITY_DIGITS);
    let reference = reference_gamma(c).expect("reference available");
    let tol = Real::parse(AGREEMENT_TOLERANCE, c).expect("literal");
    let n = 100_000;
    let routes = [
        (FormulaId::Diff, gamma_diff(n, c)),
        (FormulaId::LZero, gamma_l0(n, c)),
        (FormulaId::ProdNoLeftover, gamma_prod(n, false, c)),
    ];
    let mut passed = true;
    let mut parts = Vec::new();
    for (f, v) in routes {
        match v {
            Ok(v) => {
                let e = (&v - &reference).abs();
                passed &= e < tol;
                parts.push(format!("{f} {:.2e}", e.to_f64()));
            }
            Err(e) => {
                passed = false;
                parts.push(format!("{f} error {e}"));
            }
        }
    }
    let m = 10_000;
    let ratio = match (gamma_diff(m, c), gamma_classic(m, c)) {
        (Ok(d), Ok(cl)) => {
            let ed = (&d - &reference).abs();
            let ec = (&cl - &reference).abs();
            passed &= ec >= &ed * &Real::from_int(SPEEDUP_FACTOR as u64, c);
            format!("{:.0}", (&ec / &ed).to_f64())
        }
        _ => {
            passed = false;
            "error".to_string()
        }
    };
    outcome(
        passed,
        format!(
            "|value(1e5) - gamma|: {} (limit {AGREEMENT_TOLERANCE}); classic/diff error ratio at 1e4 {ratio} (want >= {SPEEDUP_FACTOR})",
            parts.join(", ")
        ),
    )
}

fn degenerate_inputs() -> Outcome {
    let c = ctx(TABLE_DIGITS);
    let is_domain = |r: eharmonic_core::Result<Real>| matches!(r, Err(Error::Domain { .. }));
    let checks = [
        ("family_prod(0, 3)", is_domain(family_prod(0, 3, c))),
        ("gamma_classic(0)", is_domain(gamma_classic(0, c))),
        ("ln(0)", is_domain(ln(&Real::zero(c)))),
        ("ln(-2)", is_domain(ln(&-Real::from_int(2, c)))),
        (
            "B = 9",
            matches!(make_context(9), Err(Error::InvalidPrecision { .. })),
        ),
        ("cli family-prod n=0", cli_code(&["eval", "--formula", "family-prod", "--n", "0", "--k", "3"]) == EXIT_USAGE),
        ("cli classic n=0", cli_code(&["eval", "--formula", "classic", "--n", "0"]) == EXIT_USAGE),
        ("cli digits 9", cli_code(&["eval", "--formula", "classic", "--n", "5", "--digits", "9"]) == EXIT_USAGE),
    ];
    let failing: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    outcome(
        failing.is_empty(),
        if failing.is_empty() {
            format!("{} cases rejected with their specified errors", checks.len())
        } else {
            format!("unexpected behaviour for {}", failing.join(", "))
        },
    )
}

fn cli_code(argv: &[&str]) -> i32 {
    execute(argv.iter().copied(), &mut Vec::new(), &mut Vec::new())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 7] = [
        ("table reproduction", table_reproduction),
        ("identity suite", identity_suite),
        ("order measurements", order_measurements),
        ("graph anchors", graph_anchors),
        ("convergence monotonicity and leftover speedup", convergence_claims),
        ("cross-route agreement", cross_route_agreement),
        ("degenerate inputs", degenerate_inputs),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = check();
        if !result.passed {
            failed += 1;
        }
        println!(
            "{} {}. {name}: {}",
            if result.passed { "PASS" } else { "FAIL" },
            i + 1,
            result.detail
        );
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
