//! One pass/fail line per acceptance criterion; exits non-zero if any fails.

use abflux_core::verify::{run_suite, CheckResult, Criterion, Suite};
use std::process::{Command, Output};

const EXAMPLES: [&[&str]; 3] = [
    &[
        "dcs",
        "--k",
        "1",
        "--a",
        "1",
        "--alpha",
        "0.5",
        "--sweep",
        "theta:-3.04:3.04:128",
    ],
    &["tcs", "--k", "1", "--a", "1", "--sweep", "alpha:0:2:81"],
    &["verify", "--suite", "all"],
];

fn run_binary(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abflux"))
        .args(args)
        .output()
        .expect("abflux binary runs")
}

fn determinism() -> Criterion {
    let mut checks = Vec::new();
    let mut verify_code = None;
    for args in EXAMPLES {
        let (a, b) = (run_binary(args), run_binary(args));
        let same = a.stdout == b.stdout && a.status.code() == b.status.code() && !a.stdout.is_empty();
        checks.push(CheckResult::at_most(
            &format!("{}_byte_mismatch", args[0]),
            if same { 0.0 } else { 1.0 },
            0.0,
        ));
        if args[0] == "verify" {
            verify_code = a.status.code();
        }
    }
    let code = verify_code.map(f64::from).unwrap_or(f64::NAN);
    checks.push(CheckResult::at_most("verify_exit_code", code, 0.0));
    Criterion {
        id: 13,
        title: "CLI determinism",
        checks,
    }
}

/// The failing check, or the one closest to its bound.
fn worst(c: &Criterion) -> &CheckResult {
    let margin = |r: &CheckResult| {
        if !r.pass {
            f64::INFINITY
        } else if r.threshold > 0.0 {
            r.measured / r.threshold
        } else {
            0.0
        }
    };
    c.checks
        .iter()
        .max_by(|a, b| margin(a).total_cmp(&margin(b)))
        .expect("criteria have checks")
}

fn main() {
    let mut criteria = run_suite(Suite::All);
    criteria.push(determinism());
    let mut failed = 0;
    for c in &criteria {
        let w = worst(c);
        let status = if c.pass() { "PASS" } else { "FAIL" };
        failed += usize::from(!c.pass());
        println!(
            "criterion {:>2} {status} {:<30} {} = {:.3e} (limit {:.3e})",
            c.id, c.title, w.name, w.measured, w.threshold
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
