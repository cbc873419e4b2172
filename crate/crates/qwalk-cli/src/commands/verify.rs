//! `qwalk verify`: run the cross-validation suites, one JSON line per
//! assertion, nonzero exit on any hard failure.

use clap::Args;

use qwalk::verify::{run_suite, CheckKind};
use qwalk::Result;

use crate::output::{fmt_float, write_file};

#[derive(Args)]
pub struct VerifyArgs {
    /// Suite: all | two-state | grover3 | classical | grover2d | discrepancies.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Also write the JSON-lines log to this path.
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

pub fn run(args: &VerifyArgs) -> Result<i32> {
    run_named(&args.suite, args.output.as_deref())
}

pub fn run_named(suite: &str, output: Option<&std::path::Path>) -> Result<i32> {
    let checks = run_suite(suite)?;
    let mut log = String::new();
    let mut failures = 0usize;
    let mut passes = 0usize;
    let mut reports = 0usize;
    for c in &checks {
        let kind = match c.kind {
            CheckKind::UpperBound => "upper-bound",
            CheckKind::LowerBound => "lower-bound",
            CheckKind::Report => "report",
            CheckKind::ExpectedFailure => "expected-failure",
        };
        let pass_txt = match c.passed() {
            Some(true) => {
                passes += 1;
                "true".to_string()
            }
            Some(false) => {
                failures += 1;
                "false".to_string()
            }
            None => {
                reports += 1;
                "null".to_string()
            }
        };
        let line = format!(
            "{{\"suite\":\"{}\",\"name\":\"{}\",\"observed\":{},\"bound\":{},\"kind\":\"{}\",\"pass\":{}}}",
            c.suite,
            c.name.replace('"', "'"),
            fmt_float(c.observed),
            if c.bound.is_nan() {
                "null".to_string()
            } else {
                fmt_float(c.bound)
            },
            kind,
            pass_txt,
        );
        println!("{line}");
        log.push_str(&line);
        log.push('\n');
    }
    eprintln!(
        "suite '{suite}': {passes} passed, {failures} failed, {reports} report-only"
    );
    if let Some(path) = output {
        write_file(path, &log)?;
    }
    Ok(if failures > 0 { 1 } else { 0 })
}
