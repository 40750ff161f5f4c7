//! Prints one PASS/FAIL line per acceptance criterion; exits non-zero if
//! any fails.

use std::process::ExitCode;

fn main() -> ExitCode {
    let mut all = true;
    for c in ellis_verify::run_all() {
        println!("{}", c.line());
        all &= c.passed;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
