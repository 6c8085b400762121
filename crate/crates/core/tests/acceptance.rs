//! Acceptance criteria 1 to 11, one line each.

use std::process::ExitCode;
use std::time::Duration;

use thetachar::verify::run_criterion;

fn main() -> ExitCode {
    let mut failed = 0;
    for n in 1..=11u8 {
        let mut c = run_criterion(n);
        if n == 1 && c.elapsed > Duration::from_secs(60) {
            c.passed = false;
            c.detail = format!("took {:.1?}, budget 60 s", c.elapsed);
        }
        println!("{c}");
        if !c.passed {
            failed += 1;
        }
    }
    println!("acceptance: {} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
