//! Runs every acceptance criterion and prints one line per criterion. Exits
//! non-zero when any criterion fails.

use std::process::ExitCode;

use simplext::selftest::run_all;

fn main() -> ExitCode {
    let reports = run_all();
    for r in &reports {
        println!("{r}");
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    println!(
        "acceptance: {} of {} criteria passed",
        reports.len() - failed,
        reports.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
