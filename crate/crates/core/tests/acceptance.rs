use std::process::ExitCode;

use linstark::verify;

fn main() -> ExitCode {
    let verbose = std::env::args().any(|a| a == "--verbose" || a == "-v");
    let outcomes = verify::run_all();
    println!("\nacceptance criteria");
    for c in &outcomes {
        println!("{}", c.summary_line());
        if verbose || !c.passed {
            for d in &c.details {
                println!("      {d}");
            }
        }
    }
    let failed = outcomes.iter().filter(|c| !c.passed).count();
    println!("{} passed, {failed} failed\n", outcomes.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
