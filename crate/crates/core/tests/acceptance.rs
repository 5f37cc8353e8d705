use std::process::ExitCode;
use std::time::Instant;

use epistab::acceptance::{run_criterion, AcceptanceConfig, CRITERIA};

fn main() -> ExitCode {
    let cfg = AcceptanceConfig::default();
    let mut failed = 0;
    for (id, _) in CRITERIA {
        let start = Instant::now();
        let r = run_criterion(id, &cfg);
        println!("{} ({:.1}s)", r.line(), start.elapsed().as_secs_f64());
        failed += !r.passed as usize;
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
