use std::process::ExitCode;
use std::time::Instant;

use surgery_core::selftest::{criterion, NAMES};
use surgery_core::torsion::Verdict;

fn main() -> ExitCode {
    let seed = 0;
    let mut failed = 0;
    for id in 1..=NAMES.len() as u32 {
        let start = Instant::now();
        let c = criterion(id, seed);
        let status = if c.verdict == Verdict::Pass { "PASS" } else { "FAIL" };
        println!("{status} {:>2} {}: {} [{:.1}s]", c.id, c.name, c.detail, start.elapsed().as_secs_f64());
        if c.verdict != Verdict::Pass {
            failed += 1;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
