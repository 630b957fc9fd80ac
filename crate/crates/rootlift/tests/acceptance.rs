use std::process::ExitCode;

use rootlift::verify::{self, DEFAULT_SEED};

fn main() -> ExitCode {
    let seed = std::env::var("ROOTLIFT_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED);
    println!("acceptance suite, seed {seed}");
    let mut failed = 0;
    for id in verify::check_ids() {
        let c = verify::run_check(id, seed).expect("known check");
        let status = if c.pass { "PASS" } else { "FAIL" };
        println!("{status} {:<18} {:>7} ms / {:>6} ms  {}", c.id, c.elapsed_ms, c.limit_ms, c.detail);
        failed += usize::from(!c.pass);
    }
    println!("{} of {} criteria passed", verify::CHECKS.len() - failed, verify::CHECKS.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
