//! One PASS/FAIL line per acceptance criterion.

use qbarnes::cli::suites::{run_suite, SuiteConfig, SUITES};

fn main() {
    let cfg = SuiteConfig::default();
    let mut failed = 0;
    for (i, name) in SUITES.iter().enumerate() {
        match run_suite(name, cfg) {
            Ok(r) => {
                let status = if r.pass { "PASS" } else { "FAIL" };
                let worst = r
                    .checks
                    .iter()
                    .map(|c| format!("{}: {:.3e} (tol {:e})", c.name, c.residual, c.tol))
                    .collect::<Vec<_>>()
                    .join("; ");
                println!("{status} criterion {:>2} [{name}] {worst}", i + 1);
                if !r.pass {
                    failed += 1;
                }
            }
            Err(e) => {
                println!("FAIL criterion {:>2} [{name}] error: {e}", i + 1);
                failed += 1;
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
