//! Runs the full acceptance table and prints one line per criterion.
//!
//! `PCONST_ONLY` restricts the run with the same filter syntax as
//! `pconst verify --only`.

use std::process::ExitCode;

use pconst::verify::{criteria, run_verify, VerifyOptions};

fn main() -> ExitCode {
    // Libtest-style flags from `cargo test` are accepted and ignored.
    if std::env::args().any(|a| a == "--list") {
        for (id, group, name) in criteria() {
            println!("criterion_{id:02}_{group}: test ({name})");
        }
        return ExitCode::SUCCESS;
    }
    let opts = VerifyOptions { only: std::env::var("PCONST_ONLY").ok(), ..Default::default() };
    println!("acceptance criteria");
    let outcomes = run_verify(&opts, |o| println!("{o}"));
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    println!("{} passed, {} failed", outcomes.len() - failed.len(), failed.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failing criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
