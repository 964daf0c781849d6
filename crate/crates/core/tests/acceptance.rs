//! One PASS/FAIL line per acceptance criterion. Optional arguments select
//! criteria by id.

use std::process::ExitCode;

use homind_core::acceptance::{self, CRITERIA};

fn main() -> ExitCode {
    let selected: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| CRITERIA.contains(&a.as_str()))
        .collect();
    let mut failed = 0;
    for id in CRITERIA {
        if !selected.is_empty() && !selected.iter().any(|s| s == id) {
            continue;
        }
        let outcome = acceptance::run(id).expect("known criterion");
        println!("{outcome}");
        if !outcome.pass {
            failed += 1;
        }
    }
    println!("acceptance: {failed} failing");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
