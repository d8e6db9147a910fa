//! Runs every acceptance criterion, prints one line each and exits nonzero
//! if any of them fails.

use addbasis::verify::criteria::{run_criterion, CRITERIA};

const SEED: u64 = 2024;

fn main() {
    let mut failed = Vec::new();
    for &(id, _) in CRITERIA.iter() {
        let r = run_criterion(id, SEED);
        println!(
            "criterion {:>2} {} {}: {} ({:.1} s)",
            r.id,
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.detail,
            r.seconds
        );
        if !r.passed {
            failed.push(r.id);
        }
    }
    if failed.is_empty() {
        println!("all {} criteria passed", CRITERIA.len());
    } else {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
