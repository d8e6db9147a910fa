//! Runs selected acceptance criteria (all of them with `--all`).

use addbasis::verify::criteria::{run_all, run_criterion};

fn main() {
    let results = if std::env::args().any(|a| a == "--all") {
        run_all(2024)
    } else {
        [2, 9, 10, 11, 13]
            .into_iter()
            .map(|id| run_criterion(id, 2024))
            .collect()
    };
    for r in results {
        println!(
            "{:>2} {} {}: {}",
            r.id,
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.detail
        );
    }
}
