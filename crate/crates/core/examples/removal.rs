//! Removing finite sets: the difference-group criterion and removal orders.

use addbasis::basis::{bound_audit, erdos_graham, removal_order};
use addbasis::perset::literal::parse;
use addbasis::structure::validate_semigroup;

fn main() -> addbasis::Result<()> {
    let n = validate_semigroup(&parse("0+1N")?)?;
    let a = parse("{0}, 2+5N, 3+5N")?;
    for f in ["{0}", "{2}", "{0, 2}", "{3, 8}"] {
        let fs = parse(f)?;
        let out = removal_order(&a, &fs, &n)?;
        println!(
            "A ∖ {f}: criterion {}, order {:?}",
            erdos_graham(&a, &fs, &n)?,
            out.order
        );
    }
    let study = bound_audit(&a, &n, 2, 2)?;
    println!(
        "order {}: {} removals audited, x1 cap {}, x2 caps {:?}, violations {:?}",
        study.h,
        study.entries.len(),
        study.x1_cap,
        study.x2_caps,
        study.violations
    );
    Ok(())
}
