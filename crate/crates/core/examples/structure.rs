//! Validating translatable semigroups and decomposing them as R + xN.

use addbasis::abgroup::Subgroup;
use addbasis::perset::literal::parse;
use addbasis::structure::{grothendieck, structure_decompose, t_cap_h, validate_semigroup};

fn main() -> addbasis::Result<()> {
    for t in ["{0, 3, 5, 6}, 8+1N", "C=2; (*)0+1N", "0+1Z", "-1-1N"] {
        let t = validate_semigroup(&parse(t)?)?;
        let r = structure_decompose(&t)?;
        println!(
            "{}: {}",
            t.carrier(),
            serde_json::to_string(&r).expect("json")
        );
        println!("  generated group {}", grothendieck(&t)?);
    }
    match validate_semigroup(&parse("{3}, 0+2N")?) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    let ns = validate_semigroup(&parse("{0, 3, 5, 6}, 8+1N")?)?;
    let h = Subgroup::generated_by(ns.ambient(), [(0, 2)])?;
    let (sub, _) = t_cap_h(&ns, &h)?;
    println!("<3,5> ∩ 2Z, rescaled: {}", sub.carrier());
    Ok(())
}
