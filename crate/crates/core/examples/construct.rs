//! Bases of prescribed exact order.

use addbasis::basis::construct_exact_order_basis;
use addbasis::perset::literal::parse;
use addbasis::structure::validate_semigroup;

fn main() -> addbasis::Result<()> {
    for t in ["0+1N", "{0, 3, 5, 6}, 8+1N", "C=2; (*)0+1N", "0+1Z"] {
        let t = validate_semigroup(&parse(t)?)?;
        for h in [2, 5, 8] {
            let r = construct_exact_order_basis(&t, h)?;
            println!("{} h={h}: {} via {}", t.carrier(), r.basis, r.candidate);
        }
    }
    Ok(())
}
