//! Lemma audits: the two-bases sandwich, restriction to a subgroup and the
//! correspondence with bases of the generated group.

use addbasis::basis::{derive_group_basis, lemma_nn_audit, twobases_audit};
use addbasis::perset::literal::parse;
use addbasis::structure::validate_semigroup;
use addbasis::GroupElement;

fn main() -> addbasis::Result<()> {
    let n = validate_semigroup(&parse("0+1N")?)?;
    let r = twobases_audit(
        &parse("{1}")?,
        &parse("{0, 4}, 0+2N")?,
        &GroupElement::integer(0),
        &n,
    )?;
    println!(
        "two bases: h1 = {}, h2 = {}, ord = {}, sandwich {}",
        r.h1, r.h2, r.h, r.ok
    );
    let nn = lemma_nn_audit(&parse("{0, 1}, 0+3N")?, &parse("{1}")?, &n)?;
    println!(
        "restriction: index {:?}, order in H {:?}",
        nn.index, nn.order_in_h
    );
    let (a_prime, rep) = derive_group_basis(&parse("{1, 2}, 0+6N, 3+6N")?, &n)?;
    println!(
        "group basis {}: orders {} / {:?}, essentials equal {}",
        a_prime.map(|a| a.to_string()).unwrap_or_default(),
        rep.order_t,
        rep.order_g,
        rep.equal
    );
    Ok(())
}
