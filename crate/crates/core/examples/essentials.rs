//! Reservoirs and essential subsets.

use addbasis::basis::essential_subsets;
use addbasis::perset::literal::parse;
use addbasis::structure::validate_semigroup;

fn main() -> addbasis::Result<()> {
    let n = validate_semigroup(&parse("0+1N")?)?;
    for a in ["{1}, 0+2N", "{2, 3, 4}, 0+6N", "{1, 2, 3}, 0+6N"] {
        let fam = essential_subsets(&parse(a)?, &n, 3)?;
        let show = |v: &[addbasis::GroupElement]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let ess: Vec<String> = fam
            .essentials
            .iter()
            .map(|e| format!("{{{}}}", show(e)))
            .collect();
        println!(
            "A = {a}: K* = {} + {}, reservoir {{{}}}, essentials {}",
            fam.k_star.representative,
            fam.k_star.subgroup,
            show(&fam.reservoir),
            ess.join(" ")
        );
    }
    Ok(())
}
