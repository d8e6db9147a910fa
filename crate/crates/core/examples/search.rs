//! Bounded witness searches for large removal orders and many essentials.

use addbasis::basis::{witness_search, Budget, Target};
use addbasis::perset::literal::parse;
use addbasis::structure::validate_semigroup;

fn main() -> addbasis::Result<()> {
    let n = validate_semigroup(&parse("0+1N")?)?;
    let r = witness_search(&n, 2, 1, Budget::default(), Target::X)?;
    println!(
        "{} candidates, {} bases certified",
        r.candidates_examined, r.bases_certified
    );
    if let Some(best) = &r.best_x {
        let m = best.max_removal.as_ref().expect("witness");
        println!(
            "largest removal: {} minus {} has order {}",
            best.basis, m.element, m.order
        );
    }
    println!("max removal by order: {:?}", r.max_removal_by_order);
    let c2 = validate_semigroup(&parse("C=2; (*)0+1N")?)?;
    let e = witness_search(&c2, 3, 1, Budget::default(), Target::E)?;
    if let Some(Some(best)) = e.best_e.first() {
        let singles: Vec<String> = best
            .essential_singletons
            .iter()
            .map(|x| x.to_string())
            .collect();
        println!(
            "most essential singletons over C2 ⊕ N: {} has {}",
            best.basis,
            singles.join(", ")
        );
    }
    Ok(())
}
