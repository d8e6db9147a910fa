//! Basis verdicts and exact orders, with the obstruction when A fails.

use addbasis::basis::ord_star;
use addbasis::perset::literal::parse;
use addbasis::structure::validate_semigroup;

fn main() -> addbasis::Result<()> {
    let n = validate_semigroup(&parse("0+1N")?)?;
    for a in [
        "{1}, 0+2N",
        "{0, 1}, 0+5N",
        "0+2N",
        "{0}, 2+5N, 3+5N",
        "1-1N",
    ] {
        let r = ord_star(&parse(a)?, &n)?;
        println!("{a:>18}  {}", serde_json::to_string(&r).expect("json"));
    }
    let z = validate_semigroup(&parse("0+1Z")?)?;
    let r = ord_star(&parse("{0}, 3+7N, -2-7N")?, &z)?;
    println!("over Z: {}", serde_json::to_string(&r).expect("json"));
    Ok(())
}
