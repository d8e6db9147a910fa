//! Minkowski sums and h-fold sums of eventually periodic sets.

use addbasis::perset::literal::parse;

fn main() -> addbasis::Result<()> {
    let a = parse("{1}, 0+4N")?;
    let b = parse("{0, 3, 5, 6}, 8+1N")?;
    println!("A = {a}");
    println!("A + A = {}", a.minkowski_sum(&a)?);
    for h in 2..=4 {
        println!("{h}A = {}", a.h_fold(h)?);
    }
    println!("A + <3,5> = {}", a.minkowski_sum(&b)?);
    println!("A − A = {}", a.difference_set()?);
    let c2 = parse("C=2; (1){0}, (0)0+2N")?;
    println!("over C2 ⊕ Z: 3B for B = {c2} is {}", c2.h_fold(3)?);
    Ok(())
}
