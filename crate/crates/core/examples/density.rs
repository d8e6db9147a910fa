//! Exact natural densities and the density lemma audits.

use addbasis::density::{density_lemma_audit, natural_density, prehistoric_audit};
use addbasis::perset::literal::parse;
use addbasis::structure::validate_semigroup;
use rand::SeedableRng;

fn main() -> addbasis::Result<()> {
    let n = validate_semigroup(&parse("0+1N")?)?;
    for s in ["0+3N", "{1, 2}, 0+2N, 1+6N", "{5, 7, 11}"] {
        println!("d({s}) = {}", natural_density(&parse(s)?, &n)?);
    }
    let c = prehistoric_audit(&parse("0+2N, 1+4N")?, &parse("0+2N, 3+4N")?, &n)?;
    println!("{c:?}");
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    for s in density_lemma_audit(&mut rng, 50)? {
        println!(
            "{:>18}: {} of {} fired, {} failures",
            s.lemma,
            s.fired,
            s.instances,
            s.failures.len()
        );
    }
    Ok(())
}
