//! Essential hyperplane complements in the graded basis of F_p[t].

use addbasis::fpt::fpt_verify;

fn main() -> addbasis::Result<()> {
    for (p, r, h, d) in [(2, 2, 2, 8), (2, 2, 3, 10), (3, 1, 2, 6), (3, 2, 2, 8)] {
        let rep = fpt_verify(p, r, h, d)?;
        println!(
            "p={p} r={r} h={h} D={d}: k={}, {} hyperplanes per block, essentials {:?} (total {}), (h−1)k = {}, stable {}, brute force {:?}",
            rep.k, rep.hyperplanes_per_block, rep.per_block, rep.count, rep.lower_bound, rep.stable, rep.brute_force
        );
    }
    Ok(())
}
