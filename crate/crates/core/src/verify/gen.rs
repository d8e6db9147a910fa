//! Random periodic sets for oracle runs.

use rand::Rng;

use crate::perset::{AmbientGroup, BitRow, PeriodicSet};

/// Torsion parts with |C| ⩽ 8.
pub const SMALL_TORSION: &[&[i64]] = &[
    &[],
    &[2],
    &[3],
    &[4],
    &[2, 2],
    &[5],
    &[6],
    &[7],
    &[8],
    &[2, 4],
    &[2, 2, 2],
];

pub fn random_ambient(rng: &mut impl Rng) -> AmbientGroup {
    let f = SMALL_TORSION[rng.gen_range(0..SMALL_TORSION.len())];
    AmbientGroup::new(f.to_vec()).expect("valid chain")
}

#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub max_period: usize,
    pub max_width: usize,
    /// Probability that the left tail is forced empty.
    pub one_sided: f64,
    /// Bit density of window and patterns.
    pub density: f64,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            max_period: 12,
            max_width: 24,
            one_sided: 0.5,
            density: 0.35,
        }
    }
}

/// A nonempty random set; its raw description is canonicalized on build.
pub fn random_set(rng: &mut impl Rng, g: &AmbientGroup, shape: Shape) -> PeriodicSet {
    loop {
        let ord = g.order();
        let p = rng.gen_range(1..=shape.max_period);
        let width = rng.gen_range(0..=shape.max_width);
        let lo = rng.gen_range(-12i64..=12);
        let hi = lo + width as i64;
        let mut right = BitRow::new(ord * p);
        let mut left = BitRow::new(ord * p);
        let one_sided = rng.gen_bool(shape.one_sided);
        for i in 0..ord * p {
            if rng.gen_bool(shape.density) {
                right.set(i);
            }
            if !one_sided && rng.gen_bool(shape.density) {
                left.set(i);
            }
        }
        let bits: Vec<Vec<bool>> = (0..ord)
            .map(|_| (0..width).map(|_| rng.gen_bool(shape.density)).collect())
            .collect();
        let s = PeriodicSet::build(g, p, lo, hi, right, left, |c, n| bits[c][(n - lo) as usize]);
        if !s.is_empty() {
            return s;
        }
    }
}
