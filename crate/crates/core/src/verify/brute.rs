//! Windowed brute-force oracles.
//!
//! These only ever call `contains` on their inputs. Sums are computed by
//! enumerating elements in a bounded box, so they share no code with the
//! class-based sum kernel they check.
//!
//! Box size. Write `E` for the largest `|lo|`, `|hi|` of the inputs and `L`
//! for a common period. In any representation `n = a1 + … + ah`, a summand in
//! the right tail beyond `hi + L` and a summand in the left tail below
//! `lo − L` can trade `L` without leaving their tails. After all such trades
//! either every right-tail summand is below `hi + L` or every left-tail
//! summand is at least `lo − L`. In both cases each summand of a
//! representation of `n ∈ [−W, W]` lies within `W + h·(E + L)` of 0.

use num_integer::Integer;

use crate::perset::PeriodicSet;

/// Membership table over C × [lo, hi), one word array per torsion value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub lo: i64,
    pub hi: i64,
    pub ord: usize,
    cols: Vec<Vec<u64>>,
}

impl Table {
    fn blank(lo: i64, hi: i64, ord: usize) -> Self {
        let words = ((hi - lo).max(0) as usize).div_ceil(64);
        Table {
            lo,
            hi,
            ord,
            cols: vec![vec![0; words]; ord],
        }
    }

    fn set(&mut self, c: usize, n: i64) {
        let i = (n - self.lo) as usize;
        self.cols[c][i / 64] |= 1 << (i % 64);
    }

    pub fn of(s: &PeriodicSet, lo: i64, hi: i64) -> Self {
        let mut t = Table::blank(lo, hi, s.ambient().order());
        for n in lo..hi {
            for c in 0..t.ord {
                if s.contains(c, n) {
                    t.set(c, n);
                }
            }
        }
        t
    }

    pub fn get(&self, c: usize, n: i64) -> bool {
        if n < self.lo || n >= self.hi {
            return false;
        }
        let i = (n - self.lo) as usize;
        self.cols[c][i / 64] >> (i % 64) & 1 == 1
    }

    fn members(&self) -> Vec<(usize, i64)> {
        let mut v = Vec::new();
        for n in self.lo..self.hi {
            for c in 0..self.ord {
                if self.get(c, n) {
                    v.push((c, n));
                }
            }
        }
        v
    }
}

fn extent(s: &PeriodicSet) -> i64 {
    let (lo, hi) = s.window();
    lo.abs().max(hi.abs())
}

/// Half-width of the enumeration box for an `h`-term sum checked on `[−w, w]`.
pub fn box_radius(sets: &[&PeriodicSet], h: i64, w: i64) -> i64 {
    let e = sets.iter().map(|s| extent(s)).max().unwrap_or(0);
    let l = sets
        .iter()
        .fold(1i64, |acc, s| acc.lcm(&(s.period() as i64)));
    w + h * (e + l) + 1
}

/// Every sum `x + y` with `x` in the table and `y` in the list.
fn add_tables(a: &Table, b: &[(usize, i64)], add: &dyn Fn(usize, usize) -> usize) -> Table {
    let lo = a.lo + b.iter().map(|x| x.1).min().unwrap_or(0);
    let hi = a.hi + b.iter().map(|x| x.1).max().unwrap_or(0);
    let mut out = Table::blank(lo, hi.max(lo), a.ord);
    let nwords = out.cols.first().map_or(0, Vec::len);
    for &(cb, nb) in b {
        // Shift every column of `a` by nb - (lo - a.lo) bits.
        let shift = (nb + a.lo - lo) as usize;
        let (ws, bs) = (shift / 64, shift % 64);
        for ca in 0..a.ord {
            let dst = add(ca, cb);
            for (i, &w) in a.cols[ca].iter().enumerate() {
                if w == 0 {
                    continue;
                }
                let j = i + ws;
                if j < nwords {
                    out.cols[dst][j] |= w << bs;
                }
                if bs != 0 && j + 1 < nwords {
                    out.cols[dst][j + 1] |= w >> (64 - bs);
                }
            }
        }
    }
    out
}

/// `A + B` restricted to `[−w, w]`.
pub fn sum_on(a: &PeriodicSet, b: &PeriodicSet, w: i64) -> Table {
    let g = a.ambient().clone();
    let x = box_radius(&[a, b], 1, w);
    let ta = Table::of(a, -x, x + 1);
    let tb = Table::of(b, -x, x + 1);
    let full = add_tables(&ta, &tb.members(), &|p, q| g.add(p, q));
    restrict(&full, -w, w + 1)
}

/// `hA` restricted to `[−w, w]`, by iterated sums over the box.
pub fn fold_on(a: &PeriodicSet, h: u32, w: i64) -> Table {
    let g = a.ambient().clone();
    let x = box_radius(&[a], h as i64, w);
    let base = Table::of(a, -x, x + 1);
    let elems = base.members();
    let mut acc = base;
    for _ in 1..h {
        acc = add_tables(&acc, &elems, &|p, q| g.add(p, q));
    }
    restrict(&acc, -w, w + 1)
}

fn restrict(t: &Table, lo: i64, hi: i64) -> Table {
    let mut out = Table::blank(lo, hi, t.ord);
    for n in lo..hi {
        for c in 0..t.ord {
            if t.get(c, n) {
                out.set(c, n);
            }
        }
    }
    out
}

/// First disagreement between a set and a table, if any.
pub fn mismatch(s: &PeriodicSet, t: &Table) -> Option<(usize, i64)> {
    (t.lo..t.hi)
        .flat_map(|n| (0..t.ord).map(move |c| (c, n)))
        .find(|&(c, n)| s.contains(c, n) != t.get(c, n))
}

/// Check radius: the requested `[−w, w]`, widened so that three periods past
/// each end of the result's window are covered.
pub fn check_radius(result: &PeriodicSet, w: i64) -> i64 {
    let (lo, hi) = result.window();
    let tail = 3 * result.period() as i64;
    w.max(hi + tail).max(-lo + tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perset::literal::parse;

    #[test]
    fn oracle_reproduces_known_sums() {
        let a = parse("{1}, 0+4N").unwrap();
        let t = sum_on(&a, &a, 200);
        let expect = parse("{2}, 1+4N, 0+4N").unwrap();
        assert_eq!(mismatch(&expect, &t), None);
        let b = parse("{0, 1}, 0+3N").unwrap();
        let t3 = fold_on(&b, 3, 300);
        assert_eq!(mismatch(&parse("0+1N").unwrap(), &t3), None);
        let two_sided = parse("{0}, 5+3N, -4-3N").unwrap();
        let t = fold_on(&two_sided, 2, 60);
        assert_eq!(mismatch(&two_sided.h_fold(2).unwrap(), &t), None);
    }
}
