//! Minkowski sums.
//!
//! Each operand splits into a finite part (its window), right progressions
//! `(c, s) + Pℕ` and left progressions `(c, e) − Pℕ`, all at the common
//! period `P = lcm(p1, p2)`. A union of progressions in one class is the
//! progression from the extreme endpoint, so a tail family is just an array of
//! starts (or ends) indexed by class. Then:
//!
//! * finite + finite is a bitset convolution (shift-or per set bit);
//! * finite + right and right + right reduce to min-plus over classes, since
//!   only the smallest finite element of each class matters against a right
//!   progression;
//! * finite + left and left + left are the mirrored max-plus;
//! * right + left fills whole residue lines.
//!
//! Nothing is truncated, the result is exact.

use super::{checked_lcm, residue, BitRow, PeriodicSet};
use crate::error::{Error, Result};

/// Extreme endpoint per class `c * P + r`; `None` when the class is absent.
type Family = Vec<Option<i64>>;

struct Decomposed {
    right: Family,
    left: Family,
    /// Smallest / largest window element per class.
    fin_min: Family,
    fin_max: Family,
}

fn decompose(s: &PeriodicSet, p: usize) -> Decomposed {
    let ord = s.ambient.order();
    let sp = s.period;
    let (lo, hi) = (s.lo, s.hi);
    let mut right = vec![None; ord * p];
    let mut left = vec![None; ord * p];
    for c in 0..ord {
        for r in 0..p {
            let i = c * sp + r % sp;
            if s.right.get(i) {
                right[c * p + r] = Some(hi + (r as i64 - hi).rem_euclid(p as i64));
            }
            if s.left.get(i) {
                let top = lo - 1;
                left[c * p + r] = Some(top - (top - r as i64).rem_euclid(p as i64));
            }
        }
    }
    let mut fin_min = vec![None; ord * p];
    let mut fin_max = vec![None; ord * p];
    for (c, col) in s.columns.iter().enumerate() {
        for i in col.iter_ones() {
            let n = lo + i as i64;
            let k = c * p + residue(n, p);
            if fin_min[k].is_none() {
                fin_min[k] = Some(n);
            }
            fin_max[k] = Some(n);
        }
    }
    Decomposed {
        right,
        left,
        fin_min,
        fin_max,
    }
}

/// Combine two families class-wise with `pick` (min for right, max for left).
fn convolve_into(
    out: &mut Family,
    a: &Family,
    b: &Family,
    s: &PeriodicSet,
    p: usize,
    pick: fn(i64, i64) -> i64,
) {
    let g = &s.ambient;
    let ord = g.order();
    let bs: Vec<(usize, usize, i64)> = (0..ord * p)
        .filter_map(|k| b[k].map(|v| (k / p, k % p, v)))
        .collect();
    if bs.is_empty() {
        return;
    }
    for (k, va) in a.iter().enumerate() {
        let Some(va) = *va else { continue };
        let (ca, ra) = (k / p, k % p);
        for &(cb, rb, vb) in &bs {
            let idx = g.add(ca, cb) * p + (ra + rb) % p;
            let v = va + vb;
            out[idx] = Some(out[idx].map_or(v, |o| pick(o, v)));
        }
    }
}

impl PeriodicSet {
    /// Exact `A + B`.
    pub fn minkowski_sum(&self, other: &Self) -> Result<Self> {
        self.ambient.check_same(&other.ambient)?;
        let g = &self.ambient;
        let ord = g.order();
        if self.is_empty() || other.is_empty() {
            return Ok(PeriodicSet::empty(g));
        }
        if self.is_full() || other.is_full() {
            return Ok(PeriodicSet::full(g));
        }
        let p = checked_lcm(self.period, other.period)?;
        let a = decompose(self, p);
        let b = decompose(other, p);

        let mut right: Family = vec![None; ord * p];
        convolve_into(&mut right, &a.fin_min, &b.right, self, p, i64::min);
        convolve_into(&mut right, &a.right, &b.fin_min, self, p, i64::min);
        convolve_into(&mut right, &a.right, &b.right, self, p, i64::min);

        let mut left: Family = vec![None; ord * p];
        convolve_into(&mut left, &a.fin_max, &b.left, self, p, i64::max);
        convolve_into(&mut left, &a.left, &b.fin_max, self, p, i64::max);
        convolve_into(&mut left, &a.left, &b.left, self, p, i64::max);

        let mut full = BitRow::new(ord * p);
        for (x, y) in [(&a.right, &b.left), (&a.left, &b.right)] {
            let mut tmp: Family = vec![None; ord * p];
            convolve_into(&mut tmp, x, y, self, p, i64::min);
            for (k, v) in tmp.iter().enumerate() {
                if v.is_some() {
                    full.set(k);
                }
            }
        }

        // Finite part: shift-or convolution, offset lo1 + lo2.
        let (w1, w2) = ((self.hi - self.lo) as usize, (other.hi - other.lo) as usize);
        let fin_lo = self.lo + other.lo;
        let fin_width = if w1 == 0 || w2 == 0 { 0 } else { w1 + w2 - 1 };
        let mut fin = vec![BitRow::new(fin_width); ord];
        if fin_width > 0 {
            for cb in 0..ord {
                let colb = &other.columns[cb];
                if colb.is_empty() {
                    continue;
                }
                for ca in 0..ord {
                    let cola = &self.columns[ca];
                    if cola.is_empty() {
                        continue;
                    }
                    let dst = g.add(ca, cb);
                    for j in colb.iter_ones() {
                        fin[dst].or_shifted(cola, j);
                    }
                }
            }
        }

        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for v in right.iter().flatten() {
            lo = lo.min(*v);
            hi = hi.max(*v);
        }
        for v in left.iter().flatten() {
            lo = lo.min(v + 1);
            hi = hi.max(v + 1);
        }
        for col in &fin {
            if let (Some(f), Some(l)) = (col.first_one(), col.last_one()) {
                lo = lo.min(fin_lo + f as i64);
                hi = hi.max(fin_lo + l as i64 + 1);
            }
        }
        if lo > hi {
            lo = 0;
            hi = 0;
        }
        if hi - lo > (1i64 << 30) {
            return Err(Error::Overflow("sumset window too wide"));
        }

        let mut rpat = full.clone();
        let mut lpat = full.clone();
        for k in 0..ord * p {
            if right[k].is_some() {
                rpat.set(k);
            }
            if left[k].is_some() {
                lpat.set(k);
            }
        }
        let member = |c: usize, n: i64| {
            let k = c * p + residue(n, p);
            full.get(k)
                || right[k].is_some_and(|s| n >= s)
                || left[k].is_some_and(|e| n <= e)
                || (n >= fin_lo
                    && ((n - fin_lo) as usize) < fin_width
                    && fin[c].get((n - fin_lo) as usize))
        };
        Ok(PeriodicSet::build(g, p, lo, hi, rpat, lpat, member))
    }

    /// `hA`, the sum of `h` copies, by doubling.
    pub fn h_fold(&self, h: u32) -> Result<Self> {
        if h == 0 {
            return Err(Error::precondition("h >= 1", "h_fold with h = 0"));
        }
        let mut acc: Option<PeriodicSet> = None;
        let mut base = self.clone();
        let mut k = h;
        loop {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.minkowski_sum(&base)?,
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.minkowski_sum(&base)?;
        }
        Ok(acc.expect("h >= 1"))
    }
}

#[cfg(test)]
mod tests {
    use crate::perset::{AmbientGroup, PeriodicSet, Tail};

    fn z() -> AmbientGroup {
        AmbientGroup::integers()
    }

    fn prog(a: i64, p: usize) -> PeriodicSet {
        PeriodicSet::progression(&z(), 0, a, p, Tail::Right)
    }

    fn fin(v: &[i64]) -> PeriodicSet {
        PeriodicSet::from_integers(v.iter().copied())
    }

    #[test]
    fn small_sums() {
        assert_eq!(
            fin(&[0, 1]).minkowski_sum(&fin(&[0, 1])).unwrap(),
            fin(&[0, 1, 2])
        );
        assert_eq!(prog(0, 2).minkowski_sum(&prog(0, 2)).unwrap(), prog(0, 2));
        let a = fin(&[1]).union(&prog(0, 4)).unwrap();
        let expect = fin(&[2])
            .union(&prog(1, 4))
            .unwrap()
            .union(&prog(0, 4))
            .unwrap();
        assert_eq!(a.minkowski_sum(&a).unwrap(), expect);
    }

    #[test]
    fn folds() {
        let a = fin(&[1]).union(&prog(0, 2)).unwrap();
        assert_eq!(a.h_fold(1).unwrap(), a);
        assert_eq!(a.h_fold(2).unwrap(), prog(0, 1));
        let b = fin(&[0, 1]).union(&prog(0, 3)).unwrap();
        let two = b.h_fold(2).unwrap();
        assert!(!two.contains(0, 5) && !two.contains(0, 8) && !two.contains(0, 11));
        assert!(prog(0, 1).is_subset(&b.h_fold(3).unwrap()).unwrap());
    }

    #[test]
    fn right_plus_left_is_full_line() {
        let r = prog(1, 3);
        let l = PeriodicSet::progression(&z(), 0, 0, 3, Tail::Left);
        let s = r.minkowski_sum(&l).unwrap();
        assert_eq!(s, PeriodicSet::progression(&z(), 0, 1, 3, Tail::Both));
    }

    #[test]
    fn difference_sets() {
        assert_eq!(
            prog(0, 2).difference_set().unwrap(),
            PeriodicSet::progression(&z(), 0, 0, 2, Tail::Both)
        );
        assert_eq!(fin(&[0, 1]).difference_set().unwrap(), fin(&[-1, 0, 1]));
        let a = fin(&[1]).union(&prog(0, 2)).unwrap();
        assert!(a.difference_set().unwrap().is_full());
    }
}
