//! Eventually periodic subsets of C ⊕ ℤ.
//!
//! A [`PeriodicSet`] is stored as a finite window `[lo, hi)` (one bit row per
//! torsion element) plus two residue patterns over C × ℤ/p: the right pattern
//! decides membership for `n >= hi`, the left pattern for `n < lo`.
//!
//! Every constructor canonicalizes. Each pattern is cut down to its own
//! minimal period and `p` is the lcm of the two. `hi` is one past the last row
//! that disagrees with the right pattern, and `lo` is the first row that
//! disagrees with the left pattern (clamped to `hi`). A set that agrees with
//! one pattern everywhere has `lo = hi = 0`. Canonical forms are unique, so
//! the derived `Eq` is set equality.

mod ambient;
mod bits;
pub mod json;
pub mod literal;
mod sum;

pub use ambient::{AmbientGroup, GroupElement};
pub use bits::BitRow;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Periods above this are refused rather than allocated.
pub const MAX_PERIOD: usize = 1 << 16;

/// One side of a residue class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tail {
    /// `a + pℕ`
    Right,
    /// `a − pℕ`
    Left,
    /// `a + pℤ`
    Both,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PeriodicSet {
    ambient: AmbientGroup,
    period: usize,
    lo: i64,
    hi: i64,
    columns: Vec<BitRow>,
    right: BitRow,
    left: BitRow,
}

#[inline]
fn residue(n: i64, p: usize) -> usize {
    n.rem_euclid(p as i64) as usize
}

pub(crate) fn checked_lcm(a: usize, b: usize) -> Result<usize> {
    let l = a.lcm(&b);
    if l > MAX_PERIOD {
        Err(Error::Overflow("period exceeds the supported maximum"))
    } else {
        Ok(l)
    }
}

/// Re-index a pattern of period `p` at period `q`, where one divides the other
/// and the pattern is `q`-periodic if `q < p`.
fn repattern(pat: &BitRow, ord: usize, p: usize, q: usize) -> BitRow {
    if p == q {
        return pat.clone();
    }
    let mut out = BitRow::new(ord * q);
    for c in 0..ord {
        for r in 0..q {
            if pat.get(c * p + r % p) {
                out.set(c * q + r);
            }
        }
    }
    out
}

fn minimal_period(pat: &BitRow, ord: usize, p: usize) -> usize {
    let mut divisors: Vec<usize> = (1..=p).filter(|q| p.is_multiple_of(*q)).collect();
    divisors.sort_unstable();
    for q in divisors {
        let ok = (0..ord).all(|c| (q..p).all(|r| pat.get(c * p + r) == pat.get(c * p + r - q)));
        if ok {
            return q;
        }
    }
    p
}

impl PeriodicSet {
    /// Assemble from a membership oracle that is exact on `[lo, hi)` and
    /// follows `right` / `left` (at period `period`) outside it.
    pub(crate) fn build(
        ambient: &AmbientGroup,
        period: usize,
        lo: i64,
        hi: i64,
        right: BitRow,
        left: BitRow,
        f: impl Fn(usize, i64) -> bool,
    ) -> Self {
        debug_assert!(lo <= hi);
        let ord = ambient.order();
        let width = (hi - lo) as usize;
        let columns = (0..ord)
            .map(|c| {
                let mut row = BitRow::new(width);
                for i in 0..width {
                    if f(c, lo + i as i64) {
                        row.set(i);
                    }
                }
                row
            })
            .collect();
        let mut s = PeriodicSet {
            ambient: ambient.clone(),
            period,
            lo,
            hi,
            columns,
            right,
            left,
        };
        s.canonicalize();
        s
    }

    fn canonicalize(&mut self) {
        let ord = self.ambient.order();
        let p = self.period;
        let qr = minimal_period(&self.right, ord, p);
        let ql = minimal_period(&self.left, ord, p);
        let q = qr.lcm(&ql);
        let right = repattern(&self.right, ord, p, q);
        let left = repattern(&self.left, ord, p, q);

        let row_differs = |n: i64, pat: &BitRow| {
            (0..ord).any(|c| self.contains(c, n) != pat.get(c * q + residue(n, q)))
        };

        let mut new_hi = None;
        let mut n = self.hi - 1;
        while n >= self.lo - q as i64 {
            if row_differs(n, &right) {
                new_hi = Some(n + 1);
                break;
            }
            n -= 1;
        }
        let Some(new_hi) = new_hi else {
            // Agrees with the right pattern on all of ℤ.
            *self = PeriodicSet {
                ambient: self.ambient.clone(),
                period: q,
                lo: 0,
                hi: 0,
                columns: vec![BitRow::new(0); ord],
                left: right.clone(),
                right,
            };
            return;
        };
        let mut new_lo = new_hi;
        let mut n = self.lo;
        while n < new_hi {
            if row_differs(n, &left) {
                new_lo = n;
                break;
            }
            n += 1;
        }
        let width = (new_hi - new_lo) as usize;
        let columns = (0..ord)
            .map(|c| {
                let mut row = BitRow::new(width);
                for i in 0..width {
                    if self.contains(c, new_lo + i as i64) {
                        row.set(i);
                    }
                }
                row
            })
            .collect();
        *self = PeriodicSet {
            ambient: self.ambient.clone(),
            period: q,
            lo: new_lo,
            hi: new_hi,
            columns,
            right,
            left,
        };
    }

    pub fn empty(ambient: &AmbientGroup) -> Self {
        let ord = ambient.order();
        PeriodicSet::build(
            ambient,
            1,
            0,
            0,
            BitRow::new(ord),
            BitRow::new(ord),
            |_, _| false,
        )
    }

    /// The whole ambient group.
    pub fn full(ambient: &AmbientGroup) -> Self {
        let ord = ambient.order();
        let mut all = BitRow::new(ord);
        for c in 0..ord {
            all.set(c);
        }
        PeriodicSet::build(ambient, 1, 0, 0, all.clone(), all, |_, _| true)
    }

    /// A finite set given by (torsion index, n) pairs.
    pub fn from_elements(
        ambient: &AmbientGroup,
        elems: impl IntoIterator<Item = (usize, i64)>,
    ) -> Self {
        let elems: Vec<(usize, i64)> = elems.into_iter().collect();
        let ord = ambient.order();
        if elems.is_empty() {
            return Self::empty(ambient);
        }
        let lo = elems.iter().map(|e| e.1).min().unwrap();
        let hi = elems.iter().map(|e| e.1).max().unwrap() + 1;
        let width = (hi - lo) as usize;
        let mut cols = vec![BitRow::new(width); ord];
        for &(c, n) in &elems {
            cols[c].set((n - lo) as usize);
        }
        PeriodicSet::build(
            ambient,
            1,
            lo,
            hi,
            BitRow::new(ord),
            BitRow::new(ord),
            |c, n| cols[c].get((n - lo) as usize),
        )
    }

    /// Finite subset of ℤ (trivial torsion).
    pub fn from_integers(ints: impl IntoIterator<Item = i64>) -> Self {
        Self::from_elements(&AmbientGroup::integers(), ints.into_iter().map(|n| (0, n)))
    }

    /// `(c, a) + p·ℕ`, `(c, a) − p·ℕ` or `(c, a) + p·ℤ`.
    pub fn progression(ambient: &AmbientGroup, c: usize, a: i64, p: usize, tail: Tail) -> Self {
        assert!(p >= 1 && c < ambient.order());
        let ord = ambient.order();
        let mut class = BitRow::new(ord * p);
        class.set(c * p + residue(a, p));
        let empty = BitRow::new(ord * p);
        let in_class = move |cc: usize, n: i64| cc == c && residue(n - a, p) == 0;
        match tail {
            Tail::Right => PeriodicSet::build(ambient, p, a, a, class, empty, move |cc, n| {
                in_class(cc, n) && n >= a
            }),
            Tail::Left => {
                PeriodicSet::build(ambient, p, a + 1, a + 1, empty, class, move |cc, n| {
                    in_class(cc, n) && n <= a
                })
            }
            Tail::Both => PeriodicSet::build(ambient, p, 0, 0, class.clone(), class, in_class),
        }
    }

    /// The one-sided semigroup C × ℕ.
    pub fn nonnegative(ambient: &AmbientGroup) -> Self {
        let ord = ambient.order();
        let mut all = BitRow::new(ord);
        for c in 0..ord {
            all.set(c);
        }
        PeriodicSet::build(ambient, 1, 0, 0, all, BitRow::new(ord), |_, n| n >= 0)
    }

    /// Periodic set with the given patterns on both sides and nothing else
    /// special: membership is the right pattern for `n >= 0`, left below.
    pub fn from_patterns(
        ambient: &AmbientGroup,
        period: usize,
        right: impl IntoIterator<Item = (usize, usize)>,
        left: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let ord = ambient.order();
        let mut r = BitRow::new(ord * period);
        let mut l = BitRow::new(ord * period);
        for (c, res) in right {
            r.set(c * period + res % period);
        }
        for (c, res) in left {
            l.set(c * period + res % period);
        }
        let (rr, ll) = (r.clone(), l.clone());
        PeriodicSet::build(ambient, period, 0, 0, r, l, move |c, n| {
            let i = c * period + residue(n, period);
            if n >= 0 {
                rr.get(i)
            } else {
                ll.get(i)
            }
        })
    }

    pub fn ambient(&self) -> &AmbientGroup {
        &self.ambient
    }

    pub fn period(&self) -> usize {
        self.period
    }

    /// The canonical window `[lo, hi)`.
    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub(crate) fn right_bits(&self) -> &BitRow {
        &self.right
    }

    pub(crate) fn left_bits(&self) -> &BitRow {
        &self.left
    }

    #[inline]
    pub fn contains(&self, c: usize, n: i64) -> bool {
        if n >= self.hi {
            self.right.get(c * self.period + residue(n, self.period))
        } else if n >= self.lo {
            self.columns[c].get((n - self.lo) as usize)
        } else {
            self.left.get(c * self.period + residue(n, self.period))
        }
    }

    pub fn member(&self, g: &GroupElement) -> Result<bool> {
        let c = self.ambient.index(&g.torsion)?;
        if g.torsion
            .iter()
            .zip(self.ambient.factors())
            .any(|(&x, &d)| x < 0 || x >= d)
        {
            return Err(Error::ElementOutsideAmbient {
                element: g.to_string(),
                ambient: self.ambient.to_string(),
            });
        }
        Ok(self.contains(c, g.n))
    }

    pub fn element(&self, c: usize, n: i64) -> GroupElement {
        GroupElement {
            torsion: self.ambient.coords(c),
            n,
        }
    }

    /// Occupied classes `(c, r)` of the right pattern.
    pub fn right_classes(&self) -> Vec<(usize, usize)> {
        let p = self.period;
        self.right.iter_ones().map(|i| (i / p, i % p)).collect()
    }

    pub fn left_classes(&self) -> Vec<(usize, usize)> {
        let p = self.period;
        self.left.iter_ones().map(|i| (i / p, i % p)).collect()
    }

    pub fn has_right_tail(&self) -> bool {
        !self.right.is_empty()
    }

    pub fn has_left_tail(&self) -> bool {
        !self.left.is_empty()
    }

    /// Members inside the canonical window, ordered by (n, c).
    pub fn window_elements(&self) -> Vec<(usize, i64)> {
        let mut out = Vec::new();
        for n in self.lo..self.hi {
            for c in 0..self.ambient.order() {
                if self.columns[c].get((n - self.lo) as usize) {
                    out.push((c, n));
                }
            }
        }
        out
    }

    /// Members with `lo <= n < hi` for an arbitrary range, ordered by (n, c).
    pub fn elements_in(&self, lo: i64, hi: i64) -> Vec<(usize, i64)> {
        let mut out = Vec::new();
        for n in lo..hi {
            for c in 0..self.ambient.order() {
                if self.contains(c, n) {
                    out.push((c, n));
                }
            }
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.right.is_empty() && self.left.is_empty() && self.columns.iter().all(BitRow::is_empty)
    }

    pub fn is_full(&self) -> bool {
        self.lo == self.hi
            && self.right.count_ones() == self.right.len()
            && self.left.count_ones() == self.left.len()
    }

    /// True iff both tails are empty.
    pub fn is_finite(&self) -> bool {
        self.right.is_empty() && self.left.is_empty()
    }

    /// The elements of a finite set, `None` if infinite.
    pub fn finite_elements(&self) -> Option<Vec<(usize, i64)>> {
        self.is_finite().then(|| self.window_elements())
    }

    pub fn finite_group_elements(&self) -> Option<Vec<GroupElement>> {
        self.finite_elements()
            .map(|v| v.into_iter().map(|(c, n)| self.element(c, n)).collect())
    }

    /// First `n >= hi` with `n ≡ r (mod p)`.
    pub fn right_class_start(&self, r: usize) -> i64 {
        let p = self.period as i64;
        self.hi + (r as i64 - self.hi).rem_euclid(p)
    }

    /// Last `n < lo` with `n ≡ r (mod p)`.
    pub fn left_class_end(&self, r: usize) -> i64 {
        let p = self.period as i64;
        let top = self.lo - 1;
        top - (top - r as i64).rem_euclid(p)
    }

    fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Result<Self> {
        self.ambient.check_same(&other.ambient)?;
        let ord = self.ambient.order();
        let p = checked_lcm(self.period, other.period)?;
        let (ar, br) = (
            repattern(&self.right, ord, self.period, p),
            repattern(&other.right, ord, other.period, p),
        );
        let (al, bl) = (
            repattern(&self.left, ord, self.period, p),
            repattern(&other.left, ord, other.period, p),
        );
        let mut right = BitRow::new(ord * p);
        let mut left = BitRow::new(ord * p);
        for i in 0..ord * p {
            right.assign(i, op(ar.get(i), br.get(i)));
            left.assign(i, op(al.get(i), bl.get(i)));
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi.max(other.hi);
        Ok(PeriodicSet::build(
            &self.ambient,
            p,
            lo,
            hi,
            right,
            left,
            |c, n| op(self.contains(c, n), other.contains(c, n)),
        ))
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a && !b)
    }

    pub fn symmetric_difference(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a != b)
    }

    pub fn complement(&self) -> Self {
        let mut right = self.right.clone();
        let mut left = self.left.clone();
        for i in 0..right.len() {
            right.assign(i, !self.right.get(i));
            left.assign(i, !self.left.get(i));
        }
        PeriodicSet::build(
            &self.ambient,
            self.period,
            self.lo,
            self.hi,
            right,
            left,
            |c, n| !self.contains(c, n),
        )
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    /// `x + S` for a torsion index and integer shift.
    pub fn translate_by(&self, c0: usize, n0: i64) -> Self {
        let g = &self.ambient;
        let ord = g.order();
        let p = self.period;
        let shift = |pat: &BitRow| {
            let mut out = BitRow::new(ord * p);
            for i in pat.iter_ones() {
                let (c, r) = (i / p, i % p);
                out.set(g.add(c, c0) * p + residue(r as i64 + n0, p));
            }
            out
        };
        PeriodicSet::build(
            g,
            p,
            self.lo + n0,
            self.hi + n0,
            shift(&self.right),
            shift(&self.left),
            |c, n| self.contains(g.sub(c, c0), n - n0),
        )
    }

    pub fn translate(&self, x: &GroupElement) -> Result<Self> {
        let c0 = self.ambient.index(&x.torsion)?;
        Ok(self.translate_by(c0, x.n))
    }

    /// `−S`.
    pub fn negate(&self) -> Self {
        let g = &self.ambient;
        let ord = g.order();
        let p = self.period;
        let flip = |pat: &BitRow| {
            let mut out = BitRow::new(ord * p);
            for i in pat.iter_ones() {
                let (c, r) = (i / p, i % p);
                out.set(g.neg(c) * p + residue(-(r as i64), p));
            }
            out
        };
        PeriodicSet::build(
            g,
            p,
            1 - self.hi,
            1 - self.lo,
            flip(&self.left),
            flip(&self.right),
            |c, n| self.contains(g.neg(c), -n),
        )
    }

    /// `A − A`.
    pub fn difference_set(&self) -> Result<Self> {
        if self.is_empty() {
            return Err(Error::precondition("nonempty set", "difference set of ∅"));
        }
        self.minkowski_sum(&self.negate())
    }

    /// `S1 ∼ S2`: the symmetric difference is finite. Returns it when so.
    pub fn sim(&self, other: &Self) -> Result<Option<Vec<(usize, i64)>>> {
        Ok(self.symmetric_difference(other)?.finite_elements())
    }

    /// `S1 ⊆~ S2`: `S1 ∖ S2` is finite. Returns it when so.
    pub fn subeq(&self, other: &Self) -> Result<Option<Vec<(usize, i64)>>> {
        Ok(self.difference(other)?.finite_elements())
    }

    /// Membership-evaluated window, handy for oracles: rows `lo..hi`, one
    /// `Vec<bool>` per row indexed by torsion.
    pub fn materialize(&self, lo: i64, hi: i64) -> Vec<Vec<bool>> {
        (lo..hi)
            .map(|n| {
                (0..self.ambient.order())
                    .map(|c| self.contains(c, n))
                    .collect()
            })
            .collect()
    }
}

impl std::fmt::Debug for PeriodicSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PeriodicSet[{}]", literal::to_literal(self))
    }
}

impl std::fmt::Display for PeriodicSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&literal::to_literal(self))
    }
}
