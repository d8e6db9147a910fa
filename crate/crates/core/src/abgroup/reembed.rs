//! Coordinates on a finite-index subgroup.
//!
//! For H of finite index with Hermite rows `(m, v0)` and `(0, B)`, write
//! `g0 = (v0, m)` and K = H ∩ C. Then H = K ⊕ ⟨g0⟩. K is the lattice spanned by
//! the rows of B modulo d1ℤ × … × drℤ; in the coordinates `y` with `x = y·B`
//! its relations are the rows `y` solving `y·B = d_i·e_i`. A Smith form
//! `U·R·V = diag(e)` of that relation matrix turns `y` into `z = y·V mod e`,
//! so K ≅ ⊕ ℤ/e_i. Dropping the unit factors gives the new torsion C'.
//!
//! `forward(c, n) = (z, n/m)` and `backward` runs the same steps in reverse
//! through V⁻¹.

use num_integer::Integer;

use super::intmat::{self, Row};
use super::Subgroup;
use crate::error::{Error, Result};
use crate::perset::{AmbientGroup, BitRow, GroupElement, PeriodicSet};

#[derive(Clone, Debug)]
pub struct Reembedding {
    source: AmbientGroup,
    target: AmbientGroup,
    subgroup: Subgroup,
    m: i64,
    v0: Vec<i128>,
    b: Vec<Row>,
    e: Vec<i128>,
    keep: Vec<usize>,
    v: Vec<Row>,
    v_inv: Vec<Row>,
    /// Additive order of the torsion part of g0.
    g0_order: i64,
}

/// Solve `y·B = x` for upper-triangular B with nonzero diagonal.
fn solve_upper(b: &[Row], x: &[i128]) -> Option<Row> {
    let r = x.len();
    let mut y = vec![0i128; r];
    for j in 0..r {
        let mut acc = x[j];
        for i in 0..j {
            acc -= y[i] * b[i][j];
        }
        if acc % b[j][j] != 0 {
            return None;
        }
        y[j] = acc / b[j][j];
    }
    Some(y)
}

impl Reembedding {
    pub(super) fn new(h: &Subgroup) -> Result<Self> {
        let g = h.ambient().clone();
        let r = g.rank();
        let m = h.projection();
        if m == 0 {
            return Err(Error::InfiniteIndex);
        }
        let rows = h.matrix();
        let v0: Vec<i128> = rows[0][1..].iter().map(|&x| x as i128).collect();
        let b: Vec<Row> = rows[1..]
            .iter()
            .map(|row| row[1..].iter().map(|&x| x as i128).collect())
            .collect();
        debug_assert_eq!(b.len(), r);
        let rel: Vec<Row> = (0..r)
            .map(|i| {
                let mut x = vec![0i128; r];
                x[i] = g.factors()[i] as i128;
                solve_upper(&b, &x).expect("torsion relations lie in the lattice")
            })
            .collect();
        let s = intmat::smith(&rel);
        let e = s.diag.clone();
        let keep: Vec<usize> = (0..r).filter(|&i| e[i] > 1).collect();
        let target = AmbientGroup::new(keep.iter().map(|&i| e[i] as i64).collect())?;
        let g0_order = v0
            .iter()
            .zip(g.factors())
            .map(|(&x, &d)| (d as i128 / x.gcd(&(d as i128))) as i64)
            .fold(1i64, |acc, o| acc.lcm(&o));
        Ok(Reembedding {
            source: g,
            target,
            subgroup: h.clone(),
            m,
            v0,
            b,
            e,
            keep,
            v: s.v,
            v_inv: s.v_inv,
            g0_order,
        })
    }

    pub fn source(&self) -> &AmbientGroup {
        &self.source
    }

    pub fn target(&self) -> &AmbientGroup {
        &self.target
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// Positive generator of the projection of H to ℤ.
    pub fn scale(&self) -> i64 {
        self.m
    }

    /// Index form of [`Reembedding::forward`]; `None` outside H.
    pub fn forward_idx(&self, c: usize, n: i64) -> Option<(usize, i64)> {
        if !self.subgroup.contains(c, n) {
            return None;
        }
        let k = n / self.m;
        let coords = self.source.coords(c);
        let x: Row = coords
            .iter()
            .zip(&self.v0)
            .map(|(&ci, &vi)| ci as i128 - k as i128 * vi)
            .collect();
        let y = solve_upper(&self.b, &x).expect("element of H");
        let z = intmat::vec_mat(&y, &self.v);
        let tz: Vec<i64> = self
            .keep
            .iter()
            .map(|&i| z[i].rem_euclid(self.e[i]) as i64)
            .collect();
        Some((self.target.index(&tz).expect("rank matches"), k))
    }

    pub fn backward_idx(&self, c: usize, k: i64) -> (usize, i64) {
        let r = self.source.rank();
        let tz = self.target.coords(c);
        let mut z = vec![0i128; r];
        for (slot, &i) in self.keep.iter().enumerate() {
            z[i] = tz[slot] as i128;
        }
        let y = intmat::vec_mat(&z, &self.v_inv);
        let x = intmat::vec_mat(&y, &self.b);
        let t: Vec<i64> = x
            .iter()
            .zip(&self.v0)
            .zip(self.source.factors())
            .map(|((&xi, &vi), &d)| (xi + k as i128 * vi).rem_euclid(d as i128) as i64)
            .collect();
        (self.source.index(&t).expect("rank matches"), k * self.m)
    }

    pub fn forward(&self, g: &GroupElement) -> Result<GroupElement> {
        let c = self.source.index(&g.torsion)?;
        let (c2, k) = self.forward_idx(c, g.n).ok_or_else(|| {
            Error::precondition(
                "element of the subgroup",
                format!("{g} ∉ {}", self.subgroup),
            )
        })?;
        Ok(GroupElement {
            torsion: self.target.coords(c2),
            n: k,
        })
    }

    pub fn backward(&self, g: &GroupElement) -> Result<GroupElement> {
        let c = self.target.index(&g.torsion)?;
        let (c2, n) = self.backward_idx(c, g.n);
        Ok(GroupElement {
            torsion: self.source.coords(c2),
            n,
        })
    }

    /// `S ∩ H` in the new coordinates.
    pub fn transport(&self, s: &PeriodicSet) -> Result<PeriodicSet> {
        self.source.check_same(s.ambient())?;
        let m = self.m;
        let p = s.period() as i64;
        let period = (p / p.gcd(&m)) * self.g0_order;
        let (lo, hi) = s.window();
        let k_lo = lo.div_euclid(m) - 1;
        let k_hi = -((-hi).div_euclid(m)) + 1;
        let member = |c: usize, k: i64| {
            let (c0, n) = self.backward_idx(c, k);
            s.contains(c0, n)
        };
        let ord = self.target.order();
        let per = period as usize;
        let mut right = BitRow::new(ord * per);
        let mut left = BitRow::new(ord * per);
        for c in 0..ord {
            for r in 0..period {
                let kr = k_hi + (r - k_hi).rem_euclid(period);
                if member(c, kr) {
                    right.set(c * per + r as usize);
                }
                let kl = k_lo - 1 - (k_lo - 1 - r).rem_euclid(period);
                if member(c, kl) {
                    left.set(c * per + r as usize);
                }
            }
        }
        Ok(PeriodicSet::build(
            &self.target,
            per,
            k_lo,
            k_hi,
            right,
            left,
            member,
        ))
    }

    /// Image in the source ambient of a set in the new coordinates.
    pub fn pullback(&self, s: &PeriodicSet) -> Result<PeriodicSet> {
        self.target.check_same(s.ambient())?;
        let m = self.m;
        // Period in n: k-period times m, and the torsion lift cycles with g0.
        let per = (s.period() as i64 * self.g0_order * m) as usize;
        let (lo, hi) = s.window();
        let (n_lo, n_hi) = (lo * m - m, hi * m + m);
        let member = |c: usize, n: i64| {
            self.forward_idx(c, n)
                .is_some_and(|(c2, k)| s.contains(c2, k))
        };
        let ord = self.source.order();
        let mut right = BitRow::new(ord * per);
        let mut left = BitRow::new(ord * per);
        let pi = per as i64;
        for c in 0..ord {
            for r in 0..pi {
                if member(c, n_hi + (r - n_hi).rem_euclid(pi)) {
                    right.set(c * per + r as usize);
                }
                if member(c, n_lo - 1 - (n_lo - 1 - r).rem_euclid(pi)) {
                    left.set(c * per + r as usize);
                }
            }
        }
        Ok(PeriodicSet::build(
            &self.source,
            per,
            n_lo,
            n_hi,
            right,
            left,
            member,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perset::literal::{parse, parse_in};

    #[test]
    fn even_integers() {
        let z = AmbientGroup::integers();
        let h = Subgroup::multiples(&z, 2);
        let re = h.reembed().unwrap();
        assert_eq!(re.target().order(), 1);
        assert_eq!(
            re.forward(&GroupElement::integer(6)).unwrap(),
            GroupElement::integer(3)
        );
        assert!(re.forward(&GroupElement::integer(3)).is_err());
        let three = Subgroup::multiples(&z, 3).reembed().unwrap();
        let s = three.transport(&parse("0+3N").unwrap()).unwrap();
        assert_eq!(s, parse("0+1N").unwrap());
    }

    #[test]
    fn diagonal_subgroup_of_c2() {
        let g = AmbientGroup::new(vec![2]).unwrap();
        let h = Subgroup::generated_by(&g, [(1, 1)]).unwrap();
        assert_eq!(h.index(), Some(2));
        let re = h.reembed().unwrap();
        assert_eq!(re.target().order(), 1);
        let x = g.element(&[1], 1).unwrap();
        assert_eq!(re.forward(&x).unwrap(), GroupElement::integer(1));
        assert_eq!(re.backward(&GroupElement::integer(1)).unwrap(), x);
        let t = parse_in("(*)0+1N", Some(&g)).unwrap();
        assert_eq!(re.transport(&t).unwrap(), parse("0+1N").unwrap());
    }

    #[test]
    fn round_trip_with_torsion() {
        let g = AmbientGroup::new(vec![2, 4]).unwrap();
        let h = Subgroup::generated_by(
            &g,
            [
                (g.index(&[1, 1]).unwrap(), 2),
                (g.index(&[0, 2]).unwrap(), 0),
            ],
        )
        .unwrap();
        let re = h.reembed().unwrap();
        for c in 0..g.order() {
            for n in -12..12 {
                if let Some((c2, k)) = re.forward_idx(c, n) {
                    assert_eq!(re.backward_idx(c2, k), (c, n));
                }
            }
        }
        let s = parse_in("(*){-3, 0, 1, 5}, (1,1)2+4N", Some(&g)).unwrap();
        let back = re.pullback(&re.transport(&s).unwrap()).unwrap();
        let inside = PeriodicSet::full(&g);
        let hs = inside
            .elements_in(-40, 40)
            .into_iter()
            .filter(|&(c, n)| h.contains(c, n) && s.contains(c, n))
            .collect::<Vec<_>>();
        assert_eq!(back.elements_in(-40, 40), hs);
    }
}
