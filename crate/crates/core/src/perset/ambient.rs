use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// The group C ⊕ ℤ with C = ℤ/d1 ⊕ … ⊕ ℤ/dr and d1 | d2 | … | dr.
///
/// Torsion elements are indexed `0..order()` in mixed radix with c1 most
/// significant, so index order is lexicographic order on tuples. Addition
/// and negation go through precomputed tables.
#[derive(Clone)]
pub struct AmbientGroup {
    inner: Arc<Inner>,
}

struct Inner {
    factors: Vec<i64>,
    order: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
}

impl AmbientGroup {
    pub fn new(factors: Vec<i64>) -> Result<Self> {
        for (i, &d) in factors.iter().enumerate() {
            if d < 2 {
                return Err(Error::InvalidAmbient(format!(
                    "torsion factor {d} is smaller than 2"
                )));
            }
            if i > 0 && d % factors[i - 1] != 0 {
                return Err(Error::InvalidAmbient(format!(
                    "{} does not divide {d}",
                    factors[i - 1]
                )));
            }
        }
        let order = factors
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d as usize))
            .filter(|&o| o <= 1 << 12)
            .ok_or_else(|| Error::InvalidAmbient("torsion part too large".into()))?;
        let mut g = Inner {
            factors,
            order,
            add: Vec::new(),
            neg: Vec::new(),
        };
        let mut add = vec![0u32; order * order];
        let mut neg = vec![0u32; order];
        for a in 0..order {
            let ca = g.decode(a);
            let na: Vec<i64> = ca
                .iter()
                .zip(&g.factors)
                .map(|(&x, &d)| (d - x) % d)
                .collect();
            neg[a] = g.encode(&na) as u32;
            for b in 0..order {
                let cb = g.decode(b);
                let s: Vec<i64> = ca
                    .iter()
                    .zip(&cb)
                    .zip(&g.factors)
                    .map(|((&x, &y), &d)| (x + y) % d)
                    .collect();
                add[a * order + b] = g.encode(&s) as u32;
            }
        }
        g.add = add;
        g.neg = neg;
        Ok(AmbientGroup { inner: Arc::new(g) })
    }

    /// Plain ℤ.
    pub fn integers() -> Self {
        Self::new(Vec::new()).expect("trivial torsion is valid")
    }

    pub fn factors(&self) -> &[i64] {
        &self.inner.factors
    }

    pub fn rank(&self) -> usize {
        self.inner.factors.len()
    }

    /// |C|.
    pub fn order(&self) -> usize {
        self.inner.order
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.inner.add[a * self.inner.order + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.inner.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Torsion tuple of an index.
    pub fn coords(&self, idx: usize) -> Vec<i64> {
        self.inner.decode(idx)
    }

    /// Index of a torsion tuple; coordinates are reduced modulo the factors.
    pub fn index(&self, coords: &[i64]) -> Result<usize> {
        if coords.len() != self.rank() {
            return Err(Error::ElementOutsideAmbient {
                element: format!("{coords:?}"),
                ambient: self.to_string(),
            });
        }
        let reduced: Vec<i64> = coords
            .iter()
            .zip(self.factors())
            .map(|(&c, &d)| c.rem_euclid(d))
            .collect();
        Ok(self.inner.encode(&reduced))
    }

    /// Additive order of a torsion element.
    pub fn element_order(&self, idx: usize) -> usize {
        let mut k = 1;
        let mut acc = idx;
        while acc != 0 {
            acc = self.add(acc, idx);
            k += 1;
        }
        k
    }

    /// `k·c` for a torsion index and any integer k.
    pub fn mul(&self, idx: usize, k: i64) -> usize {
        let c = self.coords(idx);
        let v: Vec<i64> = c
            .iter()
            .zip(self.factors())
            .map(|(&x, &d)| ((x as i128 * k as i128).rem_euclid(d as i128)) as i64)
            .collect();
        self.inner.encode(&v)
    }

    pub fn element(&self, torsion: &[i64], n: i64) -> Result<GroupElement> {
        let idx = self.index(torsion)?;
        Ok(GroupElement {
            torsion: self.coords(idx),
            n,
        })
    }

    pub(crate) fn check_same(&self, other: &AmbientGroup) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AmbientMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl Inner {
    fn decode(&self, mut idx: usize) -> Vec<i64> {
        let mut out = vec![0; self.factors.len()];
        for i in (0..self.factors.len()).rev() {
            let d = self.factors[i] as usize;
            out[i] = (idx % d) as i64;
            idx /= d;
        }
        out
    }

    fn encode(&self, c: &[i64]) -> usize {
        c.iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&x, &d)| acc * d as usize + x as usize)
    }
}

impl PartialEq for AmbientGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.factors == other.inner.factors
    }
}

impl Eq for AmbientGroup {}

impl std::hash::Hash for AmbientGroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.inner.factors.hash(state);
    }
}

impl fmt::Debug for AmbientGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AmbientGroup({self})")
    }
}

impl fmt::Display for AmbientGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in self.factors() {
            write!(f, "C{d} ⊕ ")?;
        }
        f.write_str("ℤ")
    }
}

/// An element (c1,…,cr, n) of the ambient group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub torsion: Vec<i64>,
    pub n: i64,
}

impl GroupElement {
    pub fn integer(n: i64) -> Self {
        GroupElement {
            torsion: Vec::new(),
            n,
        }
    }
}

/// Serialized as its display string, e.g. `"5"` or `"(1,5)"`.
impl serde::Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.torsion.is_empty() {
            return write!(f, "{}", self.n);
        }
        f.write_str("(")?;
        for c in &self.torsion {
            write!(f, "{c},")?;
        }
        write!(f, "{})", self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_broken_chains() {
        assert!(AmbientGroup::new(vec![2, 3]).is_err());
        assert!(AmbientGroup::new(vec![1]).is_err());
        assert!(AmbientGroup::new(vec![2, 4]).is_ok());
    }

    #[test]
    fn index_is_lexicographic() {
        let g = AmbientGroup::new(vec![2, 4]).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.index(&[1, 0]).unwrap(), 4);
        assert_eq!(g.coords(5), vec![1, 1]);
        let a = g.index(&[1, 3]).unwrap();
        let b = g.index(&[1, 2]).unwrap();
        assert_eq!(g.coords(g.add(a, b)), vec![0, 1]);
        assert_eq!(g.coords(g.neg(a)), vec![1, 1]);
        assert_eq!(g.element_order(g.index(&[0, 2]).unwrap()), 2);
        assert_eq!(g.mul(a, -1), g.neg(a));
    }
}
