//! Fixed-length bitsets used for window columns and residue patterns.
//!
//! The only non-trivial kernel here is [`BitRow::or_shifted`], which ORs a
//! shifted copy of another row into `self` one machine word at a time. The
//! finite part of a Minkowski sum is a union of such shifted copies, so this is
//! where `h_fold` spends most of its time.

use std::fmt;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitRow {
    len: usize,
    words: Vec<u64>,
}

impl BitRow {
    pub fn new(len: usize) -> Self {
        BitRow {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn assign(&mut self, i: usize, value: bool) {
        if value {
            self.set(i);
        } else {
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    pub fn first_one(&self) -> Option<usize> {
        self.iter_ones().next()
    }

    pub fn last_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(wi, &w)| wi * WORD + (WORD - 1 - w.leading_zeros() as usize))
    }

    /// `self |= other << shift`, truncated to `self.len()`.
    pub fn or_shifted(&mut self, other: &BitRow, shift: usize) {
        let word_shift = shift / WORD;
        let bit_shift = shift % WORD;
        let n = self.words.len();
        if word_shift >= n {
            return;
        }
        for (i, &w) in other.words.iter().enumerate() {
            if w == 0 {
                continue;
            }
            let dst = i + word_shift;
            if dst >= n {
                break;
            }
            if bit_shift == 0 {
                self.words[dst] |= w;
            } else {
                self.words[dst] |= w << bit_shift;
                if dst + 1 < n {
                    self.words[dst + 1] |= w >> (WORD - bit_shift);
                }
            }
        }
        self.clear_tail();
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for BitRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shifted_or_crosses_word_boundaries() {
        let mut a = BitRow::new(200);
        let mut b = BitRow::new(100);
        for i in [0, 5, 63, 64, 99] {
            b.set(i);
        }
        a.or_shifted(&b, 70);
        let ones: Vec<_> = a.iter_ones().collect();
        assert_eq!(ones, vec![70, 75, 133, 134, 169]);
        a.or_shifted(&b, 150);
        assert!(a.get(150) && a.get(155) && !a.get(199));
        assert_eq!(a.last_one(), Some(169));
    }

    #[test]
    fn truncates_to_length() {
        let mut a = BitRow::new(10);
        let mut b = BitRow::new(10);
        b.set(9);
        a.or_shifted(&b, 3);
        assert!(a.is_empty());
        assert_eq!(a.count_ones(), 0);
    }
}
