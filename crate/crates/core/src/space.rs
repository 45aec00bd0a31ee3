//! Z2-graded spaces with ordered bases, and tensor words over them.
//!
//! Basis indices are 1-based and the even vectors come first, so the
//! standard `2|1` space has `v1, v2` even and `v3` odd.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u32) -> Parity {
        if b.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn flip(self) -> Parity {
        Parity::from_bit(self.bit() + 1)
    }

    /// `(-1)^{self * other}` as `true` when the sign is negative.
    pub fn koszul(self, other: Parity) -> bool {
        self == Parity::Odd && other == Parity::Odd
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct GradedSpace {
    even: usize,
    odd: usize,
}

impl GradedSpace {
    pub fn new(even: usize, odd: usize) -> Result<Self> {
        if even + odd == 0 {
            return Err(Error::EmptySpace);
        }
        Ok(GradedSpace { even, odd })
    }

    /// The `2|1` space everything in the catalog lives on.
    pub const fn standard() -> Self {
        GradedSpace { even: 2, odd: 1 }
    }

    pub fn even_dim(&self) -> usize {
        self.even
    }

    pub fn odd_dim(&self) -> usize {
        self.odd
    }

    pub fn dim(&self) -> usize {
        self.even + self.odd
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.dim() {
            return Err(Error::IndexOutOfRange {
                index: i,
                dim: self.dim(),
            });
        }
        Ok(())
    }

    pub fn parity(&self, i: usize) -> Result<Parity> {
        self.check_index(i)?;
        Ok(self.parity_unchecked(i))
    }

    pub(crate) fn parity_unchecked(&self, i: usize) -> Parity {
        if i <= self.even {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        w.iter().try_for_each(|i| self.check_index(i))
    }

    pub fn word_parity(&self, w: &Word) -> Result<Parity> {
        self.check_word(w)?;
        Ok(self.word_parity_unchecked(w))
    }

    pub(crate) fn word_parity_unchecked(&self, w: &Word) -> Parity {
        Parity::from_bit(w.iter().filter(|&i| i > self.even).count() as u32)
    }

    /// All `dim^n` words of length `n` in lexicographic order.
    pub fn enumerate_words(&self, n: usize) -> Vec<Word> {
        let dim = self.dim();
        let mut out = Vec::with_capacity(dim.pow(n as u32));
        let mut cur = vec![1u8; n];
        loop {
            out.push(Word(cur.clone()));
            let mut k = n;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if (cur[k] as usize) < dim {
                    cur[k] += 1;
                    for c in cur.iter_mut().skip(k + 1) {
                        *c = 1;
                    }
                    break;
                }
            }
        }
    }

    /// Dimensions `(even, odd)` of `C^n = Hom(W^n, W)`.
    pub fn cochain_dims(&self, n: usize) -> (usize, usize) {
        // Words of length n split by parity: (E+O)^n and (E-O)^n give the
        // sum and difference of the even and odd counts.
        let (e, o) = (self.even as i128, self.odd as i128);
        let total = (e + o).pow(n as u32);
        let diff = (e - o).pow(n as u32);
        let words_even = (total + diff) / 2;
        let words_odd = (total - diff) / 2;
        let even = words_even * e + words_odd * o;
        let odd = words_even * o + words_odd * e;
        (even as usize, odd as usize)
    }
}

impl Default for GradedSpace {
    fn default() -> Self {
        GradedSpace::standard()
    }
}

impl fmt::Display for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.even, self.odd)
    }
}

/// A multi-index `(i1, ..., in)`, possibly empty. Ordered by length first,
/// then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(indices: Vec<u8>) -> Self {
        Word(indices)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&i| i as usize)
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn get(&self, k: usize) -> usize {
        self.0[k] as usize
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `(I, J, k)`: replaces the letter at 0-based position `k` with `J`.
    pub fn insert_at(&self, k: usize, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0[..k]);
        v.extend_from_slice(&other.0);
        v.extend_from_slice(&self.0[k + 1..]);
        Word(v)
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }
}

impl From<&[u8]> for Word {
    fn from(v: &[u8]) -> Self {
        Word(v.to_vec())
    }
}

impl<const N: usize> From<[u8; N]> for Word {
    fn from(v: [u8; N]) -> Self {
        Word(v.to_vec())
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
