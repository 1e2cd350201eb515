//! The symmetric group `S_n` in one-line notation, words in the simple
//! transpositions, inversion length and Bruhat order.
//!
//! All indices in the public interface are 1-based: `w.get(i)` is `w(i)` and
//! letter `i` of a [`Word`] stands for the transposition `s_i = (i, i+1)`.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest rank whose entries fit the compact storage.
pub const MAX_RANK: usize = u8::MAX as usize;

/// A permutation of `{1, ..., n}` stored in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    entries: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_RANK, "rank {n} exceeds {MAX_RANK}");
        Permutation {
            entries: (1..=n as u8).collect(),
        }
    }

    /// Builds a permutation from its one-line notation `(w(1), ..., w(n))`.
    pub fn from_one_line(entries: &[usize]) -> Result<Self> {
        let n = entries.len();
        if n > MAX_RANK {
            return Err(Error::UnsupportedRank(n));
        }
        let mut seen = vec![false; n];
        for &e in entries {
            if e == 0 || e > n || seen[e - 1] {
                return Err(Error::NotAPermutation {
                    entries: entries.to_vec(),
                    n,
                });
            }
            seen[e - 1] = true;
        }
        Ok(Permutation {
            entries: entries.iter().map(|&e| e as u8).collect(),
        })
    }

    /// The simple transposition `s_i` in `S_n`.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::LetterOutOfRange {
                letter: i,
                max: n.saturating_sub(1),
            });
        }
        let mut w = Self::identity(n);
        w.entries.swap(i - 1, i);
        Ok(w)
    }

    /// The longest element `w_0 = (n, n-1, ..., 1)`.
    pub fn longest(n: usize) -> Self {
        assert!(n <= MAX_RANK, "rank {n} exceeds {MAX_RANK}");
        Permutation {
            entries: (1..=n as u8).rev().collect(),
        }
    }

    /// Every element of `S_n`, in lexicographic order of one-line notation.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (1..=n as u8)
            .permutations(n)
            .map(|entries| Permutation { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    /// `w(i)` for `1 <= i <= n`.
    pub fn get(&self, i: usize) -> usize {
        self.entries[i - 1] as usize
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.entries.iter().map(|&e| e as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(i, &e)| e as usize == i + 1)
    }

    /// `(u ∘ w)(i) = u(w(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::RankMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(Permutation {
            entries: other
                .entries
                .iter()
                .map(|&j| self.entries[j as usize - 1])
                .collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut entries = vec![0u8; self.n()];
        for (i, &e) in self.entries.iter().enumerate() {
            entries[e as usize - 1] = (i + 1) as u8;
        }
        Permutation { entries }
    }

    /// Inversion count, which equals the Coxeter length.
    pub fn length(&self) -> usize {
        let e = &self.entries;
        (0..e.len())
            .map(|i| e[i + 1..].iter().filter(|&&x| x < e[i]).count())
            .sum()
    }

    /// Position `w^{-1}(value)` of a value in one-line notation.
    pub(crate) fn position_of(&self, value: usize) -> usize {
        self.entries
            .iter()
            .position(|&e| e as usize == value)
            .expect("value in range")
            + 1
    }

    /// Whether `s_i` is a left descent: `ℓ(s_i w) < ℓ(w)`, i.e. `i+1` appears
    /// before `i` in one-line notation.
    pub fn has_left_descent(&self, i: usize) -> bool {
        self.position_of(i) > self.position_of(i + 1)
    }

    /// Whether `s_i` is a right descent: `w(i) > w(i+1)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.entries[i - 1] > self.entries[i]
    }

    /// `s_i ∘ w`: swaps the values `i` and `i+1`.
    pub fn left_multiply_simple(&self, i: usize) -> Permutation {
        let (a, b) = (i as u8, i as u8 + 1);
        Permutation {
            entries: self
                .entries
                .iter()
                .map(|&e| {
                    if e == a {
                        b
                    } else if e == b {
                        a
                    } else {
                        e
                    }
                })
                .collect(),
        }
    }

    /// `w ∘ s_i`: swaps the positions `i` and `i+1`.
    pub fn right_multiply_simple(&self, i: usize) -> Permutation {
        let mut entries = self.entries.clone();
        entries.swap(i - 1, i);
        Permutation { entries }
    }

    /// The lexicographically smallest reduced word, built by repeatedly
    /// stripping the smallest left descent.
    pub fn canonical_reduced_word(&self) -> Word {
        let n = self.n();
        let mut letters = Vec::with_capacity(self.length());
        let mut rest = self.clone();
        while let Some(i) = (1..n).find(|&i| rest.has_left_descent(i)) {
            letters.push(i as u8);
            rest = rest.left_multiply_simple(i);
        }
        Word { letters, n }
    }

    /// Bruhat comparison `self <= w`.
    ///
    /// Walks the canonical reduced word of `w` letter by letter: with
    /// `s = s_{b_1}` a left descent of `w`, `u <= w` iff `min(u, s u) <= s w`.
    /// This is the greedy form of the subword criterion.
    pub fn bruhat_leq(&self, w: &Permutation) -> Result<bool> {
        if self.n() != w.n() {
            return Err(Error::RankMismatch {
                left: self.n(),
                right: w.n(),
            });
        }
        if self.length() > w.length() {
            return Ok(false);
        }
        let mut u = self.clone();
        for &b in &w.canonical_reduced_word().letters {
            let b = b as usize;
            if u.has_left_descent(b) {
                u = u.left_multiply_simple(b);
            }
        }
        Ok(u.is_identity())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.entries.iter().join(","))
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_line().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<usize>::deserialize(deserializer)?;
        Permutation::from_one_line(&entries).map_err(serde::de::Error::custom)
    }
}

/// A word `(b_1, ..., b_k)` in the simple transpositions of `S_n`, read as
/// the product `s_{b_1} s_{b_2} ... s_{b_k}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<u8>,
    n: usize,
}

impl Word {
    pub fn new(n: usize, letters: &[usize]) -> Result<Self> {
        if n > MAX_RANK {
            return Err(Error::UnsupportedRank(n));
        }
        if let Some(&bad) = letters.iter().find(|&&b| b == 0 || b >= n) {
            return Err(Error::LetterOutOfRange {
                letter: bad,
                max: n.saturating_sub(1),
            });
        }
        Ok(Word {
            letters: letters.iter().map(|&b| b as u8).collect(),
            n,
        })
    }

    pub fn empty(n: usize) -> Self {
        Word {
            letters: Vec::new(),
            n,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter `b_i` for `1 <= i <= len`.
    pub fn letter(&self, i: usize) -> usize {
        self.letters[i - 1] as usize
    }

    pub fn letters(&self) -> Vec<usize> {
        self.letters.iter().map(|&b| b as usize).collect()
    }

    pub fn evaluate(&self) -> Permutation {
        self.letters
            .iter()
            .fold(Permutation::identity(self.n), |w, &b| {
                w.right_multiply_simple(b as usize)
            })
    }

    pub fn is_reduced(&self) -> bool {
        self.len() == self.evaluate().length()
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.letters.iter().join(","))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.letters().serialize(serializer)
    }
}
