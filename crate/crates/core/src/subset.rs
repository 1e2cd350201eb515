//! Subsets of `{1, ..., n-1}` and the fixed points of the Peterson variety
//! they index.
//!
//! A subset `A` corresponds to the involution `w_A`, block antidiagonal with
//! one block per maximal consecutive string of `A`. The same subset also
//! indexes the basis element `v_A`, the increasing product of the `s_i` with
//! `i ∈ A`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::permutation::{Permutation, Word};

/// Largest rank for which subsets of `{1, ..., n-1}` fit the bitmask.
pub const MAX_SUBSET_RANK: usize = 64;

/// A subset of `{1, ..., n-1}`.
///
/// Stored as a bitmask with bit `i-1` standing for `i`. Subsets are ordered
/// by cardinality first and then lexicographically by their sorted members,
/// which is the order used for triangular solves and for output.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexSubset {
    mask: u64,
    n: usize,
}

/// The consecutive run `{lo, lo+1, ..., hi}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConsecutiveString {
    pub lo: usize,
    pub hi: usize,
}

impl ConsecutiveString {
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn contains(&self, j: usize) -> bool {
        self.lo <= j && j <= self.hi
    }
}

impl IndexSubset {
    pub fn new(n: usize, members: &[usize]) -> Result<Self> {
        if n == 0 || n > MAX_SUBSET_RANK {
            return Err(Error::UnsupportedRank(n));
        }
        let mut mask = 0u64;
        for &m in members {
            if m == 0 || m >= n {
                return Err(Error::SubsetElementOutOfRange {
                    element: m,
                    max: n - 1,
                });
            }
            mask |= 1 << (m - 1);
        }
        Ok(IndexSubset { mask, n })
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, &[]).expect("supported rank")
    }

    /// `{1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        let members: Vec<usize> = (1..n).collect();
        Self::new(n, &members).expect("supported rank")
    }

    /// Subset whose bit `i-1` is set exactly when `i` is a member.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        if n == 0 || n > MAX_SUBSET_RANK {
            return Err(Error::UnsupportedRank(n));
        }
        let allowed = (1u64 << (n - 1)) - 1;
        if mask & !allowed != 0 {
            let element = 64 - (mask & !allowed).leading_zeros() as usize;
            return Err(Error::SubsetElementOutOfRange {
                element,
                max: n - 1,
            });
        }
        Ok(IndexSubset { mask, n })
    }

    /// All `2^{n-1}` subsets, in bitmask order.
    pub fn all(n: usize) -> impl Iterator<Item = IndexSubset> {
        assert!(
            (1..=32).contains(&n),
            "enumerating subsets needs 1 <= n <= 32"
        );
        (0u64..1 << (n - 1)).map(move |mask| IndexSubset { mask, n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i < self.n && self.mask & (1 << (i - 1)) != 0
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        (1..self.n).filter(move |&i| self.contains(i))
    }

    pub fn is_subset_of(&self, other: &IndexSubset) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn union(&self, other: &IndexSubset) -> IndexSubset {
        debug_assert_eq!(self.n, other.n);
        IndexSubset {
            mask: self.mask | other.mask,
            n: self.n,
        }
    }

    pub fn with(&self, i: usize) -> Result<IndexSubset> {
        Ok(self.union(&IndexSubset::new(self.n, &[i])?))
    }

    pub fn without(&self, i: usize) -> IndexSubset {
        if i == 0 || i >= self.n {
            return *self;
        }
        IndexSubset {
            mask: self.mask & !(1 << (i - 1)),
            n: self.n,
        }
    }

    /// Whether some member of `self` and some member of `other` differ by 1.
    pub fn is_adjacent_to(&self, other: &IndexSubset) -> bool {
        self.mask & (other.mask << 1) != 0 || other.mask & (self.mask << 1) != 0
    }

    /// The maximal consecutive strings of the subset, in increasing order.
    pub fn strings(&self) -> Vec<ConsecutiveString> {
        let mut out = Vec::new();
        let mut members = self.members().peekable();
        while let Some(lo) = members.next() {
            let mut hi = lo;
            while members.peek() == Some(&(hi + 1)) {
                hi = members.next().expect("peeked");
            }
            out.push(ConsecutiveString { lo, hi });
        }
        out
    }

    /// The maximal consecutive string containing `j`.
    pub fn string_of(&self, j: usize) -> Result<ConsecutiveString> {
        if !self.contains(j) {
            return Err(Error::NotAMember { element: j });
        }
        let mut lo = j;
        while lo > 1 && self.contains(lo - 1) {
            lo -= 1;
        }
        let mut hi = j;
        while self.contains(hi + 1) {
            hi += 1;
        }
        Ok(ConsecutiveString { lo, hi })
    }

    /// Largest element of the maximal string containing `j`.
    pub fn head(&self, j: usize) -> Result<usize> {
        Ok(self.string_of(j)?.hi)
    }

    /// Smallest element of the maximal string containing `j`.
    pub fn tail(&self, j: usize) -> Result<usize> {
        Ok(self.string_of(j)?.lo)
    }

    /// The fixed point `w_A`: an involution reversing each block
    /// `{lo, ..., hi+1}` for every maximal string `[lo, hi]` of `A` and
    /// fixing everything else.
    pub fn fixed_point(&self) -> Permutation {
        let mut entries: Vec<usize> = (1..=self.n).collect();
        for s in self.strings() {
            entries[s.lo - 1..=s.hi].reverse();
        }
        Permutation::from_one_line(&entries).expect("block reversal is a permutation")
    }

    /// Recovers `A` from a Peterson fixed point `w`, i.e. a permutation with
    /// `w^{-1}(i) <= w^{-1}(i+1) + 1` for all `i < n`.
    pub fn of_fixed_point(w: &Permutation) -> Result<IndexSubset> {
        let n = w.n();
        let inv = w.inverse();
        let mut members = Vec::new();
        for i in 1..n {
            let (a, b) = (inv.get(i), inv.get(i + 1));
            if a > b + 1 {
                return Err(Error::NotAPetersonFixedPoint { index: i });
            }
            if a == b + 1 {
                members.push(i);
            }
        }
        IndexSubset::new(n, &members)
    }

    /// The fixed reduced word of `w_A`: for each maximal string `[lo, hi]`
    /// in increasing order, the runs `(lo, ..., hi)(lo, ..., hi-1) ... (lo)`.
    pub fn fixed_point_word(&self) -> Word {
        let mut letters = Vec::new();
        for s in self.strings() {
            for top in (s.lo..=s.hi).rev() {
                letters.extend(s.lo..=top);
            }
        }
        Word::new(self.n, &letters).expect("letters lie in 1..n-1")
    }

    /// The word of `v_A`: the members of `A` in increasing order.
    pub fn basis_word(&self) -> Word {
        let letters: Vec<usize> = self.members().collect();
        Word::new(self.n, &letters).expect("letters lie in 1..n-1")
    }

    /// The permutation `v_A`.
    pub fn basis_element(&self) -> Permutation {
        self.basis_word().evaluate()
    }

    /// Members joined by commas without spaces; empty string for `∅`.
    pub fn to_csv(&self) -> String {
        self.members().join(",")
    }

    /// Parses a comma-separated member list. Empty input is the empty set.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}');
        let mut members = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let m = usize::from_str(part).map_err(|_| {
                Error::Precondition(format!("subset element {part:?} is not an integer"))
            })?;
            members.push(m);
        }
        IndexSubset::new(n, &members)
    }
}

impl Ord for IndexSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.len().cmp(&other.len()))
            .then_with(|| self.members().cmp(other.members()))
    }
}

impl PartialOrd for IndexSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "∅")
        } else {
            write!(f, "{{{}}}", self.to_csv())
        }
    }
}

impl Serialize for IndexSubset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.members())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, m: &[usize]) -> IndexSubset {
        IndexSubset::new(n, m).unwrap()
    }

    fn cs(lo: usize, hi: usize) -> ConsecutiveString {
        ConsecutiveString { lo, hi }
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(set(7, &[1, 2, 3, 5]).strings(), vec![cs(1, 3), cs(5, 5)]);
        assert!(set(7, &[]).strings().is_empty());
        assert_eq!(
            set(6, &[1, 3, 5]).strings(),
            vec![cs(1, 1), cs(3, 3), cs(5, 5)]
        );
    }

    #[test]
    fn decomposition_is_maximal_and_covers() {
        for n in 1..=9 {
            for a in IndexSubset::all(n) {
                let strings = a.strings();
                let union: Vec<usize> = strings.iter().flat_map(|s| s.lo..=s.hi).collect();
                assert_eq!(union, a.members().collect::<Vec<_>>());
                for s in &strings {
                    assert!(!a.contains(s.lo - 1) && !a.contains(s.hi + 1));
                }
                for w in strings.windows(2) {
                    assert!(w[0].hi + 1 < w[1].lo);
                }
            }
        }
    }

    #[test]
    fn head_and_tail_table() {
        let a = set(7, &[1, 2, 3, 5, 6]);
        let tails: Vec<usize> = a.members().map(|j| a.tail(j).unwrap()).collect();
        let heads: Vec<usize> = a.members().map(|j| a.head(j).unwrap()).collect();
        assert_eq!(tails, vec![1, 1, 1, 5, 5]);
        assert_eq!(heads, vec![3, 3, 3, 6, 6]);
        let single = set(7, &[4]);
        assert_eq!((single.tail(4).unwrap(), single.head(4).unwrap()), (4, 4));
        assert_eq!(a.head(4).unwrap_err(), Error::NotAMember { element: 4 });
    }

    #[test]
    fn fixed_point_examples() {
        let w = set(7, &[1, 2, 3, 5]).fixed_point();
        assert_eq!(w.one_line(), vec![4, 3, 2, 1, 6, 5, 7]);
        assert!(set(5, &[]).fixed_point().is_identity());
        assert_eq!(IndexSubset::full(6).fixed_point(), Permutation::longest(6));
    }

    #[test]
    fn subset_of_fixed_point_examples() {
        let w = Permutation::from_one_line(&[4, 3, 2, 1, 6, 5, 7]).unwrap();
        assert_eq!(
            IndexSubset::of_fixed_point(&w).unwrap(),
            set(7, &[1, 2, 3, 5])
        );
        assert!(IndexSubset::of_fixed_point(&Permutation::identity(4))
            .unwrap()
            .is_empty());
        let bad = Permutation::from_one_line(&[2, 3, 1]).unwrap();
        assert_eq!(
            IndexSubset::of_fixed_point(&bad).unwrap_err(),
            Error::NotAPetersonFixedPoint { index: 1 }
        );
    }

    #[test]
    fn fixed_point_round_trip_and_involution() {
        for n in 1..=8 {
            for a in IndexSubset::all(n) {
                let w = a.fixed_point();
                assert_eq!(IndexSubset::of_fixed_point(&w).unwrap(), a);
                assert!(w.compose(&w).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn fixed_points_are_exactly_the_condition() {
        for n in 1..=6 {
            let count = Permutation::all(n)
                .filter(|w| IndexSubset::of_fixed_point(w).is_ok())
                .count();
            assert_eq!(count, 1 << (n - 1));
        }
    }

    #[test]
    fn fixed_point_word_examples() {
        assert_eq!(
            set(7, &[1, 2, 3]).fixed_point_word().letters(),
            vec![1, 2, 3, 1, 2, 1]
        );
        assert_eq!(
            set(7, &[1, 2, 3, 5]).fixed_point_word().letters(),
            vec![1, 2, 3, 1, 2, 1, 5]
        );
        assert_eq!(set(7, &[4]).fixed_point_word().letters(), vec![4]);
    }

    #[test]
    fn fixed_point_word_is_reduced_for_w_a() {
        for n in 1..=8 {
            for a in IndexSubset::all(n) {
                let b = a.fixed_point_word();
                let expected: usize = a
                    .strings()
                    .iter()
                    .map(|s| s.len() * (s.len() + 1) / 2)
                    .sum();
                assert_eq!(b.len(), expected);
                assert!(b.is_reduced());
                assert_eq!(b.evaluate(), a.fixed_point());
            }
        }
    }

    #[test]
    fn basis_word_examples() {
        assert_eq!(
            set(7, &[1, 2, 3, 5]).basis_word().letters(),
            vec![1, 2, 3, 5]
        );
        assert!(set(7, &[]).basis_word().is_empty());
        assert!(set(7, &[]).basis_element().is_identity());
        assert_eq!(set(7, &[2]).basis_word().letters(), vec![2]);
        for a in IndexSubset::all(7) {
            assert_eq!(a.basis_element().length(), a.len());
        }
    }

    #[test]
    fn containment_matches_bruhat_order() {
        for n in 1..=6 {
            for a in IndexSubset::all(n) {
                let v = a.basis_element();
                for b in IndexSubset::all(n) {
                    let leq = v.bruhat_leq(&b.fixed_point()).unwrap();
                    assert_eq!(leq, a.is_subset_of(&b), "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn parse_and_render() {
        let a = IndexSubset::parse(7, "1,2,3,5").unwrap();
        assert_eq!(a, set(7, &[1, 2, 3, 5]));
        assert_eq!(a.to_csv(), "1,2,3,5");
        assert_eq!(IndexSubset::parse(7, "").unwrap(), IndexSubset::empty(7));
        assert_eq!(
            IndexSubset::parse(7, "1,7").unwrap_err(),
            Error::SubsetElementOutOfRange { element: 7, max: 6 }
        );
        assert!(IndexSubset::parse(7, "1,x").is_err());
        assert_eq!(serde_json::to_string(&a).unwrap(), "[1,2,3,5]");
        assert_eq!(format!("{a}"), "{1,2,3,5}");
        assert_eq!(format!("{}", IndexSubset::empty(3)), "∅");
    }

    #[test]
    fn order_is_by_size_then_lexicographic() {
        let mut all: Vec<_> = IndexSubset::all(4).collect();
        all.sort();
        let rendered: Vec<String> = all.iter().map(|a| a.to_csv()).collect();
        assert_eq!(
            rendered,
            vec!["", "1", "2", "3", "1,2", "1,3", "2,3", "1,2,3"]
        );
    }

    #[test]
    fn adjacency() {
        assert!(set(7, &[1, 2]).is_adjacent_to(&set(7, &[3])));
        assert!(set(7, &[4]).is_adjacent_to(&set(7, &[3])));
        assert!(!set(7, &[1, 2, 3]).is_adjacent_to(&set(7, &[5, 6])));
        assert_eq!(
            IndexSubset::from_mask(4, 0b1000).unwrap_err(),
            Error::SubsetElementOutOfRange { element: 4, max: 3 }
        );
    }
}
