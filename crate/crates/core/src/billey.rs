//! Billey's formula for the restriction of an equivariant Schubert class to a
//! torus-fixed point.
//!
//! For a reduced word `b = (b_1, ..., b_l)` of `w`, each position `i`
//! carries the positive root `r(i, b) = s_{b_1} ... s_{b_{i-1}}(t_{b_i} -
//! t_{b_i + 1})`, and `σ_v(w)` is the sum over reduced subwords of `b` equal
//! to `v` of the product of the roots at the chosen positions.
//!
//! Subwords are never enumerated blindly. A dynamic program sweeps the word
//! once, keyed by the part of `v` still to be produced: a position can be
//! taken exactly when its letter is a left descent of that remainder, so
//! every live state lies below `v` in weak order.

use std::collections::HashMap;
use std::hash::Hash;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::permutation::{Permutation, Word};
use crate::poly::{RootPolynomial, TPolynomial};
use crate::subset::IndexSubset;

/// The positive root `t_j - t_k` (`j < k`) attached to a word position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootFactor {
    pub j: usize,
    pub k: usize,
    /// 1-based position in the ambient word.
    pub source_position: usize,
}

impl RootFactor {
    pub fn polynomial(&self, n: usize) -> RootPolynomial {
        RootPolynomial::root(n, self.j, self.k).expect("root indices lie in 1..=n")
    }

    /// Height of the root, which is the coefficient of its image `(k - j) t`.
    pub fn height(&self) -> usize {
        self.k - self.j
    }

    pub fn projected(&self) -> TPolynomial {
        TPolynomial::monomial(self.height() as u64, 1)
    }
}

/// A reduced word together with its precomputed root factors.
#[derive(Debug, Clone)]
pub struct BilleyWord {
    word: Word,
    roots: Vec<RootFactor>,
}

impl BilleyWord {
    /// Precomputes every `r(i, b)`. Fails unless the word is reduced.
    pub fn new(word: Word) -> Result<Self> {
        let mut prefix = Permutation::identity(word.n());
        let mut roots = Vec::with_capacity(word.len());
        for i in 1..=word.len() {
            let b = word.letter(i);
            let (j, k) = (prefix.get(b), prefix.get(b + 1));
            if j > k {
                return Err(Error::NotReduced(word.letters()));
            }
            roots.push(RootFactor {
                j,
                k,
                source_position: i,
            });
            prefix = prefix.right_multiply_simple(b);
        }
        Ok(BilleyWord { word, roots })
    }

    /// The canonical reduced word of `w`.
    pub fn for_permutation(w: &Permutation) -> Self {
        Self::new(w.canonical_reduced_word()).expect("canonical words are reduced")
    }

    /// The fixed reduced word of the Peterson fixed point `w_B`.
    pub fn for_fixed_point(b: &IndexSubset) -> Self {
        Self::new(b.fixed_point_word()).expect("fixed-point words are reduced")
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn n(&self) -> usize {
        self.word.n()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[RootFactor] {
        &self.roots
    }

    /// `r(i, b)` for `1 <= i <= len`.
    pub fn root_factor(&self, i: usize) -> Result<RootFactor> {
        if i == 0 || i > self.len() {
            return Err(Error::PositionOutOfRange {
                position: i,
                len: self.len(),
            });
        }
        Ok(self.roots[i - 1])
    }

    /// Sums `weight` over all reduced subwords equal to `v`, where a subword's
    /// weight is the product of `factor(i)` over its positions.
    fn accumulate<V, F>(&self, v: &Permutation, unit: V, factor: F) -> Result<V>
    where
        V: Clone + Zero,
        F: Fn(&RootFactor) -> V,
        for<'a> V: std::ops::AddAssign<&'a V> + std::ops::Mul<&'a V, Output = V>,
    {
        if v.n() != self.n() {
            return Err(Error::RankMismatch {
                left: v.n(),
                right: self.n(),
            });
        }
        if v.length() > self.len() {
            return Ok(V::zero());
        }
        let mut states: HashMap<Permutation, V> = HashMap::new();
        states.insert(v.clone(), unit);
        for (pos, root) in self.roots.iter().enumerate() {
            let letter = self.word.letter(pos + 1);
            let remaining = self.len() - pos;
            let f = factor(root);
            let mut taken: Vec<(Permutation, V)> = Vec::new();
            for (rest, value) in &states {
                if rest.length() <= remaining && rest.has_left_descent(letter) {
                    taken.push((rest.left_multiply_simple(letter), value.clone() * &f));
                }
            }
            for (rest, value) in taken {
                add_into(&mut states, rest, value);
            }
            // States that can no longer finish are dropped.
            states.retain(|rest, _| rest.length() < remaining);
        }
        let identity = Permutation::identity(self.n());
        Ok(states.remove(&identity).unwrap_or_else(V::zero))
    }

    /// Number of reduced subwords equal to `v`.
    pub fn embedding_count(&self, v: &Permutation) -> Result<BigUint> {
        self.accumulate(v, BigUint::one(), |_| BigUint::one())
    }

    /// `σ_v(w)` where `w` is the product of this word.
    pub fn sigma(&self, v: &Permutation) -> Result<RootPolynomial> {
        let n = self.n();
        self.accumulate(v, Poly(RootPolynomial::one(n)), |r| Poly(r.polynomial(n)))
            .map(|p| p.0)
            .map(|p| {
                if p.n() == n {
                    p
                } else {
                    RootPolynomial::zero(n)
                }
            })
    }

    /// `π(σ_v(w))`, summing projected factors directly.
    ///
    /// Every projected root is a multiple of `t`, so the result is `N t^{ℓ(v)}`
    /// and only the integer `N` is carried through the sweep.
    pub fn projected_sigma(&self, v: &Permutation) -> Result<TPolynomial> {
        let total = self.accumulate(v, BigInt::one(), |r| BigInt::from(r.height()))?;
        Ok(TPolynomial::monomial(total, v.length() as u32))
    }

    /// All reduced subwords equal to `v`, as increasing 1-based position
    /// lists in lexicographic order.
    pub fn embeddings(&self, v: &Permutation) -> Result<Vec<Vec<usize>>> {
        if v.n() != self.n() {
            return Err(Error::RankMismatch {
                left: v.n(),
                right: self.n(),
            });
        }
        let mut memo = HashMap::new();
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.collect_embeddings(0, v.clone(), &mut current, &mut out, &mut memo);
        Ok(out)
    }

    /// Whether `rest` can be completed to the identity using positions
    /// `pos..` (0-based).
    fn completable(
        &self,
        pos: usize,
        rest: &Permutation,
        memo: &mut HashMap<(usize, Permutation), bool>,
    ) -> bool {
        if rest.is_identity() {
            return true;
        }
        if rest.length() > self.len() - pos {
            return false;
        }
        if let Some(&known) = memo.get(&(pos, rest.clone())) {
            return known;
        }
        let letter = self.word.letter(pos + 1);
        let ok = (rest.has_left_descent(letter)
            && self.completable(pos + 1, &rest.left_multiply_simple(letter), memo))
            || self.completable(pos + 1, rest, memo);
        memo.insert((pos, rest.clone()), ok);
        ok
    }

    fn collect_embeddings(
        &self,
        pos: usize,
        rest: Permutation,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        memo: &mut HashMap<(usize, Permutation), bool>,
    ) {
        if rest.is_identity() {
            out.push(current.clone());
            return;
        }
        for q in pos..self.len() {
            let letter = self.word.letter(q + 1);
            if rest.has_left_descent(letter) {
                let next = rest.left_multiply_simple(letter);
                if self.completable(q + 1, &next, memo) {
                    current.push(q + 1);
                    self.collect_embeddings(q + 1, next, current, out, memo);
                    current.pop();
                }
            }
        }
    }
}

fn add_into<K: Hash + Eq, V>(map: &mut HashMap<K, V>, key: K, value: V)
where
    for<'a> V: std::ops::AddAssign<&'a V>,
{
    match map.entry(key) {
        std::collections::hash_map::Entry::Occupied(mut o) => *o.get_mut() += &value,
        std::collections::hash_map::Entry::Vacant(v) => {
            v.insert(value);
        }
    }
}

/// Adapter giving [`RootPolynomial`] the arithmetic bounds used by the sweep.
#[derive(Clone)]
struct Poly(RootPolynomial);

impl Zero for Poly {
    fn zero() -> Self {
        Poly(RootPolynomial::zero(0))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl std::ops::Add for Poly {
    type Output = Poly;

    fn add(self, rhs: Poly) -> Poly {
        let mut out = self;
        out += &rhs;
        out
    }
}

impl std::ops::AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        if rhs.0.is_zero() {
            return;
        }
        if self.0.is_zero() {
            self.0 = rhs.0.clone();
        } else {
            self.0 += &rhs.0;
        }
    }
}

impl std::ops::Mul<&Poly> for Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        Poly(&self.0 * &rhs.0)
    }
}

/// `r(i, b)` for a reduced word `b`.
pub fn root_factor(i: usize, b: &Word) -> Result<RootFactor> {
    BilleyWord::new(b.clone())?.root_factor(i)
}

/// Reduced subwords of `b` equal to `v`, as 1-based position lists.
pub fn subword_embeddings(v: &Permutation, b: &Word) -> Result<Vec<Vec<usize>>> {
    BilleyWord::new(b.clone())?.embeddings(v)
}

/// `σ_v(w)`, evaluated on the canonical reduced word of `w`.
pub fn sigma_restriction(v: &Permutation, w: &Permutation) -> Result<RootPolynomial> {
    if v.n() != w.n() {
        return Err(Error::RankMismatch {
            left: v.n(),
            right: w.n(),
        });
    }
    BilleyWord::for_permutation(w).sigma(v)
}

/// `p_v(w)` for an arbitrary permutation `w`.
pub fn projected_restriction(v: &Permutation, w: &Permutation) -> Result<TPolynomial> {
    if v.n() != w.n() {
        return Err(Error::RankMismatch {
            left: v.n(),
            right: w.n(),
        });
    }
    BilleyWord::for_permutation(w).projected_sigma(v)
}

/// `p_v(w_B)`, evaluated on the fixed reduced word of `w_B`.
pub fn p_restriction(v: &Permutation, b: &IndexSubset) -> Result<TPolynomial> {
    if v.n() != b.n() {
        return Err(Error::RankMismatch {
            left: v.n(),
            right: b.n(),
        });
    }
    BilleyWord::for_fixed_point(b).projected_sigma(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn word(n: usize, letters: &[usize]) -> Word {
        Word::new(n, letters).unwrap()
    }

    fn set(n: usize, m: &[usize]) -> IndexSubset {
        IndexSubset::new(n, m).unwrap()
    }

    /// Brute force over all `2^l` position subsets.
    fn brute_embeddings(v: &Permutation, b: &Word) -> Vec<Vec<usize>> {
        let l = b.len();
        let letters = b.letters();
        let mut out: Vec<Vec<usize>> = (0u32..1 << l)
            .map(|mask| (0..l).filter(|j| mask & (1 << j) != 0).collect::<Vec<_>>())
            .filter(|pos| pos.len() == v.length())
            .filter(|pos| {
                let sub: Vec<usize> = pos.iter().map(|&j| letters[j]).collect();
                word(b.n(), &sub).evaluate() == *v
            })
            .map(|pos| pos.into_iter().map(|j| j + 1).collect())
            .collect();
        out.sort();
        out
    }

    /// `r(i, b)` by acting with `s_{b_1} ... s_{b_{i-1}}` on variable indices,
    /// innermost factor first.
    fn brute_root(b: &Word, i: usize) -> (usize, usize) {
        let letters = b.letters();
        let (mut j, mut k) = (letters[i - 1], letters[i - 1] + 1);
        for &s in letters[..i - 1].iter().rev() {
            let act = |x: usize| {
                if x == s {
                    s + 1
                } else if x == s + 1 {
                    s
                } else {
                    x
                }
            };
            j = act(j);
            k = act(k);
        }
        (j, k)
    }

    /// Brute-force `σ_v(w)` over explicitly enumerated subwords.
    fn brute_sigma(v: &Permutation, b: &Word) -> RootPolynomial {
        let n = b.n();
        brute_embeddings(v, b)
            .iter()
            .fold(RootPolynomial::zero(n), |acc, pos| {
                let term = pos.iter().fold(RootPolynomial::one(n), |p, &i| {
                    let (j, k) = brute_root(b, i);
                    &p * &RootPolynomial::root(n, j, k).unwrap()
                });
                &acc + &term
            })
    }

    #[test]
    fn root_factor_table() {
        let b = BilleyWord::new(word(7, &[1, 2, 3, 1, 2, 1])).unwrap();
        let pairs: Vec<(usize, usize)> = b.roots().iter().map(|r| (r.j, r.k)).collect();
        assert_eq!(pairs, vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        let heights: Vec<usize> = b.roots().iter().map(RootFactor::height).collect();
        assert_eq!(heights, vec![1, 2, 3, 1, 2, 1]);
        assert_eq!(
            b.root_factor(3).unwrap().polynomial(7),
            RootPolynomial::root(7, 1, 4).unwrap()
        );
        assert!(b.root_factor(0).is_err());
        assert_eq!(
            b.root_factor(7).unwrap_err(),
            Error::PositionOutOfRange {
                position: 7,
                len: 6
            }
        );
    }

    #[test]
    fn first_root_is_simple() {
        for w in Permutation::all(5).filter(|w| w.length() > 0) {
            let b = w.canonical_reduced_word();
            let r = root_factor(1, &b).unwrap();
            assert_eq!((r.j, r.k), (b.letter(1), b.letter(1) + 1));
        }
    }

    #[test]
    fn non_reduced_words_are_rejected() {
        assert!(matches!(
            BilleyWord::new(word(3, &[1, 1])),
            Err(Error::NotReduced(_))
        ));
    }

    #[test]
    fn root_factors_match_brute_force_action() {
        for w in Permutation::all(5) {
            let b = w.canonical_reduced_word();
            let bw = BilleyWord::new(b.clone()).unwrap();
            for i in 1..=b.len() {
                let r = bw.root_factor(i).unwrap();
                assert_eq!((r.j, r.k), brute_root(&b, i));
                assert!(r.j < r.k);
                assert_eq!(r.polynomial(5).project_s1(), r.projected());
            }
        }
    }

    #[test]
    fn embedding_examples() {
        let full = set(7, &[1, 2, 3, 4, 5, 6]);
        let a = set(7, &[1, 2, 3, 5, 6]);
        let b = full.fixed_point_word();
        assert_eq!(
            subword_embeddings(&a.basis_element(), &b).unwrap().len(),
            20
        );
        let bw = BilleyWord::new(b.clone()).unwrap();
        assert_eq!(
            bw.embedding_count(&a.basis_element()).unwrap(),
            BigUint::from(20u32)
        );
        assert_eq!(
            subword_embeddings(&Permutation::identity(7), &b).unwrap(),
            vec![Vec::<usize>::new()]
        );
    }

    #[test]
    fn unique_embedding_of_basis_element_in_its_fixed_point() {
        for n in 1..=6 {
            for a in IndexSubset::all(n) {
                let e = subword_embeddings(&a.basis_element(), &a.fixed_point_word()).unwrap();
                assert_eq!(e.len(), 1, "{a}");
            }
        }
    }

    #[test]
    fn embeddings_match_brute_force() {
        for n in 1..=4 {
            for w in Permutation::all(n) {
                let b = w.canonical_reduced_word();
                let bw = BilleyWord::new(b.clone()).unwrap();
                for v in Permutation::all(n) {
                    let expected = brute_embeddings(&v, &b);
                    assert_eq!(bw.embeddings(&v).unwrap(), expected);
                    assert_eq!(
                        bw.embedding_count(&v).unwrap(),
                        BigUint::from(expected.len())
                    );
                }
            }
        }
        let b = set(6, &[1, 2, 3, 4, 5]).fixed_point_word();
        for v in Permutation::all(6).filter(|v| v.length() <= 4) {
            assert_eq!(
                subword_embeddings(&v, &b).unwrap(),
                brute_embeddings(&v, &b)
            );
        }
    }

    #[test]
    fn sigma_examples() {
        let s1 = Permutation::simple(3, 1).unwrap();
        let s2 = Permutation::simple(3, 2).unwrap();
        assert!(sigma_restriction(&s1, &s2).unwrap().is_zero());
        let s1_2 = Permutation::simple(2, 1).unwrap();
        assert_eq!(
            sigma_restriction(&s1_2, &s1_2).unwrap(),
            RootPolynomial::root(2, 1, 2).unwrap()
        );
        assert_eq!(
            sigma_restriction(&Permutation::identity(4), &Permutation::longest(4)).unwrap(),
            RootPolynomial::one(4)
        );
    }

    /// `σ_{s_1 s_2}(w_0)` in `S_3`, frozen from the brute-force sum over the
    /// word `(1, 2, 1)`: the only subword is positions (1, 2), giving
    /// `(t1 - t2)(t1 - t3)`.
    #[test]
    fn sigma_of_s1s2_at_longest_element() {
        let v = word(3, &[1, 2]).evaluate();
        let w0 = Permutation::longest(3);
        let oracle = brute_sigma(&v, &word(3, &[1, 2, 1]));
        let expected =
            &RootPolynomial::root(3, 1, 2).unwrap() * &RootPolynomial::root(3, 1, 3).unwrap();
        assert_eq!(oracle, expected);
        assert_eq!(sigma_restriction(&v, &w0).unwrap(), expected);
        // In the other reduced word (2, 1, 2) the only subword is positions
        // (2, 3), with roots s_2(t1 - t2) = t1 - t3 and
        // s_2 s_1(t2 - t3) = t1 - t2.
        let other = BilleyWord::new(word(3, &[2, 1, 2])).unwrap();
        assert_eq!(other.embeddings(&v).unwrap(), vec![vec![2, 3]]);
        assert_eq!(other.sigma(&v).unwrap(), expected);
    }

    #[test]
    fn sigma_matches_brute_force() {
        for n in 1..=4 {
            for w in Permutation::all(n) {
                let b = w.canonical_reduced_word();
                for v in Permutation::all(n) {
                    assert_eq!(sigma_restriction(&v, &w).unwrap(), brute_sigma(&v, &b));
                }
            }
        }
    }

    #[test]
    fn sigma_vanishes_exactly_off_the_bruhat_interval() {
        for n in 1..=4 {
            for w in Permutation::all(n) {
                for v in Permutation::all(n) {
                    let s = sigma_restriction(&v, &w).unwrap();
                    assert_eq!(s.is_zero(), !v.bruhat_leq(&w).unwrap());
                }
            }
        }
    }

    fn reduced_words(w: &Permutation) -> Vec<Word> {
        let n = w.n();
        (0..w.length())
            .map(|_| 1..n)
            .multi_cartesian_product()
            .map(|c| word(n, &c))
            .filter(|b| b.evaluate() == *w)
            .collect()
    }

    #[test]
    fn sigma_is_independent_of_reduced_word() {
        for w in Permutation::all(4).filter(|w| w.length() > 0) {
            let words = reduced_words(&w);
            for v in Permutation::all(4) {
                let reference = sigma_restriction(&v, &w).unwrap();
                for b in &words {
                    assert_eq!(
                        BilleyWord::new(b.clone()).unwrap().sigma(&v).unwrap(),
                        reference
                    );
                }
            }
        }
    }

    #[test]
    fn sigma_is_word_independent_sampled_in_s5() {
        // Every fifth element of S_5, against every reduced word.
        for w in Permutation::all(5)
            .step_by(5)
            .filter(|w| (1..=6).contains(&w.length()))
        {
            let words = reduced_words(&w);
            for v in Permutation::all(5).filter(|v| v.length() <= w.length()) {
                let reference = sigma_restriction(&v, &w).unwrap();
                for b in &words {
                    assert_eq!(
                        BilleyWord::new(b.clone()).unwrap().sigma(&v).unwrap(),
                        reference
                    );
                }
            }
        }
    }

    #[test]
    fn p_restriction_examples() {
        let full = set(7, &[1, 2, 3, 4, 5, 6]);
        let a = set(7, &[1, 2, 3, 5, 6]);
        let va = a.basis_element();
        assert_eq!(
            p_restriction(&va, &a).unwrap(),
            TPolynomial::monomial(12, 5)
        );
        assert_eq!(
            p_restriction(&va, &full).unwrap(),
            TPolynomial::monomial(3600, 5)
        );
        assert_eq!(
            p_restriction(&full.basis_element(), &full).unwrap(),
            TPolynomial::monomial(720, 6)
        );
    }

    #[test]
    fn p_restriction_is_projected_sigma() {
        for n in 1..=5 {
            for b in IndexSubset::all(n) {
                let wb = b.fixed_point();
                for v in Permutation::all(n) {
                    let direct = p_restriction(&v, &b).unwrap();
                    let via_sigma = sigma_restriction(&v, &wb).unwrap().project_s1();
                    assert_eq!(direct, via_sigma, "v={v} B={b}");
                    assert_eq!(projected_restriction(&v, &wb).unwrap(), direct);
                }
            }
        }
    }

    #[test]
    fn rank_mismatch() {
        let err =
            sigma_restriction(&Permutation::identity(3), &Permutation::identity(4)).unwrap_err();
        assert_eq!(err, Error::RankMismatch { left: 3, right: 4 });
        assert!(p_restriction(&Permutation::identity(3), &set(4, &[1])).is_err());
    }
}
