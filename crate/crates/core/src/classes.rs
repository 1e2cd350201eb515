//! Peterson Schubert classes stored as restriction tables over all fixed
//! points, and the closed-form values of those restrictions.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::billey::BilleyWord;
use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::poly::{divides, TPolynomial};
use crate::subset::IndexSubset;

/// Largest rank for which full tables (`2^{n-1}` entries) are built.
pub const MAX_TABLE_RANK: usize = 24;

/// How restriction values are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evaluation {
    /// Factored closed forms: subword count times the common summand.
    ClosedForm,
    /// The subword-sum sweep over the fixed reduced word of each `w_B`.
    Oracle,
}

impl Default for Evaluation {
    fn default() -> Self {
        if cfg!(feature = "oracle-only") {
            Evaluation::Oracle
        } else {
            Evaluation::ClosedForm
        }
    }
}

/// What a table represents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassLabel {
    /// The basis class `p_{v_A}`.
    Basis(IndexSubset),
    /// `p_w` for an arbitrary permutation, with no basis meaning attached.
    Generic(Permutation),
}

/// A class in `H*_{S^1}(Y)` given by its value at every fixed point `w_B`.
///
/// Entries are indexed by the bitmask of `B`; zero values are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PetersonClass {
    n: usize,
    label: ClassLabel,
    table: Vec<TPolynomial>,
}

fn check_table_rank(n: usize) -> Result<()> {
    if n == 0 || n > MAX_TABLE_RANK {
        return Err(Error::UnsupportedRank(n));
    }
    Ok(())
}

impl PetersonClass {
    /// `p_{v_A}` with the default evaluation.
    pub fn basis(a: &IndexSubset) -> Result<Self> {
        Self::basis_with(a, Evaluation::default())
    }

    pub fn basis_with(a: &IndexSubset, evaluation: Evaluation) -> Result<Self> {
        let n = a.n();
        check_table_rank(n)?;
        let va = a.basis_element();
        let table = (0u64..1 << (n - 1))
            .into_par_iter()
            .map(|mask| {
                let b = IndexSubset::from_mask(n, mask).expect("mask in range");
                match evaluation {
                    Evaluation::ClosedForm => restriction_closed_form(a, &b),
                    Evaluation::Oracle => BilleyWord::for_fixed_point(&b).projected_sigma(&va),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PetersonClass {
            n,
            label: ClassLabel::Basis(*a),
            table,
        })
    }

    /// `p_w`, restricting `σ_w` to every fixed point.
    pub fn generic(w: &Permutation) -> Result<Self> {
        let n = w.n();
        check_table_rank(n)?;
        let table = (0u64..1 << (n - 1))
            .into_par_iter()
            .map(|mask| {
                let b = IndexSubset::from_mask(n, mask).expect("mask in range");
                BilleyWord::for_fixed_point(&b).projected_sigma(w)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PetersonClass {
            n,
            label: ClassLabel::Generic(w.clone()),
            table,
        })
    }

    /// A class given directly by its values, indexed by bitmask.
    pub fn from_table(n: usize, label: ClassLabel, table: Vec<TPolynomial>) -> Result<Self> {
        check_table_rank(n)?;
        if table.len() != 1 << (n - 1) {
            return Err(Error::Precondition(format!(
                "a rank {n} table needs {} entries, got {}",
                1u64 << (n - 1),
                table.len()
            )));
        }
        Ok(PetersonClass { n, label, table })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> &ClassLabel {
        &self.label
    }

    /// The defining subset for basis classes.
    pub fn index(&self) -> Option<&IndexSubset> {
        match &self.label {
            ClassLabel::Basis(a) => Some(a),
            ClassLabel::Generic(_) => None,
        }
    }

    /// The value at `w_B`.
    pub fn at(&self, b: &IndexSubset) -> &TPolynomial {
        assert_eq!(b.n(), self.n, "rank mismatch");
        &self.table[b.mask() as usize]
    }

    pub fn values(&self) -> &[TPolynomial] {
        &self.table
    }

    /// `(B, value)` pairs ordered by cardinality, then lexicographically.
    pub fn entries(&self) -> Vec<(IndexSubset, &TPolynomial)> {
        let mut out: Vec<_> = IndexSubset::all(self.n).map(|b| (b, self.at(&b))).collect();
        out.sort_by_key(|x| x.0);
        out
    }

    /// Same values at every fixed point; labels are ignored.
    pub fn same_values(&self, other: &PetersonClass) -> bool {
        self.table == other.table
    }

    /// Vanishes at every `w_B` with `A ⊄ B` and is nonzero at `w_A`.
    pub fn is_upper_triangular_for(&self, a: &IndexSubset) -> bool {
        !self.at(a).is_zero()
            && IndexSubset::all(self.n)
                .filter(|b| !a.is_subset_of(b))
                .all(|b| self.at(&b).is_zero())
    }

    /// Pointwise product of two tables.
    pub fn pointwise_product(&self, other: &PetersonClass) -> Vec<TPolynomial> {
        assert_eq!(self.n, other.n, "rank mismatch");
        self.table
            .iter()
            .zip(&other.table)
            .map(|(x, y)| x * y)
            .collect()
    }

    /// `{"n": .., "class": [..], "table": {"1,2": "3t", ..}}`; generic classes
    /// carry `"permutation"` instead of `"class"`.
    pub fn to_json(&self) -> Value {
        let table: Map<String, Value> = self
            .entries()
            .into_iter()
            .map(|(b, value)| (b.to_csv(), Value::String(value.to_string())))
            .collect();
        let mut out = Map::new();
        out.insert("n".into(), json!(self.n));
        match &self.label {
            ClassLabel::Basis(a) => out.insert("class".into(), json!(a)),
            ClassLabel::Generic(w) => out.insert("permutation".into(), json!(w)),
        };
        out.insert("table".into(), Value::Object(table));
        Value::Object(out)
    }

    /// One `fixed_point,value` row per fixed point, in subset order.
    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record(["fixed_point", "value"])
            .expect("in-memory write");
        for (b, value) in self.entries() {
            writer
                .write_record([b.to_csv(), value.to_string()])
                .expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8")
    }
}

impl fmt::Display for PetersonClass {
    /// One `B: value` line per fixed point.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (b, value) in self.entries() {
            writeln!(f, "{b}: {value}")?;
        }
        Ok(())
    }
}

/// Number of reduced subwords of the fixed word of `w_B` equal to `v_A`.
///
/// Zero unless `A ⊆ B`. Otherwise each maximal string `[c, d]` of `A` lies
/// in a string of `B` with head `h`; its letters can be drawn from the runs
/// of that block in weakly increasing run order with the run of `d` at most
/// `h - d`, which gives `C(h - d + len, len)` choices. Strings of `A` do not
/// interact, so the count is the product.
pub fn subword_count_closed_form(a: &IndexSubset, b: &IndexSubset) -> Result<BigUint> {
    if a.n() != b.n() {
        return Err(Error::RankMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    if !a.is_subset_of(b) {
        return Ok(BigUint::zero());
    }
    let mut count = BigUint::one();
    for s in a.strings() {
        let head = b.head(s.hi)?;
        count *= binomial(BigUint::from(head - s.hi + s.len()), BigUint::from(s.len()));
    }
    Ok(count)
}

/// The common value of every summand for `p_{v_A}(w_B)`:
/// `∏_{j ∈ A} (j - tail_B(j) + 1)`, as a coefficient of `t^{|A|}`.
pub fn summand_coefficient(a: &IndexSubset, b: &IndexSubset) -> Result<BigUint> {
    if !a.is_subset_of(b) {
        return Err(Error::Precondition(format!("{a} is not contained in {b}")));
    }
    let mut c = BigUint::one();
    for j in a.members() {
        c *= BigUint::from(j - b.tail(j)? + 1);
    }
    Ok(c)
}

/// `p_{v_A}(w_B)` from the closed forms: subword count times summand.
pub fn restriction_closed_form(a: &IndexSubset, b: &IndexSubset) -> Result<TPolynomial> {
    let count = subword_count_closed_form(a, b)?;
    if count.is_zero() {
        return Ok(TPolynomial::zero());
    }
    let value = count * summand_coefficient(a, b)?;
    Ok(TPolynomial::monomial(value, a.len() as u32))
}

/// `p_{v_A}(w_A) = ∏_{i ∈ A} (i - tail_A(i) + 1) · t^{|A|}`.
pub fn diagonal_value(a: &IndexSubset) -> TPolynomial {
    let c = summand_coefficient(a, a).expect("A ⊆ A");
    TPolynomial::monomial(c, a.len() as u32)
}

/// `p_i(w_A)`: zero if `i ∉ A`, else `(head_A(i) - i + 1)(i - tail_A(i) + 1) t`.
pub fn pi_at(i: usize, a: &IndexSubset) -> Result<TPolynomial> {
    if i == 0 || i >= a.n() {
        return Err(Error::SubsetElementOutOfRange {
            element: i,
            max: a.n() - 1,
        });
    }
    if !a.contains(i) {
        return Ok(TPolynomial::zero());
    }
    let s = a.string_of(i)?;
    Ok(TPolynomial::monomial(
        ((s.hi - i + 1) * (i - s.lo + 1)) as u64,
        1,
    ))
}

/// `p_{v_A}(w_B)` when `B = [lo, hi]` is one consecutive string and
/// `A = B \ {k}`:
/// `((hi - lo + 1)! / (k - lo + 1)) · C(hi - lo + 1, k - lo) · t^{hi - lo}`.
pub fn single_string_restriction(a: &IndexSubset, b: &IndexSubset) -> Result<TPolynomial> {
    if a.n() != b.n() {
        return Err(Error::RankMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    let strings = b.strings();
    let [s] = strings.as_slice() else {
        return Err(Error::Precondition(format!(
            "{b} is not a single consecutive string"
        )));
    };
    if s.len() < 2 {
        return Err(Error::Precondition(format!(
            "{b} must have at least two elements"
        )));
    }
    if !a.is_subset_of(b) || b.len() != a.len() + 1 {
        return Err(Error::Precondition(format!(
            "{a} is not {b} minus one element"
        )));
    }
    let k = b
        .members()
        .find(|&j| !a.contains(j))
        .expect("one element removed");
    let size = s.len();
    let factorial: BigUint = (1..=size).map(BigUint::from).product();
    let coeff = factorial / BigUint::from(k - s.lo + 1)
        * binomial(BigUint::from(size), BigUint::from(k - s.lo));
    Ok(TPolynomial::monomial(coeff, (s.hi - s.lo) as u32))
}

/// Whether `p_{v_{B ∪ B'}}` equals `p_{v_B} · p_{v_B'}` at every fixed point.
///
/// Requires `B` and `B'` to be disjoint with no members differing by one.
pub fn disjoint_product_check(
    b: &IndexSubset,
    b2: &IndexSubset,
    evaluation: Evaluation,
) -> Result<bool> {
    if b.n() != b2.n() {
        return Err(Error::RankMismatch {
            left: b.n(),
            right: b2.n(),
        });
    }
    if b.mask() & b2.mask() != 0 {
        return Err(Error::Precondition(format!(
            "{b} and {b2} are not disjoint"
        )));
    }
    if b.is_adjacent_to(b2) {
        return Err(Error::Precondition(format!(
            "{b} and {b2} have adjacent members"
        )));
    }
    let union = PetersonClass::basis_with(&b.union(b2), evaluation)?;
    let left = PetersonClass::basis_with(b, evaluation)?;
    let right = PetersonClass::basis_with(b2, evaluation)?;
    Ok(union.values() == left.pointwise_product(&right).as_slice())
}

/// Whether `p_{v_A}(w_A)` divides `p_w(w_A)`.
///
/// Requires `p_w` to be upper-triangular for `A`.
pub fn minimality_check(w: &Permutation, a: &IndexSubset) -> Result<bool> {
    if w.n() != a.n() {
        return Err(Error::RankMismatch {
            left: w.n(),
            right: a.n(),
        });
    }
    let class = PetersonClass::generic(w)?;
    if !class.is_upper_triangular_for(a) {
        return Err(Error::Precondition(format!(
            "p_{w} is not upper-triangular for {a}"
        )));
    }
    divides(&diagonal_value(a), class.at(a))
}

/// Whether `p_w` being upper-triangular for `A` with `p_w(w_A) = p_{v_A}(w_A)`
/// forces `p_w = p_{v_A}`. Vacuously true when the hypotheses fail.
pub fn uniqueness_holds(w: &Permutation, a: &IndexSubset, basis: &PetersonClass) -> Result<bool> {
    let class = PetersonClass::generic(w)?;
    if !class.is_upper_triangular_for(a) || class.at(a) != basis.at(a) {
        return Ok(true);
    }
    Ok(class.same_values(basis))
}

/// Elements of the parabolic subgroup generated by `{s_i : i ∈ A}` of
/// length exactly `|A|`.
fn parabolic_layer(a: &IndexSubset) -> Vec<Permutation> {
    let letters: Vec<usize> = a.members().collect();
    let mut layer: BTreeSet<Permutation> = BTreeSet::from([Permutation::identity(a.n())]);
    for _ in 0..a.len() {
        layer = layer
            .iter()
            .flat_map(|u| {
                letters
                    .iter()
                    .filter(|&&i| !u.has_right_descent(i))
                    .map(|&i| u.right_multiply_simple(i))
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    layer.into_iter().collect()
}

/// Every `w ∈ S_n` whose class `p_w` equals `p_{v_A}`, sorted.
///
/// Such a `w` has `p_w(w_A) ≠ 0`, so `w ≤ w_A` and `w` lies in the parabolic
/// subgroup of `A`; its degree forces `ℓ(w) = |A|`. Only that layer is
/// scanned.
pub fn preimage_classes(a: &IndexSubset) -> Result<Vec<Permutation>> {
    let target = PetersonClass::basis(a)?;
    let candidates = parabolic_layer(a);
    let mut out = Vec::new();
    for w in candidates {
        if PetersonClass::generic(&w)?.same_values(&target) {
            out.push(w);
        }
    }
    Ok(out)
}
