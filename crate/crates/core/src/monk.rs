//! The equivariant and ordinary Chevalley-Monk formulas for the basis
//! `{p_{v_A}}`, general products by triangular solve, and ring presentations.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Map, Number, Value};

use crate::billey::p_restriction;
use crate::classes::{pi_at, restriction_closed_form, Evaluation, PetersonClass};
use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::poly::TPolynomial;
use crate::subset::IndexSubset;

fn check_index(i: usize, n: usize) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::SubsetElementOutOfRange {
            element: i,
            max: n.saturating_sub(1),
        });
    }
    Ok(())
}

fn json_integer(c: &BigUint) -> Value {
    Value::Number(Number::from_str(&c.to_string()).expect("decimal integer"))
}

/// The closed-form structure constant `c^B_{i,A}` with `B = A ∪ {k}`.
pub fn structure_constant(i: usize, a: &IndexSubset, k: usize) -> Result<BigUint> {
    let n = a.n();
    check_index(i, n)?;
    check_index(k, n)?;
    if a.contains(k) {
        return Err(Error::Precondition(format!("{k} already belongs to {a}")));
    }
    let b = a.with(k)?;
    let s = b.string_of(k)?;
    if !b.contains(i) || !s.contains(i) {
        return Ok(BigUint::zero());
    }
    let size = BigUint::from(s.len());
    Ok(if i >= k {
        BigUint::from(s.hi - i + 1) * binomial(size, BigUint::from(k - s.lo))
    } else {
        BigUint::from(i - s.lo + 1) * binomial(size, BigUint::from(k - s.lo + 1))
    })
}

/// `c^B_{i,A} = (p_i(w_B) - p_i(w_A)) · p_{v_A}(w_B) / p_{v_B}(w_B)`, read off
/// precomputed tables.
pub fn structure_constant_from_tables(
    i: usize,
    a: &IndexSubset,
    k: usize,
    tables: &BasisTables,
) -> Result<TPolynomial> {
    let n = a.n();
    check_index(i, n)?;
    check_index(k, n)?;
    if a.contains(k) {
        return Err(Error::Precondition(format!("{k} already belongs to {a}")));
    }
    let b = a.with(k)?;
    let pi = tables.class(&IndexSubset::new(n, &[i])?);
    let numerator = &(pi.at(&b) - pi.at(a)) * tables.class(a).at(&b);
    let denominator = tables.class(&b).at(&b);
    numerator
        .div_exact(denominator)?
        .ok_or_else(|| Error::InexactDivision {
            dividend: numerator.to_string(),
            divisor: denominator.to_string(),
        })
}

/// `p_i · p_{v_A} = diagonal · p_{v_A} + Σ_B c^B_{i,A} · p_{v_B}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonkExpansion {
    i: usize,
    class: IndexSubset,
    diagonal: TPolynomial,
    off_diagonal: BTreeMap<IndexSubset, BigUint>,
    ordinary: bool,
}

impl MonkExpansion {
    pub fn n(&self) -> usize {
        self.class.n()
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn class(&self) -> &IndexSubset {
        &self.class
    }

    pub fn diagonal(&self) -> &TPolynomial {
        &self.diagonal
    }

    pub fn off_diagonal(&self) -> &BTreeMap<IndexSubset, BigUint> {
        &self.off_diagonal
    }

    /// Whether this is the non-equivariant formula.
    pub fn is_ordinary(&self) -> bool {
        self.ordinary
    }

    /// No terms on the right-hand side.
    pub fn is_empty(&self) -> bool {
        self.diagonal.is_zero() && self.off_diagonal.is_empty()
    }

    /// The image in ordinary cohomology, where `t` maps to zero.
    pub fn forget_t(mut self) -> Self {
        self.diagonal = TPolynomial::zero();
        self.ordinary = true;
        self
    }

    /// The same expansion as a general basis expansion.
    pub fn to_basis_expansion(&self) -> BasisExpansion {
        let mut coefficients = BTreeMap::new();
        if !self.diagonal.is_zero() {
            coefficients.insert(self.class, self.diagonal.clone());
        }
        for (b, c) in &self.off_diagonal {
            coefficients.insert(*b, TPolynomial::constant(BigInt::from(c.clone())));
        }
        BasisExpansion {
            n: self.n(),
            coefficients,
        }
    }

    /// `{"i": .., "class": [..], "diagonal": "3t", "terms": {"1,2,3": 45}}`.
    pub fn to_json(&self) -> Value {
        let terms: Map<String, Value> = self
            .off_diagonal
            .iter()
            .map(|(b, c)| (b.to_csv(), json_integer(c)))
            .collect();
        json!({
            "i": self.i,
            "class": self.class,
            "diagonal": self.diagonal.to_string(),
            "terms": terms,
        })
    }

    /// `"<subset>,<coefficient>"` rows, the diagonal first.
    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record(["subset", "coefficient"])
            .expect("in-memory write");
        writer
            .write_record([self.class.to_csv(), self.diagonal.to_string()])
            .expect("in-memory write");
        for (b, c) in &self.off_diagonal {
            writer
                .write_record([b.to_csv(), c.to_string()])
                .expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    fn symbol(&self) -> &'static str {
        if self.ordinary {
            "p̌"
        } else {
            "p"
        }
    }

    fn rhs(&self) -> String {
        let p = self.symbol();
        let mut terms = Vec::new();
        if !self.diagonal.is_zero() {
            terms.push(format!(
                "{} * {p}{{{}}}",
                self.diagonal,
                self.class.to_csv()
            ));
        }
        for (b, c) in &self.off_diagonal {
            terms.push(format!("{c} * {p}{{{}}}", b.to_csv()));
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl fmt::Display for MonkExpansion {
    /// `p{3} * p{1,2,3,5,6} = 3t * p{1,2,3,5,6} + 45 * p{1,2,3,4,5,6}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.symbol();
        write!(
            f,
            "{p}{{{}}} * {p}{{{}}} = {}",
            self.i,
            self.class.to_csv(),
            self.rhs()
        )
    }
}

/// The equivariant Monk expansion of `p_i · p_{v_A}`.
pub fn monk_expand(i: usize, a: &IndexSubset) -> Result<MonkExpansion> {
    let n = a.n();
    check_index(i, n)?;
    let mut off_diagonal = BTreeMap::new();
    for k in (1..n).filter(|&k| !a.contains(k)) {
        let c = structure_constant(i, a, k)?;
        if !c.is_zero() {
            off_diagonal.insert(a.with(k)?, c);
        }
    }
    Ok(MonkExpansion {
        i,
        class: *a,
        diagonal: pi_at(i, a)?,
        off_diagonal,
        ordinary: false,
    })
}

/// The Monk expansion in ordinary cohomology: the `t`-multiple vanishes.
pub fn ordinary_monk_expand(i: usize, a: &IndexSubset) -> Result<MonkExpansion> {
    Ok(monk_expand(i, a)?.forget_t())
}

/// `monk_expand`, or with [`Evaluation::Oracle`] every coefficient read off
/// subword-sum restriction values instead of the closed forms.
pub fn monk_expand_with(
    i: usize,
    a: &IndexSubset,
    evaluation: Evaluation,
) -> Result<MonkExpansion> {
    if evaluation == Evaluation::ClosedForm {
        return monk_expand(i, a);
    }
    let n = a.n();
    check_index(i, n)?;
    let si = Permutation::simple(n, i)?;
    let va = a.basis_element();
    let pi_a = p_restriction(&si, a)?;
    let mut off_diagonal = BTreeMap::new();
    for k in (1..n).filter(|&k| !a.contains(k)) {
        let b = a.with(k)?;
        let numerator = &(&p_restriction(&si, &b)? - &pi_a) * &p_restriction(&va, &b)?;
        let denominator = p_restriction(&b.basis_element(), &b)?;
        let c = numerator
            .div_exact(&denominator)?
            .and_then(|q| {
                q.as_monomial()
                    .filter(|(_, d)| *d == 0)
                    .map(|(c, _)| c.clone())
            })
            .or_else(|| numerator.is_zero().then(BigInt::zero))
            .and_then(|c| c.to_biguint())
            .ok_or_else(|| Error::InexactDivision {
                dividend: numerator.to_string(),
                divisor: denominator.to_string(),
            })?;
        if !c.is_zero() {
            off_diagonal.insert(b, c);
        }
    }
    Ok(MonkExpansion {
        i,
        class: *a,
        diagonal: pi_a,
        off_diagonal,
        ordinary: false,
    })
}

/// Every basis class of one rank, indexed by bitmask.
#[derive(Debug, Clone)]
pub struct BasisTables {
    n: usize,
    evaluation: Evaluation,
    classes: Vec<PetersonClass>,
}

impl BasisTables {
    pub fn build(n: usize, evaluation: Evaluation) -> Result<Self> {
        if !(2..=crate::classes::MAX_TABLE_RANK).contains(&n) {
            return Err(Error::UnsupportedRank(n));
        }
        let classes = (0u64..1 << (n - 1))
            .into_par_iter()
            .map(|mask| {
                let a = IndexSubset::from_mask(n, mask)?;
                PetersonClass::basis_with(&a, evaluation)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BasisTables {
            n,
            evaluation,
            classes,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn evaluation(&self) -> Evaluation {
        self.evaluation
    }

    pub fn class(&self, a: &IndexSubset) -> &PetersonClass {
        assert_eq!(a.n(), self.n, "rank mismatch");
        &self.classes[a.mask() as usize]
    }

    pub fn classes(&self) -> &[PetersonClass] {
        &self.classes
    }
}

/// An element of `H*_{S^1}(Y)` written in the basis `{p_{v_A}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisExpansion {
    n: usize,
    coefficients: BTreeMap<IndexSubset, TPolynomial>,
}

impl BasisExpansion {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Nonzero coefficients only.
    pub fn coefficients(&self) -> &BTreeMap<IndexSubset, TPolynomial> {
        &self.coefficients
    }

    pub fn coefficient(&self, a: &IndexSubset) -> TPolynomial {
        self.coefficients.get(a).cloned().unwrap_or_default()
    }

    /// `Σ coefficient(A) · p_{v_A}(w_B)`.
    pub fn evaluate_at(&self, b: &IndexSubset, tables: &BasisTables) -> TPolynomial {
        let mut total = TPolynomial::zero();
        for (a, c) in &self.coefficients {
            total += &(c * tables.class(a).at(b));
        }
        total
    }

    /// `{"subset-csv": "poly", ..}`.
    pub fn to_json(&self) -> Value {
        let terms: Map<String, Value> = self
            .coefficients
            .iter()
            .map(|(a, c)| (a.to_csv(), Value::String(c.to_string())))
            .collect();
        Value::Object(terms)
    }

    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record(["subset", "coefficient"])
            .expect("in-memory write");
        for (a, c) in &self.coefficients {
            writer
                .write_record([a.to_csv(), c.to_string()])
                .expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8")
    }
}

impl fmt::Display for BasisExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .map(|(a, c)| {
                if c.terms().count() > 1 {
                    format!("({c}) * p{{{}}}", a.to_csv())
                } else {
                    format!("{c} * p{{{}}}", a.to_csv())
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Expands `p_{v_A} · p_{v_A'}` in the basis with the default evaluation.
pub fn product_in_basis(a: &IndexSubset, a2: &IndexSubset) -> Result<BasisExpansion> {
    product_in_basis_with(a, a2, Evaluation::default())
}

/// Triangular solve of the pointwise product against the basis.
///
/// Only classes above `A ∪ A'` can appear, so the solve runs over that
/// up-set, in order of cardinality and then lexicographically.
pub fn product_in_basis_with(
    a: &IndexSubset,
    a2: &IndexSubset,
    evaluation: Evaluation,
) -> Result<BasisExpansion> {
    let n = a.n();
    if a2.n() != n {
        return Err(Error::RankMismatch {
            left: n,
            right: a2.n(),
        });
    }
    let restrict = |x: &IndexSubset, b: &IndexSubset| match evaluation {
        Evaluation::ClosedForm => restriction_closed_form(x, b),
        Evaluation::Oracle => crate::billey::p_restriction(&x.basis_element(), b),
    };
    let bottom = a.union(a2);
    let mut layer: Vec<IndexSubset> = IndexSubset::all(n)
        .filter(|b| bottom.is_subset_of(b))
        .collect();
    layer.sort();
    let mut coefficients: BTreeMap<IndexSubset, TPolynomial> = BTreeMap::new();
    for b in &layer {
        let mut residual = &restrict(a, b)? * &restrict(a2, b)?;
        for (c, coeff) in &coefficients {
            if c.is_subset_of(b) {
                residual = &residual - &(coeff * &restrict(c, b)?);
            }
        }
        if residual.is_zero() {
            continue;
        }
        let diagonal = restrict(b, b)?;
        let coeff = residual
            .div_exact(&diagonal)?
            .ok_or_else(|| Error::InexactDivision {
                dividend: residual.to_string(),
                divisor: diagonal.to_string(),
            })?;
        coefficients.insert(*b, coeff);
    }
    Ok(BasisExpansion { n, coefficients })
}

/// A failed check found by [`verify_monk`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonkViolation {
    /// Both sides of the formula differ at the fixed point `w_C`.
    Identity {
        i: usize,
        class: IndexSubset,
        fixed_point: IndexSubset,
    },
    /// The closed-form constant disagrees with the table quotient.
    Constant {
        i: usize,
        class: IndexSubset,
        k: usize,
        closed: BigUint,
        oracle: TPolynomial,
    },
}

impl fmt::Display for MonkViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonkViolation::Identity {
                i,
                class,
                fixed_point,
            } => {
                write!(
                    f,
                    "p{{{i}}} * p{class} differs from its expansion at w{fixed_point}"
                )
            }
            MonkViolation::Constant {
                i,
                class,
                k,
                closed,
                oracle,
            } => write!(
                f,
                "c_{{{i},{class}}} for k = {k}: closed form {closed}, from tables {oracle}"
            ),
        }
    }
}

/// Outcome of checking every Monk expansion of one rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonkReport {
    pub n: usize,
    pub pairs: usize,
    pub evaluations: usize,
    pub violations: Vec<MonkViolation>,
}

impl MonkReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_pair(i: usize, a: &IndexSubset, tables: &BasisTables) -> Result<Vec<MonkViolation>> {
    let n = tables.n();
    let mut violations = Vec::new();
    let expansion = monk_expand(i, a)?;
    let pi = tables.class(&IndexSubset::new(n, &[i])?);
    let pa = tables.class(a);
    for c in IndexSubset::all(n) {
        let lhs = pi.at(&c) * pa.at(&c);
        let mut rhs = expansion.diagonal() * pa.at(&c);
        for (b, coeff) in expansion.off_diagonal() {
            rhs += &tables.class(b).at(&c).scale(&BigInt::from(coeff.clone()));
        }
        if lhs != rhs {
            violations.push(MonkViolation::Identity {
                i,
                class: *a,
                fixed_point: c,
            });
        }
    }
    for k in (1..n).filter(|&k| !a.contains(k)) {
        let closed = structure_constant(i, a, k)?;
        let oracle = structure_constant_from_tables(i, a, k, tables)?;
        if oracle != TPolynomial::constant(BigInt::from(closed.clone())) {
            violations.push(MonkViolation::Constant {
                i,
                class: *a,
                k,
                closed,
                oracle,
            });
        }
    }
    Ok(violations)
}

/// Checks `p_i · p_{v_A}` against its expansion at every fixed point, and
/// every closed-form constant against the table quotient, for all `i` and
/// `A` of the tables' rank.
pub fn verify_monk(tables: &BasisTables) -> Result<MonkReport> {
    let n = tables.n();
    let pairs: Vec<(usize, IndexSubset)> = (1..n)
        .flat_map(|i| IndexSubset::all(n).map(move |a| (i, a)))
        .collect();
    let found = pairs
        .par_iter()
        .map(|(i, a)| check_pair(*i, a, tables))
        .collect::<Result<Vec<_>>>()?;
    Ok(MonkReport {
        n,
        pairs: pairs.len(),
        evaluations: pairs.len() << (n - 1),
        violations: found.into_iter().flatten().collect(),
    })
}

/// One relation `p_i · p_{v_A} - (right-hand side)` of the presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub expansion: MonkExpansion,
    /// The relation is `p_i · 1 = p_{v_{i}}`, which holds identically once
    /// `p_{v_∅} = 1` and `p_i = p_{v_{i}}` are substituted.
    pub trivial: bool,
}

impl Relation {
    pub fn to_json(&self) -> Value {
        let mut value = self.expansion.to_json();
        value["trivial"] = json!(self.trivial);
        value["relation"] = json!(self.expansion.to_string());
        value
    }
}

/// Every relation `p_i · p_{v_A} = ...` for `1 <= i < n` and all `A`,
/// ordered by `i` and then by `A`.
pub fn presentation(n: usize, equivariant: bool) -> Result<Vec<Relation>> {
    presentation_with(n, equivariant, Evaluation::default())
}

pub fn presentation_with(
    n: usize,
    equivariant: bool,
    evaluation: Evaluation,
) -> Result<Vec<Relation>> {
    if !(2..=crate::classes::MAX_TABLE_RANK).contains(&n) {
        return Err(Error::UnsupportedRank(n));
    }
    let mut pairs: Vec<(usize, IndexSubset)> = Vec::new();
    for i in 1..n {
        let mut subsets: Vec<IndexSubset> = IndexSubset::all(n).collect();
        subsets.sort();
        pairs.extend(subsets.into_iter().map(|a| (i, a)));
    }
    pairs
        .par_iter()
        .map(|(i, a)| {
            let expansion = monk_expand_with(*i, a, evaluation)?;
            let expansion = if equivariant {
                expansion
            } else {
                expansion.forget_t()
            };
            Ok(Relation {
                expansion,
                trivial: a.is_empty(),
            })
        })
        .collect()
}
