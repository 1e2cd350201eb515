//! Exact integer polynomials: [`RootPolynomial`] in `t_1, ..., t_n` and
//! [`TPolynomial`] in the single equivariant parameter `t`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Exponent vector of a monomial in `t_1, ..., t_n`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// vectors lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `t_1, ..., t_n` with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RootPolynomial {
    n: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl RootPolynomial {
    pub fn zero(n: usize) -> Self {
        RootPolynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(n);
        p.add_term(Monomial::one(n), c.into());
        p
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, 1)
    }

    /// The variable `t_i`, `1 <= i <= n`.
    pub fn variable(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::LetterOutOfRange { letter: i, max: n });
        }
        let mut exps = vec![0; n];
        exps[i - 1] = 1;
        let mut p = Self::zero(n);
        p.add_term(Monomial(exps), BigInt::one());
        Ok(p)
    }

    /// The root `t_j - t_k`.
    pub fn root(n: usize, j: usize, k: usize) -> Result<Self> {
        Self::variable(n, j)?.try_sub(&Self::variable(n, k)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigInt {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    /// Whether every term has the same total degree (true for zero).
    pub fn is_homogeneous(&self) -> bool {
        self.terms
            .keys()
            .map(Monomial::degree)
            .collect::<std::collections::BTreeSet<_>>()
            .len()
            <= 1
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::RankMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = Self::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.n);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.n), |acc, _| &acc * self)
    }

    /// Substitutes `t_i ↦ images[i-1]`; the images share a common rank.
    pub fn substitute(&self, images: &[RootPolynomial]) -> Result<RootPolynomial> {
        if images.len() != self.n {
            return Err(Error::RankMismatch {
                left: self.n,
                right: images.len(),
            });
        }
        let target = images.first().map_or(0, RootPolynomial::n);
        if let Some(bad) = images.iter().find(|p| p.n != target) {
            return Err(Error::RankMismatch {
                left: target,
                right: bad.n,
            });
        }
        let mut out = RootPolynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = RootPolynomial::constant(target, c.clone());
            for (img, &e) in images.iter().zip(m.exponents()) {
                if e > 0 {
                    term = &term * &img.pow(e);
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Rewrites the polynomial in the simple roots `α_i = t_i - t_{i+1}`.
    ///
    /// The result has `n - 1` variables, variable `i` standing for `α_i`.
    /// Fails when the polynomial is not in the subring generated by the
    /// roots, i.e. when it does not depend on differences of the `t_i` only.
    pub fn in_simple_roots(&self) -> Result<RootPolynomial> {
        let n = self.n;
        if n == 0 {
            return Ok(self.clone());
        }
        // t_i = α_i + ... + α_{n-1} + t_n, with t_n carried as variable n.
        let images: Vec<RootPolynomial> = (1..=n)
            .map(|i| {
                (i..=n).fold(RootPolynomial::zero(n), |acc, j| {
                    &acc + &RootPolynomial::variable(n, j).expect("in range")
                })
            })
            .collect();
        let rewritten = self.substitute(&images)?;
        let mut out = RootPolynomial::zero(n - 1);
        for (m, c) in &rewritten.terms {
            if m.0[n - 1] != 0 {
                return Err(Error::Precondition(format!(
                    "{self} is not a polynomial in the simple roots"
                )));
            }
            out.add_term(Monomial(m.0[..n - 1].to_vec()), c.clone());
        }
        Ok(out)
    }

    /// Whether every coefficient is nonnegative.
    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// The restriction to the circle: `t_i ↦ (n - i + 1) t`.
    pub fn project_s1(&self) -> TPolynomial {
        let weights: Vec<BigInt> = (1..=self.n).map(|i| BigInt::from(self.n - i + 1)).collect();
        let mut out = TPolynomial::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            for (w, &e) in weights.iter().zip(m.exponents()) {
                coeff *= num_traits::pow(w.clone(), e as usize);
            }
            out.add_term(m.degree(), coeff);
        }
        out
    }
}

impl Add for &RootPolynomial {
    type Output = RootPolynomial;

    /// Panics on rank mismatch; use [`RootPolynomial::try_add`] to handle it.
    fn add(self, rhs: &RootPolynomial) -> RootPolynomial {
        self.try_add(rhs)
            .expect("rank mismatch in polynomial addition")
    }
}

impl Sub for &RootPolynomial {
    type Output = RootPolynomial;

    fn sub(self, rhs: &RootPolynomial) -> RootPolynomial {
        self.try_sub(rhs)
            .expect("rank mismatch in polynomial subtraction")
    }
}

impl Mul for &RootPolynomial {
    type Output = RootPolynomial;

    fn mul(self, rhs: &RootPolynomial) -> RootPolynomial {
        self.try_mul(rhs)
            .expect("rank mismatch in polynomial multiplication")
    }
}

impl Neg for &RootPolynomial {
    type Output = RootPolynomial;

    fn neg(self) -> RootPolynomial {
        RootPolynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl AddAssign<&RootPolynomial> for RootPolynomial {
    fn add_assign(&mut self, rhs: &RootPolynomial) {
        assert_eq!(self.n, rhs.n, "rank mismatch in polynomial addition");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

fn write_signed_terms<I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (String, BigInt)>,
{
    let mut first = true;
    let mut any = false;
    for (body, c) in terms {
        any = true;
        let (neg, abs) = (c.is_negative(), c.abs());
        let sep = match (first, neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        first = false;
        if body.is_empty() {
            write!(f, "{sep}{abs}")?;
        } else if abs.is_one() {
            write!(f, "{sep}{body}")?;
        } else {
            write!(f, "{sep}{abs}{body}")?;
        }
    }
    if !any {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for RootPolynomial {
    /// Terms in descending graded-lex order, e.g. `t1^2 - 2t1t3 + 5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().rev().map(|(m, c)| {
            let body: String =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            format!("t{}", i + 1)
                        } else {
                            format!("t{}^{e}", i + 1)
                        }
                    })
                    .collect();
            (body, c.clone())
        });
        write_signed_terms(f, terms)
    }
}

impl fmt::Debug for RootPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A polynomial in `t` with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TPolynomial {
    coefficients: BTreeMap<u32, BigInt>,
}

impl TPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c t^d`.
    pub fn monomial(c: impl Into<BigInt>, d: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(d, c.into());
        p
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Degree of the leading term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.coefficients.keys().next_back().copied()
    }

    pub fn coefficient(&self, d: u32) -> BigInt {
        self.coefficients.get(&d).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coefficients.iter().map(|(&d, c)| (d, c))
    }

    /// `Some((c, d))` when the polynomial is the single term `c t^d`.
    pub fn as_monomial(&self) -> Option<(&BigInt, u32)> {
        if self.coefficients.len() == 1 {
            self.coefficients.iter().next().map(|(&d, c)| (c, d))
        } else {
            None
        }
    }

    /// Whether this is `c t^d` with `c >= 0`, for some `d` (zero included).
    pub fn is_nonnegative_monomial(&self) -> bool {
        self.is_zero() || self.as_monomial().is_some_and(|(c, _)| c.is_positive())
    }

    fn add_term(&mut self, d: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coefficients.entry(d).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coefficients.remove(&d);
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        for (&d, x) in &self.coefficients {
            out.add_term(d, x * c);
        }
        out
    }

    /// Exact quotient `self / divisor` in `Z[t]`, or `None` when the
    /// division leaves a remainder or needs non-integer coefficients.
    pub fn div_exact(&self, divisor: &TPolynomial) -> Result<Option<TPolynomial>> {
        let (lead_deg, lead) = match divisor.coefficients.iter().next_back() {
            Some((&d, c)) => (d, c.clone()),
            None => return Err(Error::DivisionByZero),
        };
        let mut rem = self.clone();
        let mut quotient = TPolynomial::zero();
        while let Some((&d, c)) = rem.coefficients.iter().next_back() {
            if d < lead_deg {
                return Ok(None);
            }
            let (q, r) = c.div_rem(&lead);
            if !r.is_zero() {
                return Ok(None);
            }
            let step = TPolynomial::monomial(q, d - lead_deg);
            rem = &rem - &(&step * divisor);
            quotient = &quotient + &step;
        }
        Ok(Some(quotient))
    }

    /// Whether `divisor` divides `self` in `Z[t]`.
    pub fn is_divisible_by(&self, divisor: &TPolynomial) -> Result<bool> {
        Ok(self.div_exact(divisor)?.is_some())
    }
}

/// Whether `d` divides `p` in `Z[t]`. Errors when `d` is zero.
pub fn divides(d: &TPolynomial, p: &TPolynomial) -> Result<bool> {
    p.is_divisible_by(d)
}

impl Add for &TPolynomial {
    type Output = TPolynomial;

    fn add(self, rhs: &TPolynomial) -> TPolynomial {
        let mut out = self.clone();
        for (&d, c) in &rhs.coefficients {
            out.add_term(d, c.clone());
        }
        out
    }
}

impl Sub for &TPolynomial {
    type Output = TPolynomial;

    fn sub(self, rhs: &TPolynomial) -> TPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &TPolynomial {
    type Output = TPolynomial;

    fn mul(self, rhs: &TPolynomial) -> TPolynomial {
        let mut out = TPolynomial::zero();
        for (&da, ca) in &self.coefficients {
            for (&db, cb) in &rhs.coefficients {
                out.add_term(da + db, ca * cb);
            }
        }
        out
    }
}

impl Neg for &TPolynomial {
    type Output = TPolynomial;

    fn neg(self) -> TPolynomial {
        TPolynomial {
            coefficients: self.coefficients.iter().map(|(&d, c)| (d, -c)).collect(),
        }
    }
}

impl AddAssign<&TPolynomial> for TPolynomial {
    fn add_assign(&mut self, rhs: &TPolynomial) {
        for (&d, c) in &rhs.coefficients {
            self.add_term(d, c.clone());
        }
    }
}

impl fmt::Display for TPolynomial {
    /// `0`, `45`, `3t`, `12t^5`, `2t^2 - t + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.coefficients.iter().rev().map(|(&d, c)| {
            let body = match d {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{d}"),
            };
            (body, c.clone())
        });
        write_signed_terms(f, terms)
    }
}

impl fmt::Debug for TPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for TPolynomial {
    type Err = Error;

    /// Parses the display form, e.g. `3600t^5` or `2t^2 - t + 1`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("cannot parse polynomial {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut out = TPolynomial::zero();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'-' => (-1, &rest[1..]),
                b'+' => (1, &rest[1..]),
                _ => (1, rest),
            };
            let end = body[1.min(body.len())..]
                .find(['+', '-'])
                .map_or(body.len(), |i| i + 1);
            let term = &body[..end];
            rest = &body[end..];
            let (coeff, degree) = match term.split_once('t') {
                None => (term.parse::<BigInt>().map_err(|_| bad())?, 0),
                Some((c, e)) => {
                    let c = if c.is_empty() {
                        BigInt::one()
                    } else {
                        c.parse::<BigInt>().map_err(|_| bad())?
                    };
                    let d = match e.strip_prefix('^') {
                        Some(e) => e.parse::<u32>().map_err(|_| bad())?,
                        None if e.is_empty() => 1,
                        None => return Err(bad()),
                    };
                    (c, d)
                }
            };
            out.add_term(degree, coeff * sign);
        }
        Ok(out)
    }
}

impl Serialize for TPolynomial {
    /// `{"degree": coefficient}` with exact integer coefficients.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.coefficients.len()))?;
        for (d, c) in &self.coefficients {
            let number =
                serde_json::Number::from_str(&c.to_string()).map_err(serde::ser::Error::custom)?;
            map.serialize_entry(&d.to_string(), &number)?;
        }
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn root(n: usize, j: usize, k: usize) -> RootPolynomial {
        RootPolynomial::root(n, j, k).unwrap()
    }

    #[test]
    fn telescoping_roots() {
        let sum = &root(3, 1, 2) + &root(3, 2, 3);
        assert_eq!(sum, root(3, 1, 3));
    }

    #[test]
    fn zero_annihilates() {
        let p = root(4, 1, 3);
        assert!((&p * &RootPolynomial::zero(4)).is_zero());
        assert!((&TPolynomial::monomial(7, 3) * &TPolynomial::zero()).is_zero());
    }

    #[test]
    fn t_products() {
        assert_eq!(
            &TPolynomial::t() * &TPolynomial::monomial(2, 1),
            TPolynomial::monomial(2, 2)
        );
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let err = root(3, 1, 2).try_add(&root(4, 1, 2)).unwrap_err();
        assert_eq!(err, Error::RankMismatch { left: 3, right: 4 });
        assert!(root(3, 1, 2).try_mul(&root(4, 1, 2)).is_err());
        assert!(RootPolynomial::variable(3, 4).is_err());
    }

    #[test]
    fn projection_examples() {
        assert_eq!(root(7, 1, 2).project_s1(), TPolynomial::t());
        assert_eq!(root(7, 1, 4).project_s1(), TPolynomial::monomial(3, 1));
        assert_eq!(
            RootPolynomial::constant(7, 5).project_s1(),
            TPolynomial::constant(5)
        );
    }

    #[test]
    fn projection_of_positive_roots_is_root_length() {
        for n in 2..=8 {
            for j in 1..=n {
                for k in j + 1..=n {
                    let expected = TPolynomial::monomial((k - j) as i64, 1);
                    assert_eq!(root(n, j, k).project_s1(), expected);
                }
            }
        }
    }

    #[test]
    fn divides_examples() {
        let d = TPolynomial::monomial(12, 5);
        assert!(divides(&d, &TPolynomial::monomial(3600, 5)).unwrap());
        assert!(!divides(&TPolynomial::t(), &TPolynomial::one()).unwrap());
        assert!(!divides(&TPolynomial::monomial(2, 1), &TPolynomial::monomial(3, 1)).unwrap());
        assert_eq!(
            divides(&TPolynomial::zero(), &d).unwrap_err(),
            Error::DivisionByZero
        );
        assert!(divides(&d, &TPolynomial::zero()).unwrap());
    }

    #[test]
    fn exact_division_of_general_polynomials() {
        // (t + 1)(2t - 3) = 2t^2 - t - 3
        let a: TPolynomial = "t + 1".parse().unwrap();
        let b: TPolynomial = "2t - 3".parse().unwrap();
        let p = &a * &b;
        assert_eq!(p.to_string(), "2t^2 - t - 3");
        assert_eq!(p.div_exact(&a).unwrap(), Some(b.clone()));
        assert_eq!(p.div_exact(&b).unwrap(), Some(a));
        assert_eq!((&p + &TPolynomial::one()).div_exact(&b).unwrap(), None);
    }

    #[test]
    fn display_grammar() {
        assert_eq!(TPolynomial::zero().to_string(), "0");
        assert_eq!(TPolynomial::constant(45).to_string(), "45");
        assert_eq!(TPolynomial::monomial(3, 1).to_string(), "3t");
        assert_eq!(TPolynomial::monomial(12, 5).to_string(), "12t^5");
        assert_eq!(TPolynomial::t().to_string(), "t");
        assert_eq!(TPolynomial::monomial(-1, 2).to_string(), "-t^2");
        assert_eq!(root(3, 1, 3).to_string(), "t1 - t3");
        let sq = &root(3, 1, 2) * &root(3, 1, 2);
        assert_eq!(sq.to_string(), "t1^2 - 2t1t2 + t2^2");
    }

    #[test]
    fn json_form() {
        let p = TPolynomial::monomial(3600, 5);
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"5":3600}"#);
        let big = TPolynomial::monomial(BigInt::from(10u8).pow(30), 2);
        assert_eq!(
            serde_json::to_string(&big).unwrap(),
            r#"{"2":1000000000000000000000000000000}"#
        );
    }

    #[test]
    fn simple_root_rewrite() {
        // t1 - t3 = α1 + α2
        let p = root(3, 1, 3).in_simple_roots().unwrap();
        assert_eq!(p.to_string(), "t1 + t2");
        assert!(RootPolynomial::variable(3, 1)
            .unwrap()
            .in_simple_roots()
            .is_err());
        let sq = (&root(4, 1, 4) * &root(4, 2, 3)).in_simple_roots().unwrap();
        assert!(sq.has_nonnegative_coefficients());
    }

    fn small_poly(n: usize) -> impl Strategy<Value = RootPolynomial> {
        proptest::collection::vec((proptest::collection::vec(0u32..3, n), -5i64..=5), 0..5)
            .prop_map(move |terms| {
                let mut p = RootPolynomial::zero(n);
                for (exps, c) in terms {
                    p.add_term(Monomial(exps), BigInt::from(c));
                }
                p
            })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(3), b in small_poly(3), c in small_poly(3)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn projection_is_a_ring_map(a in small_poly(4), b in small_poly(4)) {
            prop_assert_eq!((&a * &b).project_s1(), &a.project_s1() * &b.project_s1());
            prop_assert_eq!((&a + &b).project_s1(), &a.project_s1() + &b.project_s1());
        }

        #[test]
        fn display_parses_back(terms in proptest::collection::vec((0u32..6, -50i64..=50), 0..5)) {
            let mut p = TPolynomial::zero();
            for (d, c) in terms {
                p.add_term(d, BigInt::from(c));
            }
            let back: TPolynomial = p.to_string().parse().unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn product_divides_exactly(
            a in proptest::collection::vec(-4i64..=4, 1..4),
            b in proptest::collection::vec(-4i64..=4, 1..4),
        ) {
            let build = |cs: &[i64]| {
                let mut p = TPolynomial::zero();
                for (d, &c) in cs.iter().enumerate() {
                    p.add_term(d as u32, BigInt::from(c));
                }
                p
            };
            let (pa, pb) = (build(&a), build(&b));
            prop_assume!(!pb.is_zero());
            let prod = &pa * &pb;
            prop_assert_eq!(prod.div_exact(&pb).unwrap(), Some(pa));
        }
    }
}
