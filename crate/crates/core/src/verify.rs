//! Self-contained property suites that recheck the closed forms against the
//! subword-sum evaluator at a given rank.

use std::fmt;

use num_integer::binomial;

use crate::billey::{p_restriction, BilleyWord};
use crate::classes::{
    diagonal_value, disjoint_product_check, minimality_check, pi_at, preimage_classes,
    restriction_closed_form, single_string_restriction, uniqueness_holds, Evaluation,
    PetersonClass,
};
use crate::error::Result;
use crate::monk::{verify_monk, BasisTables};
use crate::permutation::Permutation;
use crate::subset::IndexSubset;

/// Ranks above this skip the multivariate part of [`Suite::Positivity`].
pub const MULTIVARIATE_POSITIVITY_MAX_RANK: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    /// Closed-form restriction values against the subword-sum evaluator.
    Restrictions,
    /// Upper-triangularity, degrees, and class counts per degree.
    Basis,
    /// Monk expansions at every fixed point and closed-form constants.
    Monk,
    /// Table factorization for separated disjoint subsets.
    DisjointProducts,
    /// Divisibility, uniqueness, and preimage counts over all of `S_n`.
    Minimality,
    /// Nonnegativity in simple roots and of projected values.
    Positivity,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Restrictions,
        Suite::Basis,
        Suite::Monk,
        Suite::DisjointProducts,
        Suite::Minimality,
        Suite::Positivity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Restrictions => "restrictions",
            Suite::Basis => "basis",
            Suite::Monk => "monk",
            Suite::DisjointProducts => "disjoint-products",
            Suite::Minimality => "minimality",
            Suite::Positivity => "positivity",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub n: usize,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite, n: usize) -> Self {
        SuiteReport {
            suite,
            n,
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} n={} {} ({} checks)",
            self.n, self.suite, self.checks
        )?;
        for failure in &self.failures {
            write!(f, "\n  {failure}")?;
        }
        Ok(())
    }
}

/// Runs one suite at rank `n >= 2`.
pub fn run_suite(suite: Suite, n: usize, evaluation: Evaluation) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(suite, n);
    match suite {
        Suite::Restrictions => restrictions(n, &mut report)?,
        Suite::Basis => basis(n, evaluation, &mut report)?,
        Suite::Monk => {
            let monk = verify_monk(&BasisTables::build(n, evaluation)?)?;
            report.checks = monk.evaluations;
            report.failures = monk.violations.iter().map(ToString::to_string).collect();
        }
        Suite::DisjointProducts => disjoint_products(n, evaluation, &mut report)?,
        Suite::Minimality => minimality(n, &mut report)?,
        Suite::Positivity => positivity(n, &mut report)?,
    }
    Ok(report)
}

/// Runs every suite at every rank `2..=n`.
pub fn run_all(n: usize, evaluation: Evaluation) -> Result<Vec<SuiteReport>> {
    let mut reports = Vec::new();
    for rank in 2..=n {
        for suite in Suite::ALL {
            reports.push(run_suite(suite, rank, evaluation)?);
        }
    }
    Ok(reports)
}

fn restrictions(n: usize, report: &mut SuiteReport) -> Result<()> {
    for b in IndexSubset::all(n) {
        let word = BilleyWord::for_fixed_point(&b);
        for a in IndexSubset::all(n) {
            let oracle = word.projected_sigma(&a.basis_element())?;
            let closed = restriction_closed_form(&a, &b)?;
            report.check(closed == oracle, || {
                format!("p_v{a}(w{b}): {closed} vs {oracle}")
            });
        }
        let diagonal = diagonal_value(&b);
        let oracle = word.projected_sigma(&b.basis_element())?;
        report.check(diagonal == oracle, || {
            format!("diagonal at {b}: {diagonal} vs {oracle}")
        });
        for i in 1..n {
            let closed = pi_at(i, &b)?;
            let oracle = word.projected_sigma(&Permutation::simple(n, i)?)?;
            report.check(closed == oracle, || {
                format!("p_{i}(w{b}): {closed} vs {oracle}")
            });
        }
        if b.strings().len() == 1 && b.len() >= 2 {
            for k in b.members() {
                let a = b.without(k);
                let closed = single_string_restriction(&a, &b)?;
                let oracle = word.projected_sigma(&a.basis_element())?;
                report.check(closed == oracle, || {
                    format!("single string {a} in {b}: {closed} vs {oracle}")
                });
            }
        }
    }
    Ok(())
}

fn basis(n: usize, evaluation: Evaluation, report: &mut SuiteReport) -> Result<()> {
    let tables = BasisTables::build(n, evaluation)?;
    let mut per_degree = vec![0u64; n];
    for class in tables.classes() {
        let a = *class.index().expect("basis class");
        report.check(class.is_upper_triangular_for(&a), || {
            format!("p_v{a} is not upper-triangular")
        });
        for (b, value) in class.entries() {
            let ok = value.is_zero()
                || (value.is_nonnegative_monomial() && value.degree() == Some(a.len() as u32));
            report.check(ok, || {
                format!("p_v{a}(w{b}) = {value} is not c t^{}", a.len())
            });
        }
        if let Some(d) = class.at(&a).degree() {
            per_degree[d as usize] += 1;
        }
    }
    for (j, &count) in per_degree.iter().enumerate() {
        let expected = binomial(n as u64 - 1, j as u64);
        report.check(count == expected, || {
            format!("{count} classes of degree {j}, expected {expected}")
        });
    }
    Ok(())
}

fn disjoint_products(n: usize, evaluation: Evaluation, report: &mut SuiteReport) -> Result<()> {
    for b in IndexSubset::all(n) {
        for b2 in IndexSubset::all(n) {
            if b.mask() & b2.mask() != 0 || b.is_adjacent_to(&b2) {
                continue;
            }
            let ok = disjoint_product_check(&b, &b2, evaluation)?;
            report.check(ok, || format!("p_v{} != p_v{b} p_v{b2}", b.union(&b2)));
        }
    }
    Ok(())
}

fn minimality(n: usize, report: &mut SuiteReport) -> Result<()> {
    let subsets: Vec<IndexSubset> = IndexSubset::all(n).collect();
    let basis: Vec<PetersonClass> = subsets
        .iter()
        .map(|a| PetersonClass::basis_with(a, Evaluation::Oracle))
        .collect::<Result<_>>()?;
    let mut preimages: Vec<Vec<Permutation>> = vec![Vec::new(); subsets.len()];
    for w in Permutation::all(n) {
        let class = PetersonClass::generic(&w)?;
        for (idx, a) in subsets.iter().enumerate() {
            if class.same_values(&basis[idx]) {
                preimages[idx].push(w.clone());
            }
            if class.is_upper_triangular_for(a) {
                let ok = minimality_check(&w, a)?;
                report.check(ok, || format!("p_v{a}(w{a}) does not divide p_{w}(w{a})"));
                let ok = uniqueness_holds(&w, a, &basis[idx])?;
                report.check(ok, || format!("p_{w} agrees with p_v{a} at w{a} only"));
            }
        }
    }
    for (idx, a) in subsets.iter().enumerate() {
        let big = a.strings().iter().filter(|s| s.len() >= 2).count();
        let found = preimages[idx].len();
        report.check(found == 1 << big, || {
            format!("{found} permutations give p_v{a}, expected {}", 1 << big)
        });
        let pruned = preimage_classes(a)?;
        report.check(pruned == preimages[idx], || {
            format!("pruned preimage scan differs for {a}")
        });
    }
    Ok(())
}

fn positivity(n: usize, report: &mut SuiteReport) -> Result<()> {
    if n <= MULTIVARIATE_POSITIVITY_MAX_RANK {
        for w in Permutation::all(n) {
            let word = BilleyWord::for_permutation(&w);
            for v in Permutation::all(n) {
                let sigma = word.sigma(&v)?;
                let ok = sigma.in_simple_roots()?.has_nonnegative_coefficients();
                report.check(ok, || {
                    format!("σ_{v}({w}) = {sigma} is not positive in simple roots")
                });
            }
        }
    }
    for b in IndexSubset::all(n) {
        for v in Permutation::all(n) {
            let value = p_restriction(&v, &b)?;
            report.check(value.is_nonnegative_monomial(), || {
                format!("p_{v}(w{b}) = {value}")
            });
        }
    }
    Ok(())
}
