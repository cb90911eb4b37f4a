//! Oracle suites: every closed form checked against full enumeration over
//! all partitions up to a size bound.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::enumerate::{
    brute_stats, cooccurrence_matrix, count_by_enumeration, descent_position_counts, enumerate_syt,
    first_row_prefix_fraction,
};
use crate::error::Result;
use crate::partition::{factorial, partitions_of, Partition};
use crate::rational::{from_count, int, Rational};
use crate::sample::{exhaustive_audit, sample_syt_par};
use crate::stats::{
    boundedness_scan, coefficient_c, corollary_scan, expectation, shape_stats, variance, Bound, ShapeFamily,
};
use crate::tableau::{Builtin, FSpec, Tableau};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: &'static str,
    pub max_n: usize,
    pub shapes: usize,
    pub passed: bool,
    /// First failing shape, if any.
    pub failure: Option<String>,
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    /// Largest `n` for enumeration-backed checks.
    pub max_n: usize,
    /// Largest `n` for the hook-count check, which only walks tableaux.
    pub count_max_n: usize,
    /// Largest `n` for checks on coefficients alone.
    pub coefficient_max_n: usize,
    /// Largest `n` for the `n!`-filling sampler audit.
    pub audit_max_n: usize,
    /// Draws for the sampler frequency test on (4,3,2).
    pub sampler_draws: u64,
    pub guard: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_n: 9,
            count_max_n: 12,
            coefficient_max_n: 30,
            audit_max_n: 7,
            sampler_draws: 100_000,
            guard: crate::enumerate::DEFAULT_GUARD,
        }
    }
}

/// Runs `check` on every partition of `1..=max_n`, stopping at the first
/// failure.
fn over_shapes<F>(name: &'static str, max_n: usize, mut check: F) -> Result<CheckOutcome>
where
    F: FnMut(&Partition) -> Result<Option<String>>,
{
    let mut shapes = 0;
    for n in 1..=max_n {
        for l in partitions_of(n) {
            shapes += 1;
            if let Some(why) = check(&l)? {
                return Ok(CheckOutcome {
                    check: name,
                    max_n,
                    shapes,
                    passed: false,
                    failure: Some(format!("{l}: {why}")),
                });
            }
        }
    }
    Ok(CheckOutcome { check: name, max_n, shapes, passed: true, failure: None })
}

fn fail_if(cond: bool, why: impl FnOnce() -> String) -> Option<String> {
    cond.then(why)
}

pub fn hook_count(max_n: usize, guard: u64) -> Result<CheckOutcome> {
    over_shapes("hook_count", max_n, |l| {
        let (formula, brute) = (l.count_syt()?, count_by_enumeration(l, guard)?);
        Ok(fail_if(formula != brute, || format!("formula {formula} vs enumeration {brute}")))
    })
}

pub fn robinson_schensted(max_n: usize) -> Result<CheckOutcome> {
    let mut outcome = CheckOutcome { check: "sum_of_squares", max_n, shapes: 0, passed: true, failure: None };
    for n in 0..=max_n {
        let mut total = BigUint::ZERO;
        for l in partitions_of(n) {
            outcome.shapes += 1;
            total += l.count_syt()?.pow(2);
        }
        if total != factorial(n) {
            outcome.passed = false;
            outcome.failure = Some(format!("n = {n}: {total}"));
            break;
        }
    }
    Ok(outcome)
}

pub fn moments(max_n: usize, guard: u64) -> Result<CheckOutcome> {
    over_shapes("moments", max_n, |l| {
        for b in Builtin::standard_set() {
            let f = b.build(l.size());
            let brute = brute_stats(l, &f, guard)?;
            let (e, v) = (expectation(l, &f)?, variance(l, &f)?);
            if e != brute.mean || v != brute.variance {
                return Ok(Some(format!(
                    "{}: closed ({e}, {v}) vs brute ({}, {})",
                    b.tag(),
                    brute.mean,
                    brute.variance
                )));
            }
        }
        Ok(None)
    })
}

pub fn position_invariance(max_n: usize, guard: u64) -> Result<CheckOutcome> {
    over_shapes("position_invariance", max_n, |l| {
        let counts = descent_position_counts(l, guard)?;
        let m = cooccurrence_matrix(l, guard)?;
        let same = |v: Vec<&BigUint>| v.windows(2).all(|w| w[0] == w[1]);
        Ok(fail_if(!counts.all_equal(), || "descent counts differ".into())
            .or_else(|| fail_if(!same(m.adjacent().map(|e| e.2).collect()), || "adjacent pairs differ".into()))
            .or_else(|| fail_if(!same(m.gap().map(|e| e.2).collect()), || "gap pairs differ".into())))
    })
}

pub fn cooccurrence_counts(max_n: usize, guard: u64) -> Result<CheckOutcome> {
    over_shapes("cooccurrence_counts", max_n, |l| {
        let s = shape_stats(l)?;
        let counts = descent_position_counts(l, guard)?;
        let m = cooccurrence_matrix(l, guard)?;
        let mismatch = |got: &BigUint, want: &Rational| from_count(got) != *want;
        if counts.counts.iter().any(|c| mismatch(c, &s.descents_at_position())) {
            return Ok(Some(format!("descents at i != N c = {}", s.descents_at_position())));
        }
        if m.adjacent().any(|(_, _, c)| mismatch(c, &s.adjacent_cooccurrences())) {
            return Ok(Some(format!("adjacent != {}", s.adjacent_cooccurrences())));
        }
        if m.gap().any(|(_, _, c)| mismatch(c, &s.gap_cooccurrences())) {
            return Ok(Some(format!("gap != {}", s.gap_cooccurrences())));
        }
        Ok(None)
    })
}

/// `N c'`, `N d'` and the gap count are integers, without enumeration.
pub fn integrality(max_n: usize) -> Result<CheckOutcome> {
    over_shapes("integrality", max_n, |l| {
        Ok(fail_if(!shape_stats(l)?.counts_are_integral(), || "non-integral tableau count".into()))
    })
}

pub fn prefix_fractions(max_n: usize, guard: u64) -> Result<CheckOutcome> {
    over_shapes("prefix_fractions", max_n, |l| {
        let s = shape_stats(l)?;
        let conj = l.conjugate();
        let pairs = [
            (first_row_prefix_fraction(l, 3, guard)?, &s.d_self, "d"),
            (first_row_prefix_fraction(&conj, 3, guard)?, &s.d_conj, "d'"),
            (first_row_prefix_fraction(l, 4, guard)?, &s.e_self, "e"),
            (first_row_prefix_fraction(&conj, 4, guard)?, &s.e_conj, "e'"),
        ];
        Ok(pairs
            .iter()
            .find(|(brute, formula, _)| brute != *formula)
            .map(|(brute, formula, name)| format!("{name}: {formula} vs fraction {brute}")))
    })
}

pub fn sampler_audit(max_n: usize) -> Result<CheckOutcome> {
    over_shapes("sampler_audit", max_n, |l| {
        let report = exhaustive_audit(l, factorial(max_n).try_into().unwrap_or(u64::MAX))?;
        Ok(fail_if(!report.uniform, || format!("expected each tableau {} times", report.expected)))
    })
}

/// Seeded draws on (4,3,2): every frequency within 4σ of `1/N` and the
/// chi-square statistic below its 0.999 quantile.
pub fn sampler_statistics(draws: u64, seed: u64, guard: u64) -> Result<CheckOutcome> {
    let shape = Partition::new(vec![4, 3, 2])?;
    let mut outcome = CheckOutcome { check: "sampler_statistics", max_n: 9, shapes: 1, passed: true, failure: None };
    let mut freq: HashMap<Tableau, u64> = enumerate_syt(&shape, guard)?.map(|t| (t, 0)).collect();
    for t in sample_syt_par(&shape, draws, seed) {
        *freq.get_mut(&t).expect("sampler returns tableaux of the shape") += 1;
    }
    let k = draws as f64;
    let prob = 1.0 / freq.len() as f64;
    let sigma = (prob * (1.0 - prob) / k).sqrt();
    let expected = k * prob;
    let worst = freq.values().map(|&c| (c as f64 / k - prob).abs() / sigma).fold(0.0, f64::max);
    let chi2: f64 = freq.values().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let limit = ChiSquared::new(freq.len() as f64 - 1.0).expect("positive degrees of freedom").inverse_cdf(0.999);
    if worst > 4.0 || chi2 >= limit {
        outcome.passed = false;
        outcome.failure = Some(format!("max deviation {worst:.2} sigma, chi2 {chi2:.1} vs {limit:.1}"));
    }
    Ok(outcome)
}

/// Direction checks along three families, all from closed forms.
pub fn boundedness_directions() -> Result<CheckOutcome> {
    let mut outcome =
        CheckOutcome { check: "boundedness_directions", max_n: 10_000, shapes: 0, passed: true, failure: None };
    let mut fail = |why: String| {
        if outcome.passed {
            outcome.passed = false;
            outcome.failure = Some(why);
        }
    };

    // (m, m) with ones: V/E² at most 1 and non-increasing from m = 2
    let r = boundedness_scan(&ShapeFamily::TwoRow, &FSpec::Builtin(Builtin::Ones), 1..=1000)?;
    let nv: Vec<&Rational> = r.rows.iter().filter_map(|row| row.moments.normalized_variance.as_ref()).collect();
    if nv.len() != r.rows.len() || nv.iter().any(|v| **v > Rational::one()) {
        fail("two-row V/E² undefined or above 1".into());
    }
    if let Some(w) = nv[1..].windows(2).position(|w| w[1] > w[0]) {
        fail(format!("two-row V/E² increases at m = {}", w + 3));
    }
    let mut shapes = r.rows.len();

    // (m − 1, 1) with geometric(2): both quantities strictly increasing
    let r = boundedness_scan(&ShapeFamily::Hook, &FSpec::Builtin(Builtin::Geometric(int(2))), 10..=25)?;
    for w in r.rows.windows(2) {
        if w[1].min_c <= w[0].min_c || w[1].moments.normalized_variance <= w[0].moments.normalized_variance {
            fail(format!("hook trajectory not increasing at m = {}", w[1].m));
        }
    }
    shapes += r.rows.len();

    let two = Bound::Finite(int(2));
    if let Some((n, _)) = corollary_scan(&Builtin::Ones, 2..=10_000)?.into_iter().find(|(_, r)| *r > two) {
        fail(format!("ones ratio above 2 at n = {n}"));
    }
    let ten = Bound::Finite(int(10));
    if !corollary_scan(&Builtin::Geometric(int(2)), 2..=40)?.iter().any(|(_, r)| *r > ten) {
        fail("geometric(2) ratio stays at most 10 for n ≤ 40".into());
    }
    outcome.shapes = shapes;
    Ok(outcome)
}

pub fn conjugation(max_n: usize, coefficient_max_n: usize, guard: u64) -> Result<CheckOutcome> {
    let coeffs = over_shapes("conjugation", coefficient_max_n, |l| {
        let sum = coefficient_c(l) + coefficient_c(&l.conjugate());
        Ok(fail_if(l.size() >= 2 && !sum.is_one(), || format!("c + c' = {sum}")))
    })?;
    if !coeffs.passed {
        return Ok(coeffs);
    }
    let mut tableaux = over_shapes("conjugation", max_n, |l| {
        for t in enumerate_syt(l, guard)? {
            if t.transpose().descent_set() != t.descent_set().complement(l.size()) {
                return Ok(Some(format!("tableau {:?}", t.rows())));
            }
        }
        Ok(None)
    })?;
    tableaux.shapes += coeffs.shapes;
    Ok(tableaux)
}

/// Seed for the sampler frequency check.
pub const SUITE_SEED: u64 = 0x5eed;

/// Every suite, in a fixed order.
pub fn run_suite(cfg: SuiteConfig) -> Result<Vec<CheckOutcome>> {
    Ok(vec![
        hook_count(cfg.count_max_n, cfg.guard)?,
        robinson_schensted(cfg.count_max_n.min(10))?,
        moments(cfg.max_n, cfg.guard)?,
        position_invariance(cfg.max_n, cfg.guard)?,
        cooccurrence_counts(cfg.max_n, cfg.guard)?,
        integrality(cfg.coefficient_max_n)?,
        prefix_fractions(cfg.max_n, cfg.guard)?,
        sampler_audit(cfg.audit_max_n)?,
        sampler_statistics(cfg.sampler_draws, SUITE_SEED, cfg.guard)?,
        boundedness_directions()?,
        conjugation(cfg.max_n, cfg.coefficient_max_n, cfg.guard)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let cfg = SuiteConfig { max_n: 6, count_max_n: 8, audit_max_n: 5, ..Default::default() };
        let out = run_suite(cfg).unwrap();
        assert_eq!(out.len(), 11);
        for c in &out {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn suite_reports_guard_errors() {
        let err = hook_count(12, 10).unwrap_err();
        assert_eq!(err.name(), "GuardExceeded");
    }
}
