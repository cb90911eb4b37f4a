//! Closed-form moments of descent functions over uniform random SYT.
//!
//! With `N` the tableau count and `n = |λ|`, the mean of `d_f` over SYT(λ) is
//! `c_{λ'} Σ f(i)` and the variance is
//!
//! ```text
//! c_{λ'} Σ f(i)² + 2 d_{λ'} Σ f(i) f(i+1)
//!   + 2 (c_{λ'} − d_λ − d_{λ'} + e_λ + e_{λ'}) Σ_{i−j>1} f(i) f(j) − (c_{λ'} Σ f(i))²
//! ```
//!
//! where
//!
//! ```text
//! c_{λ'} = Σ_{i≥j} λ'_i (λ'_j − 1) / (n)_2
//! d_λ    = Σ_{i≥j≥k} λ_i (λ_j − 1)(λ_k − 2) / (n)_3              (λ_k ≥ 3)
//! e_λ    = Σ_{i≥j≥k≥l} λ_i (λ_j − 1)(λ_k − 2)(λ_l − 3) / (n)_4  (λ_l ≥ 4)
//! ```
//!
//! and `(n)_t` is the falling factorial. `d_λ` and `e_λ` are the fractions of
//! SYT(λ) holding `1, 2, 3` (resp. `1, 2, 3, 4`) in the first row.

use std::cmp::Ordering;
use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::rational::{approx, from_count, int, BigCount, Rational};
use crate::tableau::{Builtin, DescentFunction, FSpec};

/// Sum over index tuples `i_1 ≥ i_2 ≥ ... ≥ i_t` of
/// `∏_s (λ_{i_s} − (s − 1))`, restricted to `λ_{i_t} ≥ t` so that every
/// factor is positive.
///
/// Indices are grouped into runs of equal parts. A run of `r` consecutive
/// tuple entries inside a block of `μ` equal parts stands for
/// `C(μ + r − 1, r)` weakly decreasing index sequences.
pub(crate) fn ordered_tuple_sum(shape: &Partition, t: usize) -> BigInt {
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    for &p in shape.parts() {
        match blocks.last_mut() {
            Some((v, m)) if *v == p => *m += 1,
            _ => blocks.push((p, 1)),
        }
    }
    let mut seq = Vec::with_capacity(t);
    let mut total = BigInt::zero();
    tuple_rec(&blocks, t, blocks.len(), &mut seq, &mut total);
    total
}

fn tuple_rec(blocks: &[(usize, usize)], t: usize, max_block: usize, seq: &mut Vec<usize>, total: &mut BigInt) {
    if seq.len() == t {
        if blocks[seq[t - 1]].0 < t {
            return;
        }
        let mut term = BigInt::one();
        for (s, &b) in seq.iter().enumerate() {
            term *= blocks[b].0 as i64 - s as i64;
        }
        let mut start = 0;
        while start < t {
            let end = (start..t).find(|&e| seq[e] != seq[start]).unwrap_or(t);
            term *= binomial(blocks[seq[start]].1 + end - start - 1, end - start);
            start = end;
        }
        *total += term;
        return;
    }
    for b in 0..max_block {
        seq.push(b);
        tuple_rec(blocks, t, b + 1, seq, total);
        seq.pop();
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn falling(n: usize, t: usize) -> BigInt {
    (0..t).fold(BigInt::one(), |acc, i| acc * (n as i64 - i as i64))
}

fn normalized_tuple_sum(shape: &Partition, t: usize) -> Rational {
    let sum = ordered_tuple_sum(shape, t);
    if sum.is_zero() {
        // also covers n < t, where no part can reach t
        return Rational::zero();
    }
    Rational::new(sum, falling(shape.size(), t))
}

/// `c_{λ'}`: the probability of a descent at any fixed position. Zero for
/// `n < 2`.
pub fn coefficient_c(shape: &Partition) -> Rational {
    let n = shape.size();
    if n < 2 {
        return Rational::zero();
    }
    let double_sum = normalized_tuple_sum(&shape.conjugate(), 2);
    let bracket = bracket_form(shape);
    assert_eq!(double_sum, bracket, "the two forms of c disagree for {shape}");
    double_sum
}

/// `(1/2)[1 + Σ λ'_i(λ'_i − 1)/(n(n−1)) − Σ λ_i(λ_i − 1)/(n(n−1))]`.
fn bracket_form(shape: &Partition) -> Rational {
    let n = shape.size() as i64;
    let pairs = |p: &Partition| -> i64 { p.parts().iter().map(|&x| (x * (x - 1)) as i64).sum() };
    let num = n * (n - 1) + pairs(&shape.conjugate()) - pairs(shape);
    Rational::new(num.into(), (2 * n * (n - 1)).into())
}

/// `d_λ`.
pub fn coefficient_d(shape: &Partition) -> Rational {
    normalized_tuple_sum(shape, 3)
}

/// `e_λ`.
pub fn coefficient_e(shape: &Partition) -> Rational {
    normalized_tuple_sum(shape, 4)
}

/// All coefficients for a shape and its conjugate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeStats {
    pub count: BigCount,
    /// `c_{λ'}`
    pub c_conj: Rational,
    /// `c_λ`
    pub c_self: Rational,
    pub d_self: Rational,
    pub d_conj: Rational,
    pub e_self: Rational,
    pub e_conj: Rational,
}

impl ShapeStats {
    /// Probability of descents at both `i` and `j` when `|i − j| > 1`:
    /// `c_{λ'} − d_λ − d_{λ'} + e_λ + e_{λ'}`.
    pub fn gap_coefficient(&self) -> Rational {
        &self.c_conj - &self.d_self - &self.d_conj + &self.e_self + &self.e_conj
    }

    /// Tableaux with a descent at a fixed `i`: `N c_{λ'}`.
    pub fn descents_at_position(&self) -> Rational {
        from_count(&self.count) * &self.c_conj
    }

    /// Tableaux with descents at `i` and `i + 1`: `N d_{λ'}`.
    pub fn adjacent_cooccurrences(&self) -> Rational {
        from_count(&self.count) * &self.d_conj
    }

    /// Tableaux with descents at `i` and `j`, `|i − j| > 1`.
    pub fn gap_cooccurrences(&self) -> Rational {
        from_count(&self.count) * self.gap_coefficient()
    }

    /// The three tableau counts are integers.
    pub fn counts_are_integral(&self) -> bool {
        [self.descents_at_position(), self.adjacent_cooccurrences(), self.gap_cooccurrences()]
            .iter()
            .all(Rational::is_integer)
    }

    fn check_invariants(&self, n: usize) {
        let unit = |r: &Rational| !r.is_negative() && *r <= Rational::one();
        for r in [&self.c_conj, &self.c_self, &self.d_self, &self.d_conj, &self.e_self, &self.e_conj] {
            assert!(unit(r), "coefficient {r} outside [0, 1]");
        }
        assert!(self.d_self >= self.e_self && self.d_conj >= self.e_conj);
        if n >= 2 {
            assert_eq!(&self.c_self + &self.c_conj, Rational::one());
        }
        // no pair |i − j| > 1 exists below n = 4, e.g. (3) gives 0 − 1 − 0 = −1
        if n >= 4 {
            assert!(unit(&self.gap_coefficient()), "gap coefficient {} outside [0, 1]", self.gap_coefficient());
        }
        assert!(self.counts_are_integral(), "non-integral tableau counts");
    }
}

pub fn shape_stats(shape: &Partition) -> Result<ShapeStats> {
    let conj = shape.conjugate();
    let stats = ShapeStats {
        count: shape.count_syt()?,
        c_conj: coefficient_c(shape),
        c_self: coefficient_c(&conj),
        d_self: coefficient_d(shape),
        d_conj: coefficient_d(&conj),
        e_self: coefficient_e(shape),
        e_conj: coefficient_e(&conj),
    };
    stats.check_invariants(shape.size());
    Ok(stats)
}

/// The four sums of `f` the moment formulas need.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FSums {
    /// `Σ f(i)`
    pub total: Rational,
    /// `Σ f(i)²`
    pub squares: Rational,
    /// `Σ f(i) f(i+1)`
    pub adjacent: Rational,
    /// `Σ_{i−j>1} f(i) f(j)`
    pub gap: Rational,
}

impl FSums {
    /// Works over a common denominator so the inner loops are integer-only.
    pub fn of(f: &DescentFunction) -> FSums {
        let den = f.values().iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let a: Vec<BigInt> = f.values().iter().map(|v| v.numer() * (&den / v.denom())).collect();
        let mut total = BigInt::zero();
        let mut squares = BigInt::zero();
        let mut adjacent = BigInt::zero();
        let mut gap = BigInt::zero();
        let mut prefix = BigInt::zero(); // Σ_{j ≤ i−2} a_j
        for (i, x) in a.iter().enumerate() {
            if i >= 2 {
                prefix += &a[i - 2];
            }
            gap += x * &prefix;
            if i >= 1 {
                adjacent += x * &a[i - 1];
            }
            squares += x * x;
            total += x;
        }
        let den2 = &den * &den;
        FSums {
            total: Rational::new(total, den.clone()),
            squares: Rational::new(squares, den2.clone()),
            adjacent: Rational::new(adjacent, den2.clone()),
            gap: Rational::new(gap, den2),
        }
    }
}

/// `E_λ(d_f) = c_{λ'} Σ f(i)`.
pub fn expectation(shape: &Partition, f: &DescentFunction) -> Result<Rational> {
    f.check_len(shape.size())?;
    Ok(coefficient_c(shape) * FSums::of(f).total)
}

pub fn variance(shape: &Partition, f: &DescentFunction) -> Result<Rational> {
    f.check_len(shape.size())?;
    let stats = shape_stats(shape)?;
    Ok(variance_from(&stats, &FSums::of(f)))
}

fn variance_from(stats: &ShapeStats, sums: &FSums) -> Rational {
    let two = int(2);
    let mean = &stats.c_conj * &sums.total;
    let v = &stats.c_conj * &sums.squares
        + &two * &stats.d_conj * &sums.adjacent
        + &two * stats.gap_coefficient() * &sums.gap
        - &mean * &mean;
    debug_assert!(!v.is_negative());
    v
}

/// Mean, variance and `V/E²` of `d_f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentReport {
    pub expectation: Rational,
    pub variance: Rational,
    /// `None` when the expectation is zero.
    pub normalized_variance: Option<Rational>,
}

pub fn normalized_variance(shape: &Partition, f: &DescentFunction) -> Result<MomentReport> {
    f.check_len(shape.size())?;
    let stats = shape_stats(shape)?;
    Ok(moments_from(&stats, &FSums::of(f)))
}

fn moments_from(stats: &ShapeStats, sums: &FSums) -> MomentReport {
    let expectation = &stats.c_conj * &sums.total;
    let variance = variance_from(stats, sums);
    let normalized_variance = (!expectation.is_zero()).then(|| &variance / (&expectation * &expectation));
    MomentReport { expectation, variance, normalized_variance }
}

impl Serialize for MomentReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("MomentReport", 6)?;
        st.serialize_field("expectation", &self.expectation.to_string())?;
        st.serialize_field("expectation_approx", &approx(&self.expectation))?;
        st.serialize_field("variance", &self.variance.to_string())?;
        st.serialize_field("variance_approx", &approx(&self.variance))?;
        st.serialize_field("normalized_variance", &self.normalized_variance.as_ref().map(|r| r.to_string()))?;
        st.serialize_field("normalized_variance_approx", &self.normalized_variance.as_ref().map(approx))?;
        st.end()
    }
}

/// A rational that may be `+∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    Finite(Rational),
    Infinite,
}

impl Bound {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Bound::Finite(r) => Some(r),
            Bound::Infinite => None,
        }
    }

    fn ratio(num: Rational, den: Rational) -> Bound {
        if den.is_zero() {
            Bound::Infinite
        } else {
            Bound::Finite(num / den)
        }
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Bound {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Bound::Finite(a), Bound::Finite(b)) => a.cmp(b),
            (Bound::Finite(_), Bound::Infinite) => Ordering::Less,
            (Bound::Infinite, Bound::Finite(_)) => Ordering::Greater,
            (Bound::Infinite, Bound::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(r) => write!(f, "{r}"),
            Bound::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The smallest `c` with `n Σ f(i)² ≤ c (n − λ_1)(Σ f(i))²`; infinite when
/// `λ_1 = n`.
pub fn eq1_min_constant(shape: &Partition, f: &DescentFunction) -> Result<Bound> {
    f.check_len(shape.size())?;
    f.check_positive()?;
    let (lhs, rhs_unit) = eq1_sides(shape, &FSums::of(f));
    Ok(Bound::ratio(lhs, rhs_unit))
}

fn eq1_sides(shape: &Partition, sums: &FSums) -> (Rational, Rational) {
    let n = shape.size();
    let lhs = int(n as i64) * &sums.squares;
    let rhs_unit = int((n - shape.first()) as i64) * &sums.total * &sums.total;
    (lhs, rhs_unit)
}

/// `n Σ f(i)² / (Σ f(i))²` with `n = len(f) + 1`; infinite for the empty
/// function.
pub fn corollary_ratio(f: &DescentFunction) -> Result<Bound> {
    f.check_positive()?;
    let sums = FSums::of(f);
    Ok(Bound::ratio(int(f.n() as i64) * sums.squares, &sums.total * &sums.total))
}

/// [`corollary_ratio`] of `b.build(n)` for every `n` in `ns`, computed with
/// running sums.
pub fn corollary_scan(b: &Builtin, ns: RangeInclusive<usize>) -> Result<Vec<(usize, Bound)>> {
    if let Builtin::Geometric(r) = b {
        if !r.is_positive() {
            return Err(Error::NonPositiveRatio(r.to_string()));
        }
    }
    let mut total = Rational::zero();
    let mut squares = Rational::zero();
    let mut out = Vec::new();
    for n in 1..=*ns.end() {
        if n >= 2 {
            let v = b.value(n - 1);
            squares += &v * &v;
            total += v;
        }
        if ns.contains(&n) {
            out.push((n, Bound::ratio(int(n as i64) * &squares, &total * &total)));
        }
    }
    Ok(out)
}

/// Sequences of shapes indexed by `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShapeFamily {
    /// `(m, m)`
    TwoRow,
    /// `(m − 1, 1)`, `m ≥ 2`
    Hook,
    /// `(1^m)`
    Column,
    /// The `m`-th listed shape, 1-based.
    Explicit(Vec<Partition>),
}

impl ShapeFamily {
    pub fn member(&self, m: usize) -> Result<Partition> {
        let bad = || Error::parse("family index", m.to_string());
        match self {
            ShapeFamily::TwoRow if m >= 1 => Partition::new(vec![m, m]),
            ShapeFamily::Hook if m >= 2 => Partition::new(vec![m - 1, 1]),
            ShapeFamily::Column if m >= 1 => Ok(Partition::column(m)),
            ShapeFamily::Explicit(list) if m >= 1 && m <= list.len() => Ok(list[m - 1].clone()),
            _ => Err(bad()),
        }
    }

    pub fn tag(&self) -> String {
        match self {
            ShapeFamily::TwoRow => "two-row".into(),
            ShapeFamily::Hook => "hook".into(),
            ShapeFamily::Column => "column".into(),
            ShapeFamily::Explicit(list) => {
                format!("list:{}", list.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(";"))
            }
        }
    }
}

impl std::str::FromStr for ShapeFamily {
    type Err = Error;

    /// `two-row`, `hook`, `column`, or `list:4,3;5,2;6`.
    fn from_str(s: &str) -> Result<ShapeFamily> {
        match s.trim() {
            "two-row" => Ok(ShapeFamily::TwoRow),
            "hook" => Ok(ShapeFamily::Hook),
            "column" => Ok(ShapeFamily::Column),
            other => match other.strip_prefix("list:") {
                Some(list) => Ok(ShapeFamily::Explicit(
                    list.split(';').map(crate::partition::parse_partition).collect::<Result<_>>()?,
                )),
                None => Err(Error::parse("shape family", s)),
            },
        }
    }
}

/// One member of a boundedness scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundednessRow {
    pub m: usize,
    pub shape: Partition,
    pub n: usize,
    pub lambda_1: usize,
    /// `n Σ f(i)²`
    pub lhs: Rational,
    /// `(n − λ_1)(Σ f(i))²`
    pub rhs_unit: Rational,
    pub min_c: Bound,
    pub moments: MomentReport,
    pub running_sup_min_c: Bound,
    /// Running maximum of `V/E²` over rows where it is defined.
    pub running_sup_normalized_variance: Option<Rational>,
}

impl BoundednessRow {
    /// `λ_1 / n`.
    pub fn q(&self) -> Rational {
        if self.n == 0 {
            Rational::zero()
        } else {
            Rational::new((self.lambda_1 as i64).into(), (self.n as i64).into())
        }
    }
}

impl Serialize for BoundednessRow {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let opt = |r: &Option<Rational>| r.as_ref().map(|r| r.to_string());
        let mut st = s.serialize_struct("BoundednessRow", 14)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("shape", &self.shape)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("lambda_1", &self.lambda_1)?;
        st.serialize_field("q", &self.q().to_string())?;
        st.serialize_field("lhs", &self.lhs.to_string())?;
        st.serialize_field("rhs_unit", &self.rhs_unit.to_string())?;
        st.serialize_field("min_c", &self.min_c)?;
        st.serialize_field("min_c_approx", &self.min_c.finite().map(approx))?;
        st.serialize_field("normalized_variance", &opt(&self.moments.normalized_variance))?;
        st.serialize_field("normalized_variance_approx", &self.moments.normalized_variance.as_ref().map(approx))?;
        st.serialize_field("sup_min_c", &self.running_sup_min_c)?;
        st.serialize_field("sup_normalized_variance", &opt(&self.running_sup_normalized_variance))?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundednessReport {
    pub family: ShapeFamily,
    pub f: FSpec,
    pub rows: Vec<BoundednessRow>,
}

impl BoundednessReport {
    pub fn sup_min_c(&self) -> Option<&Bound> {
        self.rows.last().map(|r| &r.running_sup_min_c)
    }

    pub fn sup_normalized_variance(&self) -> Option<&Rational> {
        self.rows.last().and_then(|r| r.running_sup_normalized_variance.as_ref())
    }
}

/// Exact `min_c` and `V/E²` along a family of shapes. This reports
/// trajectories; it does not decide boundedness.
pub fn boundedness_scan(family: &ShapeFamily, f: &FSpec, ms: RangeInclusive<usize>) -> Result<BoundednessReport> {
    let ms: Vec<usize> = match family {
        ShapeFamily::Explicit(list) => (1..=list.len()).collect(),
        _ => ms.collect(),
    };
    let computed: Vec<(usize, Partition, Rational, Rational, Bound, MomentReport)> = ms
        .into_par_iter()
        .map(|m| {
            let shape = family.member(m)?;
            let fun = f.build(shape.size())?;
            fun.check_positive()?;
            let sums = FSums::of(&fun);
            let stats = shape_stats(&shape)?;
            let (lhs, rhs_unit) = eq1_sides(&shape, &sums);
            let min_c = Bound::ratio(lhs.clone(), rhs_unit.clone());
            Ok((m, shape, lhs, rhs_unit, min_c, moments_from(&stats, &sums)))
        })
        .collect::<Result<_>>()?;
    let mut sup_c = Bound::Finite(Rational::zero());
    let mut sup_nv: Option<Rational> = None;
    let rows = computed
        .into_iter()
        .map(|(m, shape, lhs, rhs_unit, min_c, moments)| {
            if min_c > sup_c {
                sup_c = min_c.clone();
            }
            if let Some(nv) = &moments.normalized_variance {
                if sup_nv.as_ref().is_none_or(|s| nv > s) {
                    sup_nv = Some(nv.clone());
                }
            }
            BoundednessRow {
                m,
                n: shape.size(),
                lambda_1: shape.first(),
                shape,
                lhs,
                rhs_unit,
                min_c,
                moments,
                running_sup_min_c: sup_c.clone(),
                running_sup_normalized_variance: sup_nv.clone(),
            }
        })
        .collect();
    Ok(BoundednessReport { family: family.clone(), f: f.clone(), rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_of;
    use crate::rational::ratio;
    use proptest::prelude::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Direct index loops, no grouping.
    fn naive_tuple_sum(parts: &[usize], t: usize) -> i128 {
        fn rec(parts: &[usize], t: usize, max: usize, idx: &mut Vec<usize>, acc: &mut i128) {
            if idx.len() == t {
                if parts[idx[t - 1]] < t {
                    return;
                }
                *acc += idx.iter().enumerate().map(|(s, &i)| parts[i] as i128 - s as i128).product::<i128>();
                return;
            }
            for i in 0..max {
                idx.push(i);
                rec(parts, t, i + 1, idx, acc);
                idx.pop();
            }
        }
        let mut acc = 0;
        rec(parts, t, parts.len(), &mut Vec::new(), &mut acc);
        acc
    }

    #[test]
    fn grouped_sum_matches_naive_loops() {
        for n in 0..=14 {
            for l in partitions_of(n) {
                for t in 2..=4 {
                    assert_eq!(ordered_tuple_sum(&l, t), BigInt::from(naive_tuple_sum(l.parts(), t)), "{l} t={t}");
                }
            }
        }
    }

    #[test]
    fn c_examples() {
        assert_eq!(coefficient_c(&Partition::row(7)), int(0));
        assert_eq!(coefficient_c(&Partition::column(7)), int(1));
        assert_eq!(coefficient_c(&p(&[3, 2])), ratio(2, 5));
        assert_eq!(coefficient_c(&p(&[1])), int(0));
        assert_eq!(coefficient_c(&Partition::empty()), int(0));
    }

    #[test]
    fn d_and_e_examples() {
        // triples (1,1,1), (2,1,1), (2,2,1): (6 + 4 + 2) / 60
        assert_eq!(coefficient_d(&p(&[3, 2])), ratio(1, 5));
        assert_eq!(coefficient_d(&p(&[2, 1])), int(0));
        assert_eq!(coefficient_d(&Partition::row(6)), int(1));
        assert_eq!(coefficient_e(&Partition::row(6)), int(1));
        assert_eq!(coefficient_e(&p(&[3, 2])), int(0));
        assert_eq!(coefficient_d(&p(&[2])), int(0));
    }

    #[test]
    fn shape_stats_examples() {
        let s = shape_stats(&p(&[3, 2])).unwrap();
        assert_eq!(s.count, BigCount::from(5u32));
        assert_eq!(s.c_conj, ratio(2, 5));
        assert_eq!(s.d_self, ratio(1, 5));
        assert_eq!((s.d_conj.clone(), s.e_self.clone(), s.e_conj.clone()), (int(0), int(0), int(0)));
        let s = shape_stats(&p(&[1])).unwrap();
        assert_eq!(s.count, BigCount::from(1u32));
        assert!([s.c_conj, s.c_self, s.d_self, s.d_conj, s.e_self, s.e_conj].iter().all(Zero::is_zero));
        let s = shape_stats(&p(&[2, 2])).unwrap();
        assert!(s.descents_at_position().is_integer());
    }

    #[test]
    fn conjugate_coefficients_sum_to_one() {
        for n in 2..=30 {
            for l in partitions_of(n) {
                assert_eq!(coefficient_c(&l) + coefficient_c(&l.conjugate()), int(1), "{l}");
            }
        }
    }

    #[test]
    fn lemma_counts_integral_without_enumeration() {
        for n in 0..=22 {
            for l in partitions_of(n) {
                assert!(shape_stats(&l).unwrap().counts_are_integral(), "{l}");
            }
        }
    }

    #[test]
    fn expectation_examples() {
        assert_eq!(expectation(&p(&[2, 1]), &Builtin::Identity.build(3)).unwrap(), ratio(3, 2));
        assert_eq!(expectation(&p(&[3, 2]), &Builtin::Ones.build(5)).unwrap(), ratio(8, 5));
        assert_eq!(expectation(&Partition::row(6), &Builtin::Squares.build(6)).unwrap(), int(0));
        assert_eq!(expectation(&p(&[3, 2]), &Builtin::Ones.build(4)).unwrap_err().name(), "LengthMismatch");
    }

    #[test]
    fn variance_examples() {
        assert_eq!(variance(&p(&[2, 1]), &Builtin::Identity.build(3)).unwrap(), ratio(1, 4));
        assert_eq!(variance(&p(&[3, 2]), &Builtin::Ones.build(5)).unwrap(), ratio(6, 25));
        assert_eq!(variance(&Partition::row(6), &Builtin::Squares.build(6)).unwrap(), int(0));
    }

    #[test]
    fn normalized_variance_examples() {
        let r = normalized_variance(&p(&[3, 2]), &Builtin::Ones.build(5)).unwrap();
        assert_eq!(r.normalized_variance, Some(ratio(3, 32)));
        let r = normalized_variance(&Partition::row(4), &Builtin::Ones.build(4)).unwrap();
        assert_eq!(r.normalized_variance, None);
        let r = normalized_variance(&Partition::column(3), &Builtin::Ones.build(3)).unwrap();
        assert_eq!((r.variance, r.expectation, r.normalized_variance), (int(0), int(2), Some(int(0))));
    }

    #[test]
    fn moment_report_json() {
        let r = normalized_variance(&p(&[3, 2]), &Builtin::Ones.build(5)).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["expectation"], "8/5");
        assert_eq!(v["variance"], "6/25");
        assert_eq!(v["normalized_variance"], "3/32");
        assert_eq!(v["expectation_approx"], 1.6);
    }

    #[test]
    fn specializations() {
        for n in 2..=12 {
            for l in partitions_of(n) {
                let c = coefficient_c(&l);
                assert_eq!(expectation(&l, &Builtin::Ones.build(n)).unwrap(), &c * int(n as i64 - 1));
                assert_eq!(expectation(&l, &Builtin::Identity.build(n)).unwrap(), &c * int((n * (n - 1) / 2) as i64));
            }
        }
    }

    #[test]
    fn fsums_match_direct_sums() {
        let f = DescentFunction::new(vec![ratio(1, 2), ratio(-2, 3), int(5), ratio(7, 4), int(0)]);
        let v = f.values();
        let total: Rational = v.iter().sum();
        let squares: Rational = v.iter().map(|x| x * x).sum();
        let adjacent: Rational = v.windows(2).map(|w| &w[0] * &w[1]).sum();
        let mut gap = Rational::zero();
        for i in 0..v.len() {
            for j in 0..v.len() {
                if i > j + 1 {
                    gap += &v[i] * &v[j];
                }
            }
        }
        assert_eq!(FSums::of(&f), FSums { total, squares, adjacent, gap });
    }

    #[test]
    fn eq1_examples() {
        // (m, m), ones: 2m(2m−1) / (m (2m−1)²) = 2 / (2m − 1)
        for m in 1..=40usize {
            let l = p(&[m, m]);
            let c = eq1_min_constant(&l, &Builtin::Ones.build(2 * m)).unwrap();
            assert_eq!(c, Bound::Finite(ratio(2, 2 * m as i64 - 1)));
        }
        assert_eq!(eq1_min_constant(&Partition::row(5), &Builtin::Ones.build(5)).unwrap(), Bound::Infinite);
        let mut prev = Bound::Finite(int(0));
        for m in 10..=30usize {
            let c = eq1_min_constant(&p(&[m - 1, 1]), &Builtin::Geometric(int(2)).build(m)).unwrap();
            assert!(c > prev);
            prev = c;
        }
        let bad = DescentFunction::new(vec![int(1), int(0)]);
        assert_eq!(eq1_min_constant(&p(&[2, 1]), &bad).unwrap_err().name(), "NonPositiveF");
    }

    #[test]
    fn corollary_examples() {
        for n in 2..=100usize {
            let r = corollary_ratio(&Builtin::Ones.build(n)).unwrap();
            assert_eq!(r, Bound::Finite(ratio(n as i64, n as i64 - 1)));
            assert!(r <= Bound::Finite(int(2)));
        }
        let mut prev = Bound::Finite(int(0));
        for n in 4..=60usize {
            let r = corollary_ratio(&Builtin::Geometric(int(2)).build(n)).unwrap();
            assert!(r > prev, "n = {n}");
            prev = r;
        }
        let big = corollary_ratio(&Builtin::Identity.build(2000)).unwrap();
        let close = (big.finite().unwrap() - ratio(4, 3)).abs();
        assert!(close < ratio(1, 100));
    }

    #[test]
    fn corollary_scan_matches_direct() {
        for b in Builtin::standard_set() {
            let scan = corollary_scan(&b, 2..=60).unwrap();
            for (n, r) in scan {
                assert_eq!(r, corollary_ratio(&b.build(n)).unwrap());
            }
        }
    }

    #[test]
    fn scan_examples() {
        let ones = FSpec::Builtin(Builtin::Ones);
        let r = boundedness_scan(&ShapeFamily::TwoRow, &ones, 2..=50).unwrap();
        assert_eq!(r.rows.len(), 49);
        assert!(r.sup_normalized_variance().unwrap() <= &int(1));

        let geo = FSpec::Builtin(Builtin::Geometric(int(2)));
        let r = boundedness_scan(&ShapeFamily::Hook, &geo, 5..=25).unwrap();
        for w in r.rows.windows(2) {
            assert!(w[1].min_c > w[0].min_c);
            assert!(w[1].moments.normalized_variance > w[0].moments.normalized_variance);
        }

        let r = boundedness_scan(&ShapeFamily::Column, &ones, 2..=30).unwrap();
        assert!(r.rows.iter().all(|row| row.moments.normalized_variance == Some(int(0))));
    }

    #[test]
    fn explicit_family() {
        let fam: ShapeFamily = "list:3,2;4,3,2".parse().unwrap();
        let r = boundedness_scan(&fam, &FSpec::Builtin(Builtin::Ones), 1..=1).unwrap();
        assert_eq!(r.rows.len(), 2);
        assert_eq!(r.rows[0].moments.normalized_variance, Some(ratio(3, 32)));
        assert_eq!(fam.tag(), "list:3,2;4,3,2");
        assert!(ShapeFamily::Hook.member(1).is_err());
        assert!("spiral".parse::<ShapeFamily>().is_err());
    }

    fn rational_strategy() -> impl Strategy<Value = Rational> {
        (1i64..50, 1i64..20).prop_map(|(a, b)| ratio(a, b))
    }

    proptest! {
        #[test]
        fn scaling_f_scales_moments(
            parts in prop::collection::vec(1usize..6, 1..5),
            alpha in rational_strategy(),
            vals in prop::collection::vec(rational_strategy(), 30),
        ) {
            let mut parts = parts;
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let l = Partition::new(parts).unwrap();
            let n = l.size();
            let f = DescentFunction::new(vals[..n - 1].to_vec());
            let g = f.scaled(&alpha);
            let a = normalized_variance(&l, &f).unwrap();
            let b = normalized_variance(&l, &g).unwrap();
            prop_assert_eq!(&b.expectation, &(&a.expectation * &alpha));
            prop_assert_eq!(&b.variance, &(&a.variance * &alpha * &alpha));
            prop_assert_eq!(&b.normalized_variance, &a.normalized_variance);
            prop_assert_eq!(eq1_min_constant(&l, &g).unwrap(), eq1_min_constant(&l, &f).unwrap());
            prop_assert_eq!(corollary_ratio(&g).unwrap(), corollary_ratio(&f).unwrap());
        }
    }
}
