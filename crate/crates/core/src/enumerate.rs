//! Exhaustive generation of standard Young tableaux and the brute-force
//! statistics computed over it.
//!
//! A tableau is generated as its row word: value `v` goes into some row whose
//! next free cell is addable. Backtracking tries rows top to bottom, so the
//! stream order is deterministic. The counting operations split the search
//! space on a short prefix of placements and merge per-prefix results by
//! exact addition, so their output does not depend on the worker count.

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::rational::{int, BigCount, Rational};
use crate::tableau::{DescentFunction, Tableau};

/// Default cap on the number of tableaux an oracle may walk.
pub const DEFAULT_GUARD: u64 = 10_000_000;

const SPLIT_DEPTH: usize = 4;

/// Lazily yields every SYT of a shape exactly once.
pub struct SytIter {
    shape: Partition,
    lens: Vec<usize>,
    word: Vec<usize>,
    fixed: usize,
    started: bool,
    done: bool,
}

impl SytIter {
    fn new(shape: &Partition) -> Self {
        Self::with_prefix(shape, &[])
    }

    /// Completions of a valid row-word prefix.
    fn with_prefix(shape: &Partition, prefix: &[usize]) -> Self {
        let mut lens = vec![0; shape.len()];
        for &r in prefix {
            lens[r] += 1;
        }
        SytIter { shape: shape.clone(), lens, word: prefix.to_vec(), fixed: prefix.len(), started: false, done: false }
    }

    fn addable(&self, r: usize) -> bool {
        self.lens[r] < self.shape.parts()[r] && (r == 0 || self.lens[r - 1] > self.lens[r])
    }

    fn place(&mut self, r: usize) {
        self.lens[r] += 1;
        self.word.push(r);
    }

    fn fill(&mut self) {
        while self.word.len() < self.shape.size() {
            let r = (0..self.shape.len()).find(|&r| self.addable(r)).expect("an addable cell exists");
            self.place(r);
        }
    }

    fn advance(&mut self) -> bool {
        while self.word.len() > self.fixed {
            let r = self.word.pop().expect("non-empty");
            self.lens[r] -= 1;
            if let Some(next) = (r + 1..self.shape.len()).find(|&s| self.addable(s)) {
                self.place(next);
                self.fill();
                return true;
            }
        }
        false
    }
}

impl Iterator for SytIter {
    type Item = Tableau;

    fn next(&mut self) -> Option<Tableau> {
        if self.done {
            return None;
        }
        let ok = if self.started {
            self.advance()
        } else {
            self.started = true;
            self.fill();
            true
        };
        if !ok {
            self.done = true;
            return None;
        }
        Some(Tableau::from_row_word(&self.shape, &self.word))
    }
}

fn check_guard(shape: &Partition, guard: u64) -> Result<BigCount> {
    let count = shape.count_syt()?;
    if count > BigUint::from(guard) {
        return Err(Error::GuardExceeded { what: "tableau enumeration", count: count.to_string(), guard });
    }
    Ok(count)
}

/// Every SYT of `shape`, failing fast if there are more than `guard`.
pub fn enumerate_syt(shape: &Partition, guard: u64) -> Result<SytIter> {
    check_guard(shape, guard)?;
    Ok(SytIter::new(shape))
}

/// All valid row-word prefixes of the given length.
fn prefixes(shape: &Partition, depth: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut it = SytIter::with_prefix(shape, &[]);
    fn rec(it: &mut SytIter, depth: usize, out: &mut Vec<Vec<usize>>) {
        if it.word.len() == depth {
            out.push(it.word.clone());
            return;
        }
        for r in 0..it.shape.len() {
            if it.addable(r) {
                it.place(r);
                rec(it, depth, out);
                it.word.pop();
                it.lens[r] -= 1;
            }
        }
    }
    rec(&mut it, depth.min(shape.size()), &mut out);
    out
}

/// Folds over every SYT of `shape` in parallel. `merge` must be associative
/// and commutative for the result to be schedule independent.
pub fn par_fold<A, I, S, M>(shape: &Partition, guard: u64, identity: I, step: S, merge: M) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    S: Fn(&mut A, &Tableau) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    check_guard(shape, guard)?;
    let acc = prefixes(shape, SPLIT_DEPTH)
        .into_par_iter()
        .map(|prefix| {
            let mut acc = identity();
            for t in SytIter::with_prefix(shape, &prefix) {
                step(&mut acc, &t);
            }
            acc
        })
        .reduce(&identity, &merge);
    Ok(acc)
}

/// Size of the exhaustive enumeration.
pub fn count_by_enumeration(shape: &Partition, guard: u64) -> Result<BigCount> {
    par_fold(shape, guard, || 0u64, |c, _| *c += 1, |a, b| a + b).map(BigUint::from)
}

/// `counts[i − 1] = #{T : i ∈ D(T)}` for `i = 1..n−1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentPositionCounts {
    pub counts: Vec<BigCount>,
}

impl DescentPositionCounts {
    pub fn at(&self, i: usize) -> &BigCount {
        &self.counts[i - 1]
    }

    pub fn all_equal(&self) -> bool {
        self.counts.windows(2).all(|w| w[0] == w[1])
    }
}

pub fn descent_position_counts(shape: &Partition, guard: u64) -> Result<DescentPositionCounts> {
    let m = shape.size().saturating_sub(1);
    let counts = par_fold(
        shape,
        guard,
        || vec![0u64; m],
        |acc, t| {
            for i in t.descent_set().iter() {
                acc[i - 1] += 1;
            }
        },
        add_vecs,
    )?;
    Ok(DescentPositionCounts { counts: counts.into_iter().map(BigUint::from).collect() })
}

fn add_vecs(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// Number of tableaux with descents at both `i` and `j`, for `1 ≤ j < i ≤ n−1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CooccurrenceMatrix {
    n: usize,
    // entry (i, j), j < i, lives at tri(i) + j − 1
    entries: Vec<BigCount>,
}

fn tri(i: usize) -> usize {
    (i - 1) * (i - 2) / 2
}

impl CooccurrenceMatrix {
    /// Symmetric lookup; `i ≠ j`, both in `1..n`.
    pub fn get(&self, i: usize, j: usize) -> &BigCount {
        let (hi, lo) = if i > j { (i, j) } else { (j, i) };
        assert!(lo >= 1 && hi < self.n && lo < hi, "pair ({i}, {j}) out of range");
        &self.entries[tri(hi) + lo - 1]
    }

    /// Entries `(i, i−1)`.
    pub fn adjacent(&self) -> impl Iterator<Item = (usize, usize, &BigCount)> {
        (2..self.n).map(move |i| (i, i - 1, self.get(i, i - 1)))
    }

    /// Entries `(i, j)` with `i − j > 1`.
    pub fn gap(&self) -> impl Iterator<Item = (usize, usize, &BigCount)> {
        (3..self.n).flat_map(move |i| (1..i - 1).map(move |j| (i, j, self.get(i, j))))
    }
}

pub fn cooccurrence_matrix(shape: &Partition, guard: u64) -> Result<CooccurrenceMatrix> {
    let n = shape.size();
    let size = if n >= 3 { tri(n - 1) + n - 2 } else { 0 };
    let entries = par_fold(
        shape,
        guard,
        || vec![0u64; size],
        |acc, t| {
            let d = t.descent_set();
            for (a, i) in d.iter().enumerate() {
                for j in d.as_slice()[..a].iter() {
                    acc[tri(i) + j - 1] += 1;
                }
            }
        },
        add_vecs,
    )?;
    Ok(CooccurrenceMatrix { n, entries: entries.into_iter().map(BigUint::from).collect() })
}

/// Exact moments of `d_f` under the uniform distribution on SYT(λ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteStats {
    pub mean: Rational,
    pub second_moment: Rational,
    pub variance: Rational,
}

pub fn brute_stats(shape: &Partition, f: &DescentFunction, guard: u64) -> Result<BruteStats> {
    f.check_len(shape.size())?;
    let (count, sum, sum_sq) = par_fold(
        shape,
        guard,
        || (0u64, Rational::zero(), Rational::zero()),
        |acc, t| {
            let v = t.descent_value(f).expect("length checked");
            acc.0 += 1;
            acc.2 += &v * &v;
            acc.1 += v;
        },
        |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2),
    )?;
    let count = int(count as i64);
    let mean = sum / &count;
    let second_moment = sum_sq / &count;
    let variance = &second_moment - &mean * &mean;
    Ok(BruteStats { mean, second_moment, variance })
}

/// Fraction of SYT(λ) whose entries `1..=m` all lie in the first row.
pub fn first_row_prefix_fraction(shape: &Partition, m: u32, guard: u64) -> Result<Rational> {
    let (hits, total) = par_fold(
        shape,
        guard,
        || (0u64, 0u64),
        |acc, t| {
            acc.1 += 1;
            let first = t.rows().first().map(Vec::as_slice).unwrap_or(&[]);
            if m as usize <= first.len() && first[..m as usize].iter().copied().eq(1..=m) {
                acc.0 += 1;
            }
        },
        |a, b| (a.0 + b.0, a.1 + b.1),
    )?;
    Ok(Rational::new((hits as i64).into(), (total as i64).into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_of;
    use crate::rational::ratio;
    use crate::tableau::Builtin;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn rows_of(shape: &Partition) -> Vec<Vec<Vec<u32>>> {
        enumerate_syt(shape, DEFAULT_GUARD).unwrap().map(|t| t.rows().to_vec()).collect()
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(rows_of(&p(&[2, 1])), vec![vec![vec![1, 2], vec![3]], vec![vec![1, 3], vec![2]]]);
        assert_eq!(rows_of(&p(&[1, 1, 1])).len(), 1);
        assert_eq!(rows_of(&p(&[3, 2])).len(), 5);
        assert_eq!(rows_of(&Partition::empty()).len(), 1);
    }

    #[test]
    fn guard_is_enforced() {
        let err = enumerate_syt(&p(&[4, 3, 2]), 100).err().unwrap();
        assert_eq!(err.name(), "GuardExceeded");
        assert!(descent_position_counts(&p(&[4, 3, 2]), 167).is_err());
        assert!(descent_position_counts(&p(&[4, 3, 2]), 168).is_ok());
    }

    #[test]
    fn enumeration_matches_hook_count() {
        for n in 0..=10 {
            for l in partitions_of(n) {
                let all: Vec<Tableau> = enumerate_syt(&l, DEFAULT_GUARD).unwrap().collect();
                let mut dedup = all.clone();
                dedup.sort();
                dedup.dedup();
                assert_eq!(dedup.len(), all.len(), "{l}");
                assert_eq!(BigUint::from(all.len()), l.count_syt().unwrap(), "{l}");
                assert_eq!(count_by_enumeration(&l, DEFAULT_GUARD).unwrap(), l.count_syt().unwrap());
            }
        }
    }

    #[test]
    fn descent_count_examples() {
        let c = descent_position_counts(&p(&[2, 1]), DEFAULT_GUARD).unwrap();
        assert_eq!(c.counts, vec![BigUint::from(1u32); 2]);
        let c = descent_position_counts(&Partition::row(5), DEFAULT_GUARD).unwrap();
        assert!(c.counts.iter().all(Zero::is_zero));
        let c = descent_position_counts(&p(&[3, 2]), DEFAULT_GUARD).unwrap();
        assert_eq!(c.counts, vec![BigUint::from(2u32); 4]);
    }

    #[test]
    fn cooccurrence_examples() {
        let m = cooccurrence_matrix(&p(&[3, 2]), DEFAULT_GUARD).unwrap();
        assert!(m.adjacent().all(|(_, _, c)| c.is_zero()));
        let m = cooccurrence_matrix(&p(&[1, 1, 1]), DEFAULT_GUARD).unwrap();
        assert_eq!(m.get(2, 1), &BigUint::from(1u32));
        let m = cooccurrence_matrix(&p(&[2, 2]), DEFAULT_GUARD).unwrap();
        // (2,2) has a single gap pair, (3,1): both SYT 12/34 and 13/24 are checked by hand.
        // 12/34: D = {2}; 13/24: D = {1, 3}.
        assert_eq!(m.get(3, 1), &BigUint::from(1u32));
        assert_eq!(m.get(1, 3), m.get(3, 1));
    }

    #[test]
    fn brute_stats_examples() {
        let s = brute_stats(&p(&[2, 1]), &Builtin::Identity.build(3), DEFAULT_GUARD).unwrap();
        assert_eq!((s.mean, s.variance), (ratio(3, 2), ratio(1, 4)));
        let s = brute_stats(&p(&[3, 2]), &Builtin::Ones.build(5), DEFAULT_GUARD).unwrap();
        assert_eq!((s.mean, s.variance), (ratio(8, 5), ratio(6, 25)));
        assert_eq!(s.second_moment, ratio(14, 5));
        let s = brute_stats(&Partition::row(6), &Builtin::Squares.build(6), DEFAULT_GUARD).unwrap();
        assert_eq!((s.mean, s.variance), (int(0), int(0)));
        let err = brute_stats(&p(&[3, 2]), &Builtin::Ones.build(4), DEFAULT_GUARD).unwrap_err();
        assert_eq!(err.name(), "LengthMismatch");
    }

    #[test]
    fn prefix_fraction_examples() {
        assert_eq!(first_row_prefix_fraction(&p(&[3, 2]), 3, DEFAULT_GUARD).unwrap(), ratio(1, 5));
        assert_eq!(first_row_prefix_fraction(&Partition::row(5), 3, DEFAULT_GUARD).unwrap(), int(1));
        assert_eq!(first_row_prefix_fraction(&Partition::column(3), 3, DEFAULT_GUARD).unwrap(), int(0));
    }

    #[test]
    fn parallel_fold_matches_serial_stream() {
        let l = p(&[4, 3, 2, 1]);
        let f = Builtin::Squares.build(10);
        let serial: Rational = enumerate_syt(&l, DEFAULT_GUARD).unwrap().map(|t| t.descent_value(&f).unwrap()).sum();
        let count = int(l.count_syt().unwrap().to_string().parse().unwrap());
        let brute = brute_stats(&l, &f, DEFAULT_GUARD).unwrap();
        assert_eq!(brute.mean, serial / count);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let single = pool.install(|| brute_stats(&l, &f, DEFAULT_GUARD).unwrap());
        assert_eq!(single, brute);
    }
}
