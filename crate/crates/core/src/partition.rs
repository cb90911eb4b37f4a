//! Integer partitions, their Ferrers diagrams, and the hook-length count.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::BigCount;

/// A partition `λ = (λ_1 ≥ λ_2 ≥ ... ≥ λ_k ≥ 1)`.
///
/// The empty partition is the unique partition of 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
    n: usize,
}

/// A 1-based `(row, col)` position, row 1 on top.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::NonPositivePart(parts.iter().map(|&p| p as i64).collect()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotNonIncreasing(parts));
        }
        let n = parts.iter().sum();
        Ok(Partition { parts, n })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new(), n: 0 }
    }

    /// Single row `(n)`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n], n }
        }
    }

    /// Single column `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n], n }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of cells.
    pub fn size(&self) -> usize {
        self.n
    }

    /// Number of rows `k`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `λ_i` for 1-based `i`; zero past the last row.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Length of the first row, `λ_1`.
    pub fn first(&self) -> usize {
        self.part(1)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.first();
        let parts: Vec<usize> = (1..=width).map(|j| self.parts.iter().take_while(|&&p| p >= j).count()).collect();
        Partition { parts, n: self.n }
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row >= 1 && cell.col >= 1 && cell.col <= self.part(cell.row)
    }

    /// All cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts.iter().enumerate().flat_map(|(i, &len)| (1..=len).map(move |j| Cell::new(i + 1, j)))
    }

    /// Hook length `λ_i + λ'_j − i − j + 1` of the cell `(i, j)`.
    pub fn hook_length(&self, cell: Cell) -> Result<usize> {
        if !self.contains(cell) {
            return Err(Error::CellOutsideShape { row: cell.row, col: cell.col, shape: self.parts.clone() });
        }
        let leg = self.parts.iter().skip(cell.row).take_while(|&&p| p >= cell.col).count();
        let arm = self.part(cell.row) - cell.col;
        Ok(arm + leg + 1)
    }

    /// The number `N` of standard Young tableaux of this shape, via
    /// `n! / ∏ hooks`.
    pub fn count_syt(&self) -> Result<BigCount> {
        let conj = self.conjugate();
        let mut hooks = BigUint::one();
        for (i, &len) in self.parts.iter().enumerate() {
            for j in 0..len {
                // λ_i + λ'_j − i − j + 1 with 1-based i, j
                hooks *= (len - j) + (conj.parts[j] - i) - 1;
            }
        }
        let (q, r) = factorial(self.n).div_rem(&hooks);
        if !r.is_zero() {
            return Err(Error::InternalInexactDivision(self.parts.clone()));
        }
        Ok(q)
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// Parses the comma-separated text form, e.g. `"4,3,2"`. Whitespace around
/// parts is ignored.
pub fn parse_partition(text: &str) -> Result<Partition> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::parse("partition", text));
    }
    let raw: Vec<i64> = t
        .split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|_| Error::parse("partition", text)))
        .collect::<Result<_>>()?;
    if raw.iter().any(|&p| p <= 0) {
        return Err(Error::NonPositivePart(raw));
    }
    Partition::new(raw.into_iter().map(|p| p as usize).collect())
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_partition(s)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Every partition of `n`, in reverse-lexicographic order of parts.
pub fn partitions_of(n: usize) -> Partitions {
    Partitions { next: Some(if n == 0 { Vec::new() } else { vec![n] }) }
}

pub struct Partitions {
    next: Option<Vec<usize>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        self.next = successor(&current);
        Some(Partition::new(current).expect("generator yields valid partitions"))
    }
}

fn successor(parts: &[usize]) -> Option<Vec<usize>> {
    let k = parts.iter().rposition(|&p| p > 1)?;
    let ones = parts.len() - k - 1;
    let v = parts[k] - 1;
    let mut next = parts[..k].to_vec();
    let mut rest = ones + v + 1;
    while rest > 0 {
        let take = rest.min(v);
        next.push(take);
        rest -= take;
    }
    Some(next)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn parse_examples() {
        let l = parse_partition("4,3,2").unwrap();
        assert_eq!(l.parts(), &[4, 3, 2]);
        assert_eq!(l.size(), 9);
        assert_eq!(parse_partition("1").unwrap().size(), 1);
        assert_eq!(parse_partition("3,3,2,1").unwrap().size(), 9);
        assert_eq!(parse_partition(" 2, 1 ").unwrap(), p(&[2, 1]));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_partition("2,3").unwrap_err().name(), "NotNonIncreasing");
        assert_eq!(parse_partition("3,0").unwrap_err().name(), "NonPositivePart");
        assert_eq!(parse_partition("3,-1").unwrap_err().name(), "NonPositivePart");
        assert_eq!(parse_partition("").unwrap_err().name(), "ParseError");
        assert_eq!(parse_partition("a,b").unwrap_err().name(), "ParseError");
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[4, 3, 2]).conjugate(), p(&[3, 3, 2, 1]));
        assert_eq!(p(&[1]).conjugate(), p(&[1]));
        assert_eq!(p(&[5]).conjugate(), p(&[1, 1, 1, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    /// Arm + leg + 1 by walking the diagram cell by cell.
    fn hook_by_walk(l: &Partition, c: Cell) -> usize {
        let right = l.cells().filter(|d| d.row == c.row && d.col > c.col).count();
        let below = l.cells().filter(|d| d.col == c.col && d.row > c.row).count();
        right + below + 1
    }

    #[test]
    fn hook_length_examples() {
        let l = p(&[4, 3, 2]);
        assert_eq!(hook_by_walk(&l, Cell::new(1, 1)), 6);
        assert_eq!(l.hook_length(Cell::new(1, 1)).unwrap(), 6);
        assert_eq!(l.hook_length(Cell::new(3, 2)).unwrap(), 1);
        assert_eq!(p(&[1]).hook_length(Cell::new(1, 1)).unwrap(), 1);
        for n in 0..=10 {
            for l in partitions_of(n) {
                for c in l.cells() {
                    assert_eq!(l.hook_length(c).unwrap(), hook_by_walk(&l, c));
                }
            }
        }
    }

    #[test]
    fn hook_length_outside() {
        let l = p(&[4, 3, 2]);
        assert_eq!(l.hook_length(Cell::new(3, 3)).unwrap_err().name(), "CellOutsideShape");
        assert!(l.hook_length(Cell::new(0, 1)).is_err());
        assert!(l.hook_length(Cell::new(4, 1)).is_err());
    }

    #[test]
    fn transposed_hook_factor_has_same_multiset() {
        // λ'_i + λ_j − i − j + 1 read over the cells (i, j) of λ'.
        for n in 1..=12 {
            for l in partitions_of(n) {
                let conj = l.conjugate();
                let mut standard: Vec<usize> = l.cells().map(|c| l.hook_length(c).unwrap()).collect();
                let mut written: Vec<usize> =
                    conj.cells().map(|c| conj.part(c.row) + l.part(c.col) + 1 - c.row - c.col).collect();
                standard.sort_unstable();
                written.sort_unstable();
                assert_eq!(standard, written, "{l}");
            }
        }
    }

    #[test]
    fn count_examples() {
        assert_eq!(p(&[1]).count_syt().unwrap(), BigUint::from(1u32));
        assert_eq!(p(&[2, 1]).count_syt().unwrap(), BigUint::from(2u32));
        assert_eq!(p(&[4, 3, 2]).count_syt().unwrap(), BigUint::from(168u32));
        assert_eq!(Partition::empty().count_syt().unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn count_does_not_overflow() {
        // Staircase (10,9,...,1): n = 55, far beyond u64 factorials.
        let l = p(&(1..=10).rev().collect::<Vec<_>>());
        let count = l.count_syt().unwrap();
        assert!(count > BigUint::from(u64::MAX));
    }

    #[test]
    fn partitions_examples() {
        let three: Vec<Vec<usize>> = partitions_of(3).map(|l| l.parts().to_vec()).collect();
        assert_eq!(three, vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        let zero: Vec<Partition> = partitions_of(0).collect();
        assert_eq!(zero, vec![Partition::empty()]);
        assert_eq!(partitions_of(5).count(), 7);
    }

    #[test]
    fn partition_counts_match_known_sequence() {
        let p_n = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];
        for (n, &expected) in p_n.iter().enumerate() {
            let all: Vec<Partition> = partitions_of(n).collect();
            assert_eq!(all.len(), expected);
            // reverse-lex order, all distinct
            assert!(all.windows(2).all(|w| w[0].parts() > w[1].parts()));
        }
    }

    #[test]
    fn conjugation_is_involution() {
        for n in 0..=30 {
            for l in partitions_of(n) {
                let c = l.conjugate();
                assert_eq!(c.size(), l.size());
                assert_eq!(c.conjugate(), l);
            }
        }
    }

    #[test]
    fn count_is_conjugation_invariant() {
        for n in 0..=12 {
            for l in partitions_of(n) {
                assert_eq!(l.count_syt().unwrap(), l.conjugate().count_syt().unwrap());
            }
        }
    }

    #[test]
    fn robinson_schensted_identity() {
        for n in 0..=10 {
            let total: BigUint = partitions_of(n).map(|l| l.count_syt().unwrap().pow(2)).sum();
            assert_eq!(total, factorial(n), "n = {n}");
        }
    }

    #[test]
    fn json_form() {
        let l: Partition = serde_json::from_str("[4,3,2]").unwrap();
        assert_eq!(l, p(&[4, 3, 2]));
        assert_eq!(serde_json::to_string(&l).unwrap(), "[4,3,2]");
        assert!(serde_json::from_str::<Partition>("[2,3]").is_err());
    }
}
