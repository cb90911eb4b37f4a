//! Standard Young tableaux, descent sets, and descent functions.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{Cell, Partition};
use crate::rational::{int, parse_rational, Rational};

/// A standard filling of a shape: rows and columns strictly increase and the
/// entries are exactly `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    shape: Partition,
    rows: Vec<Vec<u32>>,
}

impl Tableau {
    /// Checks a row-major grid against `shape`.
    pub fn validate(shape: &Partition, rows: Vec<Vec<u32>>) -> Result<Tableau> {
        check_grid_shape(shape, &rows)?;
        let n = shape.size();
        let mut seen = vec![false; n + 1];
        for &v in rows.iter().flatten() {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::DuplicateOrMissingEntry { n });
            }
            seen[v] = true;
        }
        for (i, row) in rows.iter().enumerate() {
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::RowNotIncreasing { row: i + 1 });
            }
        }
        for pair in rows.windows(2) {
            if let Some(j) = (0..pair[1].len()).find(|&j| pair[0][j] >= pair[1][j]) {
                return Err(Error::ColumnNotIncreasing { col: j + 1 });
            }
        }
        Ok(Tableau { shape: shape.clone(), rows })
    }

    /// Validates a grid whose shape is read off the row lengths.
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Tableau> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect()).map_err(|_| Error::ShapeMismatch {
            shape: rows.iter().map(Vec::len).collect(),
            detail: "row lengths do not form a partition".into(),
        })?;
        Tableau::validate(&shape, rows)
    }

    /// Callers guarantee the grid is standard.
    pub(crate) fn from_rows_unchecked(shape: Partition, rows: Vec<Vec<u32>>) -> Tableau {
        debug_assert!(Tableau::validate(&shape, rows.clone()).is_ok());
        Tableau { shape, rows }
    }

    /// The tableau whose value `v` sits in row `row_of[v - 1]` (0-based rows).
    /// `row_of` must be a Yamanouchi word for `shape`.
    pub(crate) fn from_row_word(shape: &Partition, row_of: &[usize]) -> Tableau {
        let mut rows: Vec<Vec<u32>> = shape.parts().iter().map(|&p| Vec::with_capacity(p)).collect();
        for (v, &r) in row_of.iter().enumerate() {
            rows[r].push(v as u32 + 1);
        }
        Tableau::from_rows_unchecked(shape.clone(), rows)
    }

    /// The unique tableau of `shape` filled row by row.
    pub fn superstandard(shape: &Partition) -> Tableau {
        let mut next = 0u32;
        let rows = shape
            .parts()
            .iter()
            .map(|&len| {
                (0..len)
                    .map(|_| {
                        next += 1;
                        next
                    })
                    .collect()
            })
            .collect();
        Tableau::from_rows_unchecked(shape.clone(), rows)
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.shape.size()
    }

    /// Entry at a 1-based cell.
    pub fn get(&self, cell: Cell) -> Option<u32> {
        self.rows.get(cell.row.checked_sub(1)?)?.get(cell.col.checked_sub(1)?).copied()
    }

    /// `cells[v - 1]` is the cell holding `v`.
    pub fn positions(&self) -> Vec<Cell> {
        let mut cells = vec![Cell::new(0, 0); self.size()];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                cells[v as usize - 1] = Cell::new(i + 1, j + 1);
            }
        }
        cells
    }

    /// `i` is a descent iff `i + 1` lies strictly south of `i`.
    pub fn descent_set(&self) -> DescentSet {
        let pos = self.positions();
        let members = (1..self.size())
            .filter(|&i| {
                let (a, b) = (pos[i - 1], pos[i]);
                let south = b.row > a.row;
                // standardness forces a southern successor weakly west
                debug_assert!(!south || b.col <= a.col);
                south
            })
            .collect();
        DescentSet { members }
    }

    /// Letter `p` is the label of the cell holding `p`, cells numbered left to
    /// right starting from the bottom row.
    pub fn inverse_reading_word(&self) -> Vec<usize> {
        let k = self.rows.len();
        let mut offset = vec![0usize; k];
        for i in (0..k.saturating_sub(1)).rev() {
            offset[i] = offset[i + 1] + self.rows[i + 1].len();
        }
        self.positions().iter().map(|c| offset[c.row - 1] + c.col).collect()
    }

    /// `d_f(T)`: the sum of `f(i)` over the descents `i`.
    pub fn descent_value(&self, f: &DescentFunction) -> Result<Rational> {
        f.check_len(self.size())?;
        Ok(self.descent_set().iter().fold(Rational::zero(), |acc, i| acc + f.at(i)))
    }

    /// Mirror across the main diagonal; the result has the conjugate shape.
    pub fn transpose(&self) -> Tableau {
        let conj = self.shape.conjugate();
        let rows =
            conj.parts().iter().enumerate().map(|(j, &len)| (0..len).map(|i| self.rows[i][j]).collect()).collect();
        Tableau::from_rows_unchecked(conj, rows)
    }

    /// One row per line, entries separated by single spaces.
    pub fn to_text(&self) -> String {
        self.rows
            .iter()
            .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn parse_text(text: &str) -> Result<Tableau> {
        let rows = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.split_whitespace()
                    .map(|t| t.parse::<u32>().map_err(|_| Error::parse("tableau", text)))
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Tableau::from_rows(rows)
    }
}

fn check_grid_shape(shape: &Partition, rows: &[Vec<u32>]) -> Result<()> {
    let lens: Vec<usize> = rows.iter().map(Vec::len).collect();
    if lens != shape.parts() {
        return Err(Error::ShapeMismatch { shape: shape.parts().to_vec(), detail: format!("row lengths {lens:?}") });
    }
    Ok(())
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Serialize for Tableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tableau {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<u32>>::deserialize(d)?;
        Tableau::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// A set of descent positions, sorted ascending.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DescentSet {
    members: Vec<usize>,
}

impl DescentSet {
    pub fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        DescentSet { members }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    /// `{1, ..., n−1} \ self`.
    pub fn complement(&self, n: usize) -> DescentSet {
        DescentSet { members: (1..n).filter(|&i| !self.contains(i)).collect() }
    }
}

/// Descent positions of a word: `p` where `word[p−1] > word[p]`.
pub fn word_descents(word: &[usize]) -> DescentSet {
    DescentSet { members: (1..word.len()).filter(|&p| word[p - 1] > word[p]).collect() }
}

/// Named families of descent functions; `f(i)` does not depend on `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Builtin {
    Ones,
    Identity,
    Squares,
    Geometric(Rational),
}

impl Builtin {
    pub fn geometric(ratio: Rational) -> Result<Builtin> {
        if !ratio.is_positive() {
            return Err(Error::NonPositiveRatio(ratio.to_string()));
        }
        Ok(Builtin::Geometric(ratio))
    }

    /// `f(i)` for 1-based `i`.
    pub fn value(&self, i: usize) -> Rational {
        match self {
            Builtin::Ones => Rational::one(),
            Builtin::Identity => int(i as i64),
            Builtin::Squares => int((i * i) as i64),
            Builtin::Geometric(r) => num_traits::pow(r.clone(), i),
        }
    }

    pub fn tag(&self) -> String {
        match self {
            Builtin::Ones => "ones".into(),
            Builtin::Identity => "identity".into(),
            Builtin::Squares => "squares".into(),
            Builtin::Geometric(r) => format!("geometric:{r}"),
        }
    }

    /// The function on `1..n`, i.e. `n − 1` values.
    pub fn build(&self, n: usize) -> DescentFunction {
        let values = (1..n).map(|i| self.value(i)).collect();
        DescentFunction { values, name: Some(self.tag()) }
    }

    /// The four families the oracle suites run over.
    pub fn standard_set() -> [Builtin; 4] {
        [Builtin::Ones, Builtin::Identity, Builtin::Squares, Builtin::Geometric(int(2))]
    }
}

/// Looks up a builtin by name; `geometric` takes its ratio as a separate
/// argument.
pub fn builtin_f(name: &str, ratio: Option<Rational>, n: usize) -> Result<DescentFunction> {
    let b = match name {
        "ones" => Builtin::Ones,
        "identity" => Builtin::Identity,
        "squares" => Builtin::Squares,
        "geometric" => Builtin::geometric(ratio.unwrap_or_else(|| int(2)))?,
        other => return Err(Error::UnknownBuiltin(other.to_string())),
    };
    Ok(b.build(n))
}

/// Textual descent-function spec: `ones`, `identity`, `squares`,
/// `geometric:<r>` or `list:<v1>,<v2>,...` with rationals written `p/q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FSpec {
    Builtin(Builtin),
    List(Vec<Rational>),
}

impl FSpec {
    pub fn build(&self, n: usize) -> Result<DescentFunction> {
        match self {
            FSpec::Builtin(b) => Ok(b.build(n)),
            FSpec::List(values) => {
                let f = DescentFunction::new(values.clone());
                f.check_len(n)?;
                Ok(f)
            }
        }
    }

    pub fn tag(&self) -> String {
        match self {
            FSpec::Builtin(b) => b.tag(),
            FSpec::List(v) => {
                format!("list:{}", v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(","))
            }
        }
    }
}

impl FromStr for FSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<FSpec> {
        let s = s.trim();
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        match (head, arg) {
            ("ones", None) => Ok(FSpec::Builtin(Builtin::Ones)),
            ("identity", None) => Ok(FSpec::Builtin(Builtin::Identity)),
            ("squares", None) => Ok(FSpec::Builtin(Builtin::Squares)),
            ("geometric", Some(r)) => Ok(FSpec::Builtin(Builtin::geometric(parse_rational(r)?)?)),
            ("list", Some(vals)) if vals.trim().is_empty() => Ok(FSpec::List(Vec::new())),
            ("list", Some(vals)) => Ok(FSpec::List(vals.split(',').map(parse_rational).collect::<Result<_>>()?)),
            _ => Err(Error::UnknownBuiltin(s.to_string())),
        }
    }
}

/// `f(1), ..., f(n−1)` as exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentFunction {
    values: Vec<Rational>,
    name: Option<String>,
}

impl DescentFunction {
    pub fn new(values: Vec<Rational>) -> Self {
        DescentFunction { values, name: None }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// `f(i)` for 1-based `i`.
    pub fn at(&self, i: usize) -> &Rational {
        &self.values[i - 1]
    }

    /// The tableau size this function is defined for.
    pub fn n(&self) -> usize {
        self.values.len() + 1
    }

    pub fn check_len(&self, n: usize) -> Result<()> {
        let expected = n.saturating_sub(1);
        if self.values.len() != expected {
            return Err(Error::LengthMismatch { expected, got: self.values.len() });
        }
        Ok(())
    }

    pub fn check_positive(&self) -> Result<()> {
        match self.values.iter().position(|v| !v.is_positive()) {
            Some(i) => Err(Error::NonPositiveF { index: i + 1, value: self.values[i].to_string() }),
            None => Ok(()),
        }
    }

    /// `α f`.
    pub fn scaled(&self, alpha: &Rational) -> DescentFunction {
        DescentFunction { values: self.values.iter().map(|v| v * alpha).collect(), name: None }
    }

    /// `α f + β g`; lengths must agree.
    pub fn combine(&self, alpha: &Rational, other: &DescentFunction, beta: &Rational) -> Result<DescentFunction> {
        other.check_len(self.n())?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * alpha + b * beta).collect();
        Ok(DescentFunction { values, name: None })
    }
}
