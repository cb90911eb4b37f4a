//! Uniform random tableaux via the Novelli–Pak–Stoyanovskii exchange
//! procedure, and an exhaustive audit of its exactness.
//!
//! Randomness comes from ChaCha20 seeded with `seed_from_u64(seed)`; draw `i`
//! of a sample reads stream `i` of that key, so any draw can be reproduced in
//! isolation and the parallel sampler matches the serial one exactly.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::{factorial, Partition};
use crate::rational::BigCount;
use crate::tableau::Tableau;

/// Audits walk all `n!` fillings; this caps them at `8! = 40320` by default.
pub const DEFAULT_AUDIT_GUARD: u64 = 40_320;

/// A shape filled with a permutation of `1..=n`, no order constraints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Filling {
    shape: Partition,
    rows: Vec<Vec<u32>>,
}

impl Filling {
    pub fn new(shape: &Partition, rows: Vec<Vec<u32>>) -> Result<Filling> {
        let lens: Vec<usize> = rows.iter().map(Vec::len).collect();
        if lens != shape.parts() {
            return Err(Error::ShapeMismatch {
                shape: shape.parts().to_vec(),
                detail: format!("row lengths {lens:?}"),
            });
        }
        let n = shape.size();
        let mut seen = vec![false; n + 1];
        for &v in rows.iter().flatten() {
            let v = v as usize;
            if v == 0 || v > n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::DuplicateOrMissingEntry { n });
            }
        }
        Ok(Filling { shape: shape.clone(), rows })
    }

    /// Lays `values` into the shape row by row.
    pub fn from_row_major(shape: &Partition, values: &[u32]) -> Result<Filling> {
        let mut it = values.iter().copied();
        let rows = shape.parts().iter().map(|&len| it.by_ref().take(len).collect()).collect();
        if values.len() != shape.size() {
            return Err(Error::ShapeMismatch {
                shape: shape.parts().to_vec(),
                detail: format!("{} values", values.len()),
            });
        }
        Filling::new(shape, rows)
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }
}

impl From<&Tableau> for Filling {
    fn from(t: &Tableau) -> Self {
        Filling { shape: t.shape().clone(), rows: t.rows().to_vec() }
    }
}

/// The RNG for draw `index` of a sample seeded with `seed`.
pub fn draw_rng(seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform filling: an unbiased Fisher–Yates shuffle of `1..=n` laid out row
/// by row.
pub fn random_filling<R: Rng + ?Sized>(shape: &Partition, rng: &mut R) -> Filling {
    let mut values: Vec<u32> = (1..=shape.size() as u32).collect();
    values.shuffle(rng);
    Filling::from_row_major(shape, &values).expect("a permutation fills the shape")
}

/// Sorts a filling into a standard tableau.
///
/// Active cells are taken from the rightmost column to the leftmost, each
/// column bottom to top, ending at `(1, 1)`. The active entry is swapped with
/// the smaller of its east and south neighbours until it is smaller than both
/// (a missing neighbour counts as +∞).
pub fn nps_sort(filling: &Filling) -> Tableau {
    let shape = filling.shape();
    let parts = shape.parts();
    let mut rows = filling.rows.clone();
    let conj = shape.conjugate();
    for (col, &height) in conj.parts().iter().enumerate().rev() {
        for row in (0..height).rev() {
            let (mut i, mut j) = (row, col);
            loop {
                let east = (j + 1 < parts[i]).then(|| (rows[i][j + 1], i, j + 1));
                let south = (i + 1 < parts.len() && j < parts[i + 1]).then(|| (rows[i + 1][j], i + 1, j));
                let smaller = match (east, south) {
                    (Some(e), Some(s)) => Some(if e.0 < s.0 { e } else { s }),
                    (e, s) => e.or(s),
                };
                match smaller {
                    Some((v, ni, nj)) if v < rows[i][j] => {
                        rows[ni][nj] = rows[i][j];
                        rows[i][j] = v;
                        (i, j) = (ni, nj);
                    }
                    _ => break,
                }
            }
        }
    }
    Tableau::validate(shape, rows).expect("exchange procedure yields a standard tableau")
}

/// `k` independent uniform tableaux, reproducible from `seed`.
pub fn sample_syt(shape: &Partition, k: u64, seed: u64) -> impl Iterator<Item = Tableau> + '_ {
    (0..k).map(move |i| nps_sort(&random_filling(shape, &mut draw_rng(seed, i))))
}

/// Same stream as [`sample_syt`], drawn in parallel.
pub fn sample_syt_par(shape: &Partition, k: u64, seed: u64) -> Vec<Tableau> {
    (0..k).into_par_iter().map(|i| nps_sort(&random_filling(shape, &mut draw_rng(seed, i)))).collect()
}

/// How often each tableau comes out of [`nps_sort`] over all `n!` fillings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub shape: Partition,
    pub fillings: BigCount,
    /// Sorted by tableau.
    pub per_tableau_counts: Vec<(Tableau, BigCount)>,
    /// `n! / N`.
    pub expected: BigCount,
    pub uniform: bool,
}

impl Serialize for AuditReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            tableau: &'a Tableau,
            count: String,
        }
        let counts: Vec<Entry> =
            self.per_tableau_counts.iter().map(|(t, c)| Entry { tableau: t, count: c.to_string() }).collect();
        let mut st = s.serialize_struct("AuditReport", 6)?;
        st.serialize_field("shape", &self.shape)?;
        st.serialize_field("fillings", &self.fillings.to_string())?;
        st.serialize_field("syt_count", &self.per_tableau_counts.len().to_string())?;
        st.serialize_field("expected", &self.expected.to_string())?;
        st.serialize_field("uniform", &self.uniform)?;
        st.serialize_field("counts", &counts)?;
        st.end()
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Runs [`nps_sort`] on every filling of `shape`.
pub fn exhaustive_audit(shape: &Partition, guard: u64) -> Result<AuditReport> {
    let n = shape.size();
    let fillings = factorial(n);
    if fillings > BigUint::from(guard) {
        return Err(Error::GuardExceeded { what: "filling audit", count: fillings.to_string(), guard });
    }
    let firsts: Vec<u32> = if n == 0 { vec![0] } else { (1..=n as u32).collect() };
    let merged = firsts
        .into_par_iter()
        .map(|first| {
            let mut counts: HashMap<Vec<Vec<u32>>, u64> = HashMap::new();
            let mut perm: Vec<u32> = if n == 0 {
                Vec::new()
            } else {
                std::iter::once(first).chain((1..=n as u32).filter(|&v| v != first)).collect()
            };
            loop {
                let f = Filling::from_row_major(shape, &perm).expect("permutation");
                *counts.entry(nps_sort(&f).rows().to_vec()).or_default() += 1;
                if n == 0 || !next_permutation(&mut perm[1..]) {
                    break;
                }
            }
            counts
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    let mut per_tableau_counts: Vec<(Tableau, BigCount)> = merged
        .into_iter()
        .map(|(rows, c)| (Tableau::validate(shape, rows).expect("sorted output"), BigUint::from(c)))
        .collect();
    per_tableau_counts.sort();
    let syt = shape.count_syt()?;
    let (expected, rem) = fillings.div_rem(&syt);
    let uniform = rem == BigUint::ZERO
        && BigUint::from(per_tableau_counts.len()) == syt
        && per_tableau_counts.iter().all(|(_, c)| *c == expected);
    Ok(AuditReport { shape: shape.clone(), fillings, per_tableau_counts, expected, uniform })
}
