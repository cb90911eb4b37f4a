//! Exact descent statistics on standard Young tableaux.
//!
//! The crate counts, enumerates, and uniformly samples standard Young
//! tableaux, evaluates closed forms for the mean and variance of descent
//! functions, and carries brute-force oracles that check those closed forms
//! against full enumeration. All statistics are exact rationals.

pub mod enumerate;
pub mod error;
pub mod partition;
pub mod rational;
pub mod sample;
pub mod stats;
pub mod tableau;
pub mod verify;

pub use enumerate::{
    brute_stats, cooccurrence_matrix, descent_position_counts, enumerate_syt, first_row_prefix_fraction, BruteStats,
    CooccurrenceMatrix, DescentPositionCounts, DEFAULT_GUARD,
};
pub use error::{Error, Result};
pub use partition::{parse_partition, partitions_of, Cell, Partition};
pub use rational::{BigCount, Rational};
pub use sample::{exhaustive_audit, nps_sort, random_filling, sample_syt, AuditReport, Filling, DEFAULT_AUDIT_GUARD};
pub use stats::{
    boundedness_scan, coefficient_c, coefficient_d, coefficient_e, corollary_ratio, eq1_min_constant, expectation,
    normalized_variance, shape_stats, variance, Bound, BoundednessReport, MomentReport, ShapeFamily, ShapeStats,
};
pub use tableau::{builtin_f, Builtin, DescentFunction, DescentSet, FSpec, Tableau};
