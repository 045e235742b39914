//! Exact enumeration of weighted bicolored plane trees.
//!
//! Rooted trees are encoded as weighted Dyck words ([`dyck`], [`tree`]) and
//! counted three independent ways: by recurrences and explicit formulas
//! ([`census`]), by expanding generating functions ([`series`]), and by
//! exhaustive enumeration.

mod arith;
pub mod census;
pub mod dyck;
pub mod oeis;
pub mod partition;
pub mod series;
pub mod tree;

pub use arith::{binomial, factorial};
pub use census::{CensusError, CensusRow, VerifyReport};
pub use dyck::{DyckError, Step, Token, WeightedDyckWord};
pub use partition::{Partition, PartitionError, Passport};
pub use series::{BivariateSeries, Field, SeriesError, SquareRoot, TruncatedSeries};
pub use tree::{Color, RootedTree, TreeError, UnrootedClass};

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

pub type RationalSeries = TruncatedSeries<BigRational>;
pub type FloatSeries = TruncatedSeries<f64>;
pub type Float32Series = TruncatedSeries<f32>;
pub type RationalBivariate = BivariateSeries<BigRational>;
pub type IntegerBivariate = BivariateSeries<BigInt>;
pub type FloatBivariate = BivariateSeries<f64>;
