//! Integer partitions, power notation and the passport factor `N(λ)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::factorial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("partition parts must be positive, found {0}")]
    NonPositivePart(i64),
    #[error("N(λ) is undefined for the empty partition")]
    Empty,
    #[error("passport halves have different totals: {alpha} vs {beta}")]
    MismatchedPassport { alpha: usize, beta: usize },
    #[error("cannot parse partition {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// A partition of `n`: positive parts stored in weakly decreasing order.
///
/// The empty partition is the unique partition of zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self, PartitionError> {
        if parts.contains(&0) {
            return Err(PartitionError::NonPositivePart(0));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// Builds a partition from signed input, rejecting zero and negative entries.
    pub fn from_signed(parts: &[i64]) -> Result<Self, PartitionError> {
        let parts = parts
            .iter()
            .map(|&p| {
                if p >= 1 {
                    Ok(p as usize)
                } else {
                    Err(PartitionError::NonPositivePart(p))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }

    /// Builds a partition from `(part, multiplicity)` pairs.
    pub fn from_power_notation<I>(powers: I) -> Result<Self, PartitionError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut parts = Vec::new();
        for (part, mult) in powers {
            if part == 0 && mult > 0 {
                return Err(PartitionError::NonPositivePart(0));
            }
            parts.extend(std::iter::repeat_n(part, mult));
        }
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The partitioned integer.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Multiplicity `d_i` of each part size `i` that occurs.
    pub fn power_notation(&self) -> BTreeMap<usize, usize> {
        let mut powers = BTreeMap::new();
        for &p in &self.parts {
            *powers.entry(p).or_insert(0) += 1;
        }
        powers
    }

    /// `N(λ) = (k-1)! / (d_1! d_2! ... d_n!)`.
    ///
    /// Not an integer in general (`N(1^n) = 1/n`), so the value is kept as a
    /// reduced rational.
    pub fn big_n(&self) -> Result<BigRational, PartitionError> {
        if self.parts.is_empty() {
            return Err(PartitionError::Empty);
        }
        let numer = factorial(self.k() - 1);
        let denom = self
            .power_notation()
            .values()
            .fold(BigUint::one(), |acc, &d| acc * factorial(d));
        Ok(BigRational::new(numer.into(), denom.into()))
    }

    /// Power-notation rendering, largest part first: `5^2 3^1 1^1`.
    pub fn to_power_string(&self) -> String {
        self.power_notation()
            .iter()
            .rev()
            .map(|(part, mult)| format!("{part}^{mult}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = PartitionError;

    fn try_from(parts: Vec<usize>) -> Result<Self, Self::Error> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

/// Accepts `5,5,3,1` or the power form `5^2 3^1 1^1` (separators may be
/// commas or whitespace in either form).
impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse_err = |reason: String| PartitionError::Parse {
            input: s.to_string(),
            reason,
        };
        let mut powers = Vec::new();
        for token in s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let (base, exp) = match token.split_once('^') {
                Some((b, e)) => (b, e),
                None => (token, "1"),
            };
            let part: i64 = base
                .parse()
                .map_err(|_| parse_err(format!("invalid part {base:?}")))?;
            if part < 1 {
                return Err(PartitionError::NonPositivePart(part));
            }
            let mult: usize = exp
                .parse()
                .map_err(|_| parse_err(format!("invalid multiplicity {exp:?}")))?;
            powers.push((part as usize, mult));
        }
        Partition::from_power_notation(powers)
    }
}

/// A pair of partitions of the same total: sorted black degrees (`alpha`) and
/// sorted white degrees (`beta`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Passport {
    alpha: Partition,
    beta: Partition,
}

impl Passport {
    pub fn new(alpha: Partition, beta: Partition) -> Result<Self, PartitionError> {
        if alpha.n() != beta.n() {
            return Err(PartitionError::MismatchedPassport {
                alpha: alpha.n(),
                beta: beta.n(),
            });
        }
        Ok(Passport { alpha, beta })
    }

    pub fn alpha(&self) -> &Partition {
        &self.alpha
    }

    pub fn beta(&self) -> &Partition {
        &self.beta
    }

    /// Total weight shared by both halves.
    pub fn n(&self) -> usize {
        self.alpha.n()
    }
}

impl fmt::Display for Passport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.alpha, self.beta)
    }
}

/// All partitions of `n` in reverse-lexicographic order, starting from `(n)`
/// and ending with `1^n`. Zero has exactly one partition, the empty one.
pub fn partitions_of(n: usize) -> Partitions {
    Partitions {
        next: Some(if n == 0 { Vec::new() } else { vec![n] }),
    }
}

#[derive(Debug, Clone)]
pub struct Partitions {
    next: Option<Vec<usize>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        self.next = successor(&current);
        Some(Partition { parts: current })
    }
}

fn successor(parts: &[usize]) -> Option<Vec<usize>> {
    let pivot = parts.iter().rposition(|&p| p > 1)?;
    let mut next = parts[..pivot].to_vec();
    let cap = parts[pivot] - 1;
    let mut rest: usize = parts[pivot..].iter().sum();
    while rest > 0 {
        let part = cap.min(rest);
        next.push(part);
        rest -= part;
    }
    Some(next)
}
