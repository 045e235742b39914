//! Reading OEIS b-files and comparing them with computed sequences.
//!
//! A b-file holds one `index value` pair per line; blank lines and lines
//! starting with `#` are ignored.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use thiserror::Error;

/// Excerpt of the b-file for A002212 (rooted weighted trees by weight), rows 0..=30.
pub const BUNDLED_A002212: &str = include_str!("../data/b002212.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OeisError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: index {index} appears twice")]
    DuplicateIndex { line: usize, index: usize },
    #[error("fixture exhausted at {0}")]
    FixtureExhausted(usize),
    #[error("fixture has no row for index 0")]
    MissingStart,
}

pub fn parse_bfile(text: &str) -> Result<BTreeMap<usize, BigUint>, OeisError> {
    let mut rows = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut fields = content.split_whitespace();
        let (Some(index), Some(value), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(OeisError::Malformed {
                line,
                reason: format!("expected `index value`, found {content:?}"),
            });
        };
        let index: usize = index.parse().map_err(|_| OeisError::Malformed {
            line,
            reason: format!("bad index {index:?}"),
        })?;
        let value: BigUint = value.parse().map_err(|_| OeisError::Malformed {
            line,
            reason: format!("bad value {value:?}"),
        })?;
        if rows.insert(index, value).is_some() {
            return Err(OeisError::DuplicateIndex { line, index });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison {
    Agree {
        rows: usize,
    },
    Mismatch {
        index: usize,
        expected: BigUint,
        computed: BigUint,
    },
}

/// Compares `computed[0..]` with the b-file rows `0..computed.len()`.
pub fn compare(
    rows: &BTreeMap<usize, BigUint>,
    computed: &[BigUint],
) -> Result<Comparison, OeisError> {
    for (index, value) in computed.iter().enumerate() {
        let Some(expected) = rows.get(&index) else {
            return Err(match index {
                0 => OeisError::MissingStart,
                _ => OeisError::FixtureExhausted(index - 1),
            });
        };
        if expected != value {
            return Ok(Comparison::Mismatch {
                index,
                expected: expected.clone(),
                computed: value.clone(),
            });
        }
    }
    Ok(Comparison::Agree {
        rows: computed.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::a_rec;

    #[test]
    fn bundled_fixture_matches_recurrence() {
        let rows = parse_bfile(BUNDLED_A002212).unwrap();
        assert_eq!(rows.len(), 31);
        assert_eq!(
            compare(&rows, &a_rec(30)).unwrap(),
            Comparison::Agree { rows: 31 }
        );
    }

    #[test]
    fn tolerant_parsing() {
        let text = "# A002212\n\n0 1\n  1   1  \n2 3\r\n# trailing\n";
        let rows = parse_bfile(text).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[&2], BigUint::from(3u32));
    }

    #[test]
    fn malformed_lines() {
        assert!(matches!(
            parse_bfile("0 1\n1\n"),
            Err(OeisError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            parse_bfile("0 x\n"),
            Err(OeisError::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            parse_bfile("0 1 2\n"),
            Err(OeisError::Malformed { line: 1, .. })
        ));
        assert_eq!(
            parse_bfile("0 1\n0 1\n"),
            Err(OeisError::DuplicateIndex { line: 2, index: 0 })
        );
    }

    #[test]
    fn exhausted_fixture() {
        let text: String = a_rec(5)
            .iter()
            .enumerate()
            .map(|(i, v)| format!("{i} {v}\n"))
            .collect();
        let rows = parse_bfile(&text).unwrap();
        let err = compare(&rows, &a_rec(8)).unwrap_err();
        assert_eq!(err, OeisError::FixtureExhausted(5));
        assert_eq!(err.to_string(), "fixture exhausted at 5");
        assert_eq!(
            compare(&BTreeMap::new(), &a_rec(2)),
            Err(OeisError::MissingStart)
        );
    }

    #[test]
    fn reports_first_mismatch() {
        let rows = parse_bfile("0 1\n1 1\n2 4\n3 10\n").unwrap();
        assert_eq!(
            compare(&rows, &a_rec(3)).unwrap(),
            Comparison::Mismatch {
                index: 2,
                expected: BigUint::from(4u32),
                computed: BigUint::from(3u32),
            }
        );
    }
}
