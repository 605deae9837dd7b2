//! OEIS b-file reading, writing and comparison.
//!
//! A b-file holds one `index value` pair per line. Blank lines and lines
//! starting with `#` are ignored; indices must be strictly increasing.

use std::fmt;
use std::fs;
use std::path::Path;

use hurwitz::ExactRational;
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFileEntry {
    pub index: i64,
    pub value: BigInt,
}

pub fn parse_bfile(text: &str) -> Result<Vec<BFileEntry>, BFileError> {
    let mut entries: Vec<BFileEntry> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let err = |message: String| BFileError::Parse { line, message };
        let mut fields = trimmed.split_whitespace();
        let (Some(index), Some(value), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(err(format!("expected \"index value\", found {trimmed:?}")));
        };
        let index: i64 = index
            .parse()
            .map_err(|_| err(format!("bad index {index:?}")))?;
        let value: BigInt = value
            .parse()
            .map_err(|_| err(format!("bad value {value:?}")))?;
        if let Some(prev) = entries.last() {
            if index <= prev.index {
                return Err(err(format!(
                    "non-monotone index {index} after {}",
                    prev.index
                )));
            }
        }
        entries.push(BFileEntry { index, value });
    }
    Ok(entries)
}

pub fn read_bfile(path: &Path) -> Result<Vec<BFileEntry>, BFileError> {
    let text = fs::read_to_string(path).map_err(|source| BFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_bfile(&text)
}

/// Render values as a b-file whose first entry has index `first_index`.
pub fn format_bfile<'a>(
    values: impl IntoIterator<Item = &'a ExactRational>,
    first_index: i64,
) -> String {
    values
        .into_iter()
        .zip(first_index..)
        .map(|(v, i)| format!("{i} {v}\n"))
        .collect()
}

/// How b-file indices map onto series coefficients: entry `i` is compared
/// with coefficient `stride * i + shift`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Alignment {
    pub shift: i64,
    pub stride: i64,
}

impl Default for Alignment {
    fn default() -> Self {
        Self {
            shift: 0,
            stride: 1,
        }
    }
}

impl Alignment {
    pub fn coefficient_index(&self, entry_index: i64) -> i64 {
        self.stride * entry_index + self.shift
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison {
    Match {
        compared: usize,
    },
    Mismatch {
        entry_index: i64,
        coefficient_index: usize,
        expected: BigInt,
        computed: ExactRational,
    },
    /// No entry falls inside the series.
    NoOverlap,
}

impl Comparison {
    pub fn is_match(&self) -> bool {
        matches!(self, Comparison::Match { .. })
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Comparison::Match { compared } => write!(f, "MATCH: {compared} entries agree"),
            Comparison::Mismatch {
                entry_index,
                coefficient_index,
                expected,
                computed,
            } => write!(
                f,
                "MISMATCH at entry {entry_index} (coefficient {coefficient_index}): b-file has {expected}, computed {computed}"
            ),
            Comparison::NoOverlap => f.write_str("NO OVERLAP: no entry maps onto a computed coefficient"),
        }
    }
}

/// Compare every entry that lands on a coefficient of `series`; the first
/// disagreement wins.
pub fn compare_bfile(
    series: &[ExactRational],
    entries: &[BFileEntry],
    align: Alignment,
) -> Comparison {
    let mut compared = 0;
    for entry in entries {
        let j = align.coefficient_index(entry.index);
        let Some(computed) = usize::try_from(j).ok().and_then(|j| series.get(j)) else {
            continue;
        };
        if computed.to_integer().as_ref() != Some(&entry.value) {
            return Comparison::Mismatch {
                entry_index: entry.index,
                coefficient_index: j as usize,
                expected: entry.value.clone(),
                computed: computed.clone(),
            };
        }
        compared += 1;
    }
    if compared == 0 {
        Comparison::NoOverlap
    } else {
        Comparison::Match { compared }
    }
}
