//! Cayley-table text format.
//!
//! ```text
//! # comment
//! gyro 3
//! labels e a b
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! ```
//!
//! Row `a` lists `a⊕0 .. a⊕(n−1)`. Element 0 is the identity candidate.

use std::fmt;

use thiserror::Error;

use crate::carrier::Gyrogroup;
use crate::error::GyroError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing header `{0} <n>`")]
    MissingHeader(&'static str),
    #[error("malformed header: {0}")]
    BadHeader(String),
    #[error("expected {expected} entries in row, found {found}")]
    RowLength { expected: usize, found: usize },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("`{0}` is not a non-negative integer")]
    NotInteger(String),
    #[error("entry {value} is out of range 0..{bound}")]
    OutOfRange { value: usize, bound: usize },
    #[error("expected {expected} labels, found {found}")]
    LabelCount { expected: usize, found: usize },
}

/// A line with its 1-based number and tokens with 1-based columns.
pub(crate) struct Line<'t> {
    pub number: usize,
    pub tokens: Vec<(usize, &'t str)>,
}

/// Splits text into non-empty logical lines with comments removed.
pub(crate) fn logical_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("");
            let mut tokens = Vec::new();
            let mut start = None;
            for (pos, ch) in content.char_indices() {
                if ch.is_whitespace() {
                    if let Some(s) = start.take() {
                        tokens.push((s + 1, &content[s..pos]));
                    }
                } else if start.is_none() {
                    start = Some(pos);
                }
            }
            if let Some(s) = start {
                tokens.push((s + 1, &content[s..]));
            }
            (!tokens.is_empty()).then_some(Line {
                number: i + 1,
                tokens,
            })
        })
        .collect()
}

pub(crate) fn parse_entry(
    line: usize,
    column: usize,
    token: &str,
    bound: usize,
) -> Result<usize, ParseError> {
    let err = |kind| ParseError { line, column, kind };
    let value: usize = token
        .parse()
        .map_err(|_| err(ParseErrorKind::NotInteger(token.to_string())))?;
    if value >= bound {
        return Err(err(ParseErrorKind::OutOfRange { value, bound }));
    }
    Ok(value)
}

/// Parses `n` rows of `width` integers in `0..bound` from `lines`.
pub(crate) fn parse_rows(
    lines: &[Line<'_>],
    rows: usize,
    width: usize,
    bound: usize,
    last_line: usize,
) -> Result<Vec<usize>, ParseError> {
    if lines.len() != rows {
        let line = lines.get(rows).map_or(last_line, |l| l.number);
        return Err(ParseError {
            line,
            column: 1,
            kind: ParseErrorKind::RowCount {
                expected: rows,
                found: lines.len(),
            },
        });
    }
    let mut entries = Vec::with_capacity(rows * width);
    for line in lines {
        if line.tokens.len() != width {
            return Err(ParseError {
                line: line.number,
                column: 1,
                kind: ParseErrorKind::RowLength {
                    expected: width,
                    found: line.tokens.len(),
                },
            });
        }
        for &(column, token) in &line.tokens {
            entries.push(parse_entry(line.number, column, token, bound)?);
        }
    }
    Ok(entries)
}

/// Parses a `<keyword> <a> <b> ...` header with `count` positive integers.
pub(crate) fn parse_header(
    line: Option<&Line<'_>>,
    keyword: &'static str,
    count: usize,
) -> Result<Vec<usize>, ParseError> {
    let line = line.ok_or(ParseError {
        line: 1,
        column: 1,
        kind: ParseErrorKind::MissingHeader(keyword),
    })?;
    let bad = |column, msg: String| ParseError {
        line: line.number,
        column,
        kind: ParseErrorKind::BadHeader(msg),
    };
    if line.tokens[0].1 != keyword {
        return Err(ParseError {
            line: line.number,
            column: line.tokens[0].0,
            kind: ParseErrorKind::MissingHeader(keyword),
        });
    }
    if line.tokens.len() != count + 1 {
        return Err(bad(
            1,
            format!("expected {count} value(s) after `{keyword}`"),
        ));
    }
    line.tokens[1..]
        .iter()
        .map(|&(column, tok)| match tok.parse::<usize>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(bad(column, format!("`{tok}` is not a positive integer"))),
        })
        .collect()
}

/// An `n×n` operation table on `0..n`, not yet known to be a gyrogroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    order: usize,
    entries: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl CayleyTable {
    /// Builds a table from row-major entries.
    pub fn new(order: usize, entries: Vec<usize>) -> Result<Self, GyroError> {
        if order == 0 {
            return Err(GyroError::InvalidElement("table order must be positive".into()));
        }
        if entries.len() != order * order {
            return Err(GyroError::DimensionMismatch {
                expected: order * order,
                actual: entries.len(),
            });
        }
        if let Some(&bad) = entries.iter().find(|&&e| e >= order) {
            return Err(GyroError::InvalidElement(format!(
                "entry {bad} out of range 0..{order}"
            )));
        }
        Ok(Self {
            order,
            entries,
            labels: None,
        })
    }

    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self, GyroError> {
        let entries = (0..order)
            .flat_map(|a| (0..order).map(move |b| (a, b)))
            .map(|(a, b)| f(a, b))
            .collect();
        Self::new(order, entries)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GyroError> {
        if labels.len() != self.order {
            return Err(GyroError::DimensionMismatch {
                expected: self.order,
                actual: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let lines = logical_lines(text);
        let n = parse_header(lines.first(), "gyro", 1)?[0];
        let mut body = &lines[1..];
        let mut labels = None;
        if let Some(first) = body.first() {
            if first.tokens[0].1 == "labels" {
                let names: Vec<String> =
                    first.tokens[1..].iter().map(|(_, t)| t.to_string()).collect();
                if names.len() != n {
                    return Err(ParseError {
                        line: first.number,
                        column: 1,
                        kind: ParseErrorKind::LabelCount {
                            expected: n,
                            found: names.len(),
                        },
                    });
                }
                labels = Some(names);
                body = &body[1..];
            }
        }
        let last_line = text.lines().count().max(1);
        let entries = parse_rows(body, n, n, n, last_line)?;
        Ok(Self {
            order: n,
            entries,
            labels,
        })
    }

    /// Canonical text: single spaces, no trailing whitespace, final newline.
    pub fn serialize(&self) -> String {
        self.to_string()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.entries[a * self.order + b]
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.entries[a * self.order..(a + 1) * self.order]
    }

    /// Returns a copy with one entry replaced.
    pub fn with_entry(&self, a: usize, b: usize, value: usize) -> Result<Self, GyroError> {
        if a >= self.order || b >= self.order || value >= self.order {
            return Err(GyroError::InvalidElement(format!(
                "({a},{b}) ↦ {value} is out of range"
            )));
        }
        let mut t = self.clone();
        t.entries[a * self.order + b] = value;
        Ok(t)
    }

    /// All `b` with `b⊕a = 0`.
    pub(crate) fn left_inverses(&self, a: usize) -> Vec<usize> {
        (0..self.order).filter(|&b| self.get(b, a) == 0).collect()
    }
}

impl fmt::Display for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gyro {}", self.order)?;
        if let Some(labels) = &self.labels {
            writeln!(f, "labels {}", labels.join(" "))?;
        }
        for a in 0..self.order {
            let row: Vec<String> = self.row(a).iter().map(usize::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// The raw magma. `⊖a` is the unique two-sided inverse when one exists, so
/// the derived algebra can be run on tables that fail validation.
impl Gyrogroup for CayleyTable {
    type Element = usize;

    fn identity(&self) -> usize {
        0
    }

    fn oplus(&self, a: &usize, b: &usize) -> Result<usize, GyroError> {
        if *a >= self.order || *b >= self.order {
            return Err(GyroError::InvalidElement(format!(
                "({a},{b}) outside 0..{}",
                self.order
            )));
        }
        Ok(self.get(*a, *b))
    }

    fn ominus(&self, a: &usize) -> Result<usize, GyroError> {
        match self.left_inverses(*a).as_slice() {
            [b] if self.get(*a, *b) == 0 => Ok(*b),
            _ => Err(GyroError::NoInverse(*a)),
        }
    }

    fn discrepancy(&self, a: &usize, b: &usize) -> f64 {
        if a == b {
            0.0
        } else {
            1.0
        }
    }

    fn tolerance(&self) -> f64 {
        0.0
    }
}
