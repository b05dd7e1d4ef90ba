use std::fmt;

use serde::Serialize;

use crate::finite::table::{logical_lines, parse_header, parse_rows, ParseError};

/// An unvalidated action table as read from text:
///
/// ```text
/// action <n> <k>
/// <row for element 0: 0·0 .. 0·(k-1)>
/// ...
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionTable {
    pub order: usize,
    pub points: usize,
    pub entries: Vec<usize>,
}

impl ActionTable {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let lines = logical_lines(text);
        let header = parse_header(lines.first(), "action", 2)?;
        let (order, points) = (header[0], header[1]);
        let last_line = lines.last().map_or(1, |l| l.number);
        let entries = parse_rows(&lines[1..], order, points, points, last_line)?;
        Ok(Self {
            order,
            points,
            entries,
        })
    }

    pub fn serialize(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ActionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "action {} {}", self.order, self.points)?;
        for row in self.entries.chunks(self.points) {
            let row: Vec<String> = row.iter().map(usize::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
