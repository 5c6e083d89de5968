//! Text and JSON file formats.
//!
//! Every parser reports the 1-based line number of the first problem.

pub mod ctbl;
pub mod grid;
pub mod group;
pub mod matrix;
pub mod orbital_table;
pub mod sets;

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    /// 1-based, or 0 when the problem is not tied to a line.
    pub line: usize,
    pub message: String,
}

impl FormatError {
    pub fn at(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }

    pub fn whole(message: impl Into<String>) -> Self {
        Self::at(0, message)
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            f.write_str(&self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for FormatError {}

/// Non-empty lines with `#` comments stripped, paired with their line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

pub(crate) fn parse_num<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T, FormatError> {
    tok.parse()
        .map_err(|_| FormatError::at(line, format!("expected {what}, found {tok:?}")))
}
