//! Reading and writing contexts: Burmeister `.cxt` and CSV.

mod csv;
mod cxt;

pub use self::csv::{parse_csv, serialize_csv, HeaderMode};
pub use self::cxt::{parse_cxt, serialize_cxt};

/// A tolerated deviation found while parsing.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ParseWarning {
    pub line: usize,
    pub message: String,
}

/// Warnings collected by a parser; empty iff the input was strictly well-formed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParseReport {
    pub warnings: Vec<ParseWarning>,
}

impl ParseReport {
    pub fn is_clean(&self) -> bool {
        self.warnings.is_empty()
    }

    pub(crate) fn warn(&mut self, line: usize, message: impl Into<String>) {
        self.warnings.push(ParseWarning { line, message: message.into() });
    }
}
