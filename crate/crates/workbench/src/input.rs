//! Loading contexts from files, strings and the bundled registry.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use lattice_tax::datasets::DatasetRegistry;
use lattice_tax::formats::{parse_csv, parse_cxt, serialize_csv, serialize_cxt, HeaderMode, ParseReport};
use lattice_tax::{FormalContext, Result};

pub const DEFAULT_DATASET: &str = "fca-related-biclustering";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Cxt,
    Csv,
}

impl FromStr for TableFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "cxt" => Ok(TableFormat::Cxt),
            "csv" => Ok(TableFormat::Csv),
            other => Err(format!("unknown table format {other:?} (expected cxt or csv)")),
        }
    }
}

impl fmt::Display for TableFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableFormat::Cxt => "cxt",
            TableFormat::Csv => "csv",
        })
    }
}

impl TableFormat {
    /// Guesses from the file extension; anything but `.csv` is read as cxt.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => TableFormat::Csv,
            _ => TableFormat::Cxt,
        }
    }
}

pub fn parse_table(text: &str, format: TableFormat) -> Result<(FormalContext, ParseReport)> {
    match format {
        TableFormat::Cxt => parse_cxt(text),
        TableFormat::Csv => parse_csv(text, HeaderMode::Present),
    }
}

pub fn render_table(ctx: &FormalContext, format: TableFormat) -> String {
    match format {
        TableFormat::Cxt => serialize_cxt(ctx),
        TableFormat::Csv => serialize_csv(ctx),
    }
}

/// A bundled dataset by name.
pub fn builtin(name: &str) -> Option<FormalContext> {
    DatasetRegistry::default().get(name).map(|d| d.context.clone())
}

pub fn builtin_names() -> Vec<&'static str> {
    DatasetRegistry::default().names().collect()
}
