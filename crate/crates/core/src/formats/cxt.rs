//! Burmeister `.cxt` files.
//!
//! ```text
//! B
//! <name>
//! <|G|>
//! <|M|>
//!
//! <object names, one per line>
//! <attribute names, one per line>
//! <one row of X/. per object>
//! ```

use super::ParseReport;
use crate::bitset::AttributeSet;
use crate::context::FormalContext;
use crate::error::{Error, Result};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

struct Lines<'a> {
    lines: Vec<&'a str>,
    next: usize,
}

impl<'a> Lines<'a> {
    /// Next raw line with a trailing `\r` removed (and reported).
    fn take(&mut self, what: &str, report: &mut ParseReport) -> Result<(usize, &'a str)> {
        let number = self.next + 1;
        let line = self
            .lines
            .get(self.next)
            .ok_or_else(|| parse_error(number, format!("unexpected end of file, expected {what}")))?;
        self.next += 1;
        Ok((number, match line.strip_suffix('\r') {
            Some(stripped) => {
                report.warn(number, "carriage return before newline");
                stripped
            }
            None => line,
        }))
    }

    /// Like `take`, but trailing whitespace is tolerated and reported.
    fn take_trimmed(&mut self, what: &str, report: &mut ParseReport) -> Result<(usize, &'a str)> {
        let (number, line) = self.take(what, report)?;
        let trimmed = line.trim_end();
        if trimmed.len() != line.len() {
            report.warn(number, "trailing whitespace");
        }
        Ok((number, trimmed))
    }
}

/// Parses a Burmeister context. Lowercase `x` cells, trailing whitespace,
/// CRLF line endings, trailing blank lines and a missing final newline are
/// accepted with a warning; everything else that deviates is an error.
pub fn parse_cxt(text: &str) -> Result<(FormalContext, ParseReport)> {
    let mut report = ParseReport::default();
    let body = match text.strip_suffix('\n') {
        Some(body) => body,
        None => {
            if !text.is_empty() {
                report.warn(text.lines().count().max(1), "missing final newline");
            }
            text
        }
    };
    let mut lines = Lines { lines: body.split('\n').collect(), next: 0 };

    let (n, header) = lines.take_trimmed("'B' header", &mut report)?;
    if header != "B" {
        return Err(parse_error(n, format!("expected 'B' header, found {header:?}")));
    }
    let (_, name) = lines.take("context name", &mut report)?;
    let mut count = |what: &str, report: &mut ParseReport| -> Result<usize> {
        let (n, raw) = lines.take(what, report)?;
        let trimmed = raw.trim();
        if trimmed.len() != raw.len() {
            report.warn(n, "whitespace around number");
        }
        trimmed.parse::<usize>().map_err(|_| parse_error(n, format!("expected {what}, found {raw:?}")))
    };
    let g = count("object count", &mut report)?;
    let m = count("attribute count", &mut report)?;
    let (n, sep) = lines.take_trimmed("blank separator line", &mut report)?;
    if !sep.is_empty() {
        return Err(parse_error(n, format!("expected blank line after the counts, found {sep:?}")));
    }

    let mut objects = Vec::with_capacity(g);
    for _ in 0..g {
        objects.push(lines.take("object name", &mut report)?.1.to_string());
    }
    let mut attributes = Vec::with_capacity(m);
    for _ in 0..m {
        attributes.push(lines.take("attribute name", &mut report)?.1.to_string());
    }

    let mut rows = Vec::with_capacity(g);
    for object in &objects {
        let (n, row) = lines
            .take_trimmed("incidence row", &mut report)
            .map_err(|_| parse_error(lines.next + 1, format!("declared {g} objects but the row for {object:?} is missing")))?;
        let cells: Vec<char> = row.chars().collect();
        if cells.len() != m {
            return Err(parse_error(n, format!("row for {object:?} has {} cells, declared {m} attributes", cells.len())));
        }
        let mut set = AttributeSet::empty(m);
        let mut lowercase = false;
        for (i, c) in cells.into_iter().enumerate() {
            match c {
                'X' => set.insert(i),
                'x' => {
                    lowercase = true;
                    set.insert(i)
                }
                '.' => {}
                other => return Err(parse_error(n, format!("illegal cell {other:?} in column {}", i + 1))),
            }
        }
        if lowercase {
            report.warn(n, "lowercase 'x' read as 'X'");
        }
        rows.push(set);
    }

    while lines.next < lines.lines.len() {
        let (n, rest) = lines.take_trimmed("end of file", &mut report)?;
        if !rest.is_empty() {
            return Err(parse_error(n, format!("unexpected content after {g} rows: {rest:?}")));
        }
        report.warn(n, "blank line after the last row");
    }

    let ctx = FormalContext::from_rows(name, objects, attributes, rows)?;
    report.warnings.sort_by_key(|w| w.line);
    Ok((ctx, report))
}

/// Canonical Burmeister output; `parse_cxt` of it reproduces `ctx` with an
/// empty report.
pub fn serialize_cxt(ctx: &FormalContext) -> String {
    let mut out = String::new();
    out.push_str("B\n");
    out.push_str(ctx.name());
    out.push('\n');
    out.push_str(&format!("{}\n{}\n\n", ctx.object_count(), ctx.attribute_count()));
    for name in ctx.objects().iter().chain(ctx.attributes()) {
        out.push_str(name);
        out.push('\n');
    }
    for row in ctx.row_strings() {
        out.push_str(&row);
        out.push('\n');
    }
    out
}
