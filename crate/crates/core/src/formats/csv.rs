use super::ParseReport;
use crate::bitset::AttributeSet;
use crate::context::FormalContext;
use crate::error::{Error, Result};

/// Whether the first CSV record names the attributes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HeaderMode {
    /// First record is `<corner>,<attr>,<attr>,...`; the corner cell is ignored.
    #[default]
    Present,
    /// Every record is data; attributes are named `m1`, `m2`, ...
    Absent,
}

/// Parses a CSV table whose first column holds object names. Cells `1`, `X`
/// and `x` are incident; `0`, `.` and empty cells are not.
pub fn parse_csv(text: &str, header: HeaderMode) -> Result<(FormalContext, ParseReport)> {
    let mut report = ParseReport::default();
    let mut reader = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(text.as_bytes());

    let mut records = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        records.push((line, record));
    }

    let mut iter = records.into_iter().peekable();
    let attributes: Vec<String> = match header {
        HeaderMode::Present => match iter.next() {
            Some((line, record)) => record.iter().skip(1).map(|c| trim_cell(c, line, &mut report)).collect(),
            None => Vec::new(),
        },
        HeaderMode::Absent => {
            let width = iter.peek().map_or(0, |(_, r)| r.len().saturating_sub(1));
            (1..=width).map(|i| format!("m{i}")).collect()
        }
    };

    let mut objects = Vec::new();
    let mut rows = Vec::new();
    for (line, record) in iter {
        if record.len() != attributes.len() + 1 {
            return Err(Error::Parse {
                line,
                message: format!("ragged row: {} cells, expected {}", record.len(), attributes.len() + 1),
            });
        }
        let object = trim_cell(&record[0], line, &mut report);
        let mut set = AttributeSet::empty(attributes.len());
        for (i, cell) in record.iter().skip(1).enumerate() {
            match trim_cell(cell, line, &mut report).as_str() {
                "1" | "X" | "x" => set.insert(i),
                "0" | "." | "" => {}
                other => {
                    return Err(Error::Parse {
                        line,
                        message: format!("illegal cell {other:?} for object {object:?}, attribute {:?}", attributes[i]),
                    })
                }
            }
        }
        objects.push(object);
        rows.push(set);
    }

    let ctx = FormalContext::from_rows("", objects, attributes, rows)?;
    Ok((ctx, report))
}

fn trim_cell(cell: &str, line: usize, report: &mut ParseReport) -> String {
    let trimmed = cell.trim();
    if trimmed.len() != cell.len() {
        report.warn(line, format!("whitespace around cell {trimmed:?}"));
    }
    trimmed.to_string()
}

/// Writes a CSV table with a header record and `1`/`0` cells.
pub fn serialize_csv(ctx: &FormalContext) -> String {
    let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let header = std::iter::once("").chain(ctx.attributes().iter().map(String::as_str));
    writer.write_record(header).expect("writing to memory");
    for (g, object) in ctx.objects().iter().enumerate() {
        let cells = (0..ctx.attribute_count()).map(|m| if ctx.incident(g, m) { "1" } else { "0" });
        writer.write_record(std::iter::once(object.as_str()).chain(cells)).expect("writing to memory");
    }
    String::from_utf8(writer.into_inner().expect("flush to memory")).expect("csv output is utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets::fca_related_biclustering;

    #[test]
    fn diagonal_two_by_two() {
        let (ctx, report) = parse_csv("name,a,b\ng1,1,0\ng2,0,1", HeaderMode::Present).unwrap();
        assert!(report.is_clean());
        assert_eq!(ctx.objects(), ["g1", "g2"]);
        assert_eq!(ctx.attributes(), ["a", "b"]);
        assert_eq!(ctx.row_strings(), ["X.", ".X"]);
    }

    #[test]
    fn transcription_of_bundled_context_matches() {
        let bundled = fca_related_biclustering();
        let csv = "\
,Type:const,Type:const with exceptions,Struct:Arbitr. overl.,Value type:binary,Closure:explicit,Closure:implicit,Val.type:numeric
BiMax,X,.,X,X,.,X,.
Box biclustering,X,,X,X,,X,X
FCA,1,0,1,1,1,0,0
Freq. Closed Itemsets,x,.,x,x,x,.,.
Association rules,X,.,X,X,X,.,.
Fault-tolerant concepts,X,X,X,X,.,X,.
OA-biclusters,X,X,X,X,X,.,.
";
        let (ctx, report) = parse_csv(csv, HeaderMode::Present).unwrap();
        assert!(report.is_clean());
        assert_eq!(ctx.with_name(bundled.name()), bundled);
    }

    #[test]
    fn rejects_bad_cell_naming_it() {
        let err = parse_csv("name,a,b\ng1,2,0\n", HeaderMode::Present).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("\"2\""), "{msg}");
        assert!(msg.contains("\"a\""), "{msg}");
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn rejects_ragged_and_duplicates() {
        assert!(matches!(parse_csv("n,a,b\ng,1\n", HeaderMode::Present), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_csv("n,a,a\ng,1,1\n", HeaderMode::Present), Err(Error::DuplicateName { .. })));
        assert!(matches!(parse_csv("n,a\ng,1\ng,0\n", HeaderMode::Present), Err(Error::DuplicateName { .. })));
    }

    #[test]
    fn headerless_and_padded() {
        let (ctx, report) = parse_csv("g1, 1 ,0\ng2,0,1\n", HeaderMode::Absent).unwrap();
        assert_eq!(ctx.attributes(), ["m1", "m2"]);
        assert_eq!(ctx.row_strings(), ["X.", ".X"]);
        assert_eq!(report.warnings.len(), 1);
    }

    #[test]
    fn serialize_then_parse() {
        let ctx = fca_related_biclustering();
        let (back, report) = parse_csv(&serialize_csv(&ctx), HeaderMode::Present).unwrap();
        assert!(report.is_clean());
        assert_eq!(back.with_name(ctx.name()), ctx);
    }
}
