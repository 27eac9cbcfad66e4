// Read and write Burmeister `.cxt` and CSV cross tables.
//
// ```bash
// cargo run -p lattice-tax --example cxt_formats
// ```

use lattice_tax::formats::{parse_csv, parse_cxt, serialize_csv, serialize_cxt, HeaderMode};

const SLOPPY: &str = "B\r\nanimals\r\n2\r\n2\r\n\r\ncat\r\nfish\r\nfur\r\nfins\r\nx.\r\n.X";

pub fn run_example() -> lattice_tax::Result<()> {
    let (ctx, report) = parse_cxt(SLOPPY)?;
    for w in &report.warnings {
        println!("line {}: {}", w.line, w.message);
    }
    let canonical = serialize_cxt(&ctx);
    print!("{canonical}");

    let csv = serialize_csv(&ctx);
    print!("{csv}");
    let (back, _) = parse_csv(&csv, HeaderMode::Present)?;
    assert_eq!(serialize_cxt(&back.with_name(ctx.name())), canonical);

    match parse_cxt("B\n\n1\n1\n\ng\nm\n?\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

fn main() {
    run_example().expect("cxt formats example");
}
