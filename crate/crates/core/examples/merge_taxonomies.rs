// Merge two taxonomies of the same methods by apposition, and two
// taxonomies over the same attributes by subposition.
//
// ```bash
// cargo run -p lattice-tax --example merge_taxonomies
// ```

use lattice_tax::datasets::fca_related_biclustering;
use lattice_tax::formats::serialize_cxt;
use lattice_tax::lattice::enumerate_concepts;
use lattice_tax::{appose, subpose, FormalContext};

pub fn run_example() -> lattice_tax::Result<()> {
    let ctx = fca_related_biclustering();
    let methods: Vec<String> = ctx.objects().to_vec();

    // a second, tiny classification of the same methods
    let hierarchy = FormalContext::from_row_strings(
        "order",
        &methods,
        &["ordered output", "gene expression origin"],
        &["XX", ".X", "X.", "X.", "X.", "..", "X."],
    )?;
    let merged = appose(&ctx.clone().with_name("structure"), &hierarchy)?;
    println!("{} attributes after apposition:", merged.attribute_count());
    for a in merged.attributes() {
        println!("  {a}");
    }
    println!("{} concepts (was {})", enumerate_concepts(&merged)?.len(), enumerate_concepts(&ctx)?.len());

    // more methods described with the same attributes
    let extra = FormalContext::from_row_strings("more", &["SpectralBiclust"], ctx.attributes(), &["......X"])?;
    let stacked = subpose(&ctx, &extra)?;
    print!("{}", serialize_cxt(&stacked));

    // objects must agree for apposition
    let other = FormalContext::from_row_strings("other", &["BiMax", "ISA"], &["x"], &["X", "X"])?;
    if let Err(e) = appose(&ctx, &other) {
        println!("rejected: {e}");
    }
    Ok(())
}

fn main() {
    run_example().expect("merge taxonomies example");
}
