// Compute and check the Duquenne-Guigues base of a context.
//
// ```bash
// cargo run -p lattice-tax --example implication_base
// ```

use lattice_tax::datasets::{fca_related_biclustering, SOURCE_CONTEXT_UNAVAILABLE, SURVEY_TAXONOMY_TOP_IMPLICATIONS};
use lattice_tax::implication::{duquenne_guigues_base, verify_base, NamedImplication};

pub fn run_example() -> lattice_tax::Result<()> {
    let ctx = fca_related_biclustering();
    let base = duquenne_guigues_base(&ctx);
    for imp in base.iter() {
        println!("{}", imp.render(&ctx));
    }
    let report = verify_base(&ctx, &base)?;
    println!("sound={} complete={} minimal={}", report.sound, report.complete, report.minimal);

    // the closure under the base is the closure in the context
    let x = ctx.attributes_named(&["Closure:implicit"])?;
    println!("{:?} closes to {:?}", ctx.attribute_names(&x), ctx.attribute_names(&base.closure(&x)));

    // implications from a larger survey taxonomy, kept only as rendering fixtures
    println!("-- {SOURCE_CONTEXT_UNAVAILABLE}");
    for line in SURVEY_TAXONOMY_TOP_IMPLICATIONS.lines().take(3) {
        let parsed: NamedImplication = line.parse()?;
        println!("{parsed}");
    }
    Ok(())
}

fn main() {
    run_example().expect("implication base example");
}
