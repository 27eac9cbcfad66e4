// Enumerate the formal concepts of the bundled taxonomy table in lectic order.
//
// ```bash
// cargo run -p lattice-tax --example concepts
// ```

use lattice_tax::datasets::fca_related_biclustering;
use lattice_tax::lattice::{build_lattice, enumerate_concepts, ConceptOrder};

pub fn run_example() -> lattice_tax::Result<()> {
    let ctx = fca_related_biclustering();
    println!("{}: {} objects x {} attributes", ctx.name(), ctx.object_count(), ctx.attribute_count());

    let concepts = enumerate_concepts(&ctx)?;
    for (i, c) in concepts.iter().enumerate() {
        let named = c.named(&ctx);
        println!("#{i} extent {:?}", named.extent);
        println!("   intent {:?}", named.intent);
    }

    // the same concepts, now ordered
    let lattice = build_lattice(&ctx)?;
    let bimax = ctx.objects_named(&["BiMax"])?;
    let bimax_concept = lattice
        .concepts()
        .iter()
        .position(|c| c.extent == ctx.closure_objects(&bimax).unwrap())
        .expect("object concepts are in the lattice");
    for parent in lattice.upper_covers(bimax_concept) {
        assert_eq!(lattice.compare(bimax_concept, *parent)?, ConceptOrder::Less);
        println!("BiMax concept #{bimax_concept} sits directly below #{parent}");
    }
    println!("{} concepts, {} cover edges", lattice.len(), lattice.covers().len());
    Ok(())
}

fn main() {
    run_example().expect("concepts example");
}
