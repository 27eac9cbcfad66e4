// Export a layered line diagram as JSON and Graphviz dot.
//
// ```bash
// cargo run -p lattice-tax --example line_diagram > lattice.dot
// ```

use lattice_tax::datasets::fca_related_biclustering;
use lattice_tax::lattice::{build_lattice, LineDiagram};

pub fn run_example() -> lattice_tax::Result<()> {
    let ctx = fca_related_biclustering();
    let lattice = build_lattice(&ctx)?;
    let diagram = LineDiagram::new(&ctx, &lattice);

    for layer in 0..diagram.layer_count() {
        let row: Vec<String> = diagram
            .nodes
            .iter()
            .filter(|n| n.layer == layer)
            .map(|n| {
                let mut label = n.attribute_labels.join(", ");
                if !n.object_labels.is_empty() {
                    label = format!("{label} / {}", n.object_labels.join(", "));
                }
                format!("[{}]", label)
            })
            .collect();
        eprintln!("layer {layer}: {}", row.join("  "));
    }

    let json = diagram.to_json();
    assert_eq!(LineDiagram::from_json(&json)?, diagram);
    print!("{}", diagram.to_dot());
    Ok(())
}

fn main() {
    run_example().expect("line diagram example");
}
