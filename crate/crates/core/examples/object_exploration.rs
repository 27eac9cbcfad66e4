// Object exploration: run attribute exploration on the transposed table,
// so questions are about which methods imply which other methods.

use lattice_tax::datasets::fca_related_biclustering;
use lattice_tax::exploration::{question_text, run_with_oracle};

pub fn run_example() -> lattice_tax::Result<()> {
    let hidden = fca_related_biclustering().transpose();
    // start from two of the seven attributes and let the table answer
    let start = hidden.restrict_objects(&hidden.objects_named(&["Type:const", "Val.type:numeric"])?)?;
    let session = run_with_oracle(&start, &hidden)?;

    let ctx = session.working_context();
    println!("{} questions; attributes learned as counterexamples:", session.seq());
    for name in ctx.objects().iter().skip(2) {
        println!("  {name}");
    }
    for imp in session.accepted().iter() {
        println!("{}", question_text(ctx, imp));
    }
    Ok(())
}

fn main() {
    run_example().expect("object exploration example");
}
