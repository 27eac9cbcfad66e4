// A scripted attribute exploration session: one counterexample, then
// everything else is confirmed.
//
// For a live terminal session use `lattice-tax explore --builtin`.

use lattice_tax::datasets::fca_related_biclustering;
use lattice_tax::exploration::{question_text, start_session, Counterexample, ExplorationSession};
use lattice_tax::implication::verify_base;

pub fn run_example() -> lattice_tax::Result<()> {
    let mut session = start_session(fca_related_biclustering());
    let mut saved = None;

    while let Some(question) = session.next_question()? {
        println!("Q{}: {}", session.seq(), question_text(session.working_context(), &question));
        if question.premise().is_empty() {
            // a numeric-only method breaks the very first question
            let ce = Counterexample::named(session.working_context(), "SpectralBiclust", &["Val.type:numeric"])?;
            println!("   no: SpectralBiclust has only Val.type:numeric");
            session.reject(ce)?;
            saved = Some(session.to_json());
        } else {
            println!("   yes");
            session.accept()?;
        }
    }

    let ctx = session.working_context();
    println!("{} objects after exploration; accepted base:", ctx.object_count());
    for imp in session.accepted().iter() {
        println!("  {}", imp.render(ctx));
    }
    let report = verify_base(ctx, session.accepted())?;
    assert!(report.sound && report.complete && report.minimal);

    // a snapshot taken mid-session picks up where it left off
    let resumed = ExplorationSession::from_json(&saved.expect("snapshot taken"))?;
    println!("snapshot: status {:?}, {} accepted", resumed.status(), resumed.accepted().len());
    Ok(())
}

fn main() {
    run_example().expect("attribute exploration example");
}
