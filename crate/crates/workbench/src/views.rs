//! JSON payloads shared by the CLI (`--format json`) and the HTTP API.

use lattice_tax::bicluster::{mine_dense, BiclusterJson};
use lattice_tax::exploration::{question_text, ExplorationSession, SessionStatus};
use lattice_tax::implication::{duquenne_guigues_base, Implication, NamedImplication, Provenance};
use lattice_tax::lattice::{enumerate_concepts, NamedConcept};
use lattice_tax::{FormalContext, Result};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct ConceptsView {
    pub context: String,
    pub count: usize,
    pub concepts: Vec<NamedConcept>,
}

pub fn concepts_view(ctx: &FormalContext) -> Result<ConceptsView> {
    let concepts: Vec<NamedConcept> = enumerate_concepts(ctx)?.iter().map(|c| c.named(ctx)).collect();
    Ok(ConceptsView { context: ctx.name().to_string(), count: concepts.len(), concepts })
}

#[derive(Debug, Serialize)]
pub struct ImplicationsView {
    pub context: String,
    pub provenance: Provenance,
    pub count: usize,
    pub implications: Vec<NamedImplication>,
}

pub fn implications_view(ctx: &FormalContext) -> ImplicationsView {
    let base = duquenne_guigues_base(ctx);
    let implications: Vec<NamedImplication> = base.iter().map(|i| i.named(ctx)).collect();
    ImplicationsView {
        context: ctx.name().to_string(),
        provenance: base.provenance,
        count: implications.len(),
        implications,
    }
}

#[derive(Debug, Serialize)]
pub struct BiclustersView {
    pub context: String,
    pub min_density: f64,
    pub count: usize,
    pub biclusters: Vec<BiclusterJson>,
}

pub fn biclusters_view(ctx: &FormalContext, min_density: f64) -> Result<BiclustersView> {
    let biclusters: Vec<BiclusterJson> = mine_dense(ctx, min_density)?.iter().map(|b| BiclusterJson::new(ctx, b)).collect();
    Ok(BiclustersView { context: ctx.name().to_string(), min_density, count: biclusters.len(), biclusters })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuestionView {
    pub seq: u64,
    pub premise: Vec<String>,
    pub conclusion: Vec<String>,
    pub support: Option<usize>,
    pub text: String,
}

impl QuestionView {
    pub fn new(ctx: &FormalContext, seq: u64, question: &Implication) -> Self {
        let named = question.named(ctx);
        QuestionView {
            seq,
            premise: named.premise,
            conclusion: named.conclusion,
            support: named.support,
            text: question_text(ctx, question),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SessionView {
    pub id: String,
    pub context_id: String,
    pub status: SessionStatus,
    pub seq: u64,
    pub question: Option<QuestionView>,
    pub accepted: Vec<NamedImplication>,
    pub objects: Vec<String>,
    pub attributes: Vec<String>,
}

impl SessionView {
    pub fn new(id: &str, context_id: &str, session: &ExplorationSession) -> Self {
        let ctx = session.working_context();
        SessionView {
            id: id.to_string(),
            context_id: context_id.to_string(),
            status: session.status(),
            seq: session.seq(),
            question: session.pending().map(|q| QuestionView::new(ctx, session.seq(), q)),
            accepted: session.accepted().iter().map(|i| i.named(ctx)).collect(),
            objects: ctx.objects().to_vec(),
            attributes: ctx.attributes().to_vec(),
        }
    }
}
