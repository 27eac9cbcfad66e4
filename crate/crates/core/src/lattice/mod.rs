//! Formal concepts, the concept lattice, and line diagrams.

mod diagram;
mod order;

pub use diagram::{export_diagram, reduced_labels, DiagramEdge, DiagramFormat, DiagramNode, LineDiagram, NodeLabels};
pub use order::{build_lattice, ConceptLattice};

use serde::{Deserialize, Serialize};

use crate::bitset::{AttributeSet, ObjectSet};
use crate::context::FormalContext;
use crate::error::{Error, Result};

/// Default hard cap on the number of concepts a single enumeration returns.
pub const DEFAULT_CONCEPT_LIMIT: usize = 1_000_000;

/// Progress is reported every this many closure computations.
pub const PROGRESS_INTERVAL: usize = 10_000;

/// A pair `(extent, intent)` with `extent′ = intent` and `intent′ = extent`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormalConcept {
    pub extent: ObjectSet,
    pub intent: AttributeSet,
}

/// Result of comparing two concepts under the subconcept order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConceptOrder {
    Less,
    Greater,
    Equal,
    Incomparable,
}

/// A concept with object and attribute names resolved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedConcept {
    pub extent: Vec<String>,
    pub intent: Vec<String>,
}

impl FormalConcept {
    /// The concept generated by an attribute set: `(B′, B″)`.
    pub fn from_intent_generator(ctx: &FormalContext, attributes: &AttributeSet) -> Result<Self> {
        let extent = ctx.derive_attributes(attributes)?;
        let intent = ctx.common_attributes(&extent);
        Ok(FormalConcept { extent, intent })
    }

    /// The concept generated by an object set: `(A″, A′)`.
    pub fn from_extent_generator(ctx: &FormalContext, objects: &ObjectSet) -> Result<Self> {
        let intent = ctx.derive_objects(objects)?;
        let extent = ctx.common_objects(&intent);
        Ok(FormalConcept { extent, intent })
    }

    /// Checks both derivation equations against `ctx`.
    pub fn is_concept_of(&self, ctx: &FormalContext) -> bool {
        ctx.derive_objects(&self.extent).is_ok_and(|i| i == self.intent)
            && ctx.derive_attributes(&self.intent).is_ok_and(|e| e == self.extent)
    }

    /// Subconcept order, decided by extent inclusion.
    pub fn compare(&self, other: &FormalConcept) -> Result<ConceptOrder> {
        if self.extent.universe() != other.extent.universe() {
            return Err(Error::UniverseMismatch { left: self.extent.universe(), right: other.extent.universe() });
        }
        if self.intent.universe() != other.intent.universe() {
            return Err(Error::UniverseMismatch { left: self.intent.universe(), right: other.intent.universe() });
        }
        let sub = self.extent.is_subset(&other.extent);
        let sup = other.extent.is_subset(&self.extent);
        Ok(match (sub, sup) {
            (true, true) => ConceptOrder::Equal,
            (true, false) => ConceptOrder::Less,
            (false, true) => ConceptOrder::Greater,
            (false, false) => ConceptOrder::Incomparable,
        })
    }

    pub fn named(&self, ctx: &FormalContext) -> NamedConcept {
        NamedConcept { extent: ctx.object_names(&self.extent), intent: ctx.attribute_names(&self.intent) }
    }
}

/// The lectically next set after `current` that is closed under `closure`,
/// or `None` if `current` is the last one. `closure` must be a closure
/// operator on attribute sets of `current`'s universe.
pub fn next_closure<F>(current: &AttributeSet, mut closure: F) -> Option<AttributeSet>
where
    F: FnMut(&AttributeSet) -> AttributeSet,
{
    let mut prefix = current.clone();
    for i in (0..current.universe()).rev() {
        if prefix.contains(i) {
            prefix.remove(i);
            continue;
        }
        let mut candidate = prefix.clone();
        candidate.insert(i);
        let closed = closure(&candidate);
        let mut added = closed.difference(&prefix);
        added.bits_mut().truncate_below(i);
        if added.is_empty() {
            return Some(closed);
        }
    }
    None
}

/// Knobs for [`enumerate_concepts_with`].
pub struct EnumerationOptions<'a> {
    /// Stop with [`Error::ConceptLimit`] once this many concepts were produced.
    pub limit: usize,
    /// Start after this intent (exclusive) instead of at the first concept.
    pub resume_after: Option<AttributeSet>,
    /// Called with the running closure count every [`PROGRESS_INTERVAL`] closures.
    pub progress: Option<&'a mut dyn FnMut(usize)>,
}

impl Default for EnumerationOptions<'_> {
    fn default() -> Self {
        EnumerationOptions { limit: DEFAULT_CONCEPT_LIMIT, resume_after: None, progress: None }
    }
}

/// Lazily yields the concepts of a context in increasing lectic order of
/// their intents.
pub struct Concepts<'a> {
    ctx: &'a FormalContext,
    current: Option<AttributeSet>,
    started: bool,
    closures: usize,
}

impl<'a> Concepts<'a> {
    pub fn new(ctx: &'a FormalContext) -> Self {
        Concepts { ctx, current: None, started: false, closures: 0 }
    }

    /// Continues after the given intent.
    pub fn resume_after(ctx: &'a FormalContext, intent: AttributeSet) -> Result<Self> {
        ctx.check_attributes(&intent)?;
        Ok(Concepts { ctx, current: Some(intent), started: true, closures: 0 })
    }

    /// Closure computations performed so far.
    pub fn closures(&self) -> usize {
        self.closures
    }
}

impl Iterator for Concepts<'_> {
    type Item = FormalConcept;

    fn next(&mut self) -> Option<FormalConcept> {
        let ctx = self.ctx;
        let intent = if !self.started {
            self.started = true;
            self.closures += 1;
            ctx.attribute_closure(&ctx.empty_attributes())
        } else {
            let current = self.current.as_ref()?;
            let closures = &mut self.closures;
            match next_closure(current, |b| {
                *closures += 1;
                ctx.attribute_closure(b)
            }) {
                Some(next) => next,
                None => {
                    self.current = None;
                    return None;
                }
            }
        };
        self.current = Some(intent.clone());
        Some(FormalConcept { extent: ctx.common_objects(&intent), intent })
    }
}

/// All formal concepts of `ctx`, in increasing lectic order of intents.
pub fn enumerate_concepts(ctx: &FormalContext) -> Result<Vec<FormalConcept>> {
    enumerate_concepts_with(ctx, EnumerationOptions::default())
}

pub fn enumerate_concepts_with(ctx: &FormalContext, options: EnumerationOptions<'_>) -> Result<Vec<FormalConcept>> {
    let EnumerationOptions { limit, resume_after, mut progress } = options;
    let limit = limit.max(1);
    let mut iter = match resume_after {
        Some(intent) => Concepts::resume_after(ctx, intent)?,
        None => Concepts::new(ctx),
    };
    let mut out = Vec::new();
    let mut reported = 0;
    while let Some(concept) = iter.next() {
        if out.len() == limit {
            let last: &FormalConcept = out.last().expect("limit reached with at least one concept");
            return Err(Error::ConceptLimit { limit, resume_after: last.intent.to_vec() });
        }
        out.push(concept);
        if let Some(report) = progress.as_mut() {
            while iter.closures() >= reported + PROGRESS_INTERVAL {
                reported += PROGRESS_INTERVAL;
                report(reported);
            }
        }
    }
    Ok(out)
}
