use std::collections::HashMap;

use super::{enumerate_concepts, ConceptOrder, FormalConcept};
use crate::bitset::{AttributeSet, ObjectSet};
use crate::context::FormalContext;
use crate::error::{Error, Result};

/// All concepts of a context together with the covering relation of the
/// subconcept order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptLattice {
    concepts: Vec<FormalConcept>,
    /// `(child, parent)` index pairs, sorted.
    covers: Vec<(usize, usize)>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    by_intent: HashMap<AttributeSet, usize>,
    by_extent: HashMap<ObjectSet, usize>,
}

/// Enumerates the concepts of `ctx` and links each to its upper neighbours.
///
/// Upper neighbours of `(A, B)` are found by adding one object `g ∉ A` at a
/// time and keeping `((A ∪ {g})″, (A ∪ {g})′)` only if no other still
/// eligible object entered the extent with `g`.
pub fn build_lattice(ctx: &FormalContext) -> Result<ConceptLattice> {
    let concepts = enumerate_concepts(ctx)?;
    let by_intent: HashMap<AttributeSet, usize> =
        concepts.iter().enumerate().map(|(i, c)| (c.intent.clone(), i)).collect();

    let mut covers = Vec::new();
    for (child, concept) in concepts.iter().enumerate() {
        let outside = concept.extent.complement();
        let mut eligible = outside.clone();
        for g in &outside {
            let intent = concept.intent.intersection(ctx.object_intent(g));
            let extent = ctx.common_objects(&intent);
            let mut entered = extent.difference(&concept.extent);
            entered.remove(g);
            if entered.is_disjoint(&eligible) {
                covers.push((child, by_intent[&intent]));
            } else {
                eligible.remove(g);
            }
        }
    }
    Ok(ConceptLattice::from_parts(concepts, covers, by_intent))
}

impl ConceptLattice {
    fn from_parts(concepts: Vec<FormalConcept>, mut covers: Vec<(usize, usize)>, by_intent: HashMap<AttributeSet, usize>) -> Self {
        covers.sort_unstable();
        covers.dedup();
        let mut upper = vec![Vec::new(); concepts.len()];
        let mut lower = vec![Vec::new(); concepts.len()];
        for &(child, parent) in &covers {
            upper[child].push(parent);
            lower[parent].push(child);
        }
        for l in &mut lower {
            l.sort_unstable();
        }
        let by_extent = concepts.iter().enumerate().map(|(i, c)| (c.extent.clone(), i)).collect();
        ConceptLattice { concepts, covers, upper, lower, by_intent, by_extent }
    }

    pub fn concepts(&self) -> &[FormalConcept] {
        &self.concepts
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    /// `(child, parent)` pairs of the covering relation.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn upper_covers(&self, index: usize) -> &[usize] {
        &self.upper[index]
    }

    pub fn lower_covers(&self, index: usize) -> &[usize] {
        &self.lower[index]
    }

    /// Index of the concept with the largest extent. It is the lectically
    /// first intent, `∅″`.
    pub fn top(&self) -> usize {
        0
    }

    /// Index of the concept with intent `M`, the lectically last.
    pub fn bottom(&self) -> usize {
        self.concepts.len() - 1
    }

    pub fn index_of_intent(&self, intent: &AttributeSet) -> Option<usize> {
        self.by_intent.get(intent).copied()
    }

    fn check(&self, index: usize) -> Result<()> {
        if index >= self.concepts.len() {
            return Err(Error::IndexOutOfRange { kind: "concept", index, universe: self.concepts.len() });
        }
        Ok(())
    }

    pub fn compare(&self, a: usize, b: usize) -> Result<ConceptOrder> {
        self.check(a)?;
        self.check(b)?;
        self.concepts[a].compare(&self.concepts[b])
    }

    /// Greatest common subconcept: extents intersected.
    pub fn meet(&self, a: usize, b: usize) -> Result<usize> {
        self.check(a)?;
        self.check(b)?;
        let extent = self.concepts[a].extent.intersection(&self.concepts[b].extent);
        // an intersection of extents is an extent
        Ok(self.by_extent[&extent])
    }

    /// Least common superconcept: intents intersected.
    pub fn join(&self, a: usize, b: usize) -> Result<usize> {
        self.check(a)?;
        self.check(b)?;
        let intent = self.concepts[a].intent.intersection(&self.concepts[b].intent);
        // an intersection of intents is an intent
        Ok(self.by_intent[&intent])
    }
}
