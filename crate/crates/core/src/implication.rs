//! Attribute implications and the Duquenne-Guigues base.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::AttributeSet;
use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::lattice::next_closure;

/// `premise → conclusion` over the attributes of one context.
///
/// The stored conclusion never overlaps the premise; the full conclusion is
/// `premise ∪ conclusion`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Implication {
    premise: AttributeSet,
    conclusion: AttributeSet,
    support: Option<usize>,
}

impl Implication {
    pub fn new(premise: AttributeSet, conclusion: AttributeSet) -> Self {
        assert_eq!(premise.universe(), conclusion.universe(), "implication sides over different universes");
        let conclusion = conclusion.difference(&premise);
        Implication { premise, conclusion, support: None }
    }

    pub fn premise(&self) -> &AttributeSet {
        &self.premise
    }

    /// Conclusion without the premise attributes.
    pub fn conclusion(&self) -> &AttributeSet {
        &self.conclusion
    }

    pub fn full_conclusion(&self) -> AttributeSet {
        self.premise.union(&self.conclusion)
    }

    pub fn support(&self) -> Option<usize> {
        self.support
    }

    pub fn universe(&self) -> usize {
        self.premise.universe()
    }

    /// Fills in the support against `ctx`.
    pub fn with_support(mut self, ctx: &FormalContext) -> Result<Self> {
        self.support = Some(support(ctx, &self)?);
        Ok(self)
    }

    pub fn holds_in(&self, ctx: &FormalContext) -> Result<bool> {
        holds(ctx, &self.premise, &self.conclusion)
    }

    /// Fires on `set` if the premise is contained; returns whether `set` grew.
    fn fire(&self, set: &mut AttributeSet) -> bool {
        if self.premise.is_subset(set) && !self.conclusion.is_subset(set) {
            set.bits_mut().union_with(self.conclusion.bits());
            true
        } else {
            false
        }
    }

    pub fn named(&self, ctx: &FormalContext) -> NamedImplication {
        NamedImplication {
            premise: ctx.attribute_names(&self.premise),
            conclusion: ctx.attribute_names(&self.conclusion),
            support: self.support,
        }
    }

    /// Text form `{a, b} -> {c}  sup=n` (support omitted when unknown).
    pub fn render(&self, ctx: &FormalContext) -> String {
        self.named(ctx).to_string()
    }
}

/// `true` iff every object having all of `premise` also has all of
/// `conclusion`, i.e. `premise′ ⊆ conclusion′`.
pub fn holds(ctx: &FormalContext, premise: &AttributeSet, conclusion: &AttributeSet) -> Result<bool> {
    ctx.check_attributes(premise)?;
    ctx.check_attributes(conclusion)?;
    Ok(conclusion.is_subset(&ctx.attribute_closure(premise)))
}

/// Number of objects having every attribute of premise and conclusion.
pub fn support(ctx: &FormalContext, implication: &Implication) -> Result<usize> {
    Ok(ctx.derive_attributes(&implication.full_conclusion())?.len())
}

/// The smallest superset of `set` respected by every implication.
pub fn implication_closure(implications: &[Implication], set: &AttributeSet) -> AttributeSet {
    let mut out = set.clone();
    let mut fired = vec![false; implications.len()];
    loop {
        let mut changed = false;
        for (imp, done) in implications.iter().zip(fired.iter_mut()) {
            if !*done && imp.premise.is_subset(&out) {
                *done = true;
                changed |= imp.fire(&mut out);
            }
        }
        if !changed {
            return out;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ComputedDg,
    ExplorationAccepted,
    UserLoaded,
}

/// An ordered list of implications and where it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicationBase {
    pub implications: Vec<Implication>,
    pub provenance: Provenance,
}

impl ImplicationBase {
    pub fn new(provenance: Provenance) -> Self {
        ImplicationBase { implications: Vec::new(), provenance }
    }

    pub fn len(&self) -> usize {
        self.implications.len()
    }

    pub fn is_empty(&self) -> bool {
        self.implications.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Implication> {
        self.implications.iter()
    }

    pub fn closure(&self, set: &AttributeSet) -> AttributeSet {
        implication_closure(&self.implications, set)
    }

    /// Premises and full conclusions, ignoring provenance and supports.
    pub fn same_implications(&self, other: &ImplicationBase) -> bool {
        self.len() == other.len()
            && self.iter().zip(other.iter()).all(|(a, b)| a.premise == b.premise && a.conclusion == b.conclusion)
    }
}

/// The Duquenne-Guigues (stem) base: one implication `P → P″` per
/// pseudo-intent `P`, in lectic order of premises, supports filled in.
///
/// Sets closed under the implications found so far are visited in lectic
/// order; each is either an intent or the next pseudo-intent.
pub fn duquenne_guigues_base(ctx: &FormalContext) -> ImplicationBase {
    let mut implications: Vec<Implication> = Vec::new();
    let mut current = ctx.empty_attributes();
    loop {
        let closed = ctx.attribute_closure(&current);
        if closed != current {
            let imp = Implication::new(current.clone(), closed).with_support(ctx).expect("same universe");
            implications.push(imp);
        }
        match next_closure(&current, |x| implication_closure(&implications, x)) {
            Some(next) => current = next,
            None => break,
        }
    }
    ImplicationBase { implications, provenance: Provenance::ComputedDg }
}

/// Result of [`verify_base`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseReport {
    /// Every implication holds in the context.
    pub sound: bool,
    /// The base derives exactly the implications of the context: its
    /// closure of every attribute set `X` is `X″`.
    pub complete: bool,
    /// No implication follows from the others. For a complete base this is
    /// the same as no proper subset being complete.
    pub minimal: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Up to this many attributes completeness is checked on all `2^|M|`
    /// subsets; above it, by walking the sets closed under the base.
    pub exhaustive_limit: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { exhaustive_limit: 20 }
    }
}

pub fn verify_base(ctx: &FormalContext, base: &ImplicationBase) -> Result<BaseReport> {
    verify_base_with(ctx, base, VerifyOptions::default())
}

pub fn verify_base_with(ctx: &FormalContext, base: &ImplicationBase, options: VerifyOptions) -> Result<BaseReport> {
    let m = ctx.attribute_count();
    if let Some(bad) = base.iter().find(|i| i.universe() != m) {
        return Err(Error::UniverseMismatch { left: bad.universe(), right: m });
    }
    let sound = base.iter().all(|i| i.conclusion.is_subset(&ctx.attribute_closure(&i.premise)));
    let complete = if m <= options.exhaustive_limit {
        complete_exhaustive(ctx, &base.implications)
    } else {
        sound && complete_lectic(ctx, &base.implications)
    };
    let minimal = (0..base.len()).into_par_iter().all(|i| {
        let rest: Vec<Implication> =
            base.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, imp)| imp.clone()).collect();
        let imp = &base.implications[i];
        !imp.conclusion.is_subset(&implication_closure(&rest, &imp.premise))
    });
    Ok(BaseReport { sound, complete, minimal })
}

/// `closure(X) = X″` for every `X ⊆ M`.
pub fn complete_exhaustive(ctx: &FormalContext, implications: &[Implication]) -> bool {
    let m = ctx.attribute_count();
    assert!(m < 64, "exhaustive sweep needs fewer than 64 attributes");
    (0u64..1 << m).into_par_iter().all(|mask| {
        let x = AttributeSet::from_indices(m, (0..m).filter(|i| mask >> i & 1 == 1)).expect("bounded");
        implication_closure(implications, &x) == ctx.attribute_closure(&x)
    })
}

/// For a sound base: every set closed under the base is an intent.
pub fn complete_lectic(ctx: &FormalContext, implications: &[Implication]) -> bool {
    let mut current = implication_closure(implications, &ctx.empty_attributes());
    loop {
        if ctx.attribute_closure(&current) != current {
            return false;
        }
        match next_closure(&current, |x| implication_closure(implications, x)) {
            Some(next) => current = next,
            None => return true,
        }
    }
}

/// An implication with attribute names, the `implication-json` shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedImplication {
    pub premise: Vec<String>,
    pub conclusion: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<usize>,
}

impl NamedImplication {
    /// Resolves names against `ctx`.
    pub fn resolve(&self, ctx: &FormalContext) -> Result<Implication> {
        let mut imp = Implication::new(ctx.attributes_named(&self.premise)?, ctx.attributes_named(&self.conclusion)?);
        imp.support = self.support;
        Ok(imp)
    }
}

impl fmt::Display for NamedImplication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}} -> {{{}}}", self.premise.join(", "), self.conclusion.join(", "))?;
        if let Some(s) = self.support {
            write!(f, "  sup={s}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for NamedImplication {
    type Err = Error;

    /// Parses the text rendering. Names must not contain `", "` or braces.
    fn from_str(line: &str) -> Result<Self> {
        let bad = |message: &str| Error::Parse { line: 1, message: format!("{message}: {line:?}") };
        let (body, support) = match line.rsplit_once("sup=") {
            Some((body, n)) => (body.trim_end(), Some(n.trim().parse::<usize>().map_err(|_| bad("bad support"))?)),
            None => (line.trim_end(), None),
        };
        let (lhs, rhs) = body.split_once(" -> ").ok_or_else(|| bad("missing ' -> '"))?;
        let set = |side: &str| -> Result<Vec<String>> {
            let inner = side
                .trim()
                .strip_prefix('{')
                .and_then(|s| s.strip_suffix('}'))
                .ok_or_else(|| bad("expected {...}"))?;
            Ok(if inner.trim().is_empty() {
                Vec::new()
            } else {
                inner.split(", ").map(|s| s.trim().to_string()).collect()
            })
        };
        Ok(NamedImplication { premise: set(lhs)?, conclusion: set(rhs)?, support })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets::{fca_related_biclustering, SURVEY_TAXONOMY_TOP_IMPLICATIONS};

    fn attrs(ctx: &FormalContext, names: &[&str]) -> AttributeSet {
        ctx.attributes_named(names).unwrap()
    }

    /// Pseudo-intents straight from the definition, smallest first.
    fn brute_force_pseudo_intents(ctx: &FormalContext) -> Vec<AttributeSet> {
        let m = ctx.attribute_count();
        let mut all: Vec<AttributeSet> = (0u32..1 << m)
            .map(|mask| AttributeSet::from_indices(m, (0..m).filter(|i| mask >> i & 1 == 1)).unwrap())
            .collect();
        all.sort_by_key(AttributeSet::len);
        let mut pseudo: Vec<AttributeSet> = Vec::new();
        for p in all {
            let closed = ctx.attribute_closure(&p);
            let respects = pseudo
                .iter()
                .filter(|q| q.is_subset(&p) && **q != p)
                .all(|q| ctx.attribute_closure(q).is_subset(&p));
            if closed != p && respects {
                pseudo.push(p);
            }
        }
        pseudo.sort_by(|a, b| a.lectic_cmp(b));
        pseudo
    }

    #[test]
    fn holds_examples() {
        let ctx = fca_related_biclustering();
        assert!(holds(&ctx, &attrs(&ctx, &["Closure:explicit"]), &attrs(&ctx, &["Value type:binary"])).unwrap());
        let b = attrs(&ctx, &["Closure:implicit", "Val.type:numeric"]);
        assert!(holds(&ctx, &b, &b).unwrap());
        assert!(!holds(&ctx, &attrs(&ctx, &["Val.type:numeric"]), &attrs(&ctx, &["Closure:explicit"])).unwrap());
    }

    #[test]
    fn support_examples() {
        let ctx = fca_related_biclustering();
        let empty = Implication::new(ctx.empty_attributes(), ctx.empty_attributes());
        assert_eq!(support(&ctx, &empty).unwrap(), 7);
        let imp = Implication::new(attrs(&ctx, &["Closure:explicit"]), attrs(&ctx, &["Value type:binary"]));
        assert_eq!(support(&ctx, &imp).unwrap(), 4);
        assert_eq!(support(&ctx, &imp).unwrap(), ctx.derive_attributes(imp.premise()).unwrap().len());
    }

    #[test]
    fn closure_examples() {
        let u = 3;
        let set = |v: &[usize]| AttributeSet::from_indices(u, v.iter().copied()).unwrap();
        assert_eq!(implication_closure(&[], &set(&[1])), set(&[1]));
        let chain = [Implication::new(set(&[1]), set(&[2])), Implication::new(set(&[0]), set(&[1]))];
        assert_eq!(implication_closure(&chain, &set(&[0])), set(&[0, 1, 2]));
    }

    #[test]
    fn conclusion_is_stored_without_premise() {
        let set = |v: &[usize]| AttributeSet::from_indices(4, v.iter().copied()).unwrap();
        let imp = Implication::new(set(&[0, 1]), set(&[1, 2]));
        assert_eq!(imp.conclusion(), &set(&[2]));
        assert_eq!(imp.full_conclusion(), set(&[0, 1, 2]));
    }

    #[test]
    fn bundled_dg_base() {
        let ctx = fca_related_biclustering();
        let base = duquenne_guigues_base(&ctx);
        let premises: Vec<AttributeSet> = base.iter().map(|i| i.premise().clone()).collect();
        assert_eq!(premises, brute_force_pseudo_intents(&ctx));

        let first = &base.implications[0];
        assert!(first.premise().is_empty());
        assert_eq!(first.conclusion(), &attrs(&ctx, &["Type:const", "Struct:Arbitr. overl.", "Value type:binary"]));

        let numeric = attrs(&ctx, &["Type:const", "Struct:Arbitr. overl.", "Value type:binary", "Val.type:numeric"]);
        let imp = base.iter().find(|i| i.premise() == &numeric).expect("numeric premise is pseudo-intent");
        assert_eq!(imp.conclusion(), &attrs(&ctx, &["Closure:implicit"]));

        assert_eq!(verify_base(&ctx, &base).unwrap(), BaseReport { sound: true, complete: true, minimal: true });
        assert!(base.iter().all(|i| i.support() == Some(ctx.derive_attributes(i.premise()).unwrap().len())));
    }

    #[test]
    fn full_incidence_base_is_single_implication() {
        let ctx = FormalContext::from_row_strings("f", &["a", "b"], &["x", "y"], &["XX", "XX"]).unwrap();
        let base = duquenne_guigues_base(&ctx);
        assert_eq!(base.len(), 1);
        assert!(base.implications[0].premise().is_empty());
        assert!(base.implications[0].full_conclusion().is_full());
    }

    #[test]
    fn verify_detects_broken_bases() {
        let ctx = fca_related_biclustering();
        let base = duquenne_guigues_base(&ctx);
        for k in 0..base.len() {
            let mut fewer = base.clone();
            fewer.implications.remove(k);
            assert!(!verify_base(&ctx, &fewer).unwrap().complete);
        }
        let mut extra = base.clone();
        extra.implications.push(Implication::new(attrs(&ctx, &["Val.type:numeric"]), attrs(&ctx, &["Closure:explicit"])));
        assert!(!verify_base(&ctx, &extra).unwrap().sound);

        let mut redundant = base.clone();
        redundant.implications.push(Implication::new(attrs(&ctx, &["Closure:explicit"]), attrs(&ctx, &["Type:const"])));
        let report = verify_base(&ctx, &redundant).unwrap();
        assert!(report.sound && report.complete && !report.minimal);

        let foreign = ImplicationBase {
            implications: vec![Implication::new(AttributeSet::empty(3), AttributeSet::empty(3))],
            provenance: Provenance::UserLoaded,
        };
        assert!(matches!(verify_base(&ctx, &foreign), Err(Error::UniverseMismatch { .. })));
    }

    #[test]
    fn lectic_and_exhaustive_completeness_agree() {
        let ctx = fca_related_biclustering();
        let base = duquenne_guigues_base(&ctx);
        assert!(complete_lectic(&ctx, &base.implications));
        let mut fewer = base.clone();
        fewer.implications.pop();
        assert!(!complete_lectic(&ctx, &fewer.implications));
        let lectic = verify_base_with(&ctx, &fewer, VerifyOptions { exhaustive_limit: 0 }).unwrap();
        assert_eq!(lectic, verify_base(&ctx, &fewer).unwrap());
    }

    #[test]
    fn render_and_parse() {
        let ctx = fca_related_biclustering();
        let imp = Implication::new(attrs(&ctx, &["Closure:explicit"]), attrs(&ctx, &["Value type:binary"]))
            .with_support(&ctx)
            .unwrap();
        let text = imp.render(&ctx);
        assert_eq!(text, "{Closure:explicit} -> {Value type:binary}  sup=4");
        let parsed: NamedImplication = text.parse().unwrap();
        assert_eq!(parsed.resolve(&ctx).unwrap(), imp);
        assert_eq!("{} -> {a}".parse::<NamedImplication>().unwrap().premise, Vec::<String>::new());
        assert!("{a} => {b}".parse::<NamedImplication>().is_err());
    }

    #[test]
    fn survey_fixture_parses() {
        let parsed: Vec<NamedImplication> =
            SURVEY_TAXONOMY_TOP_IMPLICATIONS.lines().map(|l| l.parse().unwrap()).collect();
        assert_eq!(parsed.len(), 10);
        assert_eq!(parsed[2].premise, ["Measure:MSR"]);
        assert_eq!(parsed[2].conclusion, ["Metric-based", "Struct:Non-Exhaustive"]);
        assert_eq!(parsed[2].support, Some(18));
        // re-rendering reproduces the fixture lines
        for (line, imp) in SURVEY_TAXONOMY_TOP_IMPLICATIONS.lines().zip(&parsed) {
            assert_eq!(imp.to_string(), line);
        }
    }
}
