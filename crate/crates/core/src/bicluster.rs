//! Object-attribute biclusters and block densities.
//!
//! For an incident pair `(g, m)` the OA-bicluster is `(m′, g′)`: every
//! object sharing attribute `m` against every attribute of object `g`. Its
//! density is the fraction of incident cells in that block, kept as an exact
//! fraction so that `ρ = 1` never depends on rounding.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::{AttributeSet, ObjectSet};
use crate::context::FormalContext;
use crate::error::{Error, Result};

/// An exact, unreduced fraction `num / den` with `den > 0`.
///
/// Equality and ordering compare values, so `12/12 == 1/1`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Density {
    pub num: u64,
    pub den: u64,
}

impl Density {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "density denominator must be positive");
        Density { num, den }
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// Presentation only; compare densities with `==`/`<` instead.
    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `self >= threshold` for a threshold in `[0, 1]`.
    ///
    /// A correctly rounded quotient of two integers below 2^53 equals 1.0
    /// only when they are equal, so the `ρ = 1` cut is exact.
    pub fn meets(&self, threshold: f64) -> bool {
        self.to_f64() >= threshold
    }
}

impl PartialEq for Density {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Density {}

impl PartialOrd for Density {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Density {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Number of incident cells in `rows × columns`.
fn block_incidences(ctx: &FormalContext, rows: &ObjectSet, columns: &AttributeSet) -> u64 {
    rows.iter().map(|g| ctx.object_intent(g).intersection(columns).len() as u64).sum()
}

/// `|I ∩ (rows × columns)| / (|rows|·|columns|)`.
pub fn density(ctx: &FormalContext, rows: &ObjectSet, columns: &AttributeSet) -> Result<Density> {
    ctx.check_objects(rows)?;
    ctx.check_attributes(columns)?;
    if rows.is_empty() || columns.is_empty() {
        return Err(Error::EmptyBlock);
    }
    Ok(Density::new(block_incidences(ctx, rows, columns), (rows.len() * columns.len()) as u64))
}

/// `true` iff `rows′ = columns` and `columns′ = rows`.
pub fn is_formal_concept(ctx: &FormalContext, rows: &ObjectSet, columns: &AttributeSet) -> bool {
    ctx.derive_objects(rows).is_ok_and(|c| &c == columns) && ctx.derive_attributes(columns).is_ok_and(|r| &r == rows)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OABicluster {
    /// `(object, attribute)` indices of the generating incident pair.
    pub generator: (usize, usize),
    /// `m′`
    pub extent: ObjectSet,
    /// `g′`
    pub intent: AttributeSet,
    pub density: Density,
}

impl OABicluster {
    pub fn is_dense(&self, rho_min: f64) -> bool {
        self.density.meets(rho_min)
    }

    fn lectic_cmp(&self, other: &Self) -> Ordering {
        self.extent.lectic_cmp(&other.extent).then_with(|| self.intent.lectic_cmp(&other.intent))
    }
}

/// Builds the OA-bicluster `(m′, g′)` of an incident pair.
pub fn oa_bicluster(ctx: &FormalContext, object: usize, attribute: usize) -> Result<OABicluster> {
    if object >= ctx.object_count() {
        return Err(Error::IndexOutOfRange { kind: "object", index: object, universe: ctx.object_count() });
    }
    if attribute >= ctx.attribute_count() {
        return Err(Error::IndexOutOfRange { kind: "attribute", index: attribute, universe: ctx.attribute_count() });
    }
    if !ctx.incident(object, attribute) {
        return Err(Error::NotIncident {
            object: ctx.objects()[object].clone(),
            attribute: ctx.attributes()[attribute].clone(),
        });
    }
    let extent = ctx.attribute_extent(attribute).clone();
    let intent = ctx.object_intent(object).clone();
    // both sides are nonempty: g ∈ m′ and m ∈ g′
    let density = Density::new(block_incidences(ctx, &extent, &intent), (extent.len() * intent.len()) as u64);
    Ok(OABicluster { generator: (object, attribute), extent, intent, density })
}

/// All distinct OA-biclusters with density at least `rho_min`.
///
/// Every incident pair generates one bicluster; duplicates (same extent and
/// intent) keep the smallest generating pair. Output is sorted lectically by
/// extent, then intent.
pub fn mine_dense(ctx: &FormalContext, rho_min: f64) -> Result<Vec<OABicluster>> {
    if !(0.0..=1.0).contains(&rho_min) {
        return Err(Error::ThresholdOutOfRange(rho_min));
    }
    let pairs: Vec<(usize, usize)> =
        (0..ctx.object_count()).flat_map(|g| ctx.object_intent(g).iter().map(move |m| (g, m))).collect();
    let found: Vec<OABicluster> = pairs
        .par_iter()
        .map(|&(g, m)| oa_bicluster(ctx, g, m).expect("pair taken from the incidence relation"))
        .filter(|b| b.is_dense(rho_min))
        .collect();

    let mut unique: HashMap<(ObjectSet, AttributeSet), OABicluster> = HashMap::new();
    for b in found {
        unique
            .entry((b.extent.clone(), b.intent.clone()))
            .and_modify(|kept| {
                if b.generator < kept.generator {
                    kept.generator = b.generator;
                }
            })
            .or_insert(b);
    }
    let mut out: Vec<OABicluster> = unique.into_values().collect();
    out.sort_by(OABicluster::lectic_cmp);
    Ok(out)
}

/// Any block of the table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralBicluster {
    pub rows: ObjectSet,
    pub columns: AttributeSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleVariant {
    /// `(A′ ∪ B′, A ∪ B)`
    Union,
    /// `(A′ ∩ B′, A ∪ B)`
    Intersection,
}

/// The bicluster read off an association rule `A → B`.
pub fn rule_to_bicluster(
    ctx: &FormalContext,
    premise: &AttributeSet,
    conclusion: &AttributeSet,
    variant: RuleVariant,
) -> Result<GeneralBicluster> {
    let a = ctx.derive_attributes(premise)?;
    let b = ctx.derive_attributes(conclusion)?;
    let rows = match variant {
        RuleVariant::Union => a.union(&b),
        RuleVariant::Intersection => a.intersection(&b),
    };
    Ok(GeneralBicluster { rows, columns: premise.union(conclusion) })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub object: String,
    pub attribute: String,
}

/// One entry of the `bicluster-json` list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiclusterJson {
    pub generator: GeneratorJson,
    pub extent: Vec<String>,
    pub intent: Vec<String>,
    pub density: Density,
}

impl BiclusterJson {
    pub fn new(ctx: &FormalContext, b: &OABicluster) -> Self {
        BiclusterJson {
            generator: GeneratorJson {
                object: ctx.objects()[b.generator.0].clone(),
                attribute: ctx.attributes()[b.generator.1].clone(),
            },
            extent: ctx.object_names(&b.extent),
            intent: ctx.attribute_names(&b.intent),
            density: b.density,
        }
    }
}
