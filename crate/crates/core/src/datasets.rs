//! Bundled taxonomy contexts and reference fixtures.

use crate::bitset::AttributeSet;
use crate::context::FormalContext;
use crate::formats::parse_cxt;

/// The 7×7 "FCA-related biclustering" taxonomy in canonical `.cxt` form.
pub const FCA_RELATED_BICLUSTERING_CXT: &str = include_str!("../data/fca-related-biclustering.cxt");

/// Classification attributes of concept-lattice construction algorithms,
/// `m1`..`m10`. No algorithm rows are bundled.
pub const FCA_ALGORITHM_ATTRIBUTES: [(&str, &str); 10] = [
    ("m1", "incremental approach"),
    ("m2", "canonicity based on the lexical order"),
    ("m3", "divides the set of concepts into several parts"),
    ("m4", "uses hashing"),
    ("m5", "maintains an auxiliary tree structure"),
    ("m6", "uses an attribute cache"),
    ("m7", "computes intents by intersecting object intents"),
    ("m8", "computes intersections of already generated intents"),
    ("m9", "intersects non-object intents with object intents"),
    ("m10", "uses supports of attribute sets"),
];

/// Top implications by support of a biclustering taxonomy whose incidence
/// table is not bundled. Rendering and parsing fixtures only: the supports
/// cannot be recomputed here.
pub const SURVEY_TAXONOMY_TOP_IMPLICATIONS: &str = include_str!("../data/survey-taxonomy-top-implications.txt");

/// Reported size of the implication base of the same unbundled context.
/// Unverifiable without its incidence table.
pub const SURVEY_TAXONOMY_BASE_SIZE_UNVERIFIED: usize = 105;

/// Marker carried by fixtures whose source context is unavailable.
pub const SOURCE_CONTEXT_UNAVAILABLE: &str = "source-context-unavailable";

pub fn fca_related_biclustering() -> FormalContext {
    parse_cxt(FCA_RELATED_BICLUSTERING_CXT).expect("bundled context is well-formed").0
}

pub fn fca_algorithm_attributes_template() -> FormalContext {
    let attributes = FCA_ALGORITHM_ATTRIBUTES.iter().map(|(m, _)| m.to_string()).collect();
    FormalContext::from_rows("FCA algorithm attributes", Vec::new(), attributes, Vec::<AttributeSet>::new())
        .expect("template names are distinct")
}

/// A named, bundled context.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub name: &'static str,
    pub provenance: &'static str,
    pub context: FormalContext,
    /// Optional human-readable meaning per attribute, in attribute order.
    pub attribute_descriptions: Vec<&'static str>,
}

/// Registry of bundled datasets, looked up by name.
#[derive(Debug, Clone)]
pub struct DatasetRegistry {
    entries: Vec<Dataset>,
}

impl Default for DatasetRegistry {
    fn default() -> Self {
        DatasetRegistry {
            entries: vec![
                Dataset {
                    name: "fca-related-biclustering",
                    provenance: "FCA-related biclustering methods classified by bicluster type, structure, \
                                 value type and use of closure (7 methods x 7 attributes)",
                    context: fca_related_biclustering(),
                    attribute_descriptions: Vec::new(),
                },
                Dataset {
                    name: "fca-algorithm-attributes-template",
                    provenance: "attribute legend m1-m10 for classifying concept lattice algorithms; \
                                 no algorithm rows are included",
                    context: fca_algorithm_attributes_template(),
                    attribute_descriptions: FCA_ALGORITHM_ATTRIBUTES.iter().map(|(_, d)| *d).collect(),
                },
            ],
        }
    }
}

impl DatasetRegistry {
    pub fn get(&self, name: &str) -> Option<&Dataset> {
        self.entries.iter().find(|d| d.name == name)
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.iter().map(|d| d.name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Dataset> {
        self.entries.iter()
    }
}
