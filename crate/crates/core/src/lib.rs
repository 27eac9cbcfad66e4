//! Formal concept analysis for lattice-based taxonomies.
//!
//! A taxonomy is a Boolean table of methods (objects) and classification
//! criteria (attributes). From it this crate computes formal concepts, the
//! concept lattice and its line diagram, OA-biclusters with exact densities,
//! the Duquenne-Guigues implication base, and runs attribute exploration
//! sessions in which an expert confirms implications or supplies
//! counterexamples.
//!
//! ```
//! use lattice_tax::{datasets, lattice};
//!
//! let ctx = datasets::fca_related_biclustering();
//! let concepts = lattice::enumerate_concepts(&ctx).unwrap();
//! assert_eq!(concepts.len(), 8);
//! ```

pub mod bicluster;
pub mod bitset;
pub mod context;
pub mod datasets;
pub mod error;
pub mod exploration;
pub mod formats;
pub mod implication;
pub mod lattice;

pub use bitset::{AttributeSet, ObjectSet};
pub use context::{appose, subpose, FormalContext};
pub use error::{Error, ExplorationError, Result};
