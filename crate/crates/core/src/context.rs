//! Formal contexts and their derivation operators.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::bitset::{AttributeSet, ObjectSet};
use crate::error::{Error, Result};

/// A Boolean object × attribute table `(G, M, I)` with named rows and columns.
///
/// Rows and columns are kept both ways (object intents and attribute
/// extents) so each derivation is a plain AND over bitsets. A context never
/// changes after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct FormalContext {
    name: String,
    objects: Vec<String>,
    attributes: Vec<String>,
    rows: Vec<AttributeSet>,
    columns: Vec<ObjectSet>,
}

impl std::fmt::Debug for FormalContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FormalContext")
            .field("name", &self.name)
            .field("objects", &self.objects)
            .field("attributes", &self.attributes)
            .field("rows", &self.row_strings())
            .finish()
    }
}

fn check_names(kind: &'static str, names: &[String]) -> Result<()> {
    let mut seen = HashSet::with_capacity(names.len());
    for n in names {
        if n.contains('\n') || n.contains('\r') {
            return Err(Error::InvalidName { kind, name: n.clone() });
        }
        if !seen.insert(n.as_str()) {
            return Err(Error::DuplicateName { kind, name: n.clone() });
        }
    }
    Ok(())
}

impl FormalContext {
    /// Builds a context from a dense Boolean matrix, one inner vector per object.
    pub fn new(
        name: impl Into<String>,
        objects: Vec<String>,
        attributes: Vec<String>,
        incidence: &[Vec<bool>],
    ) -> Result<Self> {
        let cols = attributes.len();
        if incidence.len() != objects.len() || incidence.iter().any(|r| r.len() != cols) {
            let actual_cols = incidence.iter().map(Vec::len).find(|&l| l != cols).unwrap_or(cols);
            return Err(Error::Dimension {
                rows: objects.len(),
                cols,
                actual_rows: incidence.len(),
                actual_cols,
            });
        }
        let rows = incidence
            .iter()
            .map(|r| {
                AttributeSet::from_indices(cols, r.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
                    .expect("indices bounded by row length")
            })
            .collect();
        Self::from_rows(name, objects, attributes, rows)
    }

    /// Builds a context from object intents.
    pub fn from_rows(
        name: impl Into<String>,
        objects: Vec<String>,
        attributes: Vec<String>,
        rows: Vec<AttributeSet>,
    ) -> Result<Self> {
        check_names("object", &objects)?;
        check_names("attribute", &attributes)?;
        let m = attributes.len();
        if rows.len() != objects.len() {
            return Err(Error::Dimension { rows: objects.len(), cols: m, actual_rows: rows.len(), actual_cols: m });
        }
        if let Some(r) = rows.iter().find(|r| r.universe() != m) {
            return Err(Error::Dimension { rows: objects.len(), cols: m, actual_rows: rows.len(), actual_cols: r.universe() });
        }
        let g = objects.len();
        let mut columns = vec![ObjectSet::empty(g); m];
        for (gi, row) in rows.iter().enumerate() {
            for mi in row {
                columns[mi].insert(gi);
            }
        }
        Ok(FormalContext { name: name.into(), objects, attributes, rows, columns })
    }

    /// Convenience constructor from `X`/`.` row strings; used heavily in tests.
    pub fn from_row_strings<O: AsRef<str>, A: AsRef<str>, R: AsRef<str>>(
        name: impl Into<String>,
        objects: &[O],
        attributes: &[A],
        rows: &[R],
    ) -> Result<Self> {
        let incidence: Vec<Vec<bool>> = rows
            .iter()
            .enumerate()
            .map(|(line, r)| {
                r.as_ref()
                    .chars()
                    .map(|c| match c {
                        'X' | 'x' | '1' => Ok(true),
                        '.' | '0' => Ok(false),
                        other => Err(Error::Parse { line: line + 1, message: format!("illegal cell {other:?}") }),
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Self::new(
            name,
            objects.iter().map(|s| s.as_ref().to_string()).collect(),
            attributes.iter().map(|s| s.as_ref().to_string()).collect(),
            &incidence,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn attribute_count(&self) -> usize {
        self.attributes.len()
    }

    pub fn incident(&self, object: usize, attribute: usize) -> bool {
        self.rows.get(object).is_some_and(|r| r.contains(attribute))
    }

    /// `g′` for a single object.
    pub fn object_intent(&self, object: usize) -> &AttributeSet {
        &self.rows[object]
    }

    /// `m′` for a single attribute.
    pub fn attribute_extent(&self, attribute: usize) -> &ObjectSet {
        &self.columns[attribute]
    }

    pub fn rows(&self) -> &[AttributeSet] {
        &self.rows
    }

    /// Number of incident pairs, `|I|`.
    pub fn incidence_count(&self) -> usize {
        self.rows.iter().map(AttributeSet::len).sum()
    }

    pub fn row_strings(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|r| (0..self.attribute_count()).map(|m| if r.contains(m) { 'X' } else { '.' }).collect())
            .collect()
    }

    pub fn empty_objects(&self) -> ObjectSet {
        ObjectSet::empty(self.object_count())
    }

    pub fn all_objects(&self) -> ObjectSet {
        ObjectSet::full(self.object_count())
    }

    pub fn empty_attributes(&self) -> AttributeSet {
        AttributeSet::empty(self.attribute_count())
    }

    pub fn all_attributes(&self) -> AttributeSet {
        AttributeSet::full(self.attribute_count())
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::UnknownName { kind: "object", name: name.to_string() })
    }

    pub fn attribute_index(&self, name: &str) -> Result<usize> {
        self.attributes
            .iter()
            .position(|a| a == name)
            .ok_or_else(|| Error::UnknownName { kind: "attribute", name: name.to_string() })
    }

    pub fn objects_named<S: AsRef<str>>(&self, names: &[S]) -> Result<ObjectSet> {
        let mut set = self.empty_objects();
        for n in names {
            set.insert(self.object_index(n.as_ref())?);
        }
        Ok(set)
    }

    pub fn attributes_named<S: AsRef<str>>(&self, names: &[S]) -> Result<AttributeSet> {
        let mut set = self.empty_attributes();
        for n in names {
            set.insert(self.attribute_index(n.as_ref())?);
        }
        Ok(set)
    }

    pub fn object_names(&self, set: &ObjectSet) -> Vec<String> {
        set.iter().map(|g| self.objects[g].clone()).collect()
    }

    pub fn attribute_names(&self, set: &AttributeSet) -> Vec<String> {
        set.iter().map(|m| self.attributes[m].clone()).collect()
    }

    pub(crate) fn check_objects(&self, set: &ObjectSet) -> Result<()> {
        if set.universe() != self.object_count() {
            return Err(Error::UniverseMismatch { left: set.universe(), right: self.object_count() });
        }
        Ok(())
    }

    pub(crate) fn check_attributes(&self, set: &AttributeSet) -> Result<()> {
        if set.universe() != self.attribute_count() {
            return Err(Error::UniverseMismatch { left: set.universe(), right: self.attribute_count() });
        }
        Ok(())
    }

    /// `A′`: the attributes shared by every object of `A`. `∅′ = M`.
    pub fn derive_objects(&self, objects: &ObjectSet) -> Result<AttributeSet> {
        self.check_objects(objects)?;
        Ok(self.common_attributes(objects))
    }

    /// `B′`: the objects having every attribute of `B`. `∅′ = G`.
    pub fn derive_attributes(&self, attributes: &AttributeSet) -> Result<ObjectSet> {
        self.check_attributes(attributes)?;
        Ok(self.common_objects(attributes))
    }

    /// `B″`.
    pub fn closure_attributes(&self, attributes: &AttributeSet) -> Result<AttributeSet> {
        self.check_attributes(attributes)?;
        Ok(self.attribute_closure(attributes))
    }

    /// `A″`.
    pub fn closure_objects(&self, objects: &ObjectSet) -> Result<ObjectSet> {
        self.check_objects(objects)?;
        Ok(self.common_objects(&self.common_attributes(objects)))
    }

    // Unchecked variants for internal hot loops; callers guarantee universes.

    pub(crate) fn common_attributes(&self, objects: &ObjectSet) -> AttributeSet {
        let mut out = self.all_attributes();
        for g in objects {
            out.bits_mut().intersect_with(self.rows[g].bits());
        }
        out
    }

    pub(crate) fn common_objects(&self, attributes: &AttributeSet) -> ObjectSet {
        let mut out = self.all_objects();
        for m in attributes {
            out.bits_mut().intersect_with(self.columns[m].bits());
        }
        out
    }

    pub(crate) fn attribute_closure(&self, attributes: &AttributeSet) -> AttributeSet {
        self.common_attributes(&self.common_objects(attributes))
    }

    /// Swaps the roles of objects and attributes.
    pub fn transpose(&self) -> FormalContext {
        FormalContext {
            name: self.name.clone(),
            objects: self.attributes.clone(),
            attributes: self.objects.clone(),
            rows: self.columns.iter().map(|c| AttributeSet::from_bits(c.bits().clone())).collect(),
            columns: self.rows.iter().map(|r| ObjectSet::from_bits(r.bits().clone())).collect(),
        }
    }

    /// Returns a copy with one more object. Used by exploration, which only
    /// ever grows a context.
    pub fn with_object(&self, name: impl Into<String>, intent: AttributeSet) -> Result<FormalContext> {
        let name = name.into();
        self.check_attributes(&intent)?;
        if self.objects.contains(&name) {
            return Err(Error::DuplicateName { kind: "object", name });
        }
        let mut objects = self.objects.clone();
        objects.push(name);
        let mut rows = self.rows.clone();
        rows.push(intent);
        Self::from_rows(self.name.clone(), objects, self.attributes.clone(), rows)
    }

    /// Restricts the context to the given objects, keeping their order.
    pub fn restrict_objects(&self, objects: &ObjectSet) -> Result<FormalContext> {
        self.check_objects(objects)?;
        Self::from_rows(
            self.name.clone(),
            objects.iter().map(|g| self.objects[g].clone()).collect(),
            self.attributes.clone(),
            objects.iter().map(|g| self.rows[g].clone()).collect(),
        )
    }

    /// Restricts the context to the given attributes, keeping their order.
    pub fn restrict_attributes(&self, attributes: &AttributeSet) -> Result<FormalContext> {
        Ok(self.transpose().restrict_objects(&ObjectSet::from_bits(attributes.bits().clone()))?.transpose())
    }
}

/// Joins two contexts over the same ordered object list. Attributes are
/// namespaced as `"<context name>:<attribute>"`.
pub fn appose(left: &FormalContext, right: &FormalContext) -> Result<FormalContext> {
    if left.objects != right.objects {
        let l: HashSet<&String> = left.objects.iter().collect();
        let r: HashSet<&String> = right.objects.iter().collect();
        let mut diff: Vec<String> = l.symmetric_difference(&r).map(|s| s.to_string()).collect();
        diff.sort();
        if diff.is_empty() {
            diff.push("(same objects in a different order)".to_string());
        }
        return Err(Error::ObjectMismatch { symmetric_difference: diff });
    }
    let attributes: Vec<String> = left
        .attributes
        .iter()
        .map(|a| format!("{}:{a}", left.name))
        .chain(right.attributes.iter().map(|a| format!("{}:{a}", right.name)))
        .collect();
    let m = attributes.len();
    let offset = left.attribute_count();
    let rows = left
        .rows
        .iter()
        .zip(&right.rows)
        .map(|(a, b)| {
            AttributeSet::from_indices(m, a.iter().chain(b.iter().map(|i| i + offset))).expect("indices within joined universe")
        })
        .collect();
    FormalContext::from_rows(format!("{}+{}", left.name, right.name), left.objects.clone(), attributes, rows)
}

/// Stacks two contexts over the same ordered attribute list, namespacing
/// objects. This is apposition of the transposed contexts.
pub fn subpose(top: &FormalContext, bottom: &FormalContext) -> Result<FormalContext> {
    appose(&top.transpose(), &bottom.transpose()).map(|c| c.transpose())
}

#[derive(Serialize, Deserialize)]
struct ContextRepr {
    name: String,
    objects: Vec<String>,
    attributes: Vec<String>,
    incidence: Vec<String>,
}

impl Serialize for FormalContext {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ContextRepr {
            name: self.name.clone(),
            objects: self.objects.clone(),
            attributes: self.attributes.clone(),
            incidence: self.row_strings(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FormalContext {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ContextRepr::deserialize(deserializer)?;
        FormalContext::from_row_strings(repr.name, &repr.objects, &repr.attributes, &repr.incidence)
            .map_err(serde::de::Error::custom)
    }
}
