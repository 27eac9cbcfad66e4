//! Brute-force reference implementations over plain boolean tables. They
//! share no code with the library and are only fast enough for small inputs.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use lattice_tax::{AttributeSet, FormalContext, ObjectSet};
use proptest::prelude::*;
use rand::Rng;

pub type Table = Vec<Vec<bool>>;

pub fn width(table: &Table, fallback: usize) -> usize {
    table.first().map_or(fallback, Vec::len)
}

pub fn to_context(table: &Table, m: usize) -> FormalContext {
    let objects = (0..table.len()).map(|i| format!("g{i}")).collect();
    let attributes = (0..m).map(|j| format!("m{j}")).collect();
    FormalContext::new("random", objects, attributes, table).unwrap()
}

/// Attributes shared by every listed object (all attributes for none).
pub fn common_attributes(table: &Table, m: usize, objects: &[usize]) -> Vec<usize> {
    (0..m).filter(|&j| objects.iter().all(|&i| table[i][j])).collect()
}

/// Objects having every listed attribute (all objects for none).
pub fn common_objects(table: &Table, attributes: &[usize]) -> Vec<usize> {
    (0..table.len()).filter(|&i| attributes.iter().all(|&j| table[i][j])).collect()
}

pub fn attribute_closure(table: &Table, m: usize, attributes: &[usize]) -> Vec<usize> {
    common_attributes(table, m, &common_objects(table, attributes))
}

pub fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..1 << n).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
}

/// Every concept as `(extent, intent)`, found by closing all attribute subsets.
pub fn concepts(table: &Table, m: usize) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
    subsets(m)
        .filter(|b| attribute_closure(table, m, b) == *b)
        .map(|b| (common_objects(table, &b), b))
        .collect()
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

/// Pseudo-intents straight from the recursive definition, by increasing size.
pub fn pseudo_intents(table: &Table, m: usize) -> BTreeSet<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = subsets(m).collect();
    all.sort_by_key(Vec::len);
    let mut found: Vec<Vec<usize>> = Vec::new();
    for p in all {
        if attribute_closure(table, m, &p) == p {
            continue;
        }
        let respects = found
            .iter()
            .filter(|q| q.len() < p.len() && is_subset(q, &p))
            .all(|q| is_subset(&attribute_closure(table, m, q), &p));
        if respects {
            found.push(p);
        }
    }
    found.into_iter().collect()
}

pub fn crosses(table: &Table, rows: &[usize], cols: &[usize]) -> usize {
    rows.iter().map(|&i| cols.iter().filter(|&&j| table[i][j]).count()).sum()
}

pub fn random_table(rng: &mut impl Rng, g: usize, m: usize, p: f64) -> Table {
    (0..g).map(|_| (0..m).map(|_| rng.gen_bool(p)).collect()).collect()
}

pub fn random_subset(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    (0..n).filter(|_| rng.gen_bool(0.5)).collect()
}

pub fn table_strategy(max_g: usize, max_m: usize) -> impl Strategy<Value = (Table, usize)> {
    (0..=max_g, 0..=max_m).prop_flat_map(|(g, m)| {
        (proptest::collection::vec(proptest::collection::vec(any::<bool>(), m), g), Just(m))
    })
}

pub fn attrs(ctx: &FormalContext, indices: &[usize]) -> AttributeSet {
    AttributeSet::from_indices(ctx.attribute_count(), indices.iter().copied()).unwrap()
}

pub fn objs(ctx: &FormalContext, indices: &[usize]) -> ObjectSet {
    ObjectSet::from_indices(ctx.object_count(), indices.iter().copied()).unwrap()
}

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

/// `(file name, contents)` of every `.cxt` fixture, sorted by name.
pub fn fixtures() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = std::fs::read_dir(fixture_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "cxt"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read_to_string(&p).unwrap()))
        .collect();
    out.sort();
    out
}

pub fn table_of(ctx: &FormalContext) -> Table {
    (0..ctx.object_count()).map(|g| (0..ctx.attribute_count()).map(|m| ctx.incident(g, m)).collect()).collect()
}
