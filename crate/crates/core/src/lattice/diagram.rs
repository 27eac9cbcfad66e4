use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ConceptLattice;
use crate::context::FormalContext;
use crate::error::{Error, Result};

/// Reduced labels of one lattice node.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NodeLabels {
    pub objects: Vec<usize>,
    pub attributes: Vec<usize>,
}

/// Attribute `m` labels `(m′, m″)`; object `g` labels `(g″, g′)`. Returns
/// one entry per concept, indexed like `lattice.concepts()`.
pub fn reduced_labels(ctx: &FormalContext, lattice: &ConceptLattice) -> Vec<NodeLabels> {
    let mut labels = vec![NodeLabels::default(); lattice.len()];
    for m in 0..ctx.attribute_count() {
        let intent = ctx.common_attributes(ctx.attribute_extent(m));
        let node = lattice.index_of_intent(&intent).expect("attribute concept is in the lattice");
        labels[node].attributes.push(m);
    }
    for g in 0..ctx.object_count() {
        let node = lattice.index_of_intent(ctx.object_intent(g)).expect("object intent is closed");
        labels[node].objects.push(g);
    }
    labels
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DiagramNode {
    pub id: usize,
    pub layer: usize,
    pub position: usize,
    pub extent: Vec<String>,
    pub intent: Vec<String>,
    pub extent_size: usize,
    pub object_labels: Vec<String>,
    pub attribute_labels: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiagramEdge {
    pub parent: usize,
    pub child: usize,
}

/// A layered drawing of a concept lattice, ready to be rendered.
///
/// Layers count the longest path down from the top concept, so every edge
/// goes from a lower layer index (parent) to a higher one (child). Inside a
/// layer, nodes keep the lectic order of their intents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineDiagram {
    pub nodes: Vec<DiagramNode>,
    pub edges: Vec<DiagramEdge>,
}

impl LineDiagram {
    pub fn new(ctx: &FormalContext, lattice: &ConceptLattice) -> Self {
        let n = lattice.len();
        // extents strictly grow along every cover, so decreasing extent
        // size is a topological order from the top
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(lattice.concepts()[i].extent.len()), i));
        let mut layer = vec![0usize; n];
        for &i in &order {
            layer[i] = lattice.upper_covers(i).iter().map(|&p| layer[p] + 1).max().unwrap_or(0);
        }
        let mut position = vec![0usize; n];
        let mut filled = vec![0usize; n + 1];
        for i in 0..n {
            position[i] = filled[layer[i]];
            filled[layer[i]] += 1;
        }

        let labels = reduced_labels(ctx, lattice);
        let nodes = lattice
            .concepts()
            .iter()
            .enumerate()
            .map(|(i, c)| DiagramNode {
                id: i,
                layer: layer[i],
                position: position[i],
                extent: ctx.object_names(&c.extent),
                intent: ctx.attribute_names(&c.intent),
                extent_size: c.extent.len(),
                object_labels: labels[i].objects.iter().map(|&g| ctx.objects()[g].clone()).collect(),
                attribute_labels: labels[i].attributes.iter().map(|&m| ctx.attributes()[m].clone()).collect(),
            })
            .collect();
        let mut edges: Vec<DiagramEdge> =
            lattice.covers().iter().map(|&(child, parent)| DiagramEdge { parent, child }).collect();
        edges.sort();
        LineDiagram { nodes, edges }
    }

    pub fn layer_count(&self) -> usize {
        self.nodes.iter().map(|n| n.layer + 1).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph lattice {\n  rankdir=TB;\n  node [shape=box];\n");
        for node in &self.nodes {
            let label = format!("{} | {}", node.object_labels.join(", "), node.attribute_labels.join(", "));
            let _ = writeln!(out, "  c{} [label=\"{}\"];", node.id, escape_dot(&label));
        }
        for e in &self.edges {
            let _ = writeln!(out, "  c{} -> c{};", e.parent, e.child);
        }
        out.push_str("}\n");
        out
    }
}

fn escape_dot(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagramFormat {
    Json,
    Dot,
}

impl FromStr for DiagramFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "diagram-json" | "json" => Ok(DiagramFormat::Json),
            "dot" => Ok(DiagramFormat::Dot),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

/// Renders the line diagram of `lattice` as `diagram-json` or `dot`.
pub fn export_diagram(ctx: &FormalContext, lattice: &ConceptLattice, format: &str) -> Result<String> {
    let diagram = LineDiagram::new(ctx, lattice);
    Ok(match format.parse()? {
        DiagramFormat::Json => diagram.to_json(),
        DiagramFormat::Dot => diagram.to_dot(),
    })
}
