//! Labelled graphs, Levi graphs, and hypercubes.

use std::collections::{BTreeMap, BTreeSet};

use crate::incidence::{IncidenceStructure, Label, StructureError};
use crate::subset::FiniteSubset;

/// An undirected graph with labelled vertices. Two graphs are equal as
/// labelled graphs when they have the same vertex labels joined by the same
/// label pairs, regardless of index order.
#[derive(Clone, Debug)]
pub struct LabeledGraph {
    vertices: Vec<Label>,
    edges: Vec<(usize, usize)>,
}

impl LabeledGraph {
    pub fn new(vertices: Vec<Label>, mut edges: Vec<(usize, usize)>) -> Self {
        for e in &mut edges {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        LabeledGraph { vertices, edges }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Label] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn is_regular(&self, d: usize) -> bool {
        (0..self.num_vertices()).all(|v| self.degree(v) == d)
    }

    fn edge_label_set(&self) -> BTreeSet<(Label, Label)> {
        self.edges
            .iter()
            .map(|&(a, b)| {
                let (la, lb) = (self.vertices[a].clone(), self.vertices[b].clone());
                if la <= lb { (la, lb) } else { (lb, la) }
            })
            .collect()
    }

    /// Equality as labelled graphs.
    pub fn labeled_eq(&self, other: &LabeledGraph) -> bool {
        let va: BTreeSet<&Label> = self.vertices.iter().collect();
        let vb: BTreeSet<&Label> = other.vertices.iter().collect();
        va == vb && self.edge_label_set() == other.edge_label_set()
    }

    /// Graphviz DOT rendering with quoted labels, vertices in index order.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph \"{name}\" {{\n");
        for v in &self.vertices {
            out.push_str(&format!("  \"{v}\";\n"));
        }
        for &(a, b) in &self.edges {
            out.push_str(&format!(
                "  \"{}\" -- \"{}\";\n",
                self.vertices[a], self.vertices[b]
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// Bipartite incidence graph: vertices are the points followed by the blocks,
/// edges are the flags. Fails if a point and a block share a label.
pub fn levi_graph(s: &IncidenceStructure) -> Result<LabeledGraph, StructureError> {
    let mut vertices: Vec<Label> = s.point_labels().to_vec();
    let seen: BTreeSet<&Label> = s.point_labels().iter().collect();
    for b in s.block_labels() {
        if seen.contains(b) {
            return Err(StructureError::LabelCollision(b.to_string()));
        }
        vertices.push(b.clone());
    }
    let np = s.num_points();
    let edges: Vec<(usize, usize)> = s.flags().map(|(p, b)| (p, np + b)).collect();
    Ok(LabeledGraph::new(vertices, edges))
}

/// The hypercube graph on all subsets of `{1, …, n}`: edges join subsets at
/// Hamming distance one.
pub fn hypercube(n: u8) -> LabeledGraph {
    let subsets = FiniteSubset::all(n);
    let index: BTreeMap<FiniteSubset, usize> =
        subsets.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut edges = Vec::new();
    for (i, s) in subsets.iter().enumerate() {
        for e in 1..=n {
            if !s.contains(e) {
                let t = s.with(e);
                edges.push((i, index[&t]));
            }
        }
    }
    LabeledGraph::new(subsets.into_iter().map(Label::Set).collect(), edges)
}
