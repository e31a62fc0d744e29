use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::vset::{VarKind, VarRef, VertexSet};

/// A hypergraph `G = (V, E)` with vertices `1..=n` and canonical edges.
///
/// Edges are distinct, have at least two vertices, and are kept in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<VertexSet>,
}

impl Hypergraph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<VertexSet>,
    {
        let mut set = BTreeSet::new();
        for e in edges {
            let e: VertexSet = e.into();
            if e.len() < 2 {
                return Err(Error::Malformed(format!("edge {e} has fewer than two vertices")));
            }
            for v in e.iter() {
                if v == 0 || v as usize > n {
                    return Err(Error::VertexOutOfRange { vertex: v as i64, n });
                }
            }
            if !set.insert(e.clone()) {
                return Err(Error::Malformed(format!("duplicate edge {e}")));
            }
        }
        Ok(Hypergraph { n, edges: set.into_iter().collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> {
        1..=self.n as u32
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Maximum edge cardinality, 0 for an edgeless hypergraph.
    pub fn rank(&self) -> usize {
        self.edges.iter().map(VertexSet::len).max().unwrap_or(0)
    }

    /// `|V| + |E|`, the dimension of the multilinear set.
    pub fn dimension(&self) -> usize {
        self.n + self.edges.len()
    }

    pub fn is_edge(&self, e: &VertexSet) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    pub fn kind_of(&self, var: &VarRef) -> VarKind {
        if var.is_vertex() {
            VarKind::Vertex
        } else if self.is_edge(var.vertices()) {
            VarKind::Edge
        } else {
            VarKind::ArtificialEdge
        }
    }

    /// Vertex variables followed by edge variables, in canonical order.
    pub fn variables(&self) -> Vec<VarRef> {
        self.vertices()
            .map(VarRef::vertex)
            .chain(self.edges.iter().map(VarRef::from))
            .collect()
    }

    /// All edges other than `e0` that meet `e0`, in lexicographic order.
    pub fn adjacent_edges(&self, e0: &VertexSet) -> Result<Vec<VertexSet>> {
        if !self.is_edge(e0) {
            return Err(Error::NotAnEdge(e0.clone()));
        }
        Ok(self
            .edges
            .iter()
            .filter(|e| *e != e0 && e.intersects(e0))
            .cloned()
            .collect())
    }
}
