//! Recursive McCormick relaxations (RMCs).
//!
//! An RMC fixes one partition `P_L = {J, K}` for every set `L` it has to
//! decompose and replaces each bilinear equation `z_L = z_J z_K` by its four
//! McCormick inequalities. The sets produced while decomposing an edge `e`
//! form its recursive sequence `R_e`; sets that are not edges of the base
//! hypergraph become artificial variables.

mod flower;
mod search;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cuts::{vertex_box_rows, LinearInequality, Tag};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::vset::{VarRef, VertexSet};

pub use flower::{enumerate_flower_partitions, rmc_projection_system, FlowerPartition, MAX_FLOWER_PARTITION_RANK};
pub use search::{bipartitions, enumerate_rmcs, for_each_partition_map, min_size_rmc, MinSizeRmc, DEFAULT_SEARCH_BUDGET};

/// One partition per decomposed set, keyed by the set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartitionMap {
    entries: BTreeMap<VertexSet, (VertexSet, VertexSet)>,
}

#[derive(Serialize, Deserialize)]
struct RawPartition {
    set: Vec<u32>,
    left: Vec<u32>,
    right: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPartitionFile {
    partitions: Vec<RawPartition>,
}

impl PartitionMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `set = left ∪ right`. The pair is unordered and stored with
    /// the lexicographically smaller part first.
    pub fn insert(&mut self, set: VertexSet, left: VertexSet, right: VertexSet) -> Result<()> {
        if set.len() < 2 {
            return Err(Error::InvalidPartition(format!("{set} has fewer than two vertices")));
        }
        if left.is_empty() || right.is_empty() || !left.is_disjoint(&right) || left.union(&right) != set {
            return Err(Error::InvalidPartition(format!("{left} | {right} is not a partition of {set}")));
        }
        let pair = if left <= right { (left, right) } else { (right, left) };
        match self.entries.get(&set) {
            Some(old) if *old != pair => {
                Err(Error::InvalidPartition(format!("{set} is given two different partitions")))
            }
            _ => {
                self.entries.insert(set, pair);
                Ok(())
            }
        }
    }

    pub fn with(mut self, set: impl Into<VertexSet>, left: impl Into<VertexSet>, right: impl Into<VertexSet>) -> Result<Self> {
        self.insert(set.into(), left.into(), right.into())?;
        Ok(self)
    }

    pub fn get(&self, set: &VertexSet) -> Option<(&VertexSet, &VertexSet)> {
        self.entries.get(set).map(|(j, k)| (j, k))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VertexSet, &VertexSet, &VertexSet)> {
        self.entries.iter().map(|(l, (j, k))| (l, j, k))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawPartitionFile = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        let mut map = PartitionMap::new();
        for p in raw.partitions {
            map.insert(VertexSet::new(p.set), VertexSet::new(p.left), VertexSet::new(p.right))?;
        }
        Ok(map)
    }

    pub fn render(&self) -> String {
        let raw = RawPartitionFile {
            partitions: self
                .iter()
                .map(|(l, j, k)| RawPartition {
                    set: l.as_slice().to_vec(),
                    left: j.as_slice().to_vec(),
                    right: k.as_slice().to_vec(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("partition map serializes") + "\n"
    }
}

/// How to split a set that has no partition yet.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Split off the smallest vertex: `J = {min L}`.
    #[default]
    Leftmost,
    /// Split the sorted vertex list into its first `ceil(|L|/2)` and last `floor(|L|/2)` vertices.
    Balanced,
    /// Use the given map; two-element sets may be omitted.
    Explicit(PartitionMap),
}

impl Strategy {
    fn split(&self, l: &VertexSet) -> Result<(VertexSet, VertexSet)> {
        let s = l.as_slice();
        match self {
            Strategy::Leftmost => Ok((VertexSet::from(&s[..1]), VertexSet::from(&s[1..]))),
            Strategy::Balanced => {
                let mid = s.len().div_ceil(2);
                Ok((VertexSet::from(&s[..mid]), VertexSet::from(&s[mid..])))
            }
            Strategy::Explicit(map) => match map.get(l) {
                Some((j, k)) => Ok((j.clone(), k.clone())),
                None if s.len() == 2 => Ok((VertexSet::from(&s[..1]), VertexSet::from(&s[1..]))),
                None => Err(Error::InvalidPartition(format!("no partition given for reachable set {l}"))),
            },
        }
    }
}

/// A recursive McCormick relaxation of a hypergraph's multilinear set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursiveMcCormick {
    base: Hypergraph,
    partition: PartitionMap,
    sequences: BTreeMap<VertexSet, BTreeSet<VertexSet>>,
    artificial: BTreeSet<VertexSet>,
}

/// Runs the recursive decomposition on every edge of `h`.
///
/// Each edge starts its own sequence `R_e = {e}`. A member `L` of `R_e` is
/// split further only when `L = e` or `L` is artificial; edges of `h` that
/// appear inside `R_e` are left to their own sequences. Every set is split
/// at most once and the split is shared by all sequences containing it.
pub fn build_rmc(h: &Hypergraph, strategy: &Strategy) -> Result<RecursiveMcCormick> {
    let mut partition = PartitionMap::new();
    let mut artificial = BTreeSet::new();
    let mut sequences = BTreeMap::new();
    for e in h.edges() {
        let mut seq = BTreeSet::from([e.clone()]);
        let mut stack = vec![e.clone()];
        while let Some(l) = stack.pop() {
            let (j, k) = match partition.get(&l) {
                Some((j, k)) => (j.clone(), k.clone()),
                None => {
                    let (j, k) = strategy.split(&l)?;
                    partition.insert(l.clone(), j.clone(), k.clone())?;
                    (j, k)
                }
            };
            for part in [j, k] {
                if part.len() >= 2 && seq.insert(part.clone()) && !h.is_edge(&part) {
                    artificial.insert(part.clone());
                    stack.push(part);
                }
            }
        }
        sequences.insert(e.clone(), seq);
    }
    Ok(RecursiveMcCormick { base: h.clone(), partition, sequences, artificial })
}

impl RecursiveMcCormick {
    pub fn base(&self) -> &Hypergraph {
        &self.base
    }

    /// Partitions of every set that was decomposed.
    pub fn partition(&self) -> &PartitionMap {
        &self.partition
    }

    pub fn sequences(&self) -> &BTreeMap<VertexSet, BTreeSet<VertexSet>> {
        &self.sequences
    }

    pub fn sequence(&self, e: &VertexSet) -> Result<&BTreeSet<VertexSet>> {
        self.sequences.get(e).ok_or_else(|| Error::NotAnEdge(e.clone()))
    }

    pub fn artificial(&self) -> &BTreeSet<VertexSet> {
        &self.artificial
    }

    /// Number of artificial variables.
    pub fn size(&self) -> usize {
        self.artificial.len()
    }

    pub fn is_artificial(&self, s: &VertexSet) -> bool {
        self.artificial.contains(s)
    }

    /// Vertex, edge and artificial variables, in canonical order.
    pub fn variables(&self) -> Vec<VarRef> {
        let mut v = self.base.variables();
        v.extend(self.artificial.iter().map(VarRef::from));
        v.sort();
        v
    }

    /// `P_{e,p}`: edges other than `e` whose sequence contains `p`.
    pub fn witnesses(&self, e: &VertexSet, p: &VertexSet) -> Vec<VertexSet> {
        self.sequences
            .iter()
            .filter(|(f, seq)| *f != e && seq.contains(p))
            .map(|(f, _)| f.clone())
            .collect()
    }

    /// McCormick rows plus explicit `0 <= z_v <= 1` rows.
    pub fn lifted_system(&self) -> Vec<LinearInequality> {
        let mut rows = rmc_constraints(self);
        rows.extend(vertex_box_rows(&self.base, Tag::Rmc));
        rows
    }
}

/// The four McCormick inequalities of every bilinear equation
/// `z_L = z_J z_K` (`z_{{i}}` is the vertex variable), in partition-map order.
///
/// Vertex box bounds are not included; see [`RecursiveMcCormick::lifted_system`].
pub fn rmc_constraints(r: &RecursiveMcCormick) -> Vec<LinearInequality> {
    let mut out = Vec::with_capacity(4 * r.partition.len());
    for (l, j, k) in r.partition.iter() {
        let (zl, zj, zk) = (VarRef::from(l), VarRef::from(j), VarRef::from(k));
        out.push(LinearInequality::nonneg(zl.clone(), Tag::Rmc));
        out.push(LinearInequality::new([(zj.clone(), 1.0), (zk.clone(), 1.0), (zl.clone(), -1.0)], 1.0, Tag::Rmc));
        out.push(LinearInequality::le_var(zl.clone(), zj, Tag::Rmc));
        out.push(LinearInequality::le_var(zl, zk, Tag::Rmc));
    }
    out
}

/// True iff the recursive sequences of distinct edges are pairwise disjoint.
pub fn is_non_overlapping(r: &RecursiveMcCormick) -> bool {
    let seqs: Vec<&BTreeSet<VertexSet>> = r.sequences.values().collect();
    seqs.iter()
        .enumerate()
        .all(|(i, a)| seqs[i + 1..].iter().all(|b| a.is_disjoint(b)))
}

/// `t_ebar = max_{e : ebar in R_e} |{ e' in R_e ∩ Ebar : e' ⊆ ebar }|`.
pub fn edge_level(r: &RecursiveMcCormick, ebar: &VertexSet) -> Result<usize> {
    if !r.is_artificial(ebar) {
        return Err(Error::NotArtificial(ebar.clone()));
    }
    Ok(r.sequences
        .values()
        .filter(|seq| seq.contains(ebar))
        .map(|seq| seq.iter().filter(|p| r.is_artificial(p) && p.is_subset(ebar)).count())
        .max()
        .unwrap_or(0))
}

/// Maximum artificial level, 0 without artificial variables.
pub fn rmc_level(r: &RecursiveMcCormick) -> usize {
    r.artificial.iter().map(|a| edge_level(r, a).expect("artificial")).max().unwrap_or(0)
}
