use std::collections::BTreeMap;

use crate::cuts::{dedup_inequalities, LinearInequality, Meta, ProjFamily, Tag, Witness};
use crate::error::{Error, Result};
use crate::rmc::RecursiveMcCormick;
use crate::vset::{VarRef, VertexSet};

/// Largest rank for which flower partitions are enumerated.
pub const MAX_FLOWER_PARTITION_RANK: usize = 8;

/// A partition of an edge into singletons, edges from its recursive
/// sequence, and artificial sets that also occur in some other edge's
/// sequence (each with a chosen witness edge).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowerPartition {
    pub edge: VertexSet,
    pub parts: Vec<VertexSet>,
    /// The artificial members of `parts`.
    pub artificial_parts: Vec<VertexSet>,
    /// Witness edge `w_{e,p}` for each artificial part.
    pub witnesses: BTreeMap<VertexSet, VertexSet>,
}

impl FlowerPartition {
    /// `sum_{p not artificial} z_p + sum_{p artificial} z_{w_{e,p}} - z_e <= |T_e| - 1`.
    pub fn inequality(&self) -> LinearInequality {
        let terms = self
            .parts
            .iter()
            .map(|p| (VarRef::from(self.witnesses.get(p).unwrap_or(p)), 1.0))
            .chain([(VarRef::from(&self.edge), -1.0)]);
        LinearInequality::new(terms, self.parts.len() as f64 - 1.0, Tag::Projection).with_meta(Meta::Projection {
            family: ProjFamily::Proj2,
            edge: Some(self.edge.clone()),
            parts: self.parts.clone(),
            witnesses: self.witnesses.iter().map(|(p, w)| Witness { part: p.clone(), edge: w.clone() }).collect(),
        })
    }
}

/// All flower partitions of `e`, one per choice of witnesses.
///
/// Candidate parts are the singletons of `e`, the edges in `R_e` other than
/// `e`, and the artificial sets `p` in `R_e` with a nonempty `P_{e,p}`.
pub fn enumerate_flower_partitions(r: &RecursiveMcCormick, e: &VertexSet) -> Result<Vec<FlowerPartition>> {
    if r.base().rank() > MAX_FLOWER_PARTITION_RANK {
        return Err(Error::GuardExceeded(format!(
            "rank {} exceeds {MAX_FLOWER_PARTITION_RANK} for flower-partition enumeration",
            r.base().rank()
        )));
    }
    let seq = r.sequence(e)?;
    let pos = |v: u32| e.as_slice().binary_search(&v).expect("vertex of e");
    let mask_of = |s: &VertexSet| s.iter().fold(0u32, |m, v| m | 1 << pos(v));

    let mut blocks: Vec<(VertexSet, u32, Vec<VertexSet>)> =
        e.iter().map(|v| (VertexSet::singleton(v), 1 << pos(v), Vec::new())).collect();
    for p in seq.iter().filter(|p| *p != e) {
        if r.is_artificial(p) {
            let w = r.witnesses(e, p);
            if !w.is_empty() {
                blocks.push((p.clone(), mask_of(p), w));
            }
        } else {
            blocks.push((p.clone(), mask_of(p), Vec::new()));
        }
    }
    blocks.sort_by(|a, b| a.0.cmp(&b.0));

    let full = (1u32 << e.len()) - 1;
    let mut covers: Vec<Vec<usize>> = Vec::new();
    let mut chosen = Vec::new();

    fn cover(blocks: &[(VertexSet, u32, Vec<VertexSet>)], full: u32, covered: u32, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if covered == full {
            out.push(chosen.clone());
            return;
        }
        let first = (!covered).trailing_zeros();
        for (i, (_, m, _)) in blocks.iter().enumerate() {
            if m >> first & 1 == 1 && m & covered == 0 {
                chosen.push(i);
                cover(blocks, full, covered | m, chosen, out);
                chosen.pop();
            }
        }
    }
    cover(&blocks, full, 0, &mut chosen, &mut covers);

    let mut out = Vec::new();
    for c in covers {
        let mut parts: Vec<VertexSet> = c.iter().map(|&i| blocks[i].0.clone()).collect();
        parts.sort();
        let art: Vec<usize> = c.iter().copied().filter(|&i| !blocks[i].2.is_empty()).collect();
        let artificial_parts: Vec<VertexSet> = {
            let mut a: Vec<VertexSet> = art.iter().map(|&i| blocks[i].0.clone()).collect();
            a.sort();
            a
        };
        // cartesian product over witness choices
        let mut choice = vec![0usize; art.len()];
        loop {
            let witnesses = art.iter().zip(&choice).map(|(&i, &k)| (blocks[i].0.clone(), blocks[i].2[k].clone())).collect();
            out.push(FlowerPartition {
                edge: e.clone(),
                parts: parts.clone(),
                artificial_parts: artificial_parts.clone(),
                witnesses,
            });
            let mut d = 0;
            while d < art.len() {
                choice[d] += 1;
                if choice[d] < blocks[art[d]].2.len() {
                    break;
                }
                choice[d] = 0;
                d += 1;
            }
            if d == art.len() {
                break;
            }
        }
    }
    Ok(out)
}

fn proj_meta(family: ProjFamily, edge: Option<&VertexSet>, parts: Vec<VertexSet>) -> Meta {
    Meta::Projection { family, edge: edge.cloned(), parts, witnesses: Vec::new() }
}

/// Inequalities over vertex and edge variables only that describe the
/// projection of the RMC onto the original space:
///
/// * `z_v <= 1`, `z_e >= 0`;
/// * `z_e <= z_p` for every vertex `p` of `e` and every edge `p != e` in `R_e`;
/// * one inequality per flower partition of each edge (all witness choices).
///
/// Identical inequalities are emitted once.
pub fn rmc_projection_system(r: &RecursiveMcCormick) -> Result<Vec<LinearInequality>> {
    let h = r.base();
    let mut out = Vec::new();
    for v in h.vertices() {
        out.push(
            LinearInequality::upper(VarRef::vertex(v), 1.0, Tag::Projection)
                .with_meta(proj_meta(ProjFamily::Proj0, None, vec![VertexSet::singleton(v)])),
        );
    }
    for e in h.edges() {
        out.push(
            LinearInequality::nonneg(VarRef::from(e), Tag::Projection)
                .with_meta(proj_meta(ProjFamily::Proj0, Some(e), Vec::new())),
        );
    }
    for e in h.edges() {
        let ze = VarRef::from(e);
        let seq = r.sequence(e)?;
        let parts = e.iter().map(VertexSet::singleton).chain(seq.iter().filter(|p| *p != e && h.is_edge(p)).cloned());
        for p in parts {
            out.push(
                LinearInequality::le_var(ze.clone(), VarRef::from(&p), Tag::Projection)
                    .with_meta(proj_meta(ProjFamily::Proj1, Some(e), vec![p])),
            );
        }
    }
    for e in h.edges() {
        for fp in enumerate_flower_partitions(r, e)? {
            out.push(fp.inequality());
        }
    }
    Ok(dedup_inequalities(out))
}
