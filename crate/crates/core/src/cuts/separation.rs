use std::collections::BTreeMap;

use crate::cuts::flower::{flower_template, gammas, neighbor_sets, FlowerFamily};
use crate::cuts::{FractionalPoint, LinearInequality, Meta};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::vset::{VarRef, VertexSet};

/// A violated inequality and `lhs - rhs` at the separated point.
#[derive(Clone, Debug)]
pub struct SeparatedCut {
    pub inequality: LinearInequality,
    pub violation: f64,
}

/// `E_{e0}`: for every pattern `f = e ∩ e0` with `|f| >= 2`, the one edge
/// `e != e0` with that intersection and the largest value, ties going to the
/// lexicographically smallest edge. Sorted by edge.
pub fn pruned_neighbors(h: &Hypergraph, e0: &VertexSet, point: &FractionalPoint) -> Result<Vec<VertexSet>> {
    let mut best: BTreeMap<VertexSet, (f64, VertexSet)> = BTreeMap::new();
    for e in h.adjacent_edges(e0)? {
        let f = e.intersection(e0);
        if f.len() < 2 {
            continue;
        }
        let val = point.get(&VarRef::from(&e)).ok_or_else(|| Error::IncompletePoint(VarRef::from(&e)))?;
        match best.get(&f) {
            Some((b, _)) if *b >= val => {}
            _ => {
                best.insert(f, (val, e));
            }
        }
    }
    let mut out: Vec<VertexSet> = best.into_values().map(|(_, e)| e).collect();
    out.sort();
    Ok(out)
}

fn meta_key(i: &LinearInequality) -> Option<&Meta> {
    i.meta.as_ref()
}

fn finish(mut cuts: Vec<SeparatedCut>) -> Vec<SeparatedCut> {
    cuts.sort_by(|a, b| {
        b.violation
            .total_cmp(&a.violation)
            .then_with(|| meta_key(&a.inequality).cmp(&meta_key(&b.inequality)))
    });
    let mut seen = std::collections::HashSet::new();
    cuts.retain(|c| seen.insert(c.inequality.canonical_key()));
    cuts
}

/// Separation over one inequality family using the pruned candidate sets.
///
/// Returns every inequality of the family that `point` violates by more
/// than `tol`, sorted by decreasing violation and then by center and
/// neighbors.
pub fn separate(h: &Hypergraph, point: &FractionalPoint, tol: f64, family: FlowerFamily) -> Result<Vec<SeparatedCut>> {
    point.require_complete(h)?;
    let mut cuts = Vec::new();
    for e0 in h.edges() {
        let cand = pruned_neighbors(h, e0, point)?;
        let tag = match family {
            FlowerFamily::Flower => crate::cuts::Tag::Flower,
            FlowerFamily::Extended => crate::cuts::Tag::ExtendedFlower,
        };
        let mut err = None;
        neighbor_sets(e0, &cand, family, h.rank() / 2, usize::MAX, |t| {
            let ineq = flower_template(e0, t, tag);
            match ineq.violation(point.values()) {
                Ok(v) if v > tol => cuts.push(SeparatedCut { inequality: ineq, violation: v }),
                Ok(_) => {}
                Err(e) => err = Some(e),
            }
        })?;
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok(finish(cuts))
}

/// Extended flower separation.
pub fn separate_extended_flower(h: &Hypergraph, point: &FractionalPoint, tol: f64) -> Result<Vec<SeparatedCut>> {
    separate(h, point, tol, FlowerFamily::Extended)
}

/// Reference separation: tries every subset of every center's adjacent
/// edges. Limited to 20 adjacent edges per center.
pub fn brute_force_separation(h: &Hypergraph, point: &FractionalPoint, tol: f64) -> Result<Vec<SeparatedCut>> {
    point.require_complete(h)?;
    let mut cuts = Vec::new();
    for e0 in h.edges() {
        let adj = h.adjacent_edges(e0)?;
        if adj.len() > 20 {
            return Err(Error::GuardExceeded(format!("{} edges adjacent to {e0}", adj.len())));
        }
        for mask in 1u32..(1 << adj.len()) {
            let t: Vec<VertexSet> =
                adj.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e.clone()).collect();
            if gammas(e0, &t).iter().any(|&g| g < 2) {
                continue;
            }
            let ineq = flower_template(e0, &t, crate::cuts::Tag::ExtendedFlower);
            let v = ineq.violation(point.values())?;
            if v > tol {
                cuts.push(SeparatedCut { inequality: ineq, violation: v });
            }
        }
    }
    Ok(finish(cuts))
}
