use crate::cuts::{dedup_inequalities, LinearInequality, Meta, Tag};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::vset::{VarRef, VertexSet};

/// Per-center limit on candidate neighbor sets during full enumeration.
pub const DEFAULT_CANDIDATE_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlowerFamily {
    /// Neighbors meet the center in at least two vertices and pairwise
    /// disjointly inside the center.
    Flower,
    /// Every neighbor keeps at least two private vertices of the center.
    Extended,
}

impl FlowerFamily {
    fn tag(self) -> Tag {
        match self {
            FlowerFamily::Flower => Tag::Flower,
            FlowerFamily::Extended => Tag::ExtendedFlower,
        }
    }
}

/// `sum_{v in e0 \ U} z_v + sum_k z_{e_k} - z_{e0} <= |e0 \ U| + |T| - 1`
/// where `U` is the union of the neighbors. No condition is checked; an
/// empty neighbor list gives `sum_{v in e0} z_v - z_e0 <= |e0| - 1`.
pub fn flower_template(e0: &VertexSet, neighbors: &[VertexSet], tag: Tag) -> LinearInequality {
    let uncovered: Vec<u32> = e0.iter().filter(|&v| !neighbors.iter().any(|e| e.contains(v))).collect();
    let rhs = (uncovered.len() + neighbors.len()) as f64 - 1.0;
    let mut sorted = neighbors.to_vec();
    sorted.sort();
    LinearInequality::new(
        uncovered
            .iter()
            .map(|&v| (VarRef::vertex(v), 1.0))
            .chain(neighbors.iter().map(|e| (VarRef::from(e), 1.0)))
            .chain([(VarRef::from(e0), -1.0)]),
        rhs,
        tag,
    )
    .with_meta(Meta::Flower { center: e0.clone(), neighbors: sorted })
}

/// `gamma_i = |(e0 ∩ e_i) \ U_{j != i} (e0 ∩ e_j)|` for each neighbor.
pub fn gammas(e0: &VertexSet, neighbors: &[VertexSet]) -> Vec<usize> {
    (0..neighbors.len())
        .map(|i| {
            e0.iter()
                .filter(|&v| {
                    neighbors[i].contains(v)
                        && !neighbors.iter().enumerate().any(|(j, e)| j != i && e.contains(v))
                })
                .count()
        })
        .collect()
}

fn checked_neighbors(h: &Hypergraph, e0: &VertexSet, neighbors: &[VertexSet]) -> Result<Vec<VertexSet>> {
    if !h.is_edge(e0) {
        return Err(Error::NotAnEdge(e0.clone()));
    }
    if neighbors.is_empty() {
        return Err(Error::EmptyNeighbors);
    }
    let mut t = neighbors.to_vec();
    t.sort();
    t.dedup();
    for e in &t {
        if !h.is_edge(e) {
            return Err(Error::NotAnEdge(e.clone()));
        }
        if e == e0 || !e.intersects(e0) {
            return Err(Error::NotAdjacent { center: e0.clone(), neighbor: e.clone() });
        }
    }
    Ok(t)
}

/// The flower inequality centered at `e0` with the given neighbors.
pub fn flower_inequality(h: &Hypergraph, e0: &VertexSet, neighbors: &[VertexSet]) -> Result<LinearInequality> {
    let t = checked_neighbors(h, e0, neighbors)?;
    let inner: Vec<VertexSet> = t.iter().map(|e| e.intersection(e0)).collect();
    for (e, f) in t.iter().zip(&inner) {
        if f.len() < 2 {
            return Err(Error::SmallIntersection(e.clone()));
        }
    }
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            if inner[i].intersects(&inner[j]) {
                return Err(Error::OverlappingNeighbors(t[i].clone(), t[j].clone()));
            }
        }
    }
    Ok(flower_template(e0, &t, Tag::Flower))
}

/// The extended flower inequality centered at `e0`; requires `gamma_i >= 2`
/// for every neighbor.
pub fn extended_flower_inequality(
    h: &Hypergraph,
    e0: &VertexSet,
    neighbors: &[VertexSet],
) -> Result<LinearInequality> {
    let t = checked_neighbors(h, e0, neighbors)?;
    if let Some((e, &gamma)) = t.iter().zip(&gammas(e0, &t)).find(|(_, &g)| g < 2) {
        return Err(Error::SmallPrivateIntersection { neighbor: e.clone(), gamma });
    }
    Ok(flower_template(e0, &t, Tag::ExtendedFlower))
}

/// Drops neighbors with `gamma < 2` one at a time (lexicographically smallest
/// offender first, recomputing gamma after each drop) and records the side
/// inequality that, together with the reduced inequality, implies the
/// original template: `z_{e_i} <= 1` when `gamma_i = 0`, and
/// `z_{e_i} <= z_v` for the single private vertex `v` when `gamma_i = 1`.
pub fn reduce_neighbors(
    h: &Hypergraph,
    e0: &VertexSet,
    neighbors: &[VertexSet],
) -> Result<(Vec<VertexSet>, Vec<LinearInequality>)> {
    let mut t = checked_neighbors(h, e0, neighbors)?;
    let mut side = Vec::new();
    loop {
        let g = gammas(e0, &t);
        let Some(i) = g.iter().position(|&x| x < 2) else {
            break;
        };
        let e = t.remove(i);
        if g[i] == 0 {
            side.push(LinearInequality::upper(VarRef::from(&e), 1.0, Tag::Side));
        } else {
            let private = e0
                .iter()
                .find(|&v| e.contains(v) && !t.iter().any(|o| o.contains(v)))
                .expect("gamma = 1 leaves one private vertex");
            side.push(LinearInequality::le_var(VarRef::from(&e), VarRef::vertex(private), Tag::Side));
        }
    }
    Ok((t, side))
}

/// Enumerates the neighbor sets admitted by `family` around `e0`. Both
/// conditions are inherited by subsets, so failing partial sets are pruned.
pub(crate) fn neighbor_sets(
    e0: &VertexSet,
    candidates: &[VertexSet],
    family: FlowerFamily,
    max_size: usize,
    cap: usize,
    mut visit: impl FnMut(&[VertexSet]),
) -> Result<()> {
    let inner: Vec<VertexSet> = candidates.iter().map(|e| e.intersection(e0)).collect();
    let mut chosen: Vec<usize> = Vec::new();
    let mut count = 0usize;

    fn admissible(family: FlowerFamily, e0: &VertexSet, inner: &[VertexSet], chosen: &[usize], cand: &[VertexSet]) -> bool {
        match family {
            FlowerFamily::Flower => {
                let last = *chosen.last().unwrap();
                inner[last].len() >= 2 && chosen[..chosen.len() - 1].iter().all(|&j| inner[j].is_disjoint(&inner[last]))
            }
            FlowerFamily::Extended => {
                let t: Vec<VertexSet> = chosen.iter().map(|&j| cand[j].clone()).collect();
                gammas(e0, &t).iter().all(|&g| g >= 2)
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        start: usize,
        e0: &VertexSet,
        cand: &[VertexSet],
        inner: &[VertexSet],
        family: FlowerFamily,
        max_size: usize,
        cap: usize,
        chosen: &mut Vec<usize>,
        count: &mut usize,
        visit: &mut dyn FnMut(&[VertexSet]),
    ) -> Result<()> {
        for i in start..cand.len() {
            chosen.push(i);
            if admissible(family, e0, inner, chosen, cand) {
                *count += 1;
                if *count > cap {
                    return Err(Error::GuardExceeded(format!(
                        "more than {cap} candidate neighbor sets around {e0}"
                    )));
                }
                let t: Vec<VertexSet> = chosen.iter().map(|&j| cand[j].clone()).collect();
                visit(&t);
                if chosen.len() < max_size {
                    rec(i + 1, e0, cand, inner, family, max_size, cap, chosen, count, visit)?;
                }
            }
            chosen.pop();
        }
        Ok(())
    }

    rec(0, e0, candidates, &inner, family, max_size, cap, &mut chosen, &mut count, &mut visit)
}

fn enumerate(h: &Hypergraph, family: FlowerFamily, cap: usize) -> Result<Vec<LinearInequality>> {
    let mut out = Vec::new();
    for e0 in h.edges() {
        let cand: Vec<VertexSet> =
            h.adjacent_edges(e0)?.into_iter().filter(|e| e.intersection(e0).len() >= 2).collect();
        neighbor_sets(e0, &cand, family, e0.len() / 2, cap, |t| out.push(flower_template(e0, t, family.tag())))?;
    }
    Ok(dedup_inequalities(out))
}

/// Every flower inequality of `h`, grouped by center in edge order.
pub fn enumerate_flower(h: &Hypergraph, cap: usize) -> Result<Vec<LinearInequality>> {
    enumerate(h, FlowerFamily::Flower, cap)
}

/// Every extended flower inequality of `h`, grouped by center in edge order.
pub fn enumerate_extended_flower(h: &Hypergraph, cap: usize) -> Result<Vec<LinearInequality>> {
    enumerate(h, FlowerFamily::Extended, cap)
}
