use std::cell::Cell;
use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rmc::{build_rmc, PartitionMap, RecursiveMcCormick, Strategy};
use crate::vset::VertexSet;

/// Default node budget for [`min_size_rmc`].
pub const DEFAULT_SEARCH_BUDGET: usize = 1_000_000;

/// The `2^{|L|-1} - 1` unordered bipartitions of `l`; the first part always
/// holds the smallest vertex.
pub fn bipartitions(l: &VertexSet) -> Vec<(VertexSet, VertexSet)> {
    let s = l.as_slice();
    let rest = &s[1..];
    let full = (1u32 << rest.len()) - 1;
    (0..full)
        .map(|m| {
            let j = std::iter::once(s[0])
                .chain(rest.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &v)| v))
                .collect();
            let k = rest.iter().enumerate().filter(|(i, _)| m >> i & 1 == 0).map(|(_, &v)| v).collect();
            (j, k)
        })
        .collect()
}

struct Dfs<'a> {
    h: &'a Hypergraph,
    map: BTreeMap<VertexSet, (VertexSet, VertexSet)>,
    pending: BTreeSet<VertexSet>,
    artificial: BTreeSet<VertexSet>,
}

impl<'a> Dfs<'a> {
    fn new(h: &'a Hypergraph) -> Self {
        Dfs { h, map: BTreeMap::new(), pending: h.edges().iter().cloned().collect(), artificial: BTreeSet::new() }
    }

    fn partition_map(&self) -> PartitionMap {
        let mut m = PartitionMap::new();
        for (l, (j, k)) in &self.map {
            m.insert(l.clone(), j.clone(), k.clone()).expect("bipartition");
        }
        m
    }

    /// Visits every complete assignment; `enter` may veto a branch.
    fn run(&mut self, enter: &mut dyn FnMut(&Self) -> Step, leaf: &mut dyn FnMut(&Self)) -> bool {
        match enter(self) {
            Step::Stop => return false,
            Step::Prune => return true,
            Step::Go => {}
        }
        let Some(l) = self.pending.pop_first() else {
            leaf(self);
            return true;
        };
        let mut keep_going = true;
        for (j, k) in bipartitions(&l) {
            let mut added = Vec::new();
            for p in [&j, &k] {
                if p.len() >= 2 && !self.h.is_edge(p) && self.artificial.insert(p.clone()) {
                    self.pending.insert(p.clone());
                    added.push(p.clone());
                }
            }
            self.map.insert(l.clone(), (j, k));
            keep_going = self.run(enter, leaf);
            self.map.remove(&l);
            for p in added {
                self.artificial.remove(&p);
                self.pending.remove(&p);
            }
            if !keep_going {
                break;
            }
        }
        self.pending.insert(l);
        keep_going
    }
}

enum Step {
    Go,
    Prune,
    Stop,
}

/// Calls `visit` with every partition map that defines an RMC of `h`
/// (one partition for every edge and every reachable artificial set).
/// Distinct maps give distinct RMCs.
pub fn for_each_partition_map(h: &Hypergraph, mut visit: impl FnMut(PartitionMap)) {
    let mut dfs = Dfs::new(h);
    dfs.run(&mut |_| Step::Go, &mut |d| visit(d.partition_map()));
}

/// All RMCs of `h`; errors when there are more than `limit`.
pub fn enumerate_rmcs(h: &Hypergraph, limit: usize) -> Result<Vec<RecursiveMcCormick>> {
    let mut maps = Vec::new();
    let mut dfs = Dfs::new(h);
    let count = Cell::new(0usize);
    let finished = dfs.run(
        &mut |_| if count.get() > limit { Step::Stop } else { Step::Go },
        &mut |d| {
            count.set(count.get() + 1);
            if count.get() <= limit {
                maps.push(d.partition_map());
            }
        },
    );
    if !finished || count.get() > limit {
        return Err(Error::GuardExceeded(format!("more than {limit} recursive McCormick relaxations")));
    }
    maps.into_iter().map(|m| build_rmc(h, &Strategy::Explicit(m))).collect()
}

/// Result of [`min_size_rmc`].
#[derive(Clone, Debug)]
pub struct MinSizeRmc {
    pub rmc: RecursiveMcCormick,
    /// False when the node budget ran out before the search finished.
    pub optimal: bool,
    pub nodes: usize,
}

/// Exhaustive branch-and-bound for an RMC with the fewest artificial
/// variables; ties go to the lexicographically smallest sorted artificial set.
///
/// Search states are `(sets still to split, artificial sets so far)`; a
/// state seen before is skipped since its completions are identical. The
/// search starts from the leftmost RMC, so a result always exists.
pub fn min_size_rmc(h: &Hypergraph, budget: usize) -> Result<MinSizeRmc> {
    let start = build_rmc(h, &Strategy::Leftmost)?;
    let mut best_key: (usize, Vec<VertexSet>) = (start.size(), start.artificial().iter().cloned().collect());
    let mut best_map: Option<PartitionMap> = None;
    let mut seen: HashSet<(Vec<VertexSet>, Vec<VertexSet>)> = HashSet::new();
    let mut nodes = 0usize;
    let mut exhausted = false;

    let mut dfs = Dfs::new(h);
    // `best_key` is read in `enter` and written in `leaf`.
    let best = std::cell::RefCell::new(&mut best_key);
    dfs.run(
        &mut |d| {
            nodes += 1;
            if nodes > budget {
                exhausted = true;
                return Step::Stop;
            }
            if d.artificial.len() > best.borrow().0 {
                return Step::Prune;
            }
            let state = (d.pending.iter().cloned().collect(), d.artificial.iter().cloned().collect());
            if !seen.insert(state) {
                return Step::Prune;
            }
            Step::Go
        },
        &mut |d| {
            let key = (d.artificial.len(), d.artificial.iter().cloned().collect::<Vec<_>>());
            let mut b = best.borrow_mut();
            if key < **b || best_map.is_none() && key == **b {
                **b = key;
                best_map = Some(d.partition_map());
            }
        },
    );
    let rmc = match best_map {
        Some(m) => build_rmc(h, &Strategy::Explicit(m))?,
        None => start,
    };
    Ok(MinSizeRmc { rmc, optimal: !exhausted, nodes: nodes.min(budget) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rmc::tests::example1;

    fn vs(v: &[u32]) -> VertexSet {
        VertexSet::from(v)
    }

    #[test]
    fn bipartition_counts() {
        assert_eq!(bipartitions(&vs(&[1, 2])).len(), 1);
        assert_eq!(bipartitions(&vs(&[1, 2, 3])).len(), 3);
        assert_eq!(bipartitions(&vs(&[1, 2, 3, 4])).len(), 7);
        for (j, k) in bipartitions(&vs(&[1, 2, 3, 4])) {
            assert!(j.contains(1) && !k.is_empty() && j.is_disjoint(&k));
        }
    }

    #[test]
    fn single_four_edge_has_fifteen_rmcs() {
        // 4 splits of type 1|3 (each 3-set has 3 further splits) + 3 of type 2|2
        let h = Hypergraph::new(4, [[1, 2, 3, 4]]).unwrap();
        assert_eq!(enumerate_rmcs(&h, 1000).unwrap().len(), 15);
    }

    #[test]
    fn example1_rmc_count() {
        // each 3-edge has 3 splits; global maps are independent here
        assert_eq!(enumerate_rmcs(&example1(), 1000).unwrap().len(), 27);
        assert!(matches!(enumerate_rmcs(&example1(), 5), Err(Error::GuardExceeded(_))));
    }

    /// Independent check: the smallest size over the exhaustive list.
    fn brute_min(h: &Hypergraph) -> usize {
        enumerate_rmcs(h, 1_000_000).unwrap().iter().map(|r| r.size()).min().unwrap()
    }

    #[test]
    fn example1_min_size() {
        let m = min_size_rmc(&example1(), DEFAULT_SEARCH_BUDGET).unwrap();
        assert!(m.optimal);
        assert_eq!(m.rmc.size(), 2);
        assert_eq!(brute_min(&example1()), 2);
        assert_eq!(m.rmc.artificial().iter().cloned().collect::<Vec<_>>(), vec![vs(&[1, 2]), vs(&[3, 4])]);
    }

    #[test]
    fn single_edge_min_size() {
        for k in 2..=5u32 {
            let h = Hypergraph::new(k as usize, [VertexSet::new(1..=k)]).unwrap();
            let m = min_size_rmc(&h, DEFAULT_SEARCH_BUDGET).unwrap();
            assert_eq!(m.rmc.size(), k as usize - 2);
            assert_eq!(brute_min(&h), k as usize - 2);
        }
    }

    #[test]
    fn rank_two_min_size_is_zero() {
        let h = Hypergraph::new(4, [[1, 2], [2, 3], [3, 4]]).unwrap();
        assert_eq!(min_size_rmc(&h, DEFAULT_SEARCH_BUDGET).unwrap().rmc.size(), 0);
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let h = Hypergraph::new(6, [vec![1, 2, 3, 4, 5], vec![2, 3, 4, 5, 6]].into_iter().map(VertexSet::new)).unwrap();
        let m = min_size_rmc(&h, 3).unwrap();
        assert!(!m.optimal);
        assert!(m.rmc.size() >= 3);
    }

    #[test]
    fn min_size_matches_brute_force_on_overlapping_edges() {
        let h = Hypergraph::new(6, [vec![1, 2, 3, 4], vec![2, 3, 4, 5], vec![1, 2, 5, 6]].into_iter().map(VertexSet::new))
            .unwrap();
        let m = min_size_rmc(&h, DEFAULT_SEARCH_BUDGET).unwrap();
        assert!(m.optimal);
        assert_eq!(m.rmc.size(), brute_min(&h));
    }
}
