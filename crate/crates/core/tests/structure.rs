use multiflower::rmc::{build_rmc, edge_level, enumerate_rmcs, min_size_rmc, rmc_level, DEFAULT_SEARCH_BUDGET};
use multiflower::{generate_random, Hypergraph, RecursiveMcCormick, Strategy, VertexSet};
use proptest::prelude::*;

fn leaves(r: &RecursiveMcCormick, l: &VertexSet, out: &mut Vec<u32>) {
    if l.len() == 1 {
        out.push(l.as_slice()[0]);
        return;
    }
    let (j, k) = r.partition().get(l).expect("every decomposed set has a partition");
    leaves(r, j, out);
    leaves(r, k, out);
}

fn check_rmc(r: &RecursiveMcCormick) {
    let h = r.base();
    for e in h.edges() {
        let seq = r.sequence(e).unwrap();
        assert!(seq.contains(e));
        for l in seq {
            assert!(l.is_subset(e), "{l} escapes {e}");
            assert!(l == e || r.is_artificial(l) || h.is_edge(l));
        }
        let mut got = Vec::new();
        leaves(r, e, &mut got);
        got.sort();
        assert_eq!(got, e.as_slice());
    }
    for a in r.artificial() {
        let t = edge_level(r, a).unwrap();
        assert!(t >= 1 && t + 2 <= h.rank(), "level {t} of {a} at rank {}", h.rank());
    }
    assert!(rmc_level(r) <= h.rank().saturating_sub(2));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn adjacency_is_symmetric(n in 3usize..9, edges in 1usize..7, rank in 2usize..5, seed in any::<u64>()) {
        if let Ok(inst) = generate_random(n, edges, rank, seed) {
            let h = inst.to_hypergraph().hypergraph;
            for e in h.edges() {
                for f in h.adjacent_edges(e).unwrap() {
                    prop_assert!(f != *e && f.intersects(e));
                    prop_assert!(h.adjacent_edges(&f).unwrap().contains(e));
                }
            }
        }
    }

    #[test]
    fn strategies_build_sound_rmcs(n in 3usize..8, edges in 1usize..6, rank in 2usize..7, seed in any::<u64>()) {
        if let Ok(inst) = generate_random(n, edges, rank, seed) {
            let h = inst.to_hypergraph().hypergraph;
            for s in [Strategy::Leftmost, Strategy::Balanced] {
                let a = build_rmc(&h, &s).unwrap();
                let b = build_rmc(&h, &s).unwrap();
                prop_assert_eq!(a.partition().render(), b.partition().render());
                check_rmc(&a);
            }
        }
    }
}

#[test]
fn every_enumerated_rmc_is_sound() {
    for seed in 0..40 {
        let inst = generate_random(5, 3, 4, seed).unwrap();
        let h = inst.to_hypergraph().hypergraph;
        let all = enumerate_rmcs(&h, 100_000).unwrap();
        let mut renders: Vec<String> = all.iter().map(|r| r.partition().render()).collect();
        renders.sort();
        renders.dedup();
        assert_eq!(renders.len(), all.len(), "duplicate RMCs for seed {seed}");
        all.iter().for_each(check_rmc);
    }
}

#[test]
fn min_size_matches_enumeration() {
    for seed in 0..15 {
        let inst = generate_random(5, 3, 4, seed).unwrap();
        let h = inst.to_hypergraph().hypergraph;
        let best = enumerate_rmcs(&h, 100_000).unwrap().iter().map(|r| r.size()).min().unwrap();
        let found = min_size_rmc(&h, DEFAULT_SEARCH_BUDGET).unwrap();
        assert!(found.optimal);
        assert_eq!(found.rmc.size(), best, "seed {seed}");
    }
}

#[test]
fn single_edges_need_rank_minus_two_artificials() {
    for k in 2..=5u32 {
        let h = Hypergraph::new(k as usize, [VertexSet::new(1..=k)]).unwrap();
        assert_eq!(min_size_rmc(&h, DEFAULT_SEARCH_BUDGET).unwrap().rmc.size(), k as usize - 2);
    }
}
