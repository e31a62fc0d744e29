use std::collections::BTreeMap;

use multiflower::cuts::{
    brute_force_separation, enumerate_extended_flower, enumerate_flower, pruned_neighbors, separate_extended_flower,
    standard_linearization, validity_check, Meta, DEFAULT_CANDIDATE_CAP,
};
use multiflower::rmc::{build_rmc, rmc_projection_system};
use multiflower::{generate_random, FractionalPoint, Hypergraph, LpModel, PolynomialInstance, Strategy, VarRef};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn std_optimum(h: &Hypergraph, rng: &mut ChaCha8Rng) -> FractionalPoint {
    let mut m = LpModel::new(h.variables());
    m.extend(standard_linearization(h)).unwrap();
    m.set_objective(h.variables().into_iter().map(|v| (v, rng.gen_range(-4..=4) as f64)).collect()).unwrap();
    FractionalPoint::new(m.solve().point.into_iter().map(|(v, x)| (v, x.clamp(0.0, 1.0))).collect())
}

fn uniform(h: &Hypergraph, rng: &mut ChaCha8Rng) -> FractionalPoint {
    FractionalPoint::new(h.variables().into_iter().map(|v| (v, rng.gen_range(0.0..=1.0))).collect())
}

#[test]
fn separation_agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut found = 0;
    for seed in 0..100 {
        let n = rng.gen_range(4..=8);
        let Ok(inst) = generate_random(n, rng.gen_range(3..=6), 4, seed) else { continue };
        let h = inst.to_hypergraph().hypergraph;
        let p = if seed % 2 == 0 { std_optimum(&h, &mut rng) } else { uniform(&h, &mut rng) };
        let fast = separate_extended_flower(&h, &p, 1e-9).unwrap();
        let slow = brute_force_separation(&h, &p, 1e-9).unwrap();
        assert_eq!(fast.is_empty(), slow.is_empty(), "seed {seed}");
        if let (Some(a), Some(b)) = (fast.first(), slow.first()) {
            assert!((a.violation - b.violation).abs() < 1e-9, "seed {seed}: {} vs {}", a.violation, b.violation);
            found += 1;
        }
        for c in &fast {
            let Some(Meta::Flower { center, neighbors }) = &c.inequality.meta else { panic!("missing meta") };
            assert!(neighbors.len() <= h.rank() / 2);
            let pruned = pruned_neighbors(&h, center, &p).unwrap();
            assert!(pruned.len() < (1 << h.rank()) - h.rank());
        }
    }
    assert!(found > 10, "only {found} violated pairs");
}

#[test]
fn generated_cuts_are_valid() {
    for seed in 0..30 {
        let inst = generate_random(8, 6, 4, seed).unwrap();
        let h = inst.to_hypergraph().hypergraph;
        let mut cuts = enumerate_flower(&h, DEFAULT_CANDIDATE_CAP).unwrap();
        cuts.extend(enumerate_extended_flower(&h, DEFAULT_CANDIDATE_CAP).unwrap());
        for s in [Strategy::Leftmost, Strategy::Balanced] {
            cuts.extend(rmc_projection_system(&build_rmc(&h, &s).unwrap()).unwrap());
        }
        for c in &cuts {
            assert!(validity_check(&h, c).unwrap(), "seed {seed}: {c} is not valid");
        }
    }
}

#[test]
fn integral_points_are_never_separated() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for seed in 0..30 {
        let inst = generate_random(7, 5, 4, seed).unwrap();
        let h = inst.to_hypergraph().hypergraph;
        let x: Vec<bool> = (0..h.n()).map(|_| rng.gen_bool(0.6)).collect();
        let p = FractionalPoint::from_binary(&h, &x);
        assert!(separate_extended_flower(&h, &p, 1e-9).unwrap().is_empty());
    }
}

#[test]
fn example4_point_is_cut_only_by_the_triple() {
    let dir = format!("{}/../../data", env!("CARGO_MANIFEST_DIR"));
    let inst = PolynomialInstance::parse(&std::fs::read_to_string(format!("{dir}/example4.json")).unwrap()).unwrap();
    let h = inst.to_hypergraph().hypergraph;
    let p = FractionalPoint::parse(&std::fs::read_to_string(format!("{dir}/example4_point.json")).unwrap()).unwrap();
    let values: &BTreeMap<VarRef, f64> = p.values();
    for row in standard_linearization(&h).iter().chain(&enumerate_flower(&h, DEFAULT_CANDIDATE_CAP).unwrap()) {
        assert!(row.violation(values).unwrap() <= 1e-12, "{row}");
    }
    let cuts = separate_extended_flower(&h, &p, 1e-9).unwrap();
    assert_eq!(cuts.len(), 1);
    assert_eq!(cuts[0].inequality.to_string(), "z_{1,2,3,4} + z_{1,7,8,9} + z_{4,5,6,7} - z_{1,2,3,4,5,6,7,8,9} <= 2");
    assert!((cuts[0].violation - 0.25).abs() < 1e-12);
}
