use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zforce::graph::{named_graph, Graph};
use zforce::solver::{
    brute_force_oracle, verify_witness, zero_forcing_number, zero_forcing_sets_of_size, SolveError,
    SolveOutcome, SolverConfig,
};
use zforce::{is_zero_forcing_set, VertexSet};

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::from_edges(n, edges).unwrap()
}

fn exact(g: &Graph, workers: usize) -> zforce::solver::SolveResult {
    zero_forcing_number(g, &SolverConfig::with_workers(workers))
        .unwrap()
        .into_exact()
        .unwrap()
}

#[test]
fn solver_matches_oracle_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut connected = 0;
    for round in 0..600 {
        let n = rng.gen_range(1..=9);
        let p = [0.2, 0.35, 0.5, 0.7][round % 4];
        let g = random_graph(&mut rng, n, p);
        let fast = exact(&g, 1);
        let slow = brute_force_oracle(&g).unwrap();
        assert_eq!(
            fast.z,
            slow.z,
            "n={n} edges={:?}",
            g.edges().collect::<Vec<_>>()
        );
        assert!(verify_witness(&g, &fast));
        if g.is_connected() {
            connected += 1;
            // both return the lexicographically least minimum set
            assert_eq!(fast.witness, slow.witness);
        }
    }
    assert!(connected > 200);
}

#[test]
fn worker_count_does_not_change_answer() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..150 {
        let n = rng.gen_range(2..=12);
        let g = random_graph(&mut rng, n, 0.4);
        let one = exact(&g, 1);
        let four = exact(&g, 4);
        assert_eq!((one.z, &one.witness), (four.z, &four.witness));
    }
    let petersen = named_graph("petersen").unwrap();
    assert_eq!(exact(&petersen, 1).witness, exact(&petersen, 4).witness);
}

#[test]
fn minimum_set_enumeration_agrees_with_subsets() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..60 {
        let n = rng.gen_range(1..=8);
        let g = random_graph(&mut rng, n, 0.45);
        let z = exact(&g, 1).z;
        let listed = zero_forcing_sets_of_size(&g, z);
        let expected: Vec<VertexSet> = (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == z)
            .map(|m| VertexSet::from_vertices(n, (0..n).filter(|&v| m >> v & 1 == 1)).unwrap())
            .filter(|s| is_zero_forcing_set(&g, s))
            .collect();
        let mut sorted = expected.clone();
        sorted.sort_by(|a, b| a.lex_cmp(b));
        assert_eq!(listed, sorted);
        assert!(zero_forcing_sets_of_size(&g, z.saturating_sub(1)).is_empty() || z == 0);
    }
}

#[test]
fn budget_gives_valid_interval() {
    let g = named_graph("heawood").unwrap();
    let cfg = SolverConfig {
        node_budget: Some(3),
        ..Default::default()
    };
    match zero_forcing_number(&g, &cfg).unwrap() {
        SolveOutcome::Budget(b) => {
            assert!(b.lower <= 6 && 6 <= b.upper);
            assert!(is_zero_forcing_set(&g, &b.upper_witness));
            assert_eq!(b.upper_witness.len(), b.upper);
        }
        SolveOutcome::Exact(r) => assert_eq!(r.z, 6),
    }
}

#[test]
fn supplied_lower_bound_is_checked() {
    let g = named_graph("cycle(9)").unwrap();
    let tight = SolverConfig {
        start_lower_bound: Some(2),
        ..Default::default()
    };
    assert_eq!(zero_forcing_number(&g, &tight).unwrap().bounds(), (2, 2));
    let too_high = SolverConfig {
        start_lower_bound: Some(4),
        ..Default::default()
    };
    assert!(matches!(
        zero_forcing_number(&g, &too_high),
        Err(SolveError::LowerBoundTooHigh { bound: 4, .. })
    ));
}

#[test]
fn unseeded_search_agrees_with_seeded() {
    let unseeded = SolverConfig {
        use_structural_bound: false,
        ..Default::default()
    };
    for name in [
        "petersen",
        "heawood",
        "cycle(8)",
        "complete(6)",
        "complete_bipartite(4,4)",
        "hypercube(3)",
    ] {
        let g = named_graph(name).unwrap();
        let seeded = exact(&g, 1);
        let plain = zero_forcing_number(&g, &unseeded)
            .unwrap()
            .into_exact()
            .unwrap();
        assert_eq!(
            (plain.z, &plain.witness),
            (seeded.z, &seeded.witness),
            "{name}"
        );
        assert_eq!(plain.lower_bound_used, 1);
    }
}
