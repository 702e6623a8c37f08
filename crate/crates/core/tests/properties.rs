use matroid_iso::corpus::shuffled;
use matroid_iso::decompose::{biconnected_components, excised_surgery, recompose, triconnected_decompose};
use matroid_iso::field::PrimeField;
use matroid_iso::gi::ColoredGraph;
use matroid_iso::gmi::{gmi_test, gmi_test_with, GmiOptions, GmiStats};
use matroid_iso::graph::{
    is_matroid_automorphism, is_matroid_isomorphism, random_2iso_pair, replay, Multigraph, WhitneyOp,
};
use matroid_iso::linear::{ColumnColoring, PrimeFieldMatrix};
use matroid_iso::matroid::{brute_force_iso, IsoWitness, ListMatroid};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn multigraph(max_n: usize, max_m: usize) -> impl Strategy<Value = Multigraph> {
    (2..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 1..n), 0..=max_m).prop_map(move |pairs| {
            let edges = pairs.into_iter().map(|(u, d)| (u, (u + d) % n)).collect();
            Multigraph::new(n, edges).unwrap()
        })
    })
}

fn connected(max_n: usize, max_m: usize) -> impl Strategy<Value = Multigraph> {
    multigraph(max_n, max_m).prop_filter("connected", |g| g.edge_count() > 0 && g.is_connected())
}

fn colored(max_n: usize, max_m: usize) -> impl Strategy<Value = Multigraph> {
    multigraph(max_n, max_m).prop_flat_map(|g| {
        let m = g.edge_count();
        prop::collection::vec(1u32..4, m).prop_map(move |c| g.clone().with_colors(c).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn graph_text_round_trips(g in colored(8, 12)) {
        prop_assert_eq!(Multigraph::parse(&g.to_string()).unwrap(), g.clone());
        let plain = g.uncolored();
        prop_assert_eq!(Multigraph::parse(&plain.to_string()).unwrap(), plain);
    }

    #[test]
    fn colored_graph_text_round_trips(g in multigraph(7, 10), seed in any::<u64>()) {
        let colors: Vec<u32> = (0..g.vertex_count()).map(|v| ((seed >> (v % 60)) & 3) as u32).collect();
        let c = ColoredGraph::new(g, colors).unwrap();
        prop_assert_eq!(ColoredGraph::parse(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn matrix_text_round_trips(rows in 1usize..4, cols in 1usize..6, p in prop::sample::select(vec![2u64, 3, 5, 7, 13]), seed in any::<u64>()) {
        let f = PrimeField::new(p).unwrap();
        let mut a = PrimeFieldMatrix::zeros(f, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                a.set(r, c, seed.rotate_left((r * cols + c) as u32) % p);
            }
        }
        prop_assert_eq!(PrimeFieldMatrix::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn permutation_and_coloring_text_round_trip(p in Just((0..9).collect::<Vec<usize>>()).prop_shuffle(), labels in prop::collection::vec(0u32..4, 0..9)) {
        let w = IsoWitness::new(p).unwrap();
        prop_assert_eq!(IsoWitness::parse(&w.to_string()).unwrap(), w);
        let c = ColumnColoring::new(labels);
        prop_assert_eq!(ColumnColoring::parse(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn list_matroid_text_round_trips(g in connected(5, 6)) {
        let l = ListMatroid::from_oracle(&g).unwrap();
        prop_assert_eq!(ListMatroid::parse(&l.to_string()).unwrap(), l);
    }

    #[test]
    fn whitney_logs_replay(g in connected(8, 12), ops in 1usize..6, seed in any::<u64>()) {
        let (h, log) = random_2iso_pair(&g, ops, seed);
        let text: String = log.iter().map(|op| format!("{op}\n")).collect();
        let parsed: Vec<WhitneyOp> = text.lines().map(|l| l.parse().unwrap()).collect();
        prop_assert_eq!(&parsed, &log);
        prop_assert_eq!(replay(&g, &parsed).unwrap(), h.clone());
        prop_assert!(is_matroid_isomorphism(&g, &h, &IsoWitness::identity(g.edge_count())).unwrap());
    }

    #[test]
    fn decomposition_round_trips(g in connected(9, 16)) {
        for block in biconnected_components(&g).blocks.into_iter().filter(|b| b.len() > 1) {
            let x = g.edge_subgraph(&block);
            let d = triconnected_decompose(&x).unwrap();
            prop_assert!(d.validate().is_ok());
            prop_assert_eq!(recompose(&d).unwrap(), x.clone());
            let (xp, t) = excised_surgery(&x, &d).unwrap();
            prop_assert!(t.validate().is_ok());
            prop_assert_eq!(recompose(&t).unwrap(), xp.clone());
            prop_assert_eq!(&xp.edges()[..x.edge_count()], x.edges());
        }
    }

    #[test]
    fn relabelled_two_isomorphic_copies_are_accepted(
        g in connected(9, 14),
        ops in 0usize..5,
        seed in any::<u64>(),
    ) {
        let (h, _) = random_2iso_pair(&g, ops, seed);
        let h = shuffled(&mut ChaCha8Rng::seed_from_u64(seed), &h);
        let mut stats = GmiStats::default();
        let w = gmi_test_with(&g, &h, GmiOptions::default(), &mut stats).unwrap();
        prop_assert!(w.is_some());
        prop_assert!(is_matroid_isomorphism(&g, &h, &w.unwrap()).unwrap());
        prop_assert!(stats.monotone());
        let strict = gmi_test_with(&g, &h, GmiOptions { strict: true }, &mut stats).unwrap();
        prop_assert!(strict.is_some());
    }

    #[test]
    fn gmi_agrees_with_brute_force_both_ways(g in connected(6, 7), h in connected(6, 7)) {
        prop_assume!(g.edge_count() == h.edge_count());
        let expected = brute_force_iso(&g, &h).unwrap().is_some();
        prop_assert_eq!(gmi_test(&g, &h).unwrap().is_some(), expected);
        prop_assert_eq!(gmi_test(&h, &g).unwrap().is_some(), expected);
    }

    #[test]
    fn self_witnesses_are_automorphisms(g in connected(8, 12), ops in 0usize..4, seed in any::<u64>()) {
        let (h, _) = random_2iso_pair(&g, ops, seed);
        let a = gmi_test(&g, &h).unwrap().unwrap();
        let b = gmi_test(&h, &g).unwrap().unwrap();
        prop_assert!(is_matroid_automorphism(&g, &a.then(&b)).unwrap());
    }
}
