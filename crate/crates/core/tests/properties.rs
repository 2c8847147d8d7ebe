//! Randomized property tests over arbitrary sparse graphs.

use proptest::prelude::*;
use sparsedom::graph::{Graph, VertexSet};
use sparsedom::orderings::{admissibility_ordering, weak_reach};
use sparsedom::projections::{audit_closure, r_closure, short_paths_closure, ClosureOutcome, ShortPathsOutcome};

fn arb_graph(max_n: usize, max_m: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 0..n), 0..=max_m).prop_map(move |pairs| {
            let mut g = Graph::new(n);
            for (u, v) in pairs {
                if u != v && !g.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
            g
        })
    })
}

fn floyd_warshall(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.n();
    let mut d = vec![vec![None; n]; n];
    for v in 0..n {
        d[v][v] = Some(0);
        for &w in g.neighbors(v) {
            d[v][w] = Some(1);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_list_round_trip(g in arb_graph(30, 60)) {
        let text = g.to_edge_list();
        let g2 = Graph::load_edge_list(&text).unwrap();
        prop_assert_eq!(g.n(), g2.n());
        prop_assert_eq!(g.edges(), g2.edges());
    }

    #[test]
    fn bfs_matches_floyd_warshall(g in arb_graph(50, 120)) {
        let fw = floyd_warshall(&g);
        let cap = g.n();
        for s in 0..g.n() {
            let dm = g.bfs_within(s, cap).unwrap();
            for v in 0..g.n() {
                prop_assert_eq!(dm.get(v), fw[s][v], "source {} target {}", s, v);
            }
        }
    }

    #[test]
    fn weak_reach_monotone_and_bounded(g in arb_graph(25, 50)) {
        let sigma = admissibility_ordering(&g, 2);
        let r1 = weak_reach(&g, &sigma, 1);
        let r2 = weak_reach(&g, &sigma, 2);
        for v in 0..g.n() {
            prop_assert!(r1.per_vertex[v].is_subset_of(&r2.per_vertex[v]));
        }
        prop_assert!(r2.c_bound <= g.n());
    }

    #[test]
    fn closure_audit_always_passes(
        g in arb_graph(25, 50),
        seeds in proptest::collection::vec(0usize..25, 1..6),
        r in 1usize..=3,
        xi in 2usize..=8,
    ) {
        let x = VertexSet::from_iter(g.n(), seeds.into_iter().filter(|&v| v < g.n()));
        if x.is_empty() {
            return Ok(());
        }
        match r_closure(&g, &x, r, xi) {
            ClosureOutcome::Closure(c) => {
                let audit = audit_closure(&g, &x, &c.cl, r, xi);
                prop_assert!(audit.passed(), "audit failed: {:?}", audit);
            }
            ClosureOutcome::Density(w) => {
                prop_assert!(w.y_edges >= w.rounds_used * xi);
                prop_assert!(w.certified_density() >= w.threshold());
            }
        }
    }

    #[test]
    fn short_paths_preserve_distances(
        g in arb_graph(20, 40),
        seeds in proptest::collection::vec(0usize..20, 1..5),
        r in 1usize..=3,
    ) {
        let x = VertexSet::from_iter(g.n(), seeds.into_iter().filter(|&v| v < g.n()));
        if x.is_empty() {
            return Ok(());
        }
        if let ShortPathsOutcome::Extended(w) = short_paths_closure(&g, &x, r, 4) {
            let (h, map) = g.induced_subgraph(&w);
            for u in x.iter() {
                for v in x.iter() {
                    if v <= u {
                        continue;
                    }
                    let d = g.dist(u, v, r);
                    if d.is_some() {
                        let hu = map.to_new(u).unwrap();
                        let hv = map.to_new(v).unwrap();
                        prop_assert_eq!(h.dist(hu, hv, r), d, "pair {} {}", u, v);
                    }
                }
            }
        }
    }
}
