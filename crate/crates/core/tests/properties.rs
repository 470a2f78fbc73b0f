use proptest::prelude::*;

use relcent::centrality::{compute, ComputeOptions, Metric, Weighting};
use relcent::oracle::{brute_shortest_paths, OracleLimits};
use relcent::paths::{sssp, DEFAULT_PATH_CAP};
use relcent::{is_tied, EdgeRecord, Graph, RelevanceFunction, RelevanceVector};

/// Small graph as (vertex count, edges with optional integer weights).
fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, any::<bool>()).prop_flat_map(|(n, weighted)| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let m = pairs.len();
        (
            Just(n),
            Just(pairs),
            proptest::collection::vec(any::<bool>(), m),
            proptest::collection::vec(1u8..=3, m),
            Just(weighted),
        )
            .prop_map(|(n, pairs, keep, w, weighted)| {
                let records: Vec<_> = pairs
                    .iter()
                    .zip(&keep)
                    .zip(&w)
                    .filter(|((_, &k), _)| k)
                    .map(|((&(u, v), _), &w)| match weighted {
                        true => EdgeRecord::weighted(u.to_string(), v.to_string(), f64::from(w)),
                        false => EdgeRecord::new(u.to_string(), v.to_string()),
                    })
                    .collect();
                Graph::from_parts((0..n).map(|i| i.to_string()), &records).unwrap()
            })
    })
}

fn with_relevance(max_n: usize) -> impl Strategy<Value = (Graph, RelevanceVector)> {
    graph_strategy(max_n).prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), proptest::collection::vec(1.0f64..10.0, n))
            .prop_map(|(g, r)| (g, RelevanceVector::new(r).unwrap()))
    })
}

fn values(g: &Graph, m: Metric, r: &RelevanceVector, f: &RelevanceFunction) -> Vec<f64> {
    compute(g, m, Weighting::relevance(r, f), &ComputeOptions::default())
        .unwrap()
        .values
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * 1f64.max(a.abs()).max(b.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn sigma_and_distance_recurrences(g in graph_strategy(10)) {
        for s in 0..g.vertex_count() {
            let dag = sssp(&g, s).unwrap();
            prop_assert_eq!(dag.sigma[s], 1);
            for &v in &dag.order[1..] {
                let mut total = 0;
                for p in &dag.preds[v] {
                    let w = g.edge(p.edge).weight;
                    prop_assert!(is_tied(dag.dist[p.vertex] + w, dag.dist[v]));
                    total += dag.sigma[p.vertex];
                }
                prop_assert_eq!(total, dag.sigma[v]);
            }
            // no edge shortcuts a settled distance
            for e in g.edges() {
                for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                    if dag.is_reachable(a) {
                        prop_assert!(dag.dist[b] <= dag.dist[a] + e.weight + 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_matches_brute_force(g in graph_strategy(8)) {
        let limits = OracleLimits::default();
        for s in 0..g.vertex_count() {
            let dag = sssp(&g, s).unwrap();
            for t in 0..g.vertex_count() {
                let (d, brute) = brute_shortest_paths(&g, s, t, &limits).unwrap();
                if d.is_infinite() {
                    prop_assert!(dag.dist[t].is_infinite());
                    prop_assert!(dag.enumerate(t, DEFAULT_PATH_CAP).is_err());
                    continue;
                }
                let paths = dag.enumerate(t, DEFAULT_PATH_CAP).unwrap();
                prop_assert_eq!(paths.len() as u64, dag.sigma[t]);
                prop_assert_eq!(&paths, &brute);
                prop_assert!(is_tied(d, dag.dist[t]));
            }
        }
    }

    #[test]
    fn pendant_vertices_have_zero_betweenness((g, r) in with_relevance(10)) {
        for f in RelevanceFunction::BUILT_IN {
            let b = values(&g, Metric::VertexBetweenness, &r, &f);
            for (v, &x) in b.iter().enumerate() {
                if g.degree(v) <= 1 {
                    prop_assert_eq!(x, 0.0);
                }
            }
        }
    }

    #[test]
    fn edge_mass_is_weighted_hop_count((g, r) in with_relevance(9)) {
        // unweighted: every shortest s-t path has dist(s,t) edges and
        // dist(s,t) - 1 interior vertices
        prop_assume!(!g.is_weighted());
        for f in RelevanceFunction::PAIRWISE_BUILT_IN {
            let mut edge_mass = 0.0;
            let mut vertex_mass = 0.0;
            for s in 0..g.vertex_count() {
                let dag = sssp(&g, s).unwrap();
                for &t in &dag.order[1..] {
                    let w = f.eval_pair(s, t, &r).unwrap();
                    edge_mass += w * dag.dist[t];
                    vertex_mass += w * (dag.dist[t] - 1.0);
                }
            }
            let eb: f64 = values(&g, Metric::EdgeBetweenness, &r, &f).iter().sum();
            let b: f64 = values(&g, Metric::VertexBetweenness, &r, &f).iter().sum();
            prop_assert!(close(eb, edge_mass), "{} vs {}", eb, edge_mass);
            prop_assert!(close(b, vertex_mass), "{} vs {}", b, vertex_mass);
        }
    }

    #[test]
    fn source_only_equals_mean_for_betweenness((g, r) in with_relevance(10)) {
        // σ_st(x) = σ_ts(x), so summing R_s over ordered pairs equals
        // summing (R_s + R_t) / 2
        for m in [Metric::VertexBetweenness, Metric::EdgeBetweenness] {
            let a = values(&g, m, &r, &RelevanceFunction::SourceOnly);
            let b = values(&g, m, &r, &RelevanceFunction::Mean);
            for (x, y) in a.iter().zip(&b) {
                prop_assert!(close(*x, *y));
            }
        }
    }

    #[test]
    fn raising_one_relevance_never_lowers_a_metric(
        (g, r) in with_relevance(10),
        pick in any::<prop::sample::Index>(),
        bump in 0.1f64..5.0,
    ) {
        let v = pick.index(g.vertex_count());
        let mut raised = r.as_slice().to_vec();
        raised[v] += bump;
        let raised = RelevanceVector::new(raised).unwrap();
        for f in RelevanceFunction::BUILT_IN {
            for m in [Metric::Harmonic, Metric::VertexBetweenness, Metric::EdgeBetweenness] {
                let lo = values(&g, m, &r, &f);
                let hi = values(&g, m, &raised, &f);
                for (a, b) in lo.iter().zip(&hi) {
                    prop_assert!(*b >= *a - 1e-9 * a.abs().max(1.0), "{} f={}: {} -> {}", m, f, a, b);
                }
            }
        }
    }

    #[test]
    fn relabelling_permutes_results((g, r) in with_relevance(9), rot in 1usize..8) {
        // rename vertex i to (i + rot) mod n and reinsert; values follow labels
        let n = g.vertex_count();
        let name = |i: usize| format!("v{}", (i + rot) % n);
        let records: Vec<_> = g
            .edges()
            .iter()
            .rev()
            .map(|e| EdgeRecord::weighted(name(e.v), name(e.u), e.weight))
            .collect();
        let h = Graph::from_parts((0..n).rev().map(name), &records).unwrap();
        let hr: Vec<f64> = (0..n)
            .map(|j| {
                let orig = (0..n).find(|&i| name(i) == h.label(j)).unwrap();
                r.get(orig)
            })
            .collect();
        let hr = RelevanceVector::new(hr).unwrap();
        for f in RelevanceFunction::BUILT_IN {
            let a = values(&g, Metric::VertexBetweenness, &r, &f);
            let b = values(&h, Metric::VertexBetweenness, &hr, &f);
            for (i, &x) in a.iter().enumerate() {
                let j = h.index_of(&name(i)).unwrap();
                prop_assert!(close(x, b[j]));
            }
        }
    }
}
