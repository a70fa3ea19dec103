use cfon::engine::{color_graph, color_graph_traced, Coloring};
use cfon::generators::{gen_lower_bound, gen_random_cluster_plus, LowerBoundLabels};
use cfon::modulator::{brute_force_dc, exact_dc, greedy_dc, validate_modulator, DEFAULT_K_MAX};
use cfon::oracle::{exact_chi_on_with, verify_cfon};
use cfon::{Graph, VertexSet};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        proptest::sample::subsequence(pairs.clone(), 0..=pairs.len())
            .prop_map(move |edges| Graph::from_edges(n, &edges).unwrap())
    })
}

fn arb_planted() -> impl Strategy<Value = (Graph, VertexSet)> {
    (0usize..=5, 1usize..=6, 1usize..=5, 0.0f64..=1.0, any::<u64>())
        .prop_filter_map("generator rejected parameters", |(x, k, s, p, seed)| {
            gen_random_cluster_plus(x, k, s, p, seed).ok()
        })
}

fn is_cluster_by_components(g: &Graph) -> bool {
    g.components().iter().all(|c| g.is_clique(c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn adjacency_is_symmetric_and_loop_free(g in arb_graph(12)) {
        for u in g.vertices() {
            prop_assert!(!g.has_edge(u, u));
            for &v in g.neighbors(u) {
                prop_assert!(g.has_edge(v, u));
            }
        }
        prop_assert_eq!(g.edges().count(), g.m());
    }

    #[test]
    fn p3_free_iff_cluster(g in arb_graph(9)) {
        prop_assert_eq!(g.find_induced_p3().is_none(), is_cluster_by_components(&g));
        if let Some((a, b, c)) = g.find_induced_p3() {
            prop_assert!(g.has_edge(a, b) && g.has_edge(b, c) && !g.has_edge(a, c));
        }
    }

    #[test]
    fn edge_list_round_trip(g in arb_graph(12)) {
        let back = Graph::parse_edge_list(&g.to_edge_list()).unwrap();
        let mut a: Vec<_> = g.edges().collect();
        let mut b: Vec<_> = back.edges().collect();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn components_partition_vertices(g in arb_graph(12)) {
        let comps = g.components();
        let total: usize = comps.iter().map(|c| c.len()).sum();
        prop_assert_eq!(total, g.n());
        for c in &comps {
            let v = *c.iter().next().unwrap();
            for &u in g.neighbors(v) {
                prop_assert!(c.contains(&u));
            }
        }
    }

    #[test]
    fn modulators_are_valid_and_ordered(g in arb_graph(8)) {
        let exact = exact_dc(&g, DEFAULT_K_MAX).unwrap();
        let brute = brute_force_dc(&g).unwrap();
        let greedy = greedy_dc(&g);
        for m in [&exact, &brute, &greedy] {
            let checked = validate_modulator(&g, &m.x).unwrap();
            prop_assert_eq!(&checked.cliques, &m.cliques);
        }
        prop_assert_eq!(exact.size(), brute.size());
        prop_assert!(greedy.size() >= exact.size());
    }

    #[test]
    fn supersets_of_a_modulator_are_modulators((g, x) in arb_planted(), extra in any::<u64>()) {
        let v = (extra as usize) % g.n();
        let mut bigger = x.clone();
        bigger.insert(v);
        prop_assert!(validate_modulator(&g, &bigger).is_ok());
    }

    #[test]
    fn engine_colors_within_bound((g, x) in arb_planted()) {
        let c = color_graph(&g, Some(&x)).unwrap();
        let report = verify_cfon(&g, &c);
        prop_assert!(report.valid, "failures {:?}", report.failures);
        prop_assert!(report.witness_failures.is_empty());
        prop_assert!(c.palette_size() <= (x.len() + 1).max(3));
        for v in g.vertices() {
            let w = c.witness[v].unwrap();
            prop_assert!(g.has_edge(v, w));
            let same = g.neighbors(v).iter().filter(|&&u| c.color[u] == c.color[w]).count();
            prop_assert_eq!(same, 1);
        }
    }

    #[test]
    fn engine_is_deterministic((g, x) in arb_planted()) {
        let (a, ta) = color_graph_traced(&g, Some(&x)).unwrap();
        let (b, tb) = color_graph_traced(&g, Some(&x)).unwrap();
        prop_assert_eq!(a, b);
        prop_assert_eq!(ta.hits, tb.hits);
    }

    #[test]
    fn coloring_serializations_round_trip((g, x) in arb_planted()) {
        let c = color_graph(&g, Some(&x)).unwrap();
        let json: Coloring = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        prop_assert_eq!(&json, &c);
        let text = Coloring::parse_text(&c.to_text(), g.n()).unwrap();
        prop_assert_eq!(text.color, c.color.clone());
        prop_assert_eq!(text.witness, c.witness);
    }

    #[test]
    fn generator_is_deterministic_and_planted(
        x in 0usize..=6, k in 1usize..=6, s in 1usize..=6, p in 0.0f64..=1.0, seed in any::<u64>()
    ) {
        let a = gen_random_cluster_plus(x, k, s, p, seed);
        let b = gen_random_cluster_plus(x, k, s, p, seed);
        prop_assert_eq!(a.is_ok(), b.is_ok());
        if let (Ok((ga, xa)), Ok((gb, xb))) = (a, b) {
            prop_assert_eq!(ga.to_edge_list(), gb.to_edge_list());
            prop_assert_eq!(&xa, &xb);
            prop_assert_eq!(xa.len(), x);
            prop_assert!(ga.is_connected());
            prop_assert!(ga.isolated_vertices().is_empty());
            let m = validate_modulator(&ga, &xa).unwrap();
            prop_assert!(m.cliques.iter().all(|c| c.len() <= s));
        }
    }

    #[test]
    fn chi_solutions_verify(g in arb_graph(7)) {
        prop_assume!(g.isolated_vertices().is_empty());
        let (k, colors) = exact_chi_on_with(&g, 7, 20).unwrap();
        let mut c = Coloring::uncolored(g.n(), k);
        c.color = colors;
        prop_assert!(verify_cfon(&g, &c).valid);
        prop_assert_eq!(c.palette_size(), k);
        if k > 1 {
            prop_assert!(exact_chi_on_with(&g, k - 1, 20).is_err());
        }
    }
}

#[test]
fn lower_bound_family_invariants() {
    for d in 1..=5 {
        let lb = gen_lower_bound(d).unwrap();
        lb.check_structure().unwrap();
        assert_eq!(lb.graph.n(), d + d * (d - 1) / 2 + ((d + 1) << d));
        assert!(validate_modulator(&lb.graph, &lb.x).is_ok(), "d={d}");
        let labels = lb.labels();
        let back: LowerBoundLabels = serde_json::from_str(&serde_json::to_string(&labels).unwrap()).unwrap();
        assert_eq!(back, labels);
        assert_eq!(gen_lower_bound(d).unwrap().graph.to_edge_list(), lb.graph.to_edge_list());
    }
}
