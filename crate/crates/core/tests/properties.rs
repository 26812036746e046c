use proptest::prelude::*;
use turanlab::coloring::{chromatic_number, color_class_deletions, is_colorable};
use turanlab::enumerate::{enumerate_all, EnumerateOptions};
use turanlab::graph::from_graph6;
use turanlab::subgraph::{contains_any, contains_subgraph, longest_path};
use turanlab::{Graph, GraphFamily, Mode, TuranEngine};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        g.add_edge(u, v);
                    }
                    i += 1;
                }
            }
            g
        })
    })
}

fn graph_and_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

const FAMILIES: [&str; 6] = ["P4", "P5", "K3", "P6,K3", "C4", "M3,S3"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_ignores_labels((g, perm) in graph_and_perm(14)) {
        let c = g.canonical();
        prop_assert_eq!(&c, &g.relabel(&perm).canonical());
        prop_assert_eq!(&c, &c.canonical());
        prop_assert_eq!(c.edge_count(), g.edge_count());
    }

    #[test]
    fn graph6_round_trips(g in graph(20)) {
        prop_assert_eq!(from_graph6(&g.to_graph6()).unwrap(), g);
    }

    #[test]
    fn containment_survives_relabeling_and_supergraphs((g, perm) in graph_and_perm(8), extra in graph(8)) {
        let pattern = turanlab::build("P4").unwrap();
        let found = contains_subgraph(&g, &pattern);
        prop_assert_eq!(found, contains_subgraph(&g.relabel(&perm), &pattern));
        let mut bigger = g.clone();
        for (u, v) in extra.edges() {
            if u < g.order() && v < g.order() {
                bigger.add_edge(u, v);
            }
        }
        prop_assert!(!found || contains_subgraph(&bigger, &pattern));
    }

    #[test]
    fn longest_path_is_a_real_path(g in graph(10)) {
        prop_assume!(g.order() > 0);
        let (len, path) = longest_path(&g).unwrap();
        prop_assert_eq!(path.len(), len);
        for w in path.windows(2) {
            prop_assert!(g.has_edge(w[0], w[1]));
        }
        let mut sorted = path.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), len);
        let longer = turanlab::build(&format!("P{}", len + 1)).unwrap();
        prop_assert!(len == g.order() || !contains_subgraph(&g, &longer));
    }

    #[test]
    fn chromatic_number_is_tight(g in graph(9)) {
        prop_assume!(g.order() > 0);
        let chi = chromatic_number(&g).unwrap();
        prop_assert!(is_colorable(&g, chi));
        prop_assert!(chi == 1 || !is_colorable(&g, chi - 1));
    }

    #[test]
    fn class_deletions_drop_the_chromatic_number(g in graph(7)) {
        prop_assume!(g.edge_count() > 0);
        let chi = chromatic_number(&g).unwrap();
        let fam = color_class_deletions(&g).unwrap();
        for m in fam.members() {
            prop_assert!(contains_subgraph(&g, m));
            prop_assert!(m.order() == 0 || is_colorable(m, chi - 1));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn turan_catalog_is_sound(i in 0..FAMILIES.len(), n in 1usize..=8, connected in any::<bool>()) {
        let fam = GraphFamily::parse(FAMILIES[i]).unwrap();
        let mode = if connected { Mode::Connected } else { Mode::All };
        let Ok(r) = TuranEngine::new().turan(n, &fam, mode) else { return Ok(()); };
        prop_assert!(!r.extremal.is_empty());
        for g in &r.extremal {
            prop_assert_eq!(g.order(), n);
            prop_assert_eq!(g.edge_count(), r.value);
            prop_assert!(!contains_any(g, &fam));
            prop_assert!(!connected || g.is_connected().unwrap());
            prop_assert_eq!(g, &g.canonical());
        }
        // no admissible graph beats the value, and every admissible graph at the value is listed
        let opts = EnumerateOptions { connected_only: connected, ..Default::default() };
        let all = enumerate_all(n, &fam, &opts).unwrap();
        prop_assert_eq!(all.iter().map(Graph::edge_count).max(), Some(r.value));
        let best = all.iter().filter(|g| g.edge_count() == r.value).count();
        prop_assert_eq!(best, r.extremal.len());
    }

    #[test]
    fn ex_is_monotone_in_n(i in 0..FAMILIES.len(), n in 1usize..=9) {
        let fam = GraphFamily::parse(FAMILIES[i]).unwrap();
        let e = TuranEngine::new();
        prop_assert!(e.ex(n, &fam).unwrap() <= e.ex(n + 1, &fam).unwrap());
    }
}
