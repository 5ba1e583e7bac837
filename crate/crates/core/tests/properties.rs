use proptest::prelude::*;
use spinweb::graph::{clebsch, paley, petersen};
use spinweb::oracle::{self, WeightMatrix};
use spinweb::{classify_symmetric, fixtures, full_report, srg_params, three_point_params, Graph};

fn from_mask(n: usize, mask: u64) -> Graph {
    let mut k = 0;
    Graph::from_fn(n, |_, _| {
        k += 1;
        mask >> (k - 1) & 1 == 1
    })
    .unwrap()
}

fn regular_graphs(max_n: usize) -> impl Iterator<Item = Graph> {
    (1..=max_n).flat_map(|n| {
        (0..1u64 << (n * (n - 1) / 2)).filter_map(move |m| {
            let g = from_mask(n, m);
            (0..n).all(|v| g.degree(v) == g.degree(0)).then_some(g)
        })
    })
}

#[test]
fn verdict_and_dim_are_complement_invariant() {
    for g in regular_graphs(7) {
        let c = g.complement();
        assert_eq!(
            classify_symmetric(&g).is_spin_model,
            classify_symmetric(&c).is_spin_model,
            "{}",
            g.to_graph6()
        );
        if g.edge_count() > 0 && c.edge_count() > 0 {
            let d = oracle::dim_v3(&WeightMatrix::from_graph(&g)).unwrap();
            assert_eq!(d, oracle::dim_v3(&WeightMatrix::from_graph(&c)).unwrap(), "{}", g.to_graph6());
        }
    }
}

#[test]
fn relation_3a_holds_exactly_on_3_point_regular_srgs() {
    let dir = std::path::PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures"));
    let named = [paley(9).unwrap(), clebsch(), petersen(), fixtures::load(&dir, "schlafli").unwrap()];
    for g in regular_graphs(7).chain(named) {
        if srg_params(&g).is_none() {
            continue;
        }
        let report = full_report(&WeightMatrix::from_graph(&g));
        assert_eq!(report.r3a.holds(), three_point_params(&g).is_some(), "{}", g.to_graph6());
    }
}

fn graph_and_perm() -> impl Strategy<Value = (Graph, Vec<usize>)> {
    (2usize..=9).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (
            proptest::collection::vec(any::<bool>(), pairs),
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
        )
            .prop_map(move |(bits, perm)| {
                let mut it = bits.into_iter();
                (Graph::from_fn(n, |_, _| it.next().unwrap()).unwrap(), perm)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn relabeling_preserves_verdict_and_relations((g, perm) in graph_and_perm()) {
        let h = g.permuted(&perm);
        prop_assert_eq!(classify_symmetric(&g).case, classify_symmetric(&h).case);
        let (a, b) = (full_report(&WeightMatrix::from_graph(&g)), full_report(&WeightMatrix::from_graph(&h)));
        prop_assert_eq!(a.flags(), b.flags());
        prop_assert_eq!(a.dim_v3, b.dim_v3);
    }

    #[test]
    fn oracle_matches_classifier_on_random_graphs((g, _) in graph_and_perm()) {
        let w = WeightMatrix::from_graph(&g);
        prop_assert_eq!(classify_symmetric(&g).is_spin_model, full_report(&w).is_spin_model());
        prop_assert_eq!(oracle::is_spin_model(&w), full_report(&w).is_spin_model());
    }
}
