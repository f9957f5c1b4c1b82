use polconv_core::graph::{
    build_graph_state, local_clifford_max_fidelity, run_scenario, GraphSpec, Scenario, STEP_THRESHOLD,
};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect()
}

proptest! {
    #[test]
    fn edge_order_does_not_matter(
        edges in subsequence(all_pairs(6), 0..=15).prop_shuffle(),
        flip in proptest::collection::vec(any::<bool>(), 15),
    ) {
        let mut sorted = edges.clone();
        sorted.sort();
        let reordered: Vec<_> = edges
            .iter()
            .zip(&flip)
            .map(|(&(a, b), &f)| if f { (b, a) } else { (a, b) })
            .collect();
        let a = build_graph_state(&GraphSpec::new(6, &sorted).unwrap()).unwrap();
        let b = build_graph_state(&GraphSpec::new(6, &reordered).unwrap()).unwrap();
        prop_assert_eq!(a.amplitudes(), b.amplitudes());
    }

    #[test]
    fn graph_states_are_normalized(edges in subsequence(all_pairs(5), 0..=10)) {
        let s = build_graph_state(&GraphSpec::new(5, &edges).unwrap()).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn line_and_star_are_not_local_clifford_equivalent() {
    let line = build_graph_state(&GraphSpec::path(4).unwrap()).unwrap();
    for center in 1..=4 {
        let star = build_graph_state(&GraphSpec::star(4, center).unwrap()).unwrap();
        let (f, _) = local_clifford_max_fidelity(&line, &star).unwrap();
        assert!(f < 1.0 - 1e-6, "center {center}: {f}");
    }
}

#[test]
fn scenarios_replay() {
    for (scenario, p) in Scenario::all().into_iter().zip([0.5, 1.0, 0.25, 0.3]) {
        let r = run_scenario(scenario).unwrap();
        for s in &r.steps {
            assert!(s.fidelity >= STEP_THRESHOLD, "{} {}: {}", scenario.name(), s.label, s.fidelity);
        }
        assert!((r.success_probability - p).abs() < 1e-12);
    }
}
