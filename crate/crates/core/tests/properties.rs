mod common;

use knowtherm::forest::{forest_help, TopicState};
use knowtherm::graph::{build_snapshot, PaperNode, TopicSnapshot};
use knowtherm::heat::{HeatConfig, HeatSystem};
use knowtherm::shrink::shrink;
use knowtherm::synthetic::SyntheticTopic;
use knowtherm::thermo::{t_growth_init, t_growth_update, ThermoConstants};
use knowtherm::{analyze_snapshot, AnalysisConfig};
use proptest::prelude::*;

fn shuffled(topic: &TopicSnapshot, order: &[usize]) -> TopicSnapshot {
    let mut pairs = topic.citation_pairs();
    let n = pairs.len();
    for (i, &k) in order.iter().enumerate().take(n) {
        pairs.swap(i % n, k % n);
    }
    let mut nodes: Vec<PaperNode> = topic.nodes().to_vec();
    nodes.reverse();
    TopicSnapshot::new(nodes, pairs, None).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn forest_conserves_energy(
        topics in prop::collection::vec((1.0f64..1e4, 0.01f64..50.0, 0.01f64..50.0, 0u32..40), 2..6),
        c in 0.1f64..5.0,
    ) {
        let group: Vec<TopicState> = topics
            .iter()
            .enumerate()
            .map(|(i, &(mass, t, prev, age))| TopicState {
                name: format!("t{i}"),
                age: f64::from(age),
                mass,
                temperature: t,
                previous: Some(prev),
            })
            .collect();
        let out = forest_help(&group, c).unwrap();
        let before: f64 = group.iter().map(|t| c * t.mass * t.temperature).sum();
        let after: f64 = group.iter().map(|t| c * t.mass * out.temperatures[&t.name]).sum();
        prop_assert!((before - after).abs() <= 1e-9 * before);
    }

    #[test]
    fn shrink_ignores_input_order(seed in 0u64..1000, order in prop::collection::vec(0usize..500, 0..40)) {
        let full = SyntheticTopic { papers: 40, span: 4, mutual_rate: 0.2, seed, ..Default::default() }.generate();
        let years = full.years();
        let cut = years[years.len() / 2];
        let prev = build_snapshot(&full, cut).unwrap();
        let a = shrink(&prev, &full).unwrap();
        let other = shuffled(&full, &order);
        let prev_other = build_snapshot(&other, cut).unwrap();
        let b = shrink(&prev_other, &other).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn heat_stays_in_convex_envelope(seed in 0u64..1000, init in 0.0f64..1.0) {
        let topic = SyntheticTopic { papers: 30, span: 3, seed, ..Default::default() }.generate();
        let a = analyze_snapshot(&topic, &AnalysisConfig::default()).unwrap();
        let cfg = HeatConfig { initial_temperature: init, ..Default::default() };
        let system = HeatSystem::new(&topic, None, &a.diff, &a.scales, &cfg);
        let mut t = system.initial_field();
        for step in 0..6 {
            let raw = system.raw_step(&t, step == 0);
            let (lo, hi) = t.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &x| (l.min(x), h.max(x)));
            prop_assert!(raw.iter().all(|&x| x >= lo - 1e-12 && x <= hi + 1e-12));
            t = system.step(&t, step == 0);
        }
    }

    #[test]
    fn growth_updates_telescope(points in prop::collection::vec((1.0f64..1e3, 1.0f64..1e3), 2..12)) {
        let consts = ThermoConstants::default();
        let (n0, v0) = points[0];
        let t0 = t_growth_init(1.0, n0, v0, &consts).unwrap();
        let mut t = t0;
        for w in points.windows(2) {
            t = t_growth_update(t, w[0].0, w[1].0, w[0].1, w[1].1).unwrap();
        }
        let (nk, vk) = *points.last().unwrap();
        let direct = t0 * (n0 / nk) * (vk / v0);
        prop_assert!((t - direct).abs() <= 1e-9 * direct);
    }

    #[test]
    fn skeleton_is_a_forest_of_real_citations(seed in 0u64..1000, n in 3usize..40) {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let g = common::random_dag_with_mutual_pair(&mut rng, n);
        let a = analyze_snapshot(&g, &AnalysisConfig::default()).unwrap();
        prop_assert!(common::is_forest(&a.tree));
        for (p, v) in a.tree.edges() {
            prop_assert!(g.has_edge(p, v));
        }
        prop_assert!(a.useful_info >= 0.0 && a.useful_info <= a.tree.edge_count() as f64 + 1e-12);
    }
}
