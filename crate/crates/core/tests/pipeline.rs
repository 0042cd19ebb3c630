use cubicdom::bundled;
use cubicdom::graph::{random_cubic, Graph};
use cubicdom::oracle::{exact_domination_number, greedy_domination, run_trials, GraphSource, TrialConfig, TrialReport};
use cubicdom::labeling::verify_dominating;

fn trials(girth: usize, seeds: std::ops::Range<u64>) -> TrialReport {
    run_trials(&TrialConfig {
        rules: bundled::example10(),
        k: 5,
        source: GraphSource::Generate { n: 20_000, girth, max_iters: 100_000 },
        seeds: seeds.collect(),
        path_girth: Some(2 * 5 * 61),
        jobs: None,
    })
    .unwrap()
}

#[test]
fn example_set_ratio_at_girth_nine() {
    let r = trials(9, 0..20);
    assert_eq!(r.trials.len(), 20);
    assert!(r.trials.iter().all(|t| t.dominating && t.girth >= Some(9)));
    assert!((0.25..=0.36).contains(&r.mean_ratio), "{}", r.mean_ratio);
}

#[test]
fn ratio_does_not_grow_with_girth() {
    let reports: Vec<TrialReport> = [6, 9, 12].into_iter().map(|g| trials(g, 40..50)).collect();
    for w in reports.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let pooled = (a.std_error.unwrap().powi(2) + b.std_error.unwrap().powi(2)).sqrt();
        assert!(
            b.mean_ratio <= a.mean_ratio + 2.0 * pooled,
            "girth {:?} -> {:?}: {} -> {}",
            a.config.girth_target,
            b.config.girth_target,
            a.mean_ratio,
            b.mean_ratio
        );
    }
}

#[test]
fn greedy_never_beats_gamma() {
    let mut graphs = vec![Graph::complete(4), Graph::petersen(), Graph::complete_bipartite(3, 3)];
    graphs.extend((0..10).map(|s| random_cubic(18, s).unwrap()));
    for g in graphs {
        let greedy = greedy_domination(&g);
        assert!(verify_dominating(&g, &greedy).dominating);
        assert!(exact_domination_number(&g).unwrap().gamma <= greedy.len());
    }
}
