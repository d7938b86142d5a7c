use qturan::bounds::{conjecture_rhs, names};
use qturan::enumerate::enumerate_connected_graphs;
use qturan::graph::complete_multipartite;
use qturan::harness::{run, Command, InputSource, RunConfig};
use qturan::spectra::q_index;

/// Observed equality set of the conjectured edge-localized bound on n ≤ 7:
/// complete bipartite graphs and regular complete multipartite graphs.
#[test]
fn equality_set_through_order_seven() {
    let out = run(&RunConfig::new(Command::Conjecture, InputSource::Enumerate { min: 1, max: 7 })).unwrap();
    assert_eq!(out.summary.processed, 996);
    assert!(out.summary.candidate_counterexamples.is_empty());
    let mut eq = 0;
    for r in &out.reports {
        let b = r.record(names::EDGE_Q_CONJECTURE).unwrap();
        let c = r.classification;
        let expected = !r.degenerate && (c.is_complete_bipartite() || c.is_regular_complete_multipartite());
        assert_eq!(b.equality, expected, "{} {c}", r.graph);
        eq += usize::from(b.equality);
    }
    assert_eq!(eq, 18);
    let cases: Vec<&str> = out.summary.equality_cases.iter().map(|e| e.graph.as_str()).collect();
    assert!(cases.contains(&"E]~o"));
}

#[test]
fn regular_tripartite_attains_conjectured_bound() {
    for t in 1..=4 {
        let g = complete_multipartite(&[t, t, t]).unwrap();
        let q = q_index(&g).unwrap().lambda_max;
        assert!((q - 4.0 * t as f64).abs() < 1e-9);
        assert!((conjecture_rhs(&g).unwrap() - q).abs() < 1e-9);
    }
}

#[test]
fn conjecture_min_slack_table() {
    let out = run(&RunConfig::new(Command::Conjecture, InputSource::Enumerate { min: 2, max: 6 })).unwrap();
    let ns: Vec<usize> = out.summary.min_slack.iter().map(|m| m.n).collect();
    assert_eq!(ns, [2, 3, 4, 5, 6]);
    let counts: Vec<usize> = out.summary.min_slack.iter().map(|m| m.graphs).collect();
    assert_eq!(counts, [1, 2, 6, 21, 112]);
    assert_eq!(counts, (2..=6).map(|n| enumerate_connected_graphs(n).unwrap().len()).collect::<Vec<_>>());
    assert!(out.summary.min_slack.iter().all(|m| m.min_slack > -1e-8));
}
