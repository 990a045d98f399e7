//! The four commands end to end against the bundled corpus, including exit
//! codes, artifact files, and report formats.

use std::fs;
use std::path::PathBuf;

use nlgame::cli::{cmd_reduce, cmd_search, cmd_values, cmd_verify, SearchOpts, StrategyKind};
use nlgame::quantum::Tolerances;
use nlgame::report::ReportValue;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nlgame-test-{}-{tag}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn result_text(report: &nlgame::report::RunReport, name: &str) -> String {
    report
        .results
        .iter()
        .find(|item| item.name == name)
        .map(|item| match &item.value {
            ReportValue::Exact(v) => v.clone(),
            ReportValue::Approx { value, .. } => value.to_string(),
            ReportValue::Count(v) => v.to_string(),
            ReportValue::Text(v) => v.clone(),
            ReportValue::Flag(v) => v.to_string(),
        })
        .unwrap_or_else(|| panic!("report is missing {name:?}:\n{}", report.to_text()))
}

#[test]
fn values_on_chsh_reports_exact_three_quarters() {
    let report = cmd_values(&corpus("chsh.game"), 1 << 20).unwrap();
    assert_eq!(result_text(&report, "classical value"), "3/4");
    assert!(report.to_text().contains("not synchronous"));
    assert_eq!(report.inputs.len(), 1);
    assert!(report.inputs[0].1.starts_with("fnv1a64:"));
}

#[test]
fn values_on_c5_is_game_agrees_on_both_verdicts() {
    let report = cmd_values(&corpus("is_c5_t2.game"), 1 << 20).unwrap();
    assert_eq!(result_text(&report, "classical value"), "1");
    assert_eq!(result_text(&report, "game-graph independence number"), "2");
    assert_eq!(result_text(&report, "perfect classical strategy (enumeration)"), "true");
    assert_eq!(result_text(&report, "perfect classical strategy (alpha = |Q|)"), "true");
    assert_eq!(result_text(&report, "classical lower bound (alpha/|Q|)^2"), "1");
}

#[test]
fn values_on_hom_k3_k2_is_consistently_imperfect() {
    let report = cmd_values(&corpus("hom_k3_k2.game"), 1 << 20).unwrap();
    assert_ne!(result_text(&report, "classical value"), "1");
    assert_eq!(result_text(&report, "perfect classical strategy (enumeration)"), "false");
    assert_eq!(result_text(&report, "perfect classical strategy (alpha = |Q|)"), "false");
}

#[test]
fn values_budget_exceeded_is_exit_code_three() {
    let err = cmd_values(&corpus("magic_square.game"), 10).unwrap_err();
    assert_eq!(err.exit_code(), 3);
}

#[test]
fn reduce_writes_the_reduction_artifacts() {
    let out = scratch("reduce");
    let report = cmd_reduce(&corpus("chsh.game"), &out).unwrap();
    assert_eq!(result_text(&report, "graph vertices"), "16");
    assert_eq!(result_text(&report, "target independent-set size t"), "4");
    let extended = fs::read_to_string(out.join("extended.game")).unwrap();
    let ext_game = nlgame::game::format::parse_game(&extended).unwrap();
    assert!(nlgame::game::validate_synchronous(&ext_game).is_ok());
    let graph = fs::read_to_string(out.join("game_graph.graph")).unwrap();
    let parsed = nlgame::graph::format::parse_graph(&graph).unwrap();
    assert_eq!(parsed.n_vertices(), 16);
    assert_eq!(parsed.clique_partition().unwrap().len(), 4);
    assert!(out.join("provenance.txt").exists());
    let _ = fs::remove_dir_all(&out);
}

#[test]
fn reduce_rejects_malformed_distribution_with_exit_code_two() {
    let out = scratch("reduce-bad");
    let bad = out.join("bad.game");
    fs::write(
        &bad,
        "game\nalice_questions: q\nbob_questions: r\nalice_answers: a\n\
         bob_answers: b\ndistribution:\nq r 1 2\npredicate zeros:\nend\n",
    )
    .unwrap();
    let err = cmd_reduce(&bad, &out).unwrap_err();
    assert_eq!(err.exit_code(), 2);
    assert!(err.to_string().contains("sums to 1/2"), "{err}");
    let _ = fs::remove_dir_all(&out);
}

#[test]
fn verify_magic_square_strategy_wins() {
    let report = cmd_verify(
        &corpus("magic_square.game"),
        &corpus("magic_square_d4.pme"),
        StrategyKind::Pme,
        &Tolerances::default(),
    )
    .unwrap();
    assert_eq!(report.validation_failures, 0);
    let value: f64 = result_text(&report, "winning probability").parse().unwrap();
    assert!((value - 1.0).abs() < 1e-9);
}

#[test]
fn verify_general_strategy_hits_tsirelson() {
    let report = cmd_verify(
        &corpus("chsh.game"),
        &corpus("chsh_optimal.general"),
        StrategyKind::General,
        &Tolerances::default(),
    )
    .unwrap();
    let value: f64 = result_text(&report, "winning probability").parse().unwrap();
    assert!((value - (std::f64::consts::FRAC_PI_8).cos().powi(2)).abs() < 1e-9);
    // Every question pair leaks some probability at the optimum.
    assert!(report.results.iter().any(|item| item.name.starts_with("loss at")));
}

#[test]
fn verify_deterministic_chsh_encoding_scores_three_quarters() {
    let out = scratch("verify-det");
    let game = nlgame::game::make_chsh();
    let (_, witness) = nlgame::game::classical_value(&game).unwrap();
    let s = nlgame::quantum::known::pme_from_deterministic(&game, &witness);
    let path = out.join("chsh_det.pme");
    fs::write(&path, nlgame::quantum::format::write_pme_strategy(&s)).unwrap();
    let report = cmd_verify(
        &corpus("chsh.game"),
        &path,
        StrategyKind::Pme,
        &Tolerances::default(),
    )
    .unwrap();
    let value: f64 = result_text(&report, "winning probability").parse().unwrap();
    assert_eq!(value, 0.75);
    let _ = fs::remove_dir_all(&out);
}

#[test]
fn verify_flags_non_idempotent_matrices() {
    let out = scratch("verify-bad");
    let bad = out.join("bad.pme");
    // 0.5 * I is Hermitian but not idempotent.
    fs::write(
        &bad,
        "pme_strategy\ndimension: 1\nbob: transpose\nalice_questions: 1 2\n\
         alice_answers: v1 v2\nmatrix 1 v1:\n0.5,0\nmatrix 1 v2:\n0.5,0\n\
         matrix 2 v1:\n1,0\nmatrix 2 v2:\n0,0\nend\n",
    )
    .unwrap();
    let report = cmd_verify(
        &corpus("is_k2_t2.game"),
        &bad,
        StrategyKind::Pme,
        &Tolerances::default(),
    )
    .unwrap();
    assert!(report.validation_failures > 0);
    let text = report.to_text();
    assert!(text.contains("(1, v1)"), "diagnostic should name the cell:\n{text}");
    let _ = fs::remove_dir_all(&out);
}

#[test]
fn search_on_a_graph_reports_the_independence_value() {
    let out = scratch("search-graph");
    let opts = SearchOpts {
        config: nlgame::seesaw::SearchConfig::new(1).with_seed(0).with_restarts(8),
        out_dir: out.clone(),
        tolerances: Tolerances::default(),
    };
    let report = cmd_search(&corpus("c5.graph"), &opts).unwrap();
    let value: f64 = result_text(&report, "best packing value").parse().unwrap();
    assert!((value - 2.0).abs() < 1e-9);
    let packing_file = out.join("c5.packing");
    assert!(packing_file.exists());
    nlgame::quantum::format::parse_packing(&fs::read_to_string(packing_file).unwrap()).unwrap();
    let _ = fs::remove_dir_all(&out);
}

#[test]
fn search_on_a_game_certifies_a_bound() {
    let out = scratch("search-game");
    let opts = SearchOpts {
        config: nlgame::seesaw::SearchConfig::new(1).with_seed(0).with_restarts(8),
        out_dir: out.clone(),
        tolerances: Tolerances::default(),
    };
    let report = cmd_search(&corpus("is_c5_t2.game"), &opts).unwrap();
    let bound: f64 = result_text(&report, "certified entangled-value lower bound")
        .parse()
        .unwrap();
    assert!((bound - 1.0).abs() < 1e-8, "bound {bound}");
    let witness: f64 = result_text(&report, "witness strategy value").parse().unwrap();
    assert!(witness >= bound - 1e-9);
    assert!(out.join("is_c5_t2.witness.pme").exists());
    let _ = fs::remove_dir_all(&out);
}

#[test]
fn search_rejects_non_synchronous_games() {
    let out = scratch("search-nonsync");
    let opts = SearchOpts { out_dir: out.clone(), ..SearchOpts::default() };
    let err = cmd_search(&corpus("chsh.game"), &opts).unwrap_err();
    assert_eq!(err.exit_code(), 4);
    let _ = fs::remove_dir_all(&out);
}

#[test]
fn structured_reports_are_json_shaped() {
    let report = cmd_values(&corpus("chsh.game"), 1 << 20).unwrap();
    let json = report.to_structured();
    assert!(json.starts_with('{') && json.ends_with('}'));
    for key in ["\"command\":", "\"inputs\":", "\"results\":", "\"artifacts\":", "\"timings_ms\":"] {
        assert!(json.contains(key), "missing {key} in {json}");
    }
    assert!(json.contains("\"kind\":\"exact\",\"value\":\"3/4\""));
}

#[test]
fn identical_inputs_give_identical_reports_modulo_timings() {
    let mut a = cmd_values(&corpus("is_k3_t2.game"), 1 << 20).unwrap();
    let mut b = cmd_values(&corpus("is_k3_t2.game"), 1 << 20).unwrap();
    a.timings_ms.clear();
    b.timings_ms.clear();
    assert_eq!(a.to_structured(), b.to_structured());
}
