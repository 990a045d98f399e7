//! Command front end: ingest games and graphs, run the reduction pipeline,
//! compute values and bounds, verify strategies, and emit artifacts.
//!
//! Each command returns a [`RunReport`]; the binary renders it as text or
//! JSON. Exit codes: 0 success, 1 I/O error, 2 parse error, 3 budget
//! exceeded, 4 validation failure.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_traits::One;
use thiserror::Error;

use crate::game::{
    classical_value_with_budget, eval_deterministic, format as game_format, validate_synchronous,
    DeterministicStrategy, GameError, NonlocalGame, SynchronousGame,
};
use crate::graph::{
    classical_strategy_from_independent_set, format as graph_format, Graph, GraphError,
};
use crate::quantum::{
    entangled_lower_bound, eval_general, eval_general_breakdown, eval_pme, eval_pme_breakdown,
    format as strategy_format, PairBreakdown, Tolerances,
};
use crate::reductions::{game_graph, reduce_pme_to_qindependence};
use crate::report::RunReport;
use crate::seesaw::{seesaw_packing, SearchConfig};
use crate::textio::FormatError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("parse error in {path} at {source}")]
    Parse { path: String, source: FormatError },
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("validation failure: {0}")]
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Read { .. } | CliError::Write { .. } => 1,
            CliError::Parse { .. } => 2,
            CliError::Budget(_) => 3,
            CliError::Validation(_) => 4,
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|source| CliError::Read { path: path.display().to_string(), source })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .map_err(|source| CliError::Write { path: path.display().to_string(), source })?;
        }
    }
    fs::write(path, contents)
        .map_err(|source| CliError::Write { path: path.display().to_string(), source })
}

fn parse_game_file(path: &Path, report: &mut RunReport) -> Result<NonlocalGame, CliError> {
    let text = read_file(path)?;
    report.add_input(&path.display().to_string(), text.as_bytes());
    game_format::parse_game(&text)
        .map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}

fn budget_error(e: GameError) -> CliError {
    match e {
        GameError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
        other => CliError::Validation(other.to_string()),
    }
}

fn graph_budget_error(e: GraphError) -> CliError {
    match e {
        GraphError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
        other => CliError::Validation(other.to_string()),
    }
}

fn strategy_text(game: &NonlocalGame, s: &DeterministicStrategy) -> String {
    let mut out = String::new();
    for (q, &a) in s.alice.iter().enumerate() {
        let _ = write!(
            out,
            "{}{}->{}",
            if q > 0 { " " } else { "" },
            game.alice_questions()[q],
            game.alice_answers()[a]
        );
    }
    out.push_str(" /");
    for (r, &b) in s.bob.iter().enumerate() {
        let _ = write!(out, " {}->{}", game.bob_questions()[r], game.bob_answers()[b]);
    }
    out
}

/// Runs the full reduction and writes the extended game, the game graph,
/// and the provenance maps into `out_dir`.
pub fn cmd_reduce(game_path: &Path, out_dir: &Path) -> Result<RunReport, CliError> {
    let mut report = RunReport::new(format!(
        "reduce {} --out {}",
        game_path.display(),
        out_dir.display()
    ));
    let start = Instant::now();
    let game = parse_game_file(game_path, &mut report)?;
    let artifact = reduce_pme_to_qindependence(&game);

    let game_out = out_dir.join("extended.game");
    write_file(&game_out, &game_format::write_game(artifact.extended_game.game()))?;
    report.artifact(game_out.display().to_string());

    let graph_out = out_dir.join("game_graph.graph");
    write_file(&graph_out, &graph_format::write_graph(&artifact.game_graph))?;
    report.artifact(graph_out.display().to_string());

    let prov_out = out_dir.join("provenance.txt");
    write_file(&prov_out, &provenance_text(&artifact))?;
    report.artifact(prov_out.display().to_string());

    report.count("extended questions", artifact.extended_game.n_questions() as u128);
    report.count("extended answers", artifact.extended_game.n_answers() as u128);
    report.count("graph vertices", artifact.game_graph.n_vertices() as u128);
    report.count("graph edges", artifact.game_graph.n_edges() as u128);
    report.count("target independent-set size t", artifact.target_t as u128);
    report.timing("reduce", start.elapsed().as_millis());
    Ok(report)
}

fn provenance_text(artifact: &crate::reductions::ReductionArtifact) -> String {
    let mut out = String::from("provenance\n");
    let _ = writeln!(out, "target_t: {}", artifact.target_t);
    let sections = [
        ("alice_questions", &artifact.provenance.alice_questions),
        ("bob_questions", &artifact.provenance.bob_questions),
        ("alice_answers", &artifact.provenance.alice_answers),
        ("bob_answers", &artifact.provenance.bob_answers),
    ];
    for (name, map) in sections {
        let _ = writeln!(out, "{name}:");
        for (orig, tagged) in map.iter() {
            let _ = writeln!(out, "{orig} -> {tagged}");
        }
    }
    let _ = writeln!(out, "vertices:");
    for ((answer, question), vertex) in &artifact.provenance.vertices {
        let _ = writeln!(out, "{answer} {question} -> {vertex}");
    }
    out.push_str("end\n");
    out
}

/// Computes the exact classical value; for synchronous games also the game
/// graph's independence number, the perfect-strategy verdict from both
/// routes, and (for uniform distributions) the combinatorial lower bound
/// with its witness value.
pub fn cmd_values(game_path: &Path, budget: u128) -> Result<RunReport, CliError> {
    let mut report = RunReport::new(format!("values {}", game_path.display()));
    let start = Instant::now();
    let game = parse_game_file(game_path, &mut report)?;
    let (omega, witness) = classical_value_with_budget(&game, budget).map_err(budget_error)?;
    report.exact("classical value", &omega);
    report.text("optimal strategy", strategy_text(&game, &witness));

    if let Ok(sync) = validate_synchronous(&game) {
        let x = game_graph(&sync);
        let (alpha, alpha_witness) =
            x.independence_number().map_err(graph_budget_error)?;
        report.count("game-graph independence number", alpha as u128);
        report.count("question count", sync.n_questions() as u128);
        let perfect_by_enumeration = omega.is_one();
        let perfect_by_alpha = alpha == sync.n_questions();
        report.flag("perfect classical strategy (enumeration)", perfect_by_enumeration);
        report.flag("perfect classical strategy (alpha = |Q|)", perfect_by_alpha);
        debug_assert_eq!(perfect_by_enumeration, perfect_by_alpha);
        if sync.is_uniform() {
            let (bound_strategy, guarantee) =
                classical_strategy_from_independent_set(&sync, &x, &alpha_witness)
                    .map_err(|e| CliError::Validation(e.to_string()))?;
            let actual = eval_deterministic(sync.game(), &bound_strategy)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            report.exact("classical lower bound (alpha/|Q|)^2", &guarantee);
            report.exact("lower-bound witness value", &actual);
        } else {
            report.text(
                "classical lower bound",
                "skipped: requires a uniform question distribution",
            );
        }
    } else {
        report.text("synchronous analysis", "skipped: game is not synchronous");
    }
    report.timing("values", start.elapsed().as_millis());
    Ok(report)
}

/// Which strategy format `verify` expects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrategyKind {
    Pme,
    General,
}

fn breakdown_into_report(game: &NonlocalGame, breakdown: &[PairBreakdown], report: &mut RunReport) {
    for pb in breakdown {
        if pb.loss > 1e-12 {
            report.approx(
                format!(
                    "loss at ({}, {})",
                    game.alice_questions()[pb.q],
                    game.bob_questions()[pb.r]
                ),
                pb.loss,
                1e-9,
            );
        }
    }
}

/// Evaluates a strategy file against a game file, reporting the winning
/// probability, per-question-pair losses, and validation diagnostics.
pub fn cmd_verify(
    game_path: &Path,
    strategy_path: &Path,
    kind: StrategyKind,
    tol: &Tolerances,
) -> Result<RunReport, CliError> {
    let mut report = RunReport::new(format!(
        "verify {} {} --kind {}",
        game_path.display(),
        strategy_path.display(),
        match kind {
            StrategyKind::Pme => "pme",
            StrategyKind::General => "general",
        }
    ));
    let start = Instant::now();
    let game = parse_game_file(game_path, &mut report)?;
    let strategy_text_raw = read_file(strategy_path)?;
    report.add_input(&strategy_path.display().to_string(), strategy_text_raw.as_bytes());

    match kind {
        StrategyKind::Pme => {
            let s = strategy_format::parse_pme_strategy(&strategy_text_raw).map_err(|source| {
                CliError::Parse { path: strategy_path.display().to_string(), source }
            })?;
            let violations = s.validate(tol);
            for v in &violations {
                report.text("diagnostic", v.to_string());
            }
            report.validation_failures = violations.len();
            let value =
                eval_pme(&game, &s).map_err(|e| CliError::Validation(e.to_string()))?;
            report.approx("winning probability", value.clamp(0.0, 1.0), 1e-9);
            let breakdown = eval_pme_breakdown(&game, &s)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            breakdown_into_report(&game, &breakdown, &mut report);
        }
        StrategyKind::General => {
            let s = strategy_format::parse_general_strategy(&strategy_text_raw).map_err(
                |source| CliError::Parse { path: strategy_path.display().to_string(), source },
            )?;
            let violations = s.validate(tol);
            for v in &violations {
                report.text("diagnostic", v.to_string());
            }
            report.validation_failures = violations.len();
            let value =
                eval_general(&game, &s).map_err(|e| CliError::Validation(e.to_string()))?;
            report.approx("winning probability", value.clamp(0.0, 1.0), 1e-9);
            let breakdown = eval_general_breakdown(&game, &s)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            breakdown_into_report(&game, &breakdown, &mut report);
        }
    }
    report.timing("verify", start.elapsed().as_millis());
    Ok(report)
}

/// Options for [`cmd_search`].
#[derive(Clone, Debug)]
pub struct SearchOpts {
    pub config: SearchConfig,
    pub out_dir: PathBuf,
    pub tolerances: Tolerances,
}

impl Default for SearchOpts {
    fn default() -> Self {
        SearchOpts {
            config: SearchConfig::new(1),
            out_dir: PathBuf::from("."),
            tolerances: Tolerances::default(),
        }
    }
}

/// Runs the seesaw packing search on a graph file, or on the game graph of
/// a synchronous game file (which also enables certified bound reporting).
/// Writes the best packing, and for game inputs the witness strategy.
pub fn cmd_search(input_path: &Path, opts: &SearchOpts) -> Result<RunReport, CliError> {
    let mut report = RunReport::new(format!(
        "search {} --dim {} --seed {} --restarts {} --out {}",
        input_path.display(),
        opts.config.dimension,
        opts.config.seed,
        opts.config.restarts,
        opts.out_dir.display()
    ));
    let start = Instant::now();
    let text = read_file(input_path)?;
    report.add_input(&input_path.display().to_string(), text.as_bytes());

    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    let (graph, sync_game): (Graph, Option<SynchronousGame>) = if first == "game" {
        let parsed = game_format::parse_game(&text)
            .map_err(|source| CliError::Parse { path: input_path.display().to_string(), source })?;
        let sync = validate_synchronous(&parsed).map_err(|violations| {
            let details: Vec<String> = violations.iter().map(ToString::to_string).collect();
            CliError::Validation(format!(
                "search over a game requires a synchronous game; violations: {}",
                details.join("; ")
            ))
        })?;
        (game_graph(&sync), Some(sync))
    } else {
        let parsed = graph_format::parse_graph(&text)
            .map_err(|source| CliError::Parse { path: input_path.display().to_string(), source })?;
        (parsed, None)
    };

    let packing = seesaw_packing(&graph, &opts.config);
    report.count("graph vertices", graph.n_vertices() as u128);
    report.approx("best packing value", packing.value(), 1e-8);
    report.text("certification", "lower bound only; search failure is not evidence of nonexistence");

    let stem = input_path
        .file_stem()
        .map(|s| s.to_string_lossy().to_string())
        .unwrap_or_else(|| "search".into());
    let packing_out = opts.out_dir.join(format!("{stem}.packing"));
    write_file(&packing_out, &strategy_format::write_packing(&packing))?;
    report.artifact(packing_out.display().to_string());

    if let Some(sync) = sync_game {
        let lb = entangled_lower_bound(&sync, &packing, &opts.tolerances)
            .map_err(|e| CliError::Validation(e.to_string()))?;
        report.approx("certified entangled-value lower bound", lb.bound, 1e-8);
        let witness_value = eval_pme(sync.game(), &lb.witness)
            .map_err(|e| CliError::Validation(e.to_string()))?;
        report.approx("witness strategy value", witness_value.clamp(0.0, 1.0), 1e-9);
        let witness_out = opts.out_dir.join(format!("{stem}.witness.pme"));
        write_file(&witness_out, &strategy_format::write_pme_strategy(&lb.witness))?;
        report.artifact(witness_out.display().to_string());
    }
    report.timing("search", start.elapsed().as_millis());
    Ok(report)
}

/// The two perfect-classical-strategy verdicts (exhaustive enumeration and
/// the independence-number route); they always agree.
pub fn perfect_strategy_verdicts(
    game: &SynchronousGame,
    budget: u128,
) -> Result<(bool, bool), CliError> {
    let (omega, _) = classical_value_with_budget(game.game(), budget).map_err(budget_error)?;
    let x = game_graph(game);
    let (alpha, _) = x.independence_number().map_err(graph_budget_error)?;
    Ok((omega.is_one(), alpha == game.n_questions()))
}
