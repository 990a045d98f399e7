//! Thin command-line front end over the library's `cli` module.

use std::path::PathBuf;
use std::process::ExitCode;

use nlgame::cli::{cmd_reduce, cmd_search, cmd_values, cmd_verify, SearchOpts, StrategyKind};
use nlgame::seesaw::SearchConfig;
use nlgame::game::DEFAULT_ENUMERATION_BUDGET;
use nlgame::quantum::Tolerances;
use nlgame::report::RunReport;

const USAGE: &str = "\
nlgame — nonlocal game toolkit

USAGE:
    nlgame reduce <game-file> --out <dir> [--format text|structured]
    nlgame values <game-file> [--budget N] [--format text|structured]
    nlgame verify <game-file> <strategy-file> --kind pme|general [--tol T] [--format ...]
    nlgame search <game-or-graph-file> [--dim D] [--seed S] [--restarts R] [--config FILE]
                  [--out DIR] [--tol T] [--format ...]

FLAGS:
    --budget N     enumeration budget in predicate evaluations (default 100000000)
    --seed S       random seed (default 0; all randomness is explicit)
    --dim D        packing search dimension (default 1)
    --restarts R   packing search restarts (default 20)
    --tol T        base tolerance for validation gates (default 1e-8)
    --out DIR      output directory for artifacts
    --config F     search config file with a \"search:\" section (flags override it)
    --format F     report format: text (default) or structured (JSON)
    --kind K       strategy file kind for verify: pme or general

EXIT CODES:
    0 success, 1 I/O error, 2 parse error, 3 budget exceeded, 4 validation failure
";

struct Flags {
    positional: Vec<String>,
    budget: u128,
    seed: Option<u64>,
    dim: Option<usize>,
    restarts: Option<u32>,
    tol: f64,
    out: Option<PathBuf>,
    config: Option<PathBuf>,
    structured: bool,
    kind: Option<String>,
}

fn parse_flags(args: &[String]) -> Result<Flags, String> {
    let mut flags = Flags {
        positional: Vec::new(),
        budget: DEFAULT_ENUMERATION_BUDGET,
        seed: None,
        dim: None,
        restarts: None,
        tol: 1e-8,
        out: None,
        config: None,
        structured: false,
        kind: None,
    };
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        let mut take = |name: &str| -> Result<String, String> {
            it.next().cloned().ok_or_else(|| format!("{name} requires a value"))
        };
        match arg.as_str() {
            "--budget" => flags.budget = take("--budget")?.parse().map_err(|_| "bad --budget")?,
            "--seed" => flags.seed = Some(take("--seed")?.parse().map_err(|_| "bad --seed")?),
            "--dim" => flags.dim = Some(take("--dim")?.parse().map_err(|_| "bad --dim")?),
            "--restarts" => {
                flags.restarts = Some(take("--restarts")?.parse().map_err(|_| "bad --restarts")?)
            }
            "--tol" => flags.tol = take("--tol")?.parse().map_err(|_| "bad --tol")?,
            "--out" => flags.out = Some(PathBuf::from(take("--out")?)),
            "--config" => flags.config = Some(PathBuf::from(take("--config")?)),
            "--kind" => flags.kind = Some(take("--kind")?),
            "--format" => {
                flags.structured = match take("--format")?.as_str() {
                    "structured" => true,
                    "text" => false,
                    other => return Err(format!("unknown format {other:?}")),
                }
            }
            other if other.starts_with("--") => return Err(format!("unknown flag {other}")),
            other => flags.positional.push(other.to_string()),
        }
    }
    Ok(flags)
}

fn tolerances_with_base(tol: f64) -> Tolerances {
    Tolerances { proj: tol, psd: tol, orth: tol, ..Tolerances::default() }
}

fn print_report(report: &RunReport, structured: bool) {
    if structured {
        println!("{}", report.to_structured());
    } else {
        print!("{}", report.to_text());
    }
}

fn run() -> Result<u8, (String, u8)> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let Some((command, rest)) = args.split_first() else {
        return Err((USAGE.to_string(), 1));
    };
    let flags = parse_flags(rest).map_err(|e| (format!("{e}\n\n{USAGE}"), 1))?;
    let report = match command.as_str() {
        "reduce" => {
            let [game_file] = flags.positional.as_slice() else {
                return Err(("reduce takes exactly one game file".into(), 1));
            };
            let out = flags.out.clone().ok_or(("reduce requires --out <dir>".to_string(), 1u8))?;
            cmd_reduce(&PathBuf::from(game_file), &out)
        }
        "values" => {
            let [game_file] = flags.positional.as_slice() else {
                return Err(("values takes exactly one game file".into(), 1));
            };
            cmd_values(&PathBuf::from(game_file), flags.budget)
        }
        "verify" => {
            let [game_file, strategy_file] = flags.positional.as_slice() else {
                return Err(("verify takes a game file and a strategy file".into(), 1));
            };
            let kind = match flags.kind.as_deref() {
                Some("pme") => StrategyKind::Pme,
                Some("general") => StrategyKind::General,
                Some(other) => return Err((format!("unknown --kind {other:?}"), 1)),
                None => return Err(("verify requires --kind pme|general".into(), 1)),
            };
            cmd_verify(
                &PathBuf::from(game_file),
                &PathBuf::from(strategy_file),
                kind,
                &tolerances_with_base(flags.tol),
            )
        }
        "search" => {
            let [input_file] = flags.positional.as_slice() else {
                return Err(("search takes exactly one game or graph file".into(), 1));
            };
            // Config file first, explicit flags override.
            let mut config = match &flags.config {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| (format!("cannot read {}: {e}", path.display()), 1u8))?;
                    SearchConfig::from_config_text(&text)
                        .map_err(|e| (format!("bad config {}: {e}", path.display()), 2u8))?
                }
                None => SearchConfig::new(1),
            };
            if let Some(d) = flags.dim {
                config.dimension = d.max(1);
            }
            if let Some(s) = flags.seed {
                config.seed = s;
            }
            if let Some(r) = flags.restarts {
                config.restarts = r.max(1);
            }
            let opts = SearchOpts {
                config,
                out_dir: flags.out.clone().unwrap_or_else(|| PathBuf::from(".")),
                tolerances: tolerances_with_base(flags.tol),
            };
            cmd_search(&PathBuf::from(input_file), &opts)
        }
        "help" | "--help" | "-h" => {
            println!("{USAGE}");
            return Ok(0);
        }
        other => return Err((format!("unknown command {other:?}\n\n{USAGE}"), 1)),
    };
    match report {
        Ok(report) => {
            print_report(&report, flags.structured);
            if report.validation_failures > 0 {
                Ok(4)
            } else {
                Ok(0)
            }
        }
        Err(e) => Err((e.to_string(), e.exit_code() as u8)),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err((message, code)) => {
            eprintln!("{message}");
            ExitCode::from(code)
        }
    }
}
