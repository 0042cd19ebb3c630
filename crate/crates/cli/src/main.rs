use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use cubicdom::analysis::{analyze, bound, AnalysisError};
use cubicdom::graph::{boost_girth, girth, random_cubic, Graph};
use cubicdom::labeling::{LabelingError, RunStats};
use cubicdom::oracle::{exact_domination_number, greedy_domination, run_trials, GraphSource, OracleError, TrialConfig};
use cubicdom::reproduce::{self, Reproduction};
use cubicdom::rules::{check_complete, check_correct, RuleSet};

#[derive(Parser)]
#[command(name = "cubicdom", version, about = "Rule-based randomized dominating sets in cubic graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate or expand a rule file.
    Rules {
        #[command(subcommand)]
        action: RulesAction,
    },
    /// Per-level label probabilities and the size bound.
    Analyze {
        #[arg(long)]
        rules: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        levels: u64,
        /// Only print these levels (comma separated).
        #[arg(long, value_delimiter = ',')]
        rows: Option<Vec<usize>>,
        #[arg(long, conflicts_with = "json")]
        tsv: bool,
        #[arg(long)]
        json: bool,
    },
    /// Generate graphs or measure their girth.
    Graph {
        #[command(subcommand)]
        action: GraphAction,
    },
    /// Run the labeling pipeline and report |D| / n.
    Simulate(SimulateArgs),
    /// Exact domination number (at most 32 vertices) and the greedy baseline.
    Oracle { file: PathBuf },
    /// Recompute a published table or the bounds and diff against fixtures.
    Reproduce { target: Target },
}

#[derive(Subcommand)]
enum RulesAction {
    /// Exit 0 iff the rules are correct and complete.
    Check { file: PathBuf },
    /// Print the wildcard-free expansion.
    Expand { file: PathBuf },
}

#[derive(Subcommand)]
enum GraphAction {
    /// Random cubic graph in edge-list format.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Switch edges until the girth is at least this.
        #[arg(long)]
        girth: Option<usize>,
        #[arg(long, default_value_t = 100_000)]
        max_iters: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Girth and a shortest cycle.
    Girth { file: PathBuf },
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["graph", "gen"]))]
struct SimulateArgs {
    /// Edge-list graph file, used for every trial.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Generate a fresh random cubic graph of this order per trial
    /// (`20000` or `n=20000`).
    #[arg(long, value_parser = parse_order)]
    gen: Option<usize>,
    /// Girth target for generated graphs.
    #[arg(long, default_value_t = 3)]
    girth: usize,
    #[arg(long, default_value_t = 100_000)]
    max_iters: usize,
    #[arg(long)]
    rules: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    levels: u64,
    /// First seed; trials use consecutive seeds.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    trials: u64,
    #[arg(long)]
    jobs: Option<usize>,
    /// Girth used to size the path window instead of the measured one.
    #[arg(long)]
    path_girth: Option<usize>,
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Fig2,
    Fig4,
    Bounds,
}

fn parse_order(s: &str) -> Result<usize, String> {
    s.strip_prefix("n=").unwrap_or(s).parse().map_err(|e| format!("{e}"))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_rules(path: &Path) -> Result<RuleSet> {
    let name = path.file_stem().map_or("rules".into(), |s| s.to_string_lossy().into_owned());
    let rs = RuleSet::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    Ok(rs.with_name(name))
}

fn load_graph(path: &Path) -> Result<Graph> {
    Graph::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn failure(ok: bool) -> ExitCode {
    if ok { ExitCode::SUCCESS } else { ExitCode::from(1) }
}

fn rules(action: RulesAction) -> Result<ExitCode> {
    match action {
        RulesAction::Check { file } => {
            let rs = load_rules(&file)?;
            let mut violations = check_correct(&rs);
            violations.extend(check_complete(&rs));
            for v in &violations {
                println!("{v}");
            }
            println!(
                "{}: {} rules, {} expanded, {} violations",
                rs.name(),
                rs.len(),
                rs.expand().len(),
                violations.len()
            );
            Ok(failure(violations.is_empty()))
        }
        RulesAction::Expand { file } => {
            print!("{}", load_rules(&file)?.expand().to_rule_set());
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Every level for short tables; quartiles plus both ends otherwise.
fn sampled_levels(k: usize) -> Vec<usize> {
    if k <= 20 {
        return (1..=k).collect();
    }
    let mut ls = vec![1, 2, k / 4, k / 2, 3 * k / 4, k - 1, k];
    ls.dedup();
    ls
}

fn analyze_cmd(file: &Path, k: usize, rows: Option<Vec<usize>>, tsv: bool, json: bool) -> Result<ExitCode> {
    let rs = load_rules(file)?;
    let table = analyze(&rs, k)?;
    let b = bound(&table);
    if json {
        let rows = match &rows {
            Some(ls) => ls.iter().filter_map(|&l| table.row(l)).cloned().collect(),
            None => table.rows.clone(),
        };
        let out = serde_json::json!({ "rules": rs.name(), "k": k, "bound": b.bound, "rows": rows });
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else if tsv {
        print!("{}", table.to_tsv(rows.as_deref()));
    } else {
        let rows = rows.unwrap_or_else(|| sampled_levels(k));
        print!("{}", table.to_tsv(Some(&rows)));
        println!("bound = {:.6}", b.bound);
    }
    Ok(ExitCode::SUCCESS)
}

fn graph(action: GraphAction) -> Result<ExitCode> {
    match action {
        GraphAction::Gen { n, seed, girth: target, max_iters, output } => {
            let mut g = random_cubic(n, seed)?;
            let mut reached = true;
            if let Some(t) = target {
                let out = boost_girth(&g, t, seed, max_iters)?;
                let reached_girth = out.girth.map_or("inf".to_string(), |g| g.to_string());
                eprintln!("girth {reached_girth} after {} swaps", out.swaps);
                reached = out.reached;
                g = out.graph;
            }
            let text = g.to_edge_list();
            match output {
                Some(p) => std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?,
                None => print!("{text}"),
            }
            if !reached {
                eprintln!("girth target not reached within {max_iters} iterations");
            }
            Ok(failure(reached))
        }
        GraphAction::Girth { file } => {
            let r = girth(&load_graph(&file)?);
            match r.girth {
                Some(len) => {
                    let cycle: Vec<String> = r.witness.iter().map(|v| v.to_string()).collect();
                    println!("girth {len}\ncycle {}", cycle.join(" "));
                }
                None => println!("girth inf"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn simulate(a: SimulateArgs) -> Result<ExitCode> {
    let rules = load_rules(&a.rules)?;
    let source = match (&a.graph, a.gen) {
        (Some(p), _) => GraphSource::Fixed(load_graph(p)?),
        (None, Some(n)) => GraphSource::Generate { n, girth: a.girth, max_iters: a.max_iters },
        (None, None) => unreachable!("clap requires a graph source"),
    };
    let report = run_trials(&TrialConfig {
        rules,
        k: a.levels as usize,
        source,
        seeds: (a.seed..a.seed + a.trials).collect(),
        path_girth: a.path_girth,
        jobs: a.jobs,
    })?;
    if a.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else if a.csv {
        println!("{}", RunStats::CSV_HEADER);
        for t in &report.trials {
            println!("{}", t.csv_row());
        }
    } else {
        print!("{}", report.to_table());
    }
    Ok(ExitCode::SUCCESS)
}

fn oracle(file: &Path) -> Result<ExitCode> {
    let g = load_graph(file)?;
    let r = exact_domination_number(&g)?;
    let witness: Vec<String> = r.witness.iter().map(|v| v.to_string()).collect();
    println!("gamma {}", r.gamma);
    println!("witness {}", witness.join(" "));
    println!("nodes {}", r.nodes_explored);
    println!("greedy {}", greedy_domination(&g).len());
    Ok(ExitCode::SUCCESS)
}

fn print_reproduction(r: &Reproduction) {
    for c in &r.comparisons {
        if !c.ok() {
            println!("{c}");
        }
    }
}

fn reproduce_cmd(target: Target) -> Result<ExitCode> {
    let r = match target {
        Target::Bounds => {
            let r = reproduce::bounds()?;
            for c in &r.comparisons {
                println!("{}: {:.6} {}", c.label, c.computed.unwrap_or(f64::NAN), if c.ok() { "OK" } else { "MISMATCH" });
            }
            r
        }
        Target::Fig2 | Target::Fig4 => {
            let (r, table) = if matches!(target, Target::Fig2) { reproduce::fig2()? } else { reproduce::fig4()? };
            let mut levels: Vec<usize> = Vec::new();
            for c in &r.comparisons {
                let level = c.label.split_whitespace().next().and_then(|s| s.strip_prefix("i=")).and_then(|s| s.parse().ok());
                if let Some(l) = level {
                    if levels.last() != Some(&l) {
                        levels.push(l);
                    }
                }
            }
            print!("{}", table.to_tsv(Some(&levels)));
            for l in &levels {
                let prefix = format!("i={l} ");
                let bad = r.comparisons.iter().filter(|c| c.label.starts_with(&prefix) && !c.ok()).count();
                println!("row {l}: {}", if bad == 0 { "OK".to_string() } else { format!("{bad} MISMATCH") });
            }
            print_reproduction(&r);
            r
        }
    };
    Ok(failure(r.all_ok()))
}

/// Semantic failures exit 1; usage, I/O and parse errors exit 2.
fn exit_code(e: &anyhow::Error) -> ExitCode {
    let semantic = e.chain().any(|c| {
        matches!(c.downcast_ref::<AnalysisError>(), Some(AnalysisError::InvalidRules(_)))
            || matches!(c.downcast_ref::<LabelingError>(), Some(LabelingError::InvalidRules(_)))
            || matches!(
                c.downcast_ref::<OracleError>(),
                Some(OracleError::NotDominating { .. } | OracleError::TooLarge(_) | OracleError::Labeling(LabelingError::InvalidRules(_)))
            )
    });
    ExitCode::from(if semantic { 1 } else { 2 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Rules { action } => rules(action),
        Command::Analyze { rules, levels, rows, tsv, json } => analyze_cmd(&rules, levels as usize, rows, tsv, json),
        Command::Graph { action } => graph(action),
        Command::Simulate(a) => simulate(a),
        Command::Oracle { file } => oracle(&file),
        Command::Reproduce { target } => reproduce_cmd(target),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}
