mod manifest;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use manifest::{Instance, Manifest, OutputFormat, RequirementSpec};
use tcaug_core::augmentation::{solve_exact, solve_exact_parallel, solve_one_plus_one, verify_solution};
use tcaug_core::io::{format_cand, format_matrix, format_tg, parse_tg};
use tcaug_core::octo::{replay, solve_octo};
use tcaug_core::reductions::source_formats::{parse_dimacs, parse_edge_list, parse_set_list};
use tcaug_core::reductions::{
    reduce_3sat, reduce_dominating_set, reduce_dsc, reduce_hitting_set, CandidateMode, SetSystemInstance,
    StaticGraphInstance,
};
use tcaug_core::steiner_expansion::solve_tpca_via_expansion;
use tcaug_core::{
    AugmentationProblem, CostModel, ExpansionGraph, OctoOutcome, Outcome, Requirement, Semantics, Solution,
    TemporalEdge, TemporalGraph,
};

#[derive(Parser)]
#[command(name = "tcaug", version, about = "Connectivity augmentation for temporal graphs")]
struct Cli {
    /// Worker threads for the exact solvers (0 = one per core).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Subset,
    Expansion,
    Auto,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Cost {
    Edge,
    Group,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Ds,
    Hs,
    Dsc,
    #[value(name = "3sat")]
    Sat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Simple,
    Unrestricted,
}

#[derive(Subcommand)]
enum Command {
    /// Report temporal connectivity of a `.tg` graph.
    Check {
        graph: PathBuf,
        #[arg(long, default_value = "nonstrict")]
        semantics: Semantics,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Solve the instance a manifest describes.
    Solve {
        manifest: PathBuf,
        #[arg(long)]
        semantics: Option<Semantics>,
        #[arg(long, value_enum)]
        cost: Option<Cost>,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, value_enum, default_value = "auto")]
        engine: Engine,
        /// Run a second engine and fail if the costs differ. `auto` does
        /// this by itself on small pair-demand instances.
        #[arg(long, conflicts_with = "no_cross_check")]
        cross_check: bool,
        #[arg(long)]
        no_cross_check: bool,
        /// Defaults to the manifest's `format`, then json.
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Generate an augmentation instance from a source problem.
    Reduce {
        #[arg(value_enum)]
        kind: Kind,
        source: PathBuf,
        /// Budget of the source problem (dominating/hitting set size, number
        /// of covers). Not used for 3sat.
        #[arg(short, long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value = "simple")]
        mode: Mode,
        /// Output prefix; files get `.tg`, `.cand`, `.matrix`, `.json`.
        #[arg(short, long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the temporal expansion of a manifest's instance, or of a bare
    /// `.tg` graph with unit weights.
    Expand {
        manifest: PathBuf,
        #[arg(long)]
        semantics: Option<Semantics>,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
}

/// Input problems exit with 2; everything else the command decides.
fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads != 1 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let parallel = cli.threads != 1;
    let result = match cli.command {
        Command::Check { graph, semantics, format } => check(&graph, semantics, format),
        Command::Solve { manifest, semantics, cost, budget, engine, cross_check, no_cross_check, format } => {
            let cross_check = match (cross_check, no_cross_check) {
                (true, _) => Some(true),
                (_, true) => Some(false),
                _ => None,
            };
            let opts = SolveOptions { semantics, cost, budget, engine, cross_check, parallel };
            solve(&manifest, &opts, format)
        }
        Command::Reduce { kind, source, k, mode, out, format } => reduce(kind, &source, k, mode, &out, format),
        Command::Expand { manifest, semantics, format } => expand(&manifest, semantics, format),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("JSON values serialize"));
}

fn check(path: &Path, semantics: Semantics, format: Format) -> Result<ExitCode> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let g = parse_tg(&text).with_context(|| format!("in {}", path.display()))?;
    let connected = g.is_temporally_connected(semantics);
    let components: Vec<usize> = (1..=g.lifespan())
        .map(|t| g.snapshot_components(t).map(|c| c.len()))
        .collect::<tcaug_core::Result<_>>()?;
    match format {
        Format::Json => print_json(&json!({
            "schema": tcaug_core::SCHEMA_VERSION,
            "connected": connected,
            "semantics": semantics,
            "n": g.n(),
            "lifespan": g.lifespan(),
            "components": components,
        })),
        Format::Text => {
            println!("connected: {connected} ({semantics})");
            println!("vertices: {}, temporal edges: {}, lifespan: {}", g.n(), g.num_edges(), g.lifespan());
            for (t, c) in components.iter().enumerate() {
                println!("components at time {}: {c}", t + 1);
            }
        }
        Format::Dot => bail!("check has no dot output"),
    }
    Ok(status(connected))
}

struct SolveOptions {
    semantics: Option<Semantics>,
    cost: Option<Cost>,
    budget: Option<usize>,
    engine: Engine,
    /// `None` leaves it to the engine choice.
    cross_check: Option<bool>,
    parallel: bool,
}

/// Candidate count up to which `auto` cross-checks on its own.
const AUTO_CROSS_CHECK_LIMIT: usize = 16;

fn load(
    path: &Path,
    semantics: Option<Semantics>,
    cost: Option<Cost>,
    budget: Option<usize>,
) -> Result<(Manifest, Instance)> {
    let mut m = Manifest::load(path)?;
    if let Some(s) = semantics {
        m.semantics = s;
    }
    if let Some(c) = cost {
        m.cost = match c {
            Cost::Edge => CostModel::PerTemporalEdge,
            Cost::Group => CostModel::EdgeByEdge,
        };
    }
    if budget.is_some() {
        m.budget = budget;
    }
    let instance = m.instance(path)?;
    Ok((m, instance))
}

/// Every time-2 pair is a candidate, the base lives at time 1, and full
/// non-strict connectivity is asked for at per-edge cost.
fn is_one_plus_one(p: &AugmentationProblem) -> bool {
    let n = p.base().n();
    p.requirement() == &Requirement::All
        && p.semantics() == Semantics::NonStrict
        && p.cost_model() == CostModel::PerTemporalEdge
        && p.base().edges().iter().all(|e| e.t() == 1)
        && p.candidates().len() == n * n.saturating_sub(1) / 2
        && p.candidates().iter().all(|e| e.t() == 2)
}

fn run_one_plus_one(p: &AugmentationProblem) -> Result<Outcome> {
    let static_graph = TemporalGraph::new(p.base().n(), p.base().edges().iter().copied())?.with_lifespan(1)?;
    let f = solve_one_plus_one(&static_graph)?;
    Ok(match p.budget() {
        Some(b) if f.len() > b => Outcome::OverBudget { budget: b },
        _ => Outcome::Solved(Solution::certify(p, f)?),
    })
}

fn solve(path: &Path, opts: &SolveOptions, format: Option<Format>) -> Result<ExitCode> {
    let (manifest, instance) = load(path, opts.semantics, opts.cost, opts.budget)?;
    let format = format.unwrap_or(match manifest.format {
        Some(OutputFormat::Text) => Format::Text,
        Some(OutputFormat::Json) | None => Format::Json,
    });
    let p = match instance {
        Instance::Matrix { matrix, budget } => return solve_matrix(&matrix, budget, format),
        Instance::Augmentation(p) => p,
    };
    let subset = |p: &AugmentationProblem| if opts.parallel { solve_exact_parallel(p) } else { solve_exact(p) };
    let (engine, outcome) = match opts.engine {
        Engine::Subset => ("subset", subset(&p)?),
        Engine::Expansion => ("expansion", solve_tpca_via_expansion(&p)?),
        Engine::Auto if is_one_plus_one(&p) => ("one-plus-one", run_one_plus_one(&p)?),
        Engine::Auto => ("subset", subset(&p)?),
    };
    let pair_demands = matches!(p.requirement(), Requirement::Pairs(_)) && p.cost_model() == CostModel::PerTemporalEdge;
    let cross_check = opts.cross_check.unwrap_or(
        opts.engine == Engine::Auto && pair_demands && p.candidates().len() <= AUTO_CROSS_CHECK_LIMIT,
    );
    if cross_check {
        // the expansion engine only covers pair demands at per-edge cost;
        // elsewhere the sequential and parallel searches check each other
        let other = match engine {
            "subset" if pair_demands => solve_tpca_via_expansion(&p)?,
            "subset" if opts.parallel => solve_exact(&p)?,
            "subset" => solve_exact_parallel(&p)?,
            _ => subset(&p)?,
        };
        if other.cost() != outcome.cost() {
            bail!("engines disagree: {:?} vs {:?}", outcome.cost(), other.cost());
        }
    }
    if let Some(s) = outcome.solution() {
        if !verify_solution(&p, &s.selected)? {
            bail!("internal error: solver returned an invalid selection");
        }
    }
    let feasible = outcome.is_feasible_within_budget();
    let reason = match &outcome {
        Outcome::Solved(_) => None,
        Outcome::Infeasible => Some("infeasible"),
        Outcome::OverBudget { .. } => Some("over budget"),
    };
    match format {
        Format::Json => {
            let mut doc = json!({
                "schema": tcaug_core::SCHEMA_VERSION,
                "feasible": feasible,
                "engine": engine,
                "semantics": p.semantics(),
                "cost_model": p.cost_model(),
                "budget": p.budget(),
                "cross_checked": cross_check,
            });
            if let Some(s) = outcome.solution() {
                doc["cost"] = json!(s.cost);
                doc["selected"] = json!(s.selected);
                doc["certificate"] = json!(s.certificate);
            }
            if let Some(r) = reason {
                doc["reason"] = json!(r);
            }
            print_json(&doc);
        }
        Format::Text => match outcome.solution() {
            Some(s) => {
                println!("feasible: cost {} ({engine})", s.cost);
                for e in &s.selected {
                    println!("add {e}");
                }
            }
            None => println!("not feasible: {}", reason.unwrap_or_default()),
        },
        Format::Dot => bail!("solve has no dot output"),
    }
    Ok(status(feasible))
}

fn solve_matrix(matrix: &tcaug_core::BinaryMatrix, budget: Option<usize>, format: Format) -> Result<ExitCode> {
    let outcome = solve_octo(matrix, budget)?;
    if let OctoOutcome::Solved(s) = &outcome {
        if !replay(matrix, &s.sequence)?.is_all_ones() {
            bail!("internal error: merge sequence does not reach all ones");
        }
    }
    let feasible = matches!(outcome, OctoOutcome::Solved(_));
    let reason = match &outcome {
        OctoOutcome::Solved(_) => None,
        OctoOutcome::OverBudget { .. } => Some("over budget".to_string()),
        OctoOutcome::Infeasible => Some("infeasible".to_string()),
        OctoOutcome::LimitExceeded { states } => Some(format!("search limit of {states} states exceeded")),
    };
    match format {
        Format::Json => {
            let mut doc = json!({
                "schema": tcaug_core::SCHEMA_VERSION,
                "feasible": feasible,
                "engine": "octo",
                "budget": budget,
            });
            if let OctoOutcome::Solved(s) = &outcome {
                doc["cost"] = json!(s.min_combinations);
                doc["sequence"] = json!(s.sequence);
            }
            if let Some(r) = &reason {
                doc["reason"] = json!(r);
            }
            print_json(&doc);
        }
        Format::Text => match &outcome {
            OctoOutcome::Solved(s) => {
                println!("feasible: {} combinations (octo)", s.min_combinations);
                for m in &s.sequence {
                    println!("combine {:?} {} {}", m.axis, m.i, m.j);
                }
            }
            _ => println!("not feasible: {}", reason.as_deref().unwrap_or_default()),
        },
        Format::Dot => bail!("solve has no dot output"),
    }
    if let OctoOutcome::LimitExceeded { .. } = outcome {
        bail!("{}", reason.unwrap_or_default());
    }
    Ok(status(feasible))
}

fn read_source(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn with_ext(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn file_name(p: &Path) -> String {
    p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn reduce(kind: Kind, source: &Path, k: Option<usize>, mode: Mode, out: &Path, format: Format) -> Result<ExitCode> {
    let text = read_source(source)?;
    let mode = match mode {
        Mode::Simple => CandidateMode::Simple,
        Mode::Unrestricted => CandidateMode::Unrestricted,
    };
    let need_k = || k.ok_or_else(|| anyhow::anyhow!("this reduction needs -k"));
    let ctx = || format!("in {}", source.display());
    let manifest_path = with_ext(out, "json");
    let summary = if kind == Kind::Dsc {
        let (n, sets) = parse_set_list(&text).with_context(ctx)?;
        let red = reduce_dsc(&SetSystemInstance::new(n, sets, need_k()?)?)?;
        if red.budget.is_none() {
            // more covers than sets: no instance to write, the answer is no
            println!("no: {} disjoint covers need at least {} sets, found {}", red.k, red.k, red.m);
            return Ok(ExitCode::from(1));
        }
        let matrix_path = with_ext(out, "matrix");
        write(&matrix_path, &format_matrix(&red.matrix))?;
        let m = Manifest {
            schema: tcaug_core::SCHEMA_VERSION,
            graph: None,
            candidates: None,
            matrix: Some(file_name(&matrix_path)),
            requirement: None,
            semantics: Semantics::NonStrict,
            cost: CostModel::PerTemporalEdge,
            budget: red.budget,
            format: None,
        };
        write(&manifest_path, &(serde_json::to_string_pretty(&m)? + "\n"))?;
        json!({
            "kind": "dsc",
            "rows": red.matrix.rows(),
            "cols": red.matrix.cols(),
            "budget": red.budget,
            "files": [file_name(&matrix_path), file_name(&manifest_path)],
        })
    } else {
        let problem = match kind {
            Kind::Ds => {
                let (n, edges) = parse_edge_list(&text).with_context(ctx)?;
                reduce_dominating_set(&StaticGraphInstance::new(n, edges, need_k()?)?, mode)?.0
            }
            Kind::Hs => {
                let (n, sets) = parse_set_list(&text).with_context(ctx)?;
                reduce_hitting_set(&SetSystemInstance::new(n, sets, need_k()?)?, mode)?.0
            }
            Kind::Sat => reduce_3sat(&parse_dimacs(&text).with_context(ctx)?)?.0,
            Kind::Dsc => unreachable!("handled above"),
        };
        let tg_path = with_ext(out, "tg");
        let cand_path = with_ext(out, "cand");
        write(&tg_path, &format_tg(problem.base()))?;
        write(&cand_path, &format_cand(problem.candidates()))?;
        let requirement = match problem.requirement() {
            Requirement::All => RequirementSpec::All,
            Requirement::Source(v) => RequirementSpec::Source { vertex: *v },
            Requirement::Pairs(p) => RequirementSpec::Pairs {
                pairs: p.pairs().to_vec(),
                demand: (p.demand() != p.pairs().len()).then_some(p.demand()),
            },
        };
        let m = Manifest {
            schema: tcaug_core::SCHEMA_VERSION,
            graph: Some(file_name(&tg_path)),
            candidates: Some(file_name(&cand_path)),
            matrix: None,
            requirement: Some(requirement),
            semantics: problem.semantics(),
            cost: problem.cost_model(),
            budget: problem.budget(),
            format: None,
        };
        write(&manifest_path, &(serde_json::to_string_pretty(&m)? + "\n"))?;
        json!({
            "kind": match kind { Kind::Ds => "ds", Kind::Hs => "hs", _ => "3sat" },
            "vertices": problem.base().n(),
            "edges": problem.base().num_edges(),
            "candidates": problem.candidates().len(),
            "budget": problem.budget(),
            "files": [file_name(&tg_path), file_name(&cand_path), file_name(&manifest_path)],
        })
    };
    match format {
        Format::Json => print_json(&summary),
        Format::Text => {
            if let Some(rows) = summary.get("rows") {
                println!("matrix {rows} x {}, budget {}", summary["cols"], summary["budget"]);
            } else {
                println!(
                    "{} vertices, {} temporal edges, {} candidates, budget {}",
                    summary["vertices"], summary["edges"], summary["candidates"], summary["budget"]
                );
            }
            println!("wrote {}", manifest_path.display());
        }
        Format::Dot => bail!("reduce has no dot output"),
    }
    Ok(ExitCode::SUCCESS)
}

fn expand(path: &Path, semantics: Option<Semantics>, format: Format) -> Result<ExitCode> {
    let (full, weights, semantics) = if path.extension().is_some_and(|e| e == "tg") {
        // a bare graph: every edge costs 1
        let text = read_source(path)?;
        let g = parse_tg(&text).with_context(|| format!("in {}", path.display()))?;
        let weights = vec![1; g.num_edges()];
        (g, weights, semantics.unwrap_or_default())
    } else {
        let p = match load(path, semantics, None, None)?.1 {
            Instance::Augmentation(p) => p,
            Instance::Matrix { .. } => bail!("expand needs a graph manifest"),
        };
        if !matches!(p.requirement(), Requirement::Pairs(_)) {
            bail!("expand needs a pair-demand requirement");
        }
        // base edges are free, candidates cost 1
        let full = p.base().augment(p.candidates())?;
        let weights = full.edges().iter().map(|e: &TemporalEdge| u64::from(!p.base().contains(e))).collect();
        (full, weights, p.semantics())
    };
    let exp = ExpansionGraph::build(&full, &weights, semantics)?;
    match format {
        Format::Dot => print!("{}", exp.to_dot()),
        Format::Json => println!("{}", serde_json::to_string_pretty(&exp.to_json())?),
        Format::Text => println!(
            "expansion: {} nodes, {} arcs ({} gray), semantics {}",
            exp.nodes().len(),
            exp.arcs().len(),
            exp.num_gray_arcs(),
            exp.semantics()
        ),
    }
    Ok(ExitCode::SUCCESS)
}
