//! Thin command-line front end over the library.
//!
//! Subcommands: `reduce` (NP instance -> matrix pair), `decompose`
//! (adjacency -> incidence factors), `solve` (one model on one pair),
//! `oracle` (ground truth), `hunt` (seeded counterexample sweeps), and
//! `report` (aggregate a records file).  All heavy lifting lives in the
//! library; this file only parses arguments and moves JSON around.

use std::error::Error;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use birkhoff_lab::harness::{
    apply_env_caps, hunt_with_records, parse_provenance, records_to_jsonl, render_csv,
    render_hunt_summary, render_text, report_from_jsonl, solve_pair, write_findings, CapsConfig,
    Claim, ExperimentConfig, ModelKind,
};
use birkhoff_lab::incidence::incidence_decompose;
use birkhoff_lab::oracle::{
    clique_oracle, gi_oracle, hc_oracle, hp_oracle, matching_oracle, perfect_matching_oracle,
    sat_oracle, subgi_oracle, subgi_oracle_slow, OracleCaps,
};
use birkhoff_lab::problems::{CnfFormula, DigraphInstance};
use birkhoff_lab::rat::{parse_rat, Rat};
use birkhoff_lab::reductions::{
    build_clique_pair, build_gi_pair, build_hc_pair, build_hp_pair, build_ksat_pair,
    build_matching_pair, build_perfect_matching_pair, build_sat_pair, build_subgi_pair,
    InstancePair, Provenance,
};

type CliError = Box<dyn Error>;

#[derive(Parser)]
#[command(
    name = "birkhoff-lab",
    version,
    about = "Compile NP problems into matrix pairs over the Birkhoff polytope, \
             solve exact-rational relaxations, and audit them against brute force"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Encode an NP-problem instance as an adjacency matrix pair.
    Reduce(ReduceArgs),
    /// Split an adjacency matrix into outgoing/incoming incidence factors.
    Decompose(DecomposeArgs),
    /// Run one model on one pair file.
    Solve(SolveArgs),
    /// Answer an instance by brute force.
    Oracle(OracleArgs),
    /// Sweep seeded corpora for sufficiency counterexamples.
    Hunt(HuntArgs),
    /// Aggregate a records file into agreement tables.
    Report(ReportArgs),
}

#[derive(Args)]
struct ReduceArgs {
    /// Problem kind: subgi, gi, clique, hc, hp, matching, perfect-matching,
    /// 2sat, 3sat, or sat.
    #[arg(long)]
    problem: String,
    /// Graph JSON ({"n": .., "arcs": [[from,to],..]}) or DIMACS CNF file.
    #[arg(long)]
    input: PathBuf,
    /// Second graph (pattern) for subgi and gi.
    #[arg(long)]
    pattern: Option<PathBuf>,
    /// Clique size or matching pair count.
    #[arg(long)]
    m: Option<usize>,
    /// Zero-pad the pattern to the host size before writing.
    #[arg(long)]
    pad: bool,
    /// Output pair file (default: stdout).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DecomposeArgs {
    /// A pair file or a bare graph JSON file.
    #[arg(long)]
    input: PathBuf,
    /// Which matrix of a pair file to decompose: G or S.
    #[arg(long, default_value = "G")]
    side: String,
    /// Output incidence file (default: stdout).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// Model: relaxation, convex, anchored, factored, symmetric,
    /// incidence-symmetric, incidence-relaxation, incidence-convex,
    /// asymmetric, cutloop, depletion, or bvn.
    #[arg(long)]
    model: ModelKind,
    /// Pair file produced by `reduce`.
    #[arg(long)]
    pair: PathBuf,
    /// Norm-maximization cut budget for the convex decisions.
    #[arg(long, default_value_t = birkhoff_lab::solve::norm::DEFAULT_LP_ROUNDS)]
    lp_rounds: u32,
    /// Separation budget for the cutting-plane loop.
    #[arg(long, default_value_t = 25)]
    cut_iters: u32,
    /// Output verdict file (default: stdout).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    /// Pair file to decide with the embedding oracle.
    #[arg(long)]
    pair: Option<PathBuf>,
    /// Decide a raw problem instance instead of a pair file.
    #[arg(long)]
    problem: Option<String>,
    /// Graph JSON or DIMACS CNF input for --problem.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Second graph for subgi and gi.
    #[arg(long)]
    pattern: Option<PathBuf>,
    /// Clique size or matching pair count.
    #[arg(long)]
    m: Option<usize>,
    /// Use the unpruned enumeration (pair mode only).
    #[arg(long)]
    slow: bool,
    /// Output verdict file (default: stdout).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct HuntArgs {
    /// Claim to audit: convex-sufficiency, asymmetric-sufficiency, or
    /// incidence-convex-sufficiency.
    #[arg(long)]
    claim: Claim,
    /// Experiment config JSON; flags below override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Problems to sweep, comma-separated (default: subgi).
    #[arg(long)]
    problems: Option<String>,
    /// Size range, e.g. "3..5" (inclusive) or a single size.
    #[arg(long)]
    sizes: Option<String>,
    /// Densities: a comma list ("1/4,1/2") or a range ("0.2..0.8") sampled
    /// at --density-steps points.
    #[arg(long)]
    density: Option<String>,
    /// Sample points when --density is a range.
    #[arg(long, default_value_t = 4)]
    density_steps: usize,
    /// Seeded instances per (problem, size, density) cell.
    #[arg(long)]
    seeds: Option<u64>,
    /// Base seed for the deterministic seed derivation.
    #[arg(long)]
    base_seed: Option<u64>,
    /// Output directory for records, findings, and the summary.
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct ReportArgs {
    /// Records file (JSON lines) produced by `hunt`.
    input: PathBuf,
    /// Emit CSV instead of the plain-text tables.
    #[arg(long)]
    csv: bool,
    /// Output file (default: stdout).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Reduce(args) => reduce(args),
        Cmd::Decompose(args) => decompose(args),
        Cmd::Solve(args) => solve(args),
        Cmd::Oracle(args) => oracle(args),
        Cmd::Hunt(args) => hunt(args),
        Cmd::Report(args) => report(args),
    }
}

/// Caps from defaults plus any BIRKHOFF_MAX_* environment overrides.
fn effective_caps() -> Result<CapsConfig, CliError> {
    let mut caps = CapsConfig::default();
    apply_env_caps(&mut caps)?;
    Ok(caps)
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => {
            fs::write(path, text)?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_json(output: Option<&Path>, value: &serde_json::Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(output, &text)
}

// ---------------------------------------------------------------------------
// Input files
// ---------------------------------------------------------------------------

/// On-disk graph format: vertex count plus 1-based arcs, or a full
/// adjacency matrix of nonnegative multiplicities.
#[derive(serde::Deserialize)]
struct GraphFile {
    n: usize,
    #[serde(default)]
    arcs: Vec<Vec<usize>>,
    #[serde(default)]
    adjacency: Option<Vec<Vec<usize>>>,
}

fn load_graph(path: &Path) -> Result<DigraphInstance, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let file: GraphFile = serde_json::from_str(&text)
        .map_err(|e| format!("{} is not a graph file: {e}", path.display()))?;
    let mut g = DigraphInstance::new(file.n);
    if let Some(adj) = file.adjacency {
        if adj.len() != file.n || adj.iter().any(|row| row.len() != file.n) {
            return Err(format!("{}: adjacency must be {0}x{0}", path.display()).into());
        }
        for (u, row) in adj.iter().enumerate() {
            for (v, &mult) in row.iter().enumerate() {
                if mult > 0 {
                    g.add_arc(u + 1, v + 1, mult)?;
                }
            }
        }
    } else {
        for arc in &file.arcs {
            match arc.as_slice() {
                [u, v] => g.add_arc(*u, *v, 1)?,
                [u, v, mult] => g.add_arc(*u, *v, *mult)?,
                _ => {
                    return Err(
                        format!("{}: each arc needs [from, to] or [from, to, mult]", path.display())
                            .into(),
                    )
                }
            }
        }
    }
    g.validate()?;
    Ok(g)
}

fn load_formula(path: &Path) -> Result<CnfFormula, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Ok(CnfFormula::parse_dimacs(&text)?)
}

fn load_pair(path: &Path) -> Result<InstancePair, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let pair: InstancePair = serde_json::from_str(&text)
        .map_err(|e| format!("{} is not a pair file: {e}", path.display()))?;
    pair.validate()?;
    Ok(pair)
}

fn require<T>(value: Option<T>, what: &str) -> Result<T, CliError> {
    value.ok_or_else(|| format!("{what} is required here").into())
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

fn reduce(args: ReduceArgs) -> Result<(), CliError> {
    let problem = parse_provenance(&args.problem)?;
    let pair = match problem {
        Provenance::SubGi | Provenance::Gi => {
            let host = load_graph(&args.input)?;
            let pattern_path = require(args.pattern.as_deref(), "--pattern")?;
            let pattern = load_graph(pattern_path)?;
            if problem == Provenance::SubGi {
                build_subgi_pair(&host, &pattern)?
            } else {
                build_gi_pair(&host, &pattern)?
            }
        }
        Provenance::Clique => {
            let g = load_graph(&args.input)?;
            let m = require(args.m, "--m (clique size)")?;
            build_clique_pair(&g, m)?
        }
        Provenance::Hc => build_hc_pair(&load_graph(&args.input)?)?,
        Provenance::Hp => build_hp_pair(&load_graph(&args.input)?)?,
        Provenance::Matching => {
            let g = load_graph(&args.input)?;
            let pairs = require(args.m, "--m (pair count)")?;
            build_matching_pair(&g, pairs)?
        }
        Provenance::PerfectMatching => build_perfect_matching_pair(&load_graph(&args.input)?)?,
        Provenance::TwoSat => build_ksat_pair(&load_formula(&args.input)?, 2)?,
        Provenance::ThreeSat => build_ksat_pair(&load_formula(&args.input)?, 3)?,
        Provenance::Sat => build_sat_pair(&load_formula(&args.input)?)?,
    };
    let pair = if args.pad { pair.pad() } else { pair };
    emit_json(args.output.as_deref(), &serde_json::to_value(&pair)?)
}

fn decompose(args: DecomposeArgs) -> Result<(), CliError> {
    let text = fs::read_to_string(&args.input)
        .map_err(|e| format!("cannot read {}: {e}", args.input.display()))?;
    let matrix = if let Ok(pair) = serde_json::from_str::<InstancePair>(&text) {
        match args.side.to_ascii_uppercase().as_str() {
            "G" => pair.g.clone(),
            "S" => pair.s.clone(),
            other => return Err(format!("--side must be G or S, got '{other}'").into()),
        }
    } else {
        let g = load_graph(&args.input)?;
        g.adjacency_matrix()
    };
    let inc = incidence_decompose(&matrix)?;
    emit_json(args.output.as_deref(), &serde_json::to_value(&inc)?)
}

fn solve(args: SolveArgs) -> Result<(), CliError> {
    let caps = effective_caps()?;
    let pair = load_pair(&args.pair)?;
    let run = solve_pair(&pair, args.model, &caps, args.lp_rounds, args.cut_iters);
    eprintln!("{} verdict: {}", run.model, run.verdict);
    emit_json(args.output.as_deref(), &serde_json::to_value(&run)?)
}

fn oracle(args: OracleArgs) -> Result<(), CliError> {
    let caps = effective_caps()?.oracle_caps();
    let result = match (&args.pair, &args.problem) {
        (Some(path), None) => {
            let pair = load_pair(path)?;
            let verdict = if args.slow {
                subgi_oracle_slow(&pair, &caps)?
            } else {
                subgi_oracle(&pair, &caps)?
            };
            serde_json::to_value(&verdict)?
        }
        (None, Some(problem)) => {
            let input = require(args.input.as_deref(), "--input")?;
            direct_oracle(parse_provenance(problem)?, input, args.pattern.as_deref(), args.m, &caps)?
        }
        _ => return Err("pass exactly one of --pair or --problem".into()),
    };
    emit_json(args.output.as_deref(), &result)
}

fn direct_oracle(
    problem: Provenance,
    input: &Path,
    pattern: Option<&Path>,
    m: Option<usize>,
    caps: &OracleCaps,
) -> Result<serde_json::Value, CliError> {
    let value = match problem {
        Provenance::SubGi | Provenance::Gi => {
            let host = load_graph(input)?;
            let pat = load_graph(require(pattern, "--pattern")?)?;
            // The embedding oracle answers both; `gi` additionally requires
            // equal sizes, which the reduction layer enforces.
            if problem == Provenance::Gi {
                let witness = gi_oracle(&host, &pat, caps)?;
                serde_json::json!({ "yes": witness.is_some(), "witness": witness })
            } else {
                let pair = build_subgi_pair(&host, &pat)?;
                serde_json::to_value(subgi_oracle(&pair, caps)?)?
            }
        }
        Provenance::Clique => {
            let g = load_graph(input)?;
            let m = require(m, "--m (clique size)")?;
            let witness = clique_oracle(&g, m, caps)?;
            serde_json::json!({ "yes": witness.is_some(), "witness": witness })
        }
        Provenance::Hc => {
            let witness = hc_oracle(&load_graph(input)?, caps)?;
            serde_json::json!({ "yes": witness.is_some(), "witness": witness })
        }
        Provenance::Hp => {
            let witness = hp_oracle(&load_graph(input)?, caps)?;
            serde_json::json!({ "yes": witness.is_some(), "witness": witness })
        }
        Provenance::Matching => {
            let g = load_graph(input)?;
            let pairs = require(m, "--m (pair count)")?;
            let witness = matching_oracle(&g, pairs, caps)?;
            serde_json::json!({ "yes": witness.is_some(), "witness": witness })
        }
        Provenance::PerfectMatching => {
            let witness = perfect_matching_oracle(&load_graph(input)?, caps)?;
            serde_json::json!({ "yes": witness.is_some(), "witness": witness })
        }
        Provenance::TwoSat | Provenance::ThreeSat | Provenance::Sat => {
            let f = load_formula(input)?;
            let witness = sat_oracle(&f, caps)?;
            serde_json::json!({ "yes": witness.is_some(), "witness": witness })
        }
    };
    Ok(value)
}

fn parse_sizes(text: &str) -> Result<(usize, usize), CliError> {
    if let Some((lo, hi)) = text.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        Ok((lo.trim().parse()?, hi.trim().parse()?))
    } else {
        let n: usize = text.trim().parse()?;
        Ok((n, n))
    }
}

fn parse_densities(text: &str, steps: usize) -> Result<Vec<Rat>, CliError> {
    if let Some((lo, hi)) = text.split_once("..") {
        let lo = parse_rat(lo.trim())?;
        let hi = parse_rat(hi.trim())?;
        let steps = steps.max(1);
        if steps == 1 || lo == hi {
            return Ok(vec![lo]);
        }
        let span = hi - lo.clone();
        let denom = birkhoff_lab::rat::int((steps - 1) as i64);
        Ok((0..steps)
            .map(|i| lo.clone() + span.clone() * birkhoff_lab::rat::int(i as i64) / denom.clone())
            .collect())
    } else {
        text.split(',')
            .map(|part| parse_rat(part.trim()).map_err(CliError::from))
            .collect()
    }
}

fn hunt(args: HuntArgs) -> Result<(), CliError> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            serde_json::from_str::<ExperimentConfig>(&text)
                .map_err(|e| format!("{} is not a config file: {e}", path.display()))?
        }
        None => ExperimentConfig::new(vec![Provenance::SubGi], (3, 4), vec![]),
    };
    if let Some(problems) = &args.problems {
        cfg.problems = problems
            .split(',')
            .map(|p| parse_provenance(p.trim()).map_err(CliError::from))
            .collect::<Result<_, _>>()?;
    }
    if let Some(sizes) = &args.sizes {
        cfg.sizes = parse_sizes(sizes)?;
    }
    if let Some(density) = &args.density {
        cfg.densities = parse_densities(density, args.density_steps)?;
    }
    if let Some(seeds) = args.seeds {
        cfg.seeds = seeds;
    }
    if let Some(base_seed) = args.base_seed {
        cfg.base_seed = base_seed;
    }
    apply_env_caps(&mut cfg.caps)?;

    let (records, report) = hunt_with_records(&cfg, args.claim)?;
    fs::create_dir_all(&args.output)?;
    let records_path = args.output.join("records.jsonl");
    fs::write(&records_path, records_to_jsonl(&records))?;
    let mut config_text = serde_json::to_string_pretty(&cfg)?;
    config_text.push('\n');
    fs::write(args.output.join("config.json"), config_text)?;
    let summary = render_hunt_summary(&report);
    fs::write(args.output.join("summary.txt"), &summary)?;
    write_findings(&report, &args.output)?;
    print!("{summary}");
    eprintln!("records: {}", records_path.display());
    Ok(())
}

fn report(args: ReportArgs) -> Result<(), CliError> {
    let text = fs::read_to_string(&args.input)
        .map_err(|e| format!("cannot read {}: {e}", args.input.display()))?;
    let summary = report_from_jsonl(&text);
    let rendered = if args.csv { render_csv(&summary) } else { render_text(&summary) };
    emit(args.output.as_deref(), &rendered)
}
