use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use pgr::dichotomy::{classify, recognize, Verdict};
use pgr::embed::{render, solve, Dim, Embedding, RenderFormat, SolveConstraints, SolveOutcome};
use pgr::formula::{nae_satisfiable_bruteforce, parse_dimacs, NaeFormula};
use pgr::gadgets::{
    hairy_prism, prism, reduce, verify_gadget_with, CheckStatus, Gadget, GadgetKind, ReduceTarget,
    DEFAULT_VERIFY_BUDGET,
};
use pgr::graph::{degree_set, read_graph, serialize_graph, DegreeSet, Graph};
use pgr::orientation::OrientationMap;
use pgr::skeleton::{build_extended_skeleton, consistent_orientation_traced};
use pgr::Error;

const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "pgr", version, about = "Partial grid recognition and NAE-3SAT reductions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a graph is a partial grid, routing by degree set.
    Recognize(EmbedArgs),
    /// Run the exact embedding search directly, optionally under an orientation.
    Embed(EmbedArgs),
    /// Reduce a formula, read under not-all-equal semantics, to a graph.
    Reduce(ReduceArgs),
    /// Compute the consistent orientation of a formula's extended skeleton.
    Orient(FormulaArgs),
    /// Check the declared properties of catalog gadgets.
    GadgetVerify(GadgetArgs),
    /// Emit the prism of a graph, optionally with pendant leaves.
    Prism(PrismArgs),
    /// Look up the complexity of a degree set.
    Classify(ClassifyArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// Print machine-readable JSON on stdout.
    #[arg(long)]
    json: bool,
    /// Write the main artifact to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EmbedArgs {
    /// Graph file, edge list or JSON.
    input: PathBuf,
    /// Grid dimension, 2 or 3.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(2..=3))]
    dim: u8,
    /// Search node cap; exhausting it yields the inconclusive verdict.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
    /// Witness format: ascii (2d only), svg or json.
    #[arg(long)]
    format: Option<RenderFormat>,
    /// Per-edge H/V labels the drawing must respect (embed only).
    #[arg(long)]
    orientation: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct FormulaArgs {
    /// DIMACS CNF file.
    input: PathBuf,
    /// Read the clauses under not-all-equal semantics (required).
    #[arg(long)]
    nae: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    #[command(flatten)]
    formula: FormulaArgs,
    /// Degree-set target: 124-tree, 123-tree, 13-tree, strict-binary, 23-graph or 24-graph.
    #[arg(long)]
    target: ReduceTarget,
    /// Also write the consistent orientation of the output graph here.
    #[arg(long)]
    orientation: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GadgetArgs {
    /// Gadget kinds to verify; all of them when omitted.
    kinds: Vec<String>,
    /// Enumeration node cap per check.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct PrismArgs {
    /// Graph file, edge list or JSON.
    input: PathBuf,
    /// Append a leaf to both copies of every vertex whose degree lies in this set.
    #[arg(long)]
    hairy: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    /// Degree set such as `1,2,4` or `{1,2,4}`; a graph file with --graph.
    input: String,
    /// Treat the input as a graph file and classify its degree set.
    #[arg(long)]
    graph: bool,
    /// Grid dimension, 2 or 3.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(2..=3))]
    dim: u8,
    /// Print machine-readable JSON on stdout.
    #[arg(long)]
    json: bool,
}

/// A usage or input error, reported on stderr with exit status 64.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    Ok(read_graph(&read_text(path)?)?)
}

fn load_formula(args: &FormulaArgs) -> Result<NaeFormula, Failure> {
    if !args.nae {
        return Err(Failure(
            "formulas are only read under not-all-equal semantics; pass --nae".into(),
        ));
    }
    Ok(parse_dimacs(&read_text(&args.input)?)?)
}

/// Sends the artifact to `--out` when given, otherwise to stdout unless JSON
/// owns stdout.
fn emit(common: &Common, artifact: &str) -> Result<(), Failure> {
    match &common.out {
        Some(path) => write_text(path, artifact),
        None if common.json => Ok(()),
        None => {
            say(artifact);
            Ok(())
        }
    }
}

/// Writes to stdout, treating a closed pipe as a normal end of output.
fn say(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn print_json(value: &serde_json::Value) {
    say(&format!("{}\n", serde_json::to_string_pretty(value).expect("json values serialize")));
}

fn dim_of(d: u8) -> Dim {
    if d == 3 {
        Dim::Three
    } else {
        Dim::Two
    }
}

fn witness_text(g: &Graph, w: &Embedding, format: Option<RenderFormat>) -> Result<String, Failure> {
    let format = format.unwrap_or(if w.dim == Dim::Two {
        RenderFormat::Ascii
    } else {
        RenderFormat::Json
    });
    Ok(render(g, w, format)?)
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => "yes",
        Verdict::No => "no",
        Verdict::BudgetExceeded => "budget-exceeded",
    }
}

fn run_recognize(a: &EmbedArgs) -> Outcome {
    if a.orientation.is_some() {
        return Err(Failure("--orientation applies to `embed` only".into()));
    }
    let g = load_graph(&a.input)?;
    let r = recognize(&g, dim_of(a.dim), a.budget)?;
    if a.common.json {
        print_json(&r.to_json());
    } else {
        say(&format!("verdict: {}\nmethod: {}\n", verdict_word(r.verdict), r.method_tag()));
    }
    if let Some(w) = &r.witness {
        emit(&a.common, &witness_text(&g, w, a.format)?)?;
    }
    Ok(r.verdict.exit_code() as u8)
}

fn run_embed(a: &EmbedArgs) -> Outcome {
    let g = load_graph(&a.input)?;
    let dim = dim_of(a.dim);
    let mut c = match &a.orientation {
        Some(path) => SolveConstraints::with_orientation(OrientationMap::parse(&read_text(path)?)?),
        None => SolveConstraints::default(),
    };
    if let Some(b) = a.budget {
        c = c.budget(b);
    }
    let outcome = solve(&g, dim, &c)?;
    let verdict = match &outcome {
        SolveOutcome::Found(_) => Verdict::Yes,
        SolveOutcome::NotFound => Verdict::No,
        SolveOutcome::BudgetExceeded => Verdict::BudgetExceeded,
    };
    if a.common.json {
        let mut doc = json!({ "verdict": verdict, "method": "exact-search" });
        if let Some(w) = outcome.embedding() {
            doc["witness"] = w.to_json();
        }
        print_json(&doc);
    } else {
        say(&format!("verdict: {}\n", verdict_word(verdict)));
    }
    if let Some(w) = outcome.embedding() {
        emit(&a.common, &witness_text(&g, w, a.format)?)?;
    }
    Ok(verdict.exit_code() as u8)
}

fn run_reduce(a: &ReduceArgs) -> Outcome {
    let phi = load_formula(&a.formula)?;
    let r = reduce(&phi, a.target)?;
    let common = &a.formula.common;
    emit(common, &serialize_graph(&r.graph)?)?;
    if let Some(path) = &a.orientation {
        write_text(path, &r.orientation.to_text())?;
    }
    if common.json {
        let sat = if phi.variable_count() <= 24 {
            Some(nae_satisfiable_bruteforce(&phi)?.is_some())
        } else {
            None
        };
        let mut doc = json!({
            "target": a.target,
            "vertices": r.graph.vertex_count(),
            "edges": r.graph.edge_count(),
            "degree_set": degree_set(&r.graph)?.to_string(),
            "is_tree": r.graph.is_tree(),
            "stages": r.stages.len(),
            "nae_satisfiable": sat,
        });
        if a.target == ReduceTarget::Tree124 {
            doc["skeleton"] = r.skeleton.to_json();
        }
        print_json(&doc);
    }
    Ok(0)
}

fn run_orient(a: &FormulaArgs) -> Outcome {
    let phi = load_formula(a)?;
    let s = build_extended_skeleton(&phi);
    let (f, steps) = consistent_orientation_traced(&s)?;
    emit(&a.common, &f.to_text())?;
    if a.common.json {
        let edges: Vec<_> = f
            .iter()
            .map(|(e, axis)| {
                json!({
                    "edge": [e.0, e.1],
                    "axis": axis.to_string(),
                    "step": steps.get(&e).map(|s| s.line()),
                })
            })
            .collect();
        print_json(&json!({
            "vertices": s.graph.vertex_count(),
            "edges": edges,
            "skeleton": s.to_json(),
        }));
    }
    Ok(0)
}

fn run_gadget_verify(a: &GadgetArgs) -> Outcome {
    let kinds = if a.kinds.is_empty() {
        GadgetKind::ALL.to_vec()
    } else {
        a.kinds.iter().map(|k| GadgetKind::parse(k)).collect::<Result<Vec<_>, _>>()?
    };
    let budget = a.budget.unwrap_or(DEFAULT_VERIFY_BUDGET);
    let mut reports = Vec::new();
    let mut text = String::new();
    for kind in kinds {
        let report = verify_gadget_with(Gadget::catalog(kind), budget)?;
        for c in &report.checks {
            let status = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Inconclusive => "inconclusive",
            };
            text.push_str(&format!("{:<14} {:<24} {:<12} {}\n", kind.name(), c.name, status, c.detail));
        }
        reports.push(report);
    }
    emit(&a.common, &text)?;
    if a.common.json {
        print_json(&json!(reports.iter().map(|r| r.to_json()).collect::<Vec<_>>()));
    }
    let code = if reports.iter().any(|r| r.checks.iter().any(|c| c.status == CheckStatus::Fail)) {
        Verdict::No
    } else if reports.iter().all(|r| r.conclusive()) {
        Verdict::Yes
    } else {
        Verdict::BudgetExceeded
    };
    Ok(code.exit_code() as u8)
}

fn run_prism(a: &PrismArgs) -> Outcome {
    let g = load_graph(&a.input)?;
    let p = match &a.hairy {
        Some(d) => hairy_prism(&g, &DegreeSet::parse(d)?)?,
        None => prism(&g),
    };
    emit(&a.common, &serialize_graph(&p)?)?;
    if a.common.json {
        print_json(&json!({
            "vertices": p.vertex_count(),
            "edges": p.edge_count(),
            "degree_set": degree_set(&p).map(|d| d.to_string()).ok(),
        }));
    }
    Ok(0)
}

fn run_classify(a: &ClassifyArgs) -> Outcome {
    let d = if a.graph {
        degree_set(&load_graph(Path::new(&a.input))?)?
    } else {
        DegreeSet::parse(&a.input)?
    };
    let dim = dim_of(a.dim);
    let c = classify(&d, dim)?;
    if a.json {
        let mut doc = c.to_json();
        doc["degree_set"] = json!(d.to_string());
        doc["dim"] = json!(dim.get());
        print_json(&doc);
    } else {
        let complexity = serde_json::to_value(c.complexity).expect("enum serializes");
        say(&format!(
            "{d} in {}d: {} ({})\n",
            dim.get(),
            complexity.as_str().unwrap_or_default(),
            c.source.tag()
        ));
    }
    Ok(0)
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Recognize(a) => run_recognize(a),
        Command::Embed(a) => run_embed(a),
        Command::Reduce(a) => run_reduce(a),
        Command::Orient(a) => run_orient(a),
        Command::GadgetVerify(a) => run_gadget_verify(a),
        Command::Prism(a) => run_prism(a),
        Command::Classify(a) => run_classify(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(message)) => {
            eprintln!("pgr: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
