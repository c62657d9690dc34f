//! `crown-lab`: JSON in, JSON out front end for the crown_lab workbench.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crown_lab::color_core::{
    extend_coloring, lambda_set, visit_extensions, Color, ColorError, FreeSlot, ListAssignment,
    PartialColoring, Rainbow, RainbowError,
};
use crown_lab::fixtures::{load_fixture, FixtureError, FixtureId};
use crown_lab::obstructions::{
    base_coloring_verdict, edge_tilt, find_obstructions, x_vertices, BaseCase, ObstructionError,
};
use crown_lab::planar_core::{GraphDocument, PlanarEmbedding, PlanarError, Vertex};
use crown_lab::sufficiency::{bohme_classify, crown_membership, crown_set, end_set, BohmeError};
use crown_lab::theorems::{
    verify, verify_t_all, InstanceGenerator, Mode, TheoremError, TheoremId, VerificationReport,
};

#[derive(Parser, Debug)]
#[command(
    name = "crown-lab",
    version,
    about = "List-coloring workbench for plane graphs with a precolored outer path"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Extend the document's `coloring` (or nothing) to an L-coloring of the whole graph.
    Solve(Input),
    /// Colors for the free position of the document's 2-path.
    Lambda {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Free::Middle)]
        free: Free,
        /// Colors of the two fixed positions, in path order, e.g. `0,1`.
        #[arg(long, value_delimiter = ',', required = true)]
        fixed: Vec<Color>,
    },
    /// Sufficient colorings of the path's endpoints.
    End(Input),
    /// The crown of the rainbow, or a membership report for the document's `coloring`.
    Crown(Input),
    /// Classify a coloring of an outer 5- or 6-cycle.
    Classify(Input),
    /// Obstructions of a 3-path rainbow.
    Obstructions(Input),
    /// Tilt of both terminal edges of a 3-path rainbow.
    Tilt(Input),
    /// Base-coloring case of the document's endpoint `coloring`, or of every endpoint coloring.
    Base(Input),
    /// Run a verifier and print its report.
    Verify(VerifyArgs),
    /// Replay one of the shipped counterexample graphs.
    Fixture {
        /// `fig7` or `fig10`.
        id: String,
    },
}

#[derive(clap::Args, Debug)]
struct Input {
    /// Path to a JSON graph document; stdin when omitted or `-`.
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Free {
    First,
    Middle,
    Last,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RunMode {
    Exhaustive,
    Sampled,
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    /// Theorem tag, e.g. `end2`, `T1`, `main`, `background`; `T` runs T1 to T4.
    theorem: String,
    #[arg(long, value_enum, default_value_t = RunMode::Exhaustive)]
    mode: RunMode,
    /// Vertex cap; 9 for exhaustive runs and 12 for sampled runs by default.
    #[arg(long)]
    max_n: Option<usize>,
    /// Palette cap; 6 for exhaustive runs and 7 for sampled runs by default.
    #[arg(long)]
    palette: Option<usize>,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    /// Required for sampled runs.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; 0 uses every core.
    #[arg(long, env = "CROWN_LAB_JOBS", default_value_t = 0)]
    jobs: usize,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("cannot read input: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid JSON document: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Planar(#[from] PlanarError),
    #[error(transparent)]
    Color(#[from] ColorError),
    #[error(transparent)]
    Rainbow(#[from] RainbowError),
    #[error(transparent)]
    Obstruction(#[from] ObstructionError),
    #[error(transparent)]
    Bohme(#[from] BohmeError),
    #[error(transparent)]
    Fixture(#[from] FixtureError),
    #[error(transparent)]
    Theorem(#[from] TheoremError),
    #[error("{0}")]
    Usage(String),
}

/// The fields of a graph document plus an optional partial coloring keyed
/// by vertex label. Spelled out rather than flattened: flattening turns the
/// integer map keys into strings.
#[derive(Deserialize)]
struct RawDocument {
    rotation: BTreeMap<u32, Vec<u32>>,
    outer: Vec<u32>,
    #[serde(default)]
    lists: BTreeMap<u32, Vec<u32>>,
    #[serde(default)]
    path: Vec<u32>,
    #[serde(default)]
    coloring: BTreeMap<u32, u32>,
}

struct InputDocument {
    graph: GraphDocument,
    coloring: BTreeMap<u32, u32>,
}

struct Outcome {
    body: Value,
    passed: bool,
}

impl Outcome {
    fn ok(body: Value) -> Self {
        Outcome { body, passed: true }
    }
}

fn read_document(input: &Input) -> Result<InputDocument, CliError> {
    let text = match &input.input {
        Some(path) if path.as_os_str() != "-" => std::fs::read_to_string(path)?,
        _ => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            buf
        }
    };
    let raw: RawDocument = serde_json::from_str(&text)?;
    Ok(InputDocument {
        graph: GraphDocument {
            rotation: raw.rotation,
            outer: raw.outer,
            lists: raw.lists,
            path: raw.path,
        },
        coloring: raw.coloring,
    })
}

fn lists_of(g: &PlanarEmbedding, doc: &GraphDocument) -> Result<ListAssignment, CliError> {
    Ok(ListAssignment::from_labels(g, &doc.lists)?)
}

fn rainbow_of(doc: &InputDocument) -> Result<Rainbow, CliError> {
    Ok(Rainbow::from_document(&doc.graph)?)
}

fn labels(g: &PlanarEmbedding, phi: &PartialColoring) -> Value {
    json!(phi.to_labels(g))
}

fn all_labels(g: &PlanarEmbedding, colorings: &[PartialColoring]) -> Value {
    Value::Array(colorings.iter().map(|phi| labels(g, phi)).collect())
}

fn solve(input: &Input) -> Result<Outcome, CliError> {
    let doc = read_document(input)?;
    let g = doc.graph.embedding()?;
    let lists = lists_of(&g, &doc.graph)?;
    let phi = PartialColoring::from_labels(&g, &doc.coloring)?;
    let found = extend_coloring(&g, &lists, &phi, g.vertices());
    Ok(Outcome::ok(json!({
        "extends": found.is_some(),
        "coloring": found.map(|psi| labels(&g, &psi)),
    })))
}

fn lambda(input: &Input, free: Free, fixed: &[Color]) -> Result<Outcome, CliError> {
    let doc = read_document(input)?;
    let g = doc.graph.embedding()?;
    let lists = lists_of(&g, &doc.graph)?;
    let path: Vec<Vertex> = doc
        .graph
        .path
        .iter()
        .map(|&l| {
            g.index_of(l)
                .ok_or_else(|| CliError::Usage(format!("path vertex {l} is not in the graph")))
        })
        .collect::<Result<_, _>>()?;
    let path: [Vertex; 3] = path
        .try_into()
        .map_err(|_| CliError::Usage("lambda needs a path with exactly three vertices".into()))?;
    let &[first, second] = fixed else {
        return Err(CliError::Usage("--fixed takes exactly two colors".into()));
    };
    let slot = match free {
        Free::First => FreeSlot::First,
        Free::Middle => FreeSlot::Middle,
        Free::Last => FreeSlot::Last,
    };
    let set = lambda_set(&g, &lists, path, slot, (first, second))?;
    Ok(Outcome::ok(
        json!({ "lambda": set.iter().collect::<Vec<_>>() }),
    ))
}

fn end(input: &Input) -> Result<Outcome, CliError> {
    let r = rainbow_of(&read_document(input)?)?;
    let found = end_set(&r);
    Ok(Outcome::ok(
        json!({ "count": found.len(), "end": all_labels(r.graph(), &found) }),
    ))
}

fn crown(input: &Input) -> Result<Outcome, CliError> {
    let doc = read_document(input)?;
    let r = rainbow_of(&doc)?;
    let g = r.graph();
    if doc.coloring.is_empty() {
        let members = crown_set(&r);
        return Ok(Outcome::ok(
            json!({ "count": members.len(), "crown": all_labels(g, &members) }),
        ));
    }
    let phi = PartialColoring::from_labels(g, &doc.coloring)?;
    let report = crown_membership(&r, &phi);
    let residual: BTreeMap<u32, usize> = report
        .residual_sizes
        .iter()
        .map(|&(v, size)| (g.label(v), size))
        .collect();
    Ok(Outcome::ok(json!({
        "member": report.is_member(),
        "domain_ok": report.domain_ok,
        "sufficient": report.sufficient,
        "condition_a": report.condition_a,
        "condition_b": report.condition_b,
        "residual_sizes": residual,
    })))
}

fn classify(input: &Input) -> Result<Outcome, CliError> {
    let doc = read_document(input)?;
    let g = doc.graph.embedding()?;
    let lists = lists_of(&g, &doc.graph)?;
    let phi = PartialColoring::from_labels(&g, &doc.coloring)?;
    Ok(Outcome::ok(serde_json::to_value(bohme_classify(
        &g, &lists, &phi,
    )?)?))
}

fn obstructions(input: &Input) -> Result<Outcome, CliError> {
    let r = rainbow_of(&read_document(input)?)?;
    let g = r.graph();
    let (x0, x1) = x_vertices(&r)?;
    let found: Vec<Value> = find_obstructions(&r)?
        .iter()
        .map(|o| {
            json!({
                "path": g.labels_of(&o.path),
                "triangle_type": o.triangle_type,
                "witness_hub": o.witness_hub.map(|v| g.label(v)),
                "parity": o.parity,
            })
        })
        .collect();
    Ok(Outcome::ok(
        json!({ "x0": g.label(x0), "x1": g.label(x1), "obstructions": found }),
    ))
}

fn tilt(input: &Input) -> Result<Outcome, CliError> {
    let r = rainbow_of(&read_document(input)?)?;
    let g = r.graph();
    let reports = (0..2)
        .map(|k| {
            let t = edge_tilt(&r, k)?;
            Ok(json!({
                "edge": g.labels_of(&[t.edge.0, t.edge.1]),
                "even": t.even,
                "odd": t.odd,
                "witness_paths": t.witness_paths.iter().map(|p| g.labels_of(p)).collect::<Vec<_>>(),
            }))
        })
        .collect::<Result<Vec<Value>, CliError>>()?;
    Ok(Outcome::ok(json!({ "tilts": reports })))
}

fn endpoint_colorings(r: &Rainbow) -> Vec<PartialColoring> {
    let mut out = Vec::new();
    let order = [r.p0(), r.p1()];
    visit_extensions(
        r.adjacency(),
        r.lists().as_slice(),
        &mut PartialColoring::empty(r.n()),
        &order,
        &mut |psi| {
            out.push(psi.clone());
            true
        },
    );
    out
}

fn verdicts(
    r: &Rainbow,
    colorings: &[PartialColoring],
) -> Result<Vec<(BaseCase, Value)>, CliError> {
    let g = r.graph();
    colorings
        .iter()
        .map(|phi| {
            let verdict = base_coloring_verdict(r, phi)?;
            let body = json!({
                "coloring": labels(g, phi),
                "case": verdict.case,
                "failing_extensions": all_labels(g, &verdict.failing_extensions),
            });
            Ok((verdict.case, body))
        })
        .collect()
}

fn base(input: &Input) -> Result<Outcome, CliError> {
    let doc = read_document(input)?;
    let r = rainbow_of(&doc)?;
    let colorings = if doc.coloring.is_empty() {
        endpoint_colorings(&r)
    } else {
        vec![PartialColoring::from_labels(r.graph(), &doc.coloring)?]
    };
    let bodies: Vec<Value> = verdicts(&r, &colorings)?
        .into_iter()
        .map(|(_, body)| body)
        .collect();
    Ok(Outcome::ok(json!({ "verdicts": bodies })))
}

fn generator(args: &VerifyArgs) -> Result<InstanceGenerator, CliError> {
    let gen = match args.mode {
        RunMode::Exhaustive => InstanceGenerator::exhaustive(
            crown_lab::theorems::Shape::TwoPath,
            args.max_n.unwrap_or(9),
            args.palette.unwrap_or(6),
        ),
        RunMode::Sampled => {
            let seed = args
                .seed
                .ok_or_else(|| CliError::Usage("sampled runs need an explicit --seed".into()))?;
            InstanceGenerator::sampled(
                crown_lab::theorems::Shape::TwoPath,
                args.max_n.unwrap_or(12),
                args.palette.unwrap_or(7),
                args.samples,
                seed,
            )
        }
    };
    debug_assert_eq!(gen.mode == Mode::Sampled, args.mode == RunMode::Sampled);
    Ok(gen.with_jobs(args.jobs))
}

fn run_verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let gen = generator(args)?;
    let reports: Vec<VerificationReport> = if args.theorem.eq_ignore_ascii_case("t") {
        verify_t_all(&gen.with_shape(TheoremId::T1.shape()))?
    } else {
        vec![verify(args.theorem.parse()?, &gen)?]
    };
    for report in &reports {
        eprintln!(
            "{}: checked {}, skipped {}, violations {}, {:.1?}",
            report.theorem,
            report.checked,
            report.skipped,
            report.violation_count,
            report.wall_time
        );
    }
    let passed = reports.iter().all(VerificationReport::passed);
    let body = match reports.as_slice() {
        [single] => serde_json::to_value(single)?,
        many => serde_json::to_value(many)?,
    };
    Ok(Outcome { body, passed })
}

fn fixture(id: &str) -> Result<Outcome, CliError> {
    let id: FixtureId = id.parse()?;
    let r = load_fixture(id)?;
    let g = r.graph();
    match id {
        FixtureId::Fig10 => {
            let members = crown_set(&r);
            Ok(Outcome {
                passed: members.is_empty(),
                body: json!({
                    "fixture": "fig10",
                    "assertion": "crown is empty",
                    "crown": all_labels(g, &members),
                    "passed": members.is_empty(),
                }),
            })
        }
        FixtureId::Fig7 => {
            let found = verdicts(&r, &endpoint_colorings(&r))?;
            let passed = found.iter().all(|(case, _)| *case == BaseCase::NotBase);
            Ok(Outcome {
                passed,
                body: json!({
                    "fixture": "fig7",
                    "assertion": "no endpoint coloring is a base coloring",
                    "verdicts": found.into_iter().map(|(_, body)| body).collect::<Vec<_>>(),
                    "passed": passed,
                }),
            })
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Solve(input) => solve(input),
        Command::Lambda { input, free, fixed } => lambda(input, *free, fixed),
        Command::End(input) => end(input),
        Command::Crown(input) => crown(input),
        Command::Classify(input) => classify(input),
        Command::Obstructions(input) => obstructions(input),
        Command::Tilt(input) => tilt(input),
        Command::Base(input) => base(input),
        Command::Verify(args) => run_verify(args),
        Command::Fixture { id } => fixture(id),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            let text = serde_json::to_string_pretty(&outcome.body).expect("JSON values serialize");
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
