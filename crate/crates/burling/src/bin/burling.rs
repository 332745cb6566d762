//! `burling`: derive, verify, recognize and transform Burling graphs from
//! the shell. `-` reads standard input.
//!
//! Exit codes: 0 success or affirmative verdict, 1 negative verdict,
//! 2 input error, 3 budget exceeded or undecided.

use std::fs;
use std::io::{self, Read, Write};
use std::ops::ControlFlow;
use std::path::PathBuf;
use std::process::ExitCode;

use burling::format::{
    is_certificate, parse_certificate, parse_graph, parse_tree, write_certificate, write_decomposition, write_graph,
    write_tree, AnyGraph, Certificate,
};
use burling::report::analyze;
use burling::search::{self, with_threads};
use burling::Error;
use burling_core::generators::{self as gens, Figure};
use burling_core::holes::DEFAULT_HOLE_BUDGET;
use burling_core::orient::{for_each_candidate, OrientationLimits};
use burling_core::recognition::{check_reason, check_reason_oriented, Reason, RecognizeOptions, Verdict};
use burling_core::sequential::{nobility_oriented, realizes, DEFAULT_EXACT_BUDGET};
use burling_core::structure::decompose;
use burling_core::transform::{self, ExpandMode, ExpandStep};
use burling_core::tree::{derivation_mismatch, derive};
use burling_core::{Derivation, Graph, OrientedGraph, VertexId};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;

#[derive(Parser)]
#[command(name = "burling", version, about = "Burling trees, derived graphs and recognition")]
struct Cli {
    /// Worker threads for the exact search; output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Budgets {
    /// Largest vertex count handed to the exact search.
    #[arg(long, env = "BURLING_BUDGET", default_value_t = DEFAULT_EXACT_BUDGET)]
    budget: usize,
    /// Longest hole enumerated by the detectors.
    #[arg(long, default_value_t = DEFAULT_HOLE_BUDGET)]
    hole_budget: usize,
}

impl Budgets {
    fn limits(self) -> OrientationLimits {
        OrientationLimits {
            exact_budget: self.budget,
            hole_budget: self.hole_budget,
            ..Default::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the graph derived from a tree file.
    Derive { tree: String },
    /// Check a tree file or certificate against a graph file.
    Verify { tree: String, graph: String },
    /// Decide whether a graph is Burling.
    Recognize {
        graph: String,
        #[command(flatten)]
        budgets: Budgets,
        /// Run the obstruction detectors only.
        #[arg(long)]
        obstructions_only: bool,
        /// Write a certificate for the verdict to this file.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Print the nobility of a graph.
    Nobility {
        graph: String,
        /// Use the orientation given in the file instead of minimizing over
        /// orientations.
        #[arg(long)]
        oriented: bool,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Rewrite a tree file.
    Transform {
        tree: String,
        #[command(subcommand)]
        op: Op,
    },
    /// Print the star-cutset decomposition of a graph.
    Decompose {
        graph: String,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Print holes, special vertices, cutsets and the top-set.
    Analyze {
        graph: String,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Generate a graph or tree: cycle, bipartite, wheel, theta, flower, k4,
    /// chandelier, luxury, figure, random, triangle-free.
    Gen { family: String, params: Vec<String> },
}

#[derive(Subcommand)]
enum Op {
    Normalize,
    /// Subdivide the bottom arc `u v` with the new vertex `w`.
    SubdivideBottom {
        u: String,
        v: String,
        w: String,
    },
    /// Replace the top arc `u v` by `w u` and `w v`.
    TopSubdivide {
        u: String,
        v: String,
        w: String,
    },
    /// Apply steps `<u> <v> bottom|top <length>` in order.
    Expand {
        steps: Vec<String>,
    },
    /// Contract the arc `u v`.
    Contract {
        u: String,
        v: String,
    },
}

enum Failure {
    Input(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_budget() {
            Failure::Budget(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<burling_core::Error> for Failure {
    fn from(e: burling_core::Error) -> Self {
        Error::from(e).into()
    }
}

type Run = Result<(String, u8), Failure>;

fn input(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

fn read(path: &str) -> Result<String, Failure> {
    let mut s = String::new();
    let res = if path == "-" {
        io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|e| input(format!("{path}: {e}")))?;
    Ok(s)
}

fn label(s: &str) -> Result<VertexId, Failure> {
    VertexId::new(s).map_err(|e| input(e.to_string()))
}

fn fresh_label(s: &str) -> Result<VertexId, Failure> {
    let v = label(s)?;
    if v.is_reserved() {
        return Err(input(format!("labels starting with `_` are reserved: {v}")));
    }
    Ok(v)
}

fn options(b: Budgets, obstructions_only: bool) -> RecognizeOptions {
    RecognizeOptions {
        limits: b.limits(),
        obstructions_only,
    }
}

fn verdict_line(v: &Verdict) -> (String, u8) {
    match v {
        Verdict::Burling(_) => ("BURLING\n".into(), 0),
        Verdict::NotBurling(r) => (format!("NOT_BURLING {}\n", r.tag()), 1),
        Verdict::Undecided => ("UNDECIDED\n".into(), 3),
    }
}

fn recognize_any(g: &AnyGraph, opts: &RecognizeOptions) -> burling::Result<search::Outcome> {
    match g {
        AnyGraph::Undirected(g) => search::recognize(g, opts),
        AnyGraph::Directed(g) => search::recognize_oriented(g, opts),
    }
}

fn undirected_mismatch(g: &Graph, o: &OrientedGraph) -> Option<String> {
    let h = o.underlying();
    let (a, b): (Vec<&VertexId>, Vec<&VertexId>) = (g.vertices().iter().collect(), h.vertices().iter().collect());
    if let Some(v) = a.iter().find(|v| !b.contains(v)) {
        return Some(format!("vertex {v} is not derived"));
    }
    if let Some(v) = b.iter().find(|v| !a.contains(v)) {
        return Some(format!("derived vertex {v} is not in the graph"));
    }
    let (eg, eh) = (g.edge_labels(), h.edge_labels());
    if let Some((x, y)) = eg.difference(&eh).next() {
        return Some(format!("edge {x} {y} is not derived"));
    }
    eh.difference(&eg)
        .next()
        .map(|(x, y)| format!("derived edge {x} {y} is not in the graph"))
}

fn check_tree(d: &Derivation, g: &AnyGraph) -> Result<Option<String>, Failure> {
    let o = derive(d)?;
    Ok(match g {
        AnyGraph::Directed(g) => derivation_mismatch(g, d),
        AnyGraph::Undirected(g) => undirected_mismatch(g, &o),
    })
}

fn verify(tree: &str, graph: &str, threads: usize) -> Run {
    let g = parse_graph(&read(graph)?)?;
    let text = read(tree)?;
    let mismatch = if is_certificate(&text) {
        let c: Certificate = parse_certificate(&text, &g.underlying())?;
        match &c.verdict {
            Verdict::Burling(d) => match check_tree(d, &g)? {
                Some(m) => Some(m),
                None => match &c.sequential {
                    Some(sd) if !realizes(&derive(d)?, sd) => {
                        Some("the sequential decomposition does not realize the derived graph".into())
                    }
                    _ => None,
                },
            },
            Verdict::NotBurling(Reason::Exhausted(stats)) => {
                let again = with_threads(threads, || recognize_any(&g, &RecognizeOptions::default()))?;
                match again.verdict {
                    Verdict::NotBurling(Reason::Exhausted(s)) if s == *stats => None,
                    Verdict::NotBurling(Reason::Exhausted(s)) => Some(format!("search counters differ: {s:?}")),
                    v => Some(format!("a fresh search gives {}", verdict_line(&v).0.trim())),
                }
            }
            Verdict::NotBurling(r) => {
                let ok = match &g {
                    AnyGraph::Directed(o) => check_reason_oriented(o, r),
                    AnyGraph::Undirected(u) => check_reason(u, r),
                };
                (!ok).then(|| format!("the {} witness does not hold", r.tag()))
            }
            Verdict::Undecided => Some("the certificate is undecided".into()),
        }
    } else {
        check_tree(&parse_tree(&text)?, &g)?
    };
    Ok(match mismatch {
        None => ("OK\n".into(), 0),
        Some(m) => (format!("MISMATCH {m}\n"), 1),
    })
}

fn recognize(graph: &str, b: Budgets, obstructions_only: bool, cert: Option<PathBuf>, threads: usize) -> Run {
    let g = parse_graph(&read(graph)?)?;
    let opts = options(b, obstructions_only);
    let out = with_threads(threads, || recognize_any(&g, &opts))?;
    if let (Some(path), false) = (cert, out.verdict == Verdict::Undecided) {
        let c = Certificate::new(out.verdict.clone(), out.stats)?;
        fs::write(&path, write_certificate(&c)).map_err(|e| input(format!("{}: {e}", path.display())))?;
    }
    Ok(verdict_line(&out.verdict))
}

fn nobility(graph: &str, oriented: bool, b: Budgets, threads: usize) -> Run {
    let g = parse_graph(&read(graph)?)?;
    let n = match (&g, oriented) {
        (AnyGraph::Directed(o), true) => nobility_oriented(o, b.budget)?,
        (AnyGraph::Undirected(_), true) => return Err(input("--oriented needs a directed graph file")),
        (g, false) => with_threads(threads, || search::nobility(&g.underlying(), &b.limits()))?,
    };
    Ok(match n {
        Some(k) => (format!("{k}\n"), 0),
        None => ("NOT_BURLING\n".into(), 1),
    })
}

fn expand_plan(steps: &[String]) -> Result<Vec<ExpandStep>, Failure> {
    if steps.is_empty() || !steps.len().is_multiple_of(4) {
        return Err(input("expand takes groups of `<u> <v> bottom|top <length>`"));
    }
    steps
        .chunks(4)
        .map(|s| {
            let len: usize = s[3].parse().map_err(|_| input(format!("bad length {:?}", s[3])))?;
            let mode = match s[2].as_str() {
                "bottom" => ExpandMode::BottomPath(len),
                "top" => ExpandMode::TopSplit(len),
                m => return Err(input(format!("unknown expansion {m:?}"))),
            };
            Ok(ExpandStep {
                from: label(&s[0])?,
                to: label(&s[1])?,
                mode,
            })
        })
        .collect()
}

fn transform(tree: &str, op: &Op) -> Run {
    let d = parse_tree(&read(tree)?)?;
    let out = match op {
        Op::Normalize => transform::normalize(&d)?,
        Op::SubdivideBottom { u, v, w } => transform::subdivide_bottom(&d, &label(u)?, &label(v)?, &fresh_label(w)?)?,
        Op::TopSubdivide { u, v, w } => transform::top_subdivide(&d, &label(u)?, &label(v)?, &fresh_label(w)?)?,
        Op::Expand { steps } => transform::expand_arcs(&d, &expand_plan(steps)?)?,
        Op::Contract { u, v } => transform::contract(&d, &label(u)?, &label(v)?)?,
    };
    Ok((write_tree(&out), 0))
}

fn decompose_cmd(graph: &str, b: Budgets) -> Run {
    let g = parse_graph(&read(graph)?)?;
    let mut out = String::new();
    let o = match g {
        AnyGraph::Directed(o) => o,
        AnyGraph::Undirected(u) => {
            let mut first = None;
            for_each_candidate(&u, b.hole_budget, OrientationLimits::default().hole_cap, |o| {
                first = Some(o);
                ControlFlow::Break(())
            })?;
            let Some(o) = first else {
                return Ok(("NOT_BURLING no admissible orientation\n".into(), 1));
            };
            out.push_str("orientation:\n");
            for l in write_graph(&AnyGraph::Directed(o.clone())).lines() {
                out.push_str(&format!("  {l}\n"));
            }
            o
        }
    };
    let tree = decompose(&o);
    out.push_str("decomposition:\n");
    for l in write_decomposition(&tree).lines() {
        out.push_str(&format!("  {l}\n"));
    }
    Ok((out, if tree.has_failure() { 1 } else { 0 }))
}

fn list(s: &str) -> Result<Vec<usize>, Failure> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| input(format!("bad number {x:?}"))))
        .collect()
}

fn gen(family: &str, params: &[String]) -> Run {
    let n = |i: usize| -> Result<usize, Failure> {
        let p = params
            .get(i)
            .ok_or_else(|| input(format!("{family}: missing parameter {}", i + 1)))?;
        p.parse().map_err(|_| input(format!("bad number {p:?}")))
    };
    let l = |i: usize| -> Result<Vec<usize>, Failure> {
        list(
            params
                .get(i)
                .ok_or_else(|| input(format!("{family}: missing parameter {}", i + 1)))?,
        )
    };
    let fig = match family {
        "cycle" => Figure::Graph(gens::gen_cycle(n(0)?)?),
        "bipartite" => Figure::Graph(gens::gen_complete_bipartite(n(0)?, n(1)?)?),
        "wheel" => Figure::Graph(gens::gen_wheel(n(0)?, &l(1)?)?),
        "theta" => Figure::Graph(gens::gen_theta(n(0)?, n(1)?, n(2)?)?),
        "flower" => Figure::Graph(gens::gen_flower(n(0)?, &l(1)?)?),
        "k4" => {
            let lengths = if params.len() == 6 {
                (0..6).map(n).collect::<Result<Vec<_>, _>>()?
            } else {
                l(0)?
            };
            let lengths: [usize; 6] = lengths.try_into().map_err(|_| input("k4 takes six path lengths"))?;
            Figure::Graph(gens::gen_k4_subdivision(lengths)?)
        }
        "chandelier" => Figure::Oriented(gens::gen_chandelier(&l(0)?)?),
        "luxury" => Figure::Graph(gens::gen_luxury_chandelier(&l(0)?)?),
        "figure" => {
            let name = params
                .first()
                .ok_or_else(|| input(format!("figure names: {}", gens::FIGURES.join(" "))))?;
            gens::gen_figure(name)?
        }
        "random" => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(n(1).unwrap_or(0) as u64);
            Figure::Derivation(gens::random_derivation(&mut rng, n(0)?))
        }
        "triangle-free" => {
            let all = gens::triangle_free_graphs(n(0)?);
            let i = n(1)?;
            let g = all
                .get(i)
                .ok_or_else(|| input(format!("only {} graphs on {} vertices", all.len(), params[0])))?;
            Figure::Graph(g.clone())
        }
        _ => return Err(input(format!("unknown family {family:?}"))),
    };
    let text = match fig {
        Figure::Graph(g) => write_graph(&AnyGraph::Undirected(g)),
        Figure::Oriented(g) => write_graph(&AnyGraph::Directed(g)),
        Figure::Derivation(d) => write_tree(&d),
    };
    Ok((text, 0))
}

fn run(cli: Cli) -> Run {
    let t = cli.threads;
    match cli.command {
        Command::Derive { tree } => {
            let d = parse_tree(&read(&tree)?)?;
            Ok((write_graph(&AnyGraph::Directed(derive(&d)?)), 0))
        }
        Command::Verify { tree, graph } => verify(&tree, &graph, t),
        Command::Recognize {
            graph,
            budgets,
            obstructions_only,
            cert,
        } => recognize(&graph, budgets, obstructions_only, cert, t),
        Command::Nobility {
            graph,
            oriented,
            budgets,
        } => nobility(&graph, oriented, budgets, t),
        Command::Transform { tree, op } => transform(&tree, &op),
        Command::Decompose { graph, budgets } => decompose_cmd(&graph, budgets),
        Command::Analyze { graph, budgets } => {
            let g = parse_graph(&read(&graph)?)?;
            Ok((with_threads(t, || analyze(&g, &options(budgets, false)))?, 0))
        }
        Command::Gen { family, params } => gen(&family, &params),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, code)) => {
            let _ = io::stdout().write_all(out.as_bytes());
            ExitCode::from(code)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
