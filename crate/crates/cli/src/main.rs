mod text;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use symdual::expansion::{expand, IndexSet};
use symdual::graph::{parse_graph, OrientedGraph};
use symdual::stability::{
    combinatorial_support, enumerate_strata, enumerate_tuples, stratum_facet, tuple_facet,
};
use symdual::sym_product::{
    compare_constructions, product_complex_with, quotient_sym_with, skeleton_complex_with,
    sym_complex_with, BuildLimits, VertexWeights, DEFAULT_MAX_CELLS,
};

#[derive(Parser)]
#[command(name = "symdual", version)]
#[command(about = "Expanded graphs, stable strata and symmetric products of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Include every cell and its faces in complex reports
    #[arg(long, global = true)]
    dump_cells: bool,

    /// Refuse to build complexes with more predicted cells than this
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_CELLS)]
    max_cells: u128,

    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Orientation, cycle and tree analysis
    Check(Input),
    /// The expanded graph for an index set
    Expand {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        set: SetArg,
        /// Number of points (default: largest member of the set minus one)
        #[arg(short)]
        n: Option<usize>,
    },
    /// Stable strata over an index set
    Strata(Staged),
    /// Stable tuples over an index set
    Tuples(Staged),
    /// All facets of the stable strata and tuples over an index set
    Facets(Staged),
    /// The symmetric product as a Δ-complex
    Sym(Powered),
    /// The n-fold product with its shuffle decomposition
    Product(Powered),
    /// Orbit quotient of the product against the direct construction
    Compare(Powered),
    /// The symmetric product of the minimal-weight subgraph
    Skeleton {
        #[command(flatten)]
        power: Powered,
        /// Vertex weights as `vertex=int` pairs, comma separated
        #[arg(long, value_delimiter = ',', value_parser = parse_weight, required = true)]
        weights: Vec<(String, i64)>,
    },
}

#[derive(Args)]
struct Input {
    /// Graph file
    file: PathBuf,
}

#[derive(Args)]
struct SetArg {
    /// Index set: comma-separated members of {1, ..., n+1}
    #[arg(long = "set", value_delimiter = ',', required = true)]
    set: Vec<usize>,
}

#[derive(Args)]
struct Staged {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    set: SetArg,
    /// Number of points
    #[arg(short)]
    n: usize,
}

#[derive(Args)]
struct Powered {
    #[command(flatten)]
    input: Input,
    /// Number of points
    #[arg(short)]
    n: usize,
}

fn parse_weight(s: &str) -> Result<(String, i64), String> {
    let (v, w) = s
        .split_once('=')
        .ok_or_else(|| format!("expected `vertex=int`, got `{s}`"))?;
    let w = w.trim().parse::<i64>().map_err(|e| format!("bad weight in `{s}`: {e}"))?;
    Ok((v.trim().to_string(), w))
}

enum Failure {
    Usage(String),
    Domain(String),
}

/// Output plus whether the run counts as a success.
struct Outcome {
    report: Value,
    text: Option<String>,
    ok: bool,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome {
            report,
            text: None,
            ok: true,
        }
    }
}

fn domain<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Domain(e.to_string())
}

fn load(input: &Input) -> Result<OrientedGraph, Failure> {
    let text = fs::read_to_string(&input.file)
        .map_err(|e| Failure::Domain(format!("cannot read {}: {e}", input.file.display())))?;
    parse_graph(&text).map_err(domain)
}

fn index_set(n: usize, members: &[usize]) -> Result<IndexSet, Failure> {
    IndexSet::new(n, members.to_vec()).map_err(|e| Failure::Usage(format!("--set: {e}")))
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let limits = BuildLimits {
        max_cells: cli.max_cells,
    };
    match &cli.command {
        Command::Check(input) => {
            let g = load(input)?;
            Ok(Outcome::ok(json!({
                "bipartite": !g.has_odd_cycle(),
                "directed_cycle": g.has_directed_cycle(),
                "tree": g.is_tree(),
            })))
        }
        Command::Expand { input, set, n } => {
            let g = load(input)?;
            let n = n.unwrap_or_else(|| set.set.iter().max().map_or(1, |m| m.saturating_sub(1).max(1)));
            let i = index_set(n, &set.set)?;
            let x = expand(&g, &i);
            let og = x.to_oriented_graph(&g);
            let arrows: Vec<Value> = og
                .arrows()
                .iter()
                .map(|a| json!({"label": a.label, "src": og.vertex_label(a.src), "tgt": og.vertex_label(a.tgt)}))
                .collect();
            Ok(Outcome {
                report: json!({
                    "index_set": i.members(),
                    "nodes": og.vertices(),
                    "arrows": arrows,
                }),
                text: Some(og.to_graph_file()),
                ok: true,
            })
        }
        Command::Strata(s) => {
            let g = load(&s.input)?;
            let i = index_set(s.n, &s.set.set)?;
            let strata = enumerate_strata(&g, &i).map_err(domain)?;
            Ok(Outcome::ok(json!({
                "index_set": i.members(),
                "support": combinatorial_support(&i).entries(),
                "strata": strata.iter().map(|x| x.to_json(&g)).collect::<Vec<_>>(),
            })))
        }
        Command::Tuples(s) => {
            let g = load(&s.input)?;
            let i = index_set(s.n, &s.set.set)?;
            let x = expand(&g, &i);
            let tuples = enumerate_tuples(&g, &i).map_err(domain)?;
            Ok(Outcome::ok(json!({
                "index_set": i.members(),
                "tuples": tuples.iter().map(|z| z.to_json(&g, &x)).collect::<Vec<_>>(),
            })))
        }
        Command::Facets(s) => {
            let g = load(&s.input)?;
            let j = index_set(s.n, &s.set.set)?;
            facets(&g, &j).map(Outcome::ok)
        }
        Command::Sym(p) => {
            let g = load(&p.input)?;
            let dc = sym_complex_with(&g, p.n, limits).map_err(domain)?;
            Ok(Outcome::ok(dc.report(|c| c.name(&g), cli.dump_cells)))
        }
        Command::Product(p) => {
            let g = load(&p.input)?;
            let pc = product_complex_with(&g, p.n, limits).map_err(domain)?;
            Ok(Outcome::ok(pc.complex.report(|c| c.name(&g), cli.dump_cells)))
        }
        Command::Compare(p) => {
            let g = load(&p.input)?;
            let direct = sym_complex_with(&g, p.n, limits).map_err(domain)?;
            let q = quotient_sym_with(&g, p.n, limits).map_err(domain)?;
            let cmp = compare_constructions(&g, &direct, &q);
            let mut report = json!({
                "match": cmp.matches,
                "f_vector": cmp.direct_f_vector,
                "quotient_f_vector": cmp.quotient_f_vector,
            });
            if let Some(m) = &cmp.mismatch {
                report["mismatch"] = json!(m);
            }
            Ok(Outcome {
                report,
                text: None,
                ok: cmp.matches,
            })
        }
        Command::Skeleton { power, weights } => {
            let g = load(&power.input)?;
            let w = VertexWeights::from_labels(&g, weights.iter().map(|(v, x)| (v.as_str(), *x)))
                .map_err(Failure::Domain)?;
            let sk = skeleton_complex_with(&g, &w, power.n, limits).map_err(domain)?;
            let mut report = sk.complex.report(|c| c.name(&sk.span), cli.dump_cells);
            let mut vw = Map::new();
            for (c, x) in &sk.vertex_weights {
                vw.insert(c.name(&g), json!(x));
            }
            report["span"] = json!(sk.span.to_graph_file());
            report["vertex_weights"] = Value::Object(vw);
            Ok(Outcome::ok(report))
        }
    }
}

fn facets(g: &OrientedGraph, j: &IndexSet) -> Result<Value, Failure> {
    let strata = enumerate_strata(g, j).map_err(domain)?;
    let tuples = enumerate_tuples(g, j).map_err(domain)?;
    let xj = expand(g, j);
    let r = j.len();
    let faces: Vec<IndexSet> = (1..=r).filter_map(|k| j.without(k)).collect();
    if faces.is_empty() {
        return Err(Failure::Domain(format!("the index set {j} has no facets")));
    }
    let xs: Vec<_> = faces.iter().map(|i| expand(g, i)).collect();

    let mut strata_out = Vec::with_capacity(strata.len());
    for s in &strata {
        let mut fs = Vec::with_capacity(r);
        for k in 1..=r {
            let (i, t) = stratum_facet(g, j, s, k).map_err(domain)?;
            fs.push(json!({"k": k, "index_set": i.members(), "stratum": t.to_json(g)}));
        }
        strata_out.push(json!({"stratum": s.to_json(g), "facets": fs}));
    }
    let mut tuples_out = Vec::with_capacity(tuples.len());
    for z in &tuples {
        let mut fs = Vec::with_capacity(r);
        for k in 1..=r {
            let t = tuple_facet(g, j, z, k).map_err(domain)?;
            fs.push(json!({"k": k, "index_set": faces[k - 1].members(), "tuple": t.to_json(g, &xs[k - 1])}));
        }
        tuples_out.push(json!({"tuple": z.to_json(g, &xj), "facets": fs}));
    }
    Ok(json!({
        "index_set": j.members(),
        "strata": strata_out,
        "tuples": tuples_out,
    }))
}

fn error_line(message: &str) -> String {
    json!({ "error": message.trim() }).to_string()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let summary: Vec<&str> = msg
                .lines()
                .take_while(|l| !l.starts_with("Usage:"))
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .collect();
            println!("{}", error_line(summary.join(" ").trim_start_matches("error: ")));
            return ExitCode::from(2);
        }
    };

    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("warning: {e}");
        }
    }

    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", out.report),
                Format::Text => print!("{}", out.text.unwrap_or_else(|| text::render(&out.report))),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            println!("{}", error_line(&m));
            ExitCode::from(2)
        }
        Err(Failure::Domain(m)) => {
            println!("{}", error_line(&m));
            ExitCode::from(1)
        }
    }
}
