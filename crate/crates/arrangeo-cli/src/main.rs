//! `arrangeo` — command-line interface over the arrangeo library.
//!
//! Every subcommand reads the documented JSON file formats, prints a
//! human-readable report (or a stable JSON report with `--json`), and exits
//! with 0 when the command succeeded or the queried predicate holds, 1 when
//! a predicate is honestly false, and 2 on any error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use arrangeo::arrangement::Arrangement;
use arrangeo::arriso::{find_isomorphism, is_isomorphism, translation_equivalent, IsoVerdict};
use arrangeo::compat3d::build_graph;
use arrangeo::concurr::{
    cone_count_bound, cone_facets, cone_signature, concurrency_hyperplanes, cross_facet,
    simplex_polyhedralities,
};
use arrangeo::exactmath::{parse_rational, QVector, Sign};
use arrangeo::infinity::{
    extend_at_infinity, induced_arrangement, is_at_infinity, is_infinity_arrangement,
};
use arrangeo::normsys::{find_cpb, is_cpb, AntipodalMap, CpbVerdict, NormalSystem, SignedVector};
use arrangeo::regions::enumerate_regions;
use arrangeo::{Error, Result};

/// Writes to stdout, treating a closed pipe as a normal early exit (the
/// consumer stopped reading) and any other write failure as an error.
fn out(args: std::fmt::Arguments) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = stdout.write_fmt(args) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: could not write to stdout: {e}");
        std::process::exit(2);
    }
}

/// `outln!` routed through [`out`].
macro_rules! outln {
    ($($arg:tt)*) => { out(format_args!("{}\n", format_args!($($arg)*))) };
}

/// `outp!` routed through [`out`].
macro_rules! outp {
    ($($arg:tt)*) => { out(format_args!($($arg)*)) };
}

#[derive(Parser)]
#[command(
    name = "arrangeo",
    version,
    about = "Exact computations on hyperplane arrangements in general position over the rationals"
)]
struct Cli {
    /// Emit a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an arrangement file and check general position.
    Validate { file: PathBuf },
    /// List all vertices (m-subset and point).
    Vertices { file: PathBuf },
    /// List the flats cut out by k-subsets of hyperplanes.
    Skeleton {
        file: PathBuf,
        /// Subset size (1..=m).
        #[arg(long)]
        k: usize,
    },
    /// Enumerate the open regions with boundedness and witness points.
    Regions { file: PathBuf },
    /// Find (or check, with --perm) an isomorphism between two arrangements.
    Iso {
        file1: PathBuf,
        file2: PathBuf,
        /// Check this 1-based permutation instead of searching.
        #[arg(long)]
        perm: Option<String>,
    },
    /// Decide translation equivalence (shared normal system, any offsets).
    TranslationIso { file1: PathBuf, file2: PathBuf },
    /// Normal-system commands.
    #[command(subcommand)]
    Ns(NsCommand),
    /// Concurrency-arrangement commands (offset-vector cones).
    #[command(subcommand)]
    Concurrency(ConcurrencyCommand),
    /// Hyperplane-at-infinity commands.
    #[command(subcommand)]
    Infinity(InfinityCommand),
    /// Compatible-pairs graph commands (3-dimensional normal systems).
    #[command(subcommand)]
    Compat(CompatCommand),
}

#[derive(Subcommand)]
enum NsCommand {
    /// Extract the normal system of an arrangement as a normal-system file.
    Extract { file: PathBuf },
    /// Check whether a given map is a convex positive bijection.
    CheckCpb {
        file1: PathBuf,
        file2: PathBuf,
        /// 1-based permutation, comma-separated (e.g. "2,1,3").
        #[arg(long)]
        perm: String,
        /// One '+' or '-' per line: '-' sends the representative to its
        /// negative (e.g. "+-+").
        #[arg(long)]
        flips: String,
    },
    /// Search for a convex positive bijection between two normal systems.
    Iso { file1: PathBuf, file2: PathBuf },
}

#[derive(Subcommand)]
enum ConcurrencyCommand {
    /// The concurrency normal of every (m+1)-subset.
    Normals { file: PathBuf },
    /// The side of every concurrency hyperplane the offset vector lies on.
    Signature { file: PathBuf },
    /// The subsets supporting facets of the offset vector's cone.
    Facets { file: PathBuf },
    /// The (m+1)-subsets whose simplex survives as a region.
    Simplices { file: PathBuf },
    /// Move the offsets across a facet into the adjacent cone.
    Cross {
        file: PathBuf,
        /// Facet subset, comma-separated 1-based subscripts (e.g. "1,2,4").
        #[arg(long)]
        subset: String,
    },
}

#[derive(Subcommand)]
enum InfinityCommand {
    /// Append a far hyperplane with the given normal direction.
    Add {
        file: PathBuf,
        /// Direction vector, comma-separated rationals (e.g. "2,1").
        #[arg(long)]
        direction: String,
    },
    /// Is hyperplane INDEX at infinity with respect to the others?
    Check {
        file: PathBuf,
        /// 1-based hyperplane subscript.
        #[arg(long)]
        index: usize,
    },
    /// Find an order building the arrangement by far additions.
    Order { file: PathBuf },
    /// The arrangement the other hyperplanes cut on hyperplane INDEX.
    Induce {
        file: PathBuf,
        /// 1-based hyperplane subscript.
        #[arg(long)]
        index: usize,
    },
}

#[derive(Subcommand)]
enum CompatCommand {
    /// Build the compatible-pairs graph of a 3-dimensional normal system.
    Graph {
        file: PathBuf,
        #[command(flatten)]
        view: GraphView,
    },
}

#[derive(Args)]
#[group(multiple = false)]
struct GraphView {
    /// Print the sorted degree multiset.
    #[arg(long)]
    degrees: bool,
    /// Print one edge per line.
    #[arg(long)]
    edges: bool,
    /// Print the graph in DOT format.
    #[arg(long)]
    dot: bool,
}

fn main() -> ExitCode {
    if let Err(message) = init_threads() {
        eprintln!("error: {message}");
        return ExitCode::from(2);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Caps rayon's global pool when ARRANGEO_THREADS is set.
fn init_threads() -> std::result::Result<(), String> {
    let Ok(raw) = std::env::var("ARRANGEO_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .parse()
        .map_err(|_| format!("ARRANGEO_THREADS must be a positive integer, got {raw:?}"))?;
    if threads == 0 {
        return Err("ARRANGEO_THREADS must be a positive integer, got \"0\"".to_string());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| format!("could not configure {threads} worker threads: {e}"))
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidFile(format!("{}: {e}", path.display())))
}

fn load_arrangement(path: &Path) -> Result<Arrangement> {
    arrangeo::io::arrangement_from_json(&read_file(path)?)
}

fn load_normal_system(path: &Path) -> Result<NormalSystem> {
    arrangeo::io::normal_system_from_json(&read_file(path)?)
}

fn parse_indices(what: &str, raw: &str) -> Result<Vec<usize>> {
    raw.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidFile(format!("{what} must be comma-separated positive integers, got {raw:?}")))
        })
        .collect()
}

fn parse_direction(raw: &str) -> Result<QVector> {
    Ok(QVector::new(
        raw.split(',')
            .map(|part| parse_rational(part.trim()))
            .collect::<Result<Vec<_>>>()?,
    ))
}

fn parse_map(perm: &str, flips: &str) -> Result<AntipodalMap> {
    let perm = parse_indices("--perm", perm)?;
    let flips = flips
        .chars()
        .map(|c| match Sign::from_char(c) {
            Some(Sign::Plus) => Ok(false),
            Some(Sign::Minus) => Ok(true),
            None => Err(Error::InvalidFile(format!(
                "--flips must consist of '+' and '-' characters, found {c:?}"
            ))),
        })
        .collect::<Result<Vec<_>>>()?;
    AntipodalMap::new(perm, flips)
}

fn join_subset(subset: &[usize]) -> String {
    subset
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn signed_vector_string(v: SignedVector) -> String {
    format!("{}{}", v.1.as_char(), v.0)
}

fn flips_string(map: &AntipodalMap) -> String {
    map.flips()
        .iter()
        .map(|&f| if f { '-' } else { '+' })
        .collect()
}

fn subset_json(subset: &[usize]) -> Value {
    Value::Array(subset.iter().map(|&i| json!(i)).collect())
}

fn vector_json(v: &QVector) -> Value {
    Value::Array(
        arrangeo::io::vector_strings(v)
            .into_iter()
            .map(Value::String)
            .collect(),
    )
}

/// Prints a schema-1 JSON report with sorted keys (byte-stable).
fn emit_json(mut report: Value) -> u8 {
    report["schema"] = json!(1);
    outln!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    0
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Validate { file } => {
            let arr = load_arrangement(file)?;
            match arr.general_position_witness() {
                None => {
                    if cli.json {
                        emit_json(json!({
                            "valid": true,
                            "n": arr.len(),
                            "m": arr.dim(),
                        }));
                    } else {
                        outln!(
                            "valid: {} hyperplanes in dimension {}, general position",
                            arr.len(),
                            arr.dim()
                        );
                    }
                    Ok(0)
                }
                Some(witness) => {
                    if cli.json {
                        emit_json(json!({
                            "valid": false,
                            "n": arr.len(),
                            "m": arr.dim(),
                            "witness": subset_json(&witness),
                        }));
                    } else {
                        outln!("not in general position: witness {}", join_subset(&witness));
                    }
                    Ok(1)
                }
            }
        }
        Command::Vertices { file } => {
            let arr = load_arrangement(file)?;
            let vertices = arr.vertices()?;
            if cli.json {
                let rows: Vec<Value> = vertices
                    .iter()
                    .map(|(subset, point)| {
                        json!({ "subset": subset_json(subset), "point": vector_json(point) })
                    })
                    .collect();
                emit_json(json!({ "vertices": rows }));
            } else {
                for (subset, point) in &vertices {
                    outln!("{}: {point}", join_subset(subset));
                }
            }
            Ok(0)
        }
        Command::Skeleton { file, k } => {
            let arr = load_arrangement(file)?;
            let flats = arr.skeleton(*k)?;
            if cli.json {
                let rows: Vec<Value> = flats
                    .iter()
                    .map(|f| {
                        json!({
                            "subset": subset_json(&f.subscripts),
                            "point": vector_json(&f.point),
                            "directions": Value::Array(
                                f.directions.iter().map(vector_json).collect(),
                            ),
                        })
                    })
                    .collect();
                emit_json(json!({ "k": k, "flats": rows }));
            } else {
                for f in &flats {
                    let mut line = format!("{}: point={}", join_subset(&f.subscripts), f.point);
                    let dirs = f
                        .directions
                        .iter()
                        .map(|d| d.to_string())
                        .collect::<Vec<_>>()
                        .join(", ");
                    write!(line, " directions=[{dirs}]").expect("writing to a String");
                    outln!("{line}");
                }
            }
            Ok(0)
        }
        Command::Regions { file } => {
            let arr = load_arrangement(file)?;
            let regions = enumerate_regions(&arr)?;
            let bounded = regions.iter().filter(|r| r.bounded).count();
            let unbounded = regions.len() - bounded;
            if cli.json {
                let rows: Vec<Value> = regions
                    .iter()
                    .map(|r| {
                        json!({
                            "signs": r.signature.to_string(),
                            "bounded": r.bounded,
                            "witness": vector_json(&r.witness),
                        })
                    })
                    .collect();
                emit_json(json!({
                    "total": regions.len(),
                    "bounded": bounded,
                    "unbounded": unbounded,
                    "regions": rows,
                }));
            } else {
                outln!(
                    "{} regions ({bounded} bounded, {unbounded} unbounded)",
                    regions.len()
                );
                for r in &regions {
                    let kind = if r.bounded { "bounded" } else { "unbounded" };
                    outln!("{} {kind} witness={}", r.signature, r.witness);
                }
            }
            Ok(0)
        }
        Command::Iso { file1, file2, perm } => {
            let arr1 = load_arrangement(file1)?;
            let arr2 = load_arrangement(file2)?;
            match perm {
                Some(raw) => {
                    let perm = parse_indices("--perm", raw)?;
                    match is_isomorphism(&arr1, &arr2, &perm)? {
                        IsoVerdict::Holds => {
                            if cli.json {
                                emit_json(json!({ "holds": true }));
                            } else {
                                outln!("isomorphism holds");
                            }
                            Ok(0)
                        }
                        IsoVerdict::Fails { record } => {
                            if cli.json {
                                emit_json(json!({
                                    "holds": false,
                                    "witness": {
                                        "line": subset_json(&record.line),
                                        "triple": Value::Array(
                                            record.triple.iter().map(|t| subset_json(t)).collect(),
                                        ),
                                        "middle": subset_json(&record.middle),
                                    },
                                }));
                            } else {
                                outln!(
                                    "isomorphism fails: on line {} the triple {} / {} / {} has middle {}",
                                    join_subset(&record.line),
                                    join_subset(&record.triple[0]),
                                    join_subset(&record.triple[1]),
                                    join_subset(&record.triple[2]),
                                    join_subset(&record.middle),
                                );
                            }
                            Ok(1)
                        }
                    }
                }
                None => match find_isomorphism(&arr1, &arr2)? {
                    Some(perm) => {
                        if cli.json {
                            emit_json(json!({ "isomorphic": true, "perm": subset_json(&perm) }));
                        } else {
                            outln!("isomorphic: {}", join_subset(&perm));
                        }
                        Ok(0)
                    }
                    None => {
                        if cli.json {
                            emit_json(json!({ "isomorphic": false }));
                        } else {
                            outln!("not isomorphic");
                        }
                        Ok(1)
                    }
                },
            }
        }
        Command::TranslationIso { file1, file2 } => {
            let arr1 = load_arrangement(file1)?;
            let arr2 = load_arrangement(file2)?;
            match translation_equivalent(&arr1, &arr2)? {
                Some(map) => {
                    if cli.json {
                        emit_json(json!({
                            "equivalent": true,
                            "perm": subset_json(map.perm()),
                            "flips": flips_string(&map),
                        }));
                    } else {
                        outln!(
                            "translation-equivalent: perm {} flips {}",
                            join_subset(map.perm()),
                            flips_string(&map)
                        );
                    }
                    Ok(0)
                }
                None => {
                    if cli.json {
                        emit_json(json!({ "equivalent": false }));
                    } else {
                        outln!("not translation-equivalent");
                    }
                    Ok(1)
                }
            }
        }
        Command::Ns(ns) => run_ns(cli, ns),
        Command::Concurrency(c) => run_concurrency(cli, c),
        Command::Infinity(inf) => run_infinity(cli, inf),
        Command::Compat(c) => run_compat(cli, c),
    }
}

fn run_ns(cli: &Cli, command: &NsCommand) -> Result<u8> {
    match command {
        NsCommand::Extract { file } => {
            let arr = load_arrangement(file)?;
            let ns = NormalSystem::from_arrangement(&arr)?;
            outp!("{}", arrangeo::io::normal_system_to_json(&ns));
            Ok(0)
        }
        NsCommand::CheckCpb {
            file1,
            file2,
            perm,
            flips,
        } => {
            let ns1 = load_normal_system(file1)?;
            let ns2 = load_normal_system(file2)?;
            let map = parse_map(perm, flips)?;
            match is_cpb(&ns1, &ns2, &map)? {
                CpbVerdict::Holds => {
                    if cli.json {
                        emit_json(json!({ "holds": true }));
                    } else {
                        outln!("convex positive bijection: holds");
                    }
                    Ok(0)
                }
                CpbVerdict::Fails { base, vector } => {
                    let base_strings: Vec<String> =
                        base.iter().map(|&v| signed_vector_string(v)).collect();
                    if cli.json {
                        emit_json(json!({
                            "holds": false,
                            "witness": {
                                "base": base_strings,
                                "vector": signed_vector_string(vector),
                            },
                        }));
                    } else {
                        outln!(
                            "convex positive bijection: fails (base {}, vector {})",
                            base_strings.join(","),
                            signed_vector_string(vector)
                        );
                    }
                    Ok(1)
                }
            }
        }
        NsCommand::Iso { file1, file2 } => {
            let ns1 = load_normal_system(file1)?;
            let ns2 = load_normal_system(file2)?;
            match find_cpb(&ns1, &ns2)? {
                Some(map) => {
                    if cli.json {
                        emit_json(json!({
                            "isomorphic": true,
                            "perm": subset_json(map.perm()),
                            "flips": flips_string(&map),
                        }));
                    } else {
                        outln!(
                            "isomorphic: perm {} flips {}",
                            join_subset(map.perm()),
                            flips_string(&map)
                        );
                    }
                    Ok(0)
                }
                None => {
                    if cli.json {
                        emit_json(json!({ "isomorphic": false }));
                    } else {
                        outln!("not isomorphic");
                    }
                    Ok(1)
                }
            }
        }
    }
}

fn run_concurrency(cli: &Cli, command: &ConcurrencyCommand) -> Result<u8> {
    match command {
        ConcurrencyCommand::Normals { file } => {
            let arr = load_arrangement(file)?;
            let hyperplanes = concurrency_hyperplanes(&arr)?;
            if cli.json {
                let rows: Vec<Value> = hyperplanes
                    .iter()
                    .map(|h| {
                        json!({
                            "subset": subset_json(h.subset()),
                            "normal": vector_json(h.normal()),
                        })
                    })
                    .collect();
                emit_json(json!({ "normals": rows }));
            } else {
                for h in &hyperplanes {
                    outln!("{}: {}", join_subset(h.subset()), h.normal());
                }
            }
            Ok(0)
        }
        ConcurrencyCommand::Signature { file } => {
            let arr = load_arrangement(file)?;
            let signature = cone_signature(&arr)?;
            let bound = cone_count_bound(arr.len(), arr.dim());
            if cli.json {
                let rows: Vec<Value> = signature
                    .iter()
                    .map(|(subset, sign)| {
                        json!({
                            "subset": subset_json(subset),
                            "sign": sign.as_char().to_string(),
                        })
                    })
                    .collect();
                emit_json(json!({ "signature": rows, "cone_bound": bound.to_string() }));
            } else {
                for (subset, sign) in signature.iter() {
                    outln!("{}:{}", join_subset(subset), sign.as_char());
                }
                outln!("cone bound: {bound}");
            }
            Ok(0)
        }
        ConcurrencyCommand::Facets { file } => {
            let arr = load_arrangement(file)?;
            print_subset_list(cli, "facets", cone_facets(&arr)?)
        }
        ConcurrencyCommand::Simplices { file } => {
            let arr = load_arrangement(file)?;
            print_subset_list(cli, "simplices", simplex_polyhedralities(&arr)?)
        }
        ConcurrencyCommand::Cross { file, subset } => {
            let arr = load_arrangement(file)?;
            let subset = parse_indices("--subset", subset)?;
            let crossed = cross_facet(&arr, &subset)?;
            outp!("{}", arrangeo::io::arrangement_to_json(&crossed));
            Ok(0)
        }
    }
}

fn print_subset_list(cli: &Cli, key: &str, subsets: Vec<Vec<usize>>) -> Result<u8> {
    if cli.json {
        emit_json(json!({
            key: Value::Array(subsets.iter().map(|s| subset_json(s)).collect()),
        }));
    } else {
        for subset in &subsets {
            outln!("{}", join_subset(subset));
        }
    }
    Ok(0)
}

fn run_infinity(cli: &Cli, command: &InfinityCommand) -> Result<u8> {
    match command {
        InfinityCommand::Add { file, direction } => {
            let arr = load_arrangement(file)?;
            let direction = parse_direction(direction)?;
            let extended = extend_at_infinity(&arr, &direction)?;
            outp!("{}", arrangeo::io::arrangement_to_json(&extended));
            Ok(0)
        }
        InfinityCommand::Check { file, index } => {
            let arr = load_arrangement(file)?;
            let (rest, h) = split_off(&arr, *index)?;
            if is_at_infinity(&rest, &h) {
                if cli.json {
                    emit_json(json!({ "at_infinity": true, "index": index }));
                } else {
                    outln!("at infinity");
                }
                Ok(0)
            } else {
                if cli.json {
                    emit_json(json!({ "at_infinity": false, "index": index }));
                } else {
                    outln!("not at infinity");
                }
                Ok(1)
            }
        }
        InfinityCommand::Order { file } => {
            let arr = load_arrangement(file)?;
            match is_infinity_arrangement(&arr)? {
                Some(order) => {
                    if cli.json {
                        emit_json(json!({ "order": subset_json(&order) }));
                    } else {
                        outln!("order: {}", join_subset(&order));
                    }
                    Ok(0)
                }
                None => {
                    if cli.json {
                        emit_json(json!({ "order": Value::Null }));
                    } else {
                        outln!("none");
                    }
                    Ok(1)
                }
            }
        }
        InfinityCommand::Induce { file, index } => {
            let arr = load_arrangement(file)?;
            let (rest, h) = split_off(&arr, *index)?;
            let induced = induced_arrangement(&rest, &h)?;
            outp!("{}", arrangeo::io::arrangement_to_json(&induced));
            Ok(0)
        }
    }
}

/// The arrangement without hyperplane `index`, and that hyperplane.
fn split_off(
    arr: &Arrangement,
    index: usize,
) -> Result<(Arrangement, arrangeo::arrangement::Hyperplane)> {
    if index == 0 || index > arr.len() {
        return Err(Error::InvalidSubset {
            subset: vec![index],
            reason: format!("subscript must lie in 1..={}", arr.len()),
        });
    }
    let rest: Vec<usize> = (1..=arr.len()).filter(|&i| i != index).collect();
    Ok((arr.restriction(&rest)?, arr.hyperplane(index).clone()))
}

fn run_compat(cli: &Cli, command: &CompatCommand) -> Result<u8> {
    match command {
        CompatCommand::Graph { file, view } => {
            let ns = load_normal_system(file)?;
            let graph = build_graph(&ns)?;
            if cli.json {
                let edges: Vec<Value> = graph
                    .edges()
                    .iter()
                    .map(|(p, q)| json!([p.to_string(), q.to_string()]))
                    .collect();
                let degrees: Vec<Value> =
                    graph.degree_profile().iter().map(|&d| json!(d)).collect();
                emit_json(json!({
                    "lines": graph.lines(),
                    "vertices": graph.vertex_count(),
                    "edges": graph.edge_count(),
                    "degree_profile": Value::Array(degrees),
                    "edge_list": Value::Array(edges),
                }));
            } else if view.degrees {
                let profile = graph
                    .degree_profile()
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(",");
                outln!("degrees: {profile}");
            } else if view.edges {
                for (p, q) in graph.edges() {
                    outln!("{p} -- {q}");
                }
            } else if view.dot {
                outln!("graph compat {{");
                for p in graph.vertices() {
                    outln!("  \"{p}\";");
                }
                for (p, q) in graph.edges() {
                    outln!("  \"{p}\" -- \"{q}\";");
                }
                outln!("}}");
            } else {
                outln!("lines: {}", graph.lines());
                outln!("vertices: {}", graph.vertex_count());
                outln!("edges: {}", graph.edge_count());
            }
            Ok(0)
        }
    }
}
