//! Subcommands, output formats and exit codes.
//!
//! Exit codes: 0 success, 1 closed-form mismatch, 2 usage or parse error,
//! 3 internal failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use multitori::assembly::StructureParams;
use multitori::closedform::{
    counts_closed, cross_validate, ClosedFormError, CountNote, ValidationReport,
};
use multitori::omega::{co_cuts, strip_partition, OmegaError};
use multitori::ringbasis::{ring_size_census, MAX_RMAX, MIN_RMAX};
use multitori::{chordless_cycles, ci, CombMap, Graph, OmegaPolynomial};

use crate::dsl::{self, BuildError, StructureSpec};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Mismatch(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<BuildError> for CliError {
    fn from(e: BuildError) -> Self {
        match e {
            // a validated structure that fails to assemble is our bug
            BuildError::Assembly(e) => CliError::Internal(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn omega_error(e: OmegaError) -> CliError {
    match e {
        OmegaError::Disconnected | OmegaError::Ring(_) => CliError::Usage(e.to_string()),
        other => CliError::Internal(other.to_string()),
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "multitori",
    version,
    about = "Build all-pentagonal multi-tori and compute their topological indices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a structure and export its graph
    Generate {
        spec: String,
        #[arg(long, value_enum, default_value_t = Export::Edgelist)]
        export: Export,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Omega polynomial of a structure or edge-list graph
    Omega(IndexArgs),
    /// CI index of a structure or edge-list graph
    Ci(IndexArgs),
    /// Vertex, edge, face and monomer counts with genus
    Counts {
        spec: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Census of chordless rings up to the size limit
    Rings {
        #[command(flatten)]
        index: IndexArgs,
        /// Also list every ring
        #[arg(long)]
        list: bool,
    },
    /// Classes of the codistance relation on edges
    Cuts(IndexArgs),
    /// Compare graph-level results with the closed formulas
    Verify {
        /// Structure to check; all named families when omitted
        spec: Option<String>,
        /// Ring size limit (5 or 6); both when omitted
        #[arg(long)]
        rmax: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Machine-readable JSON output
    #[arg(long)]
    json: bool,
    /// Write output to a file instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct IndexArgs {
    #[arg(required_unless_present = "graph", conflicts_with = "graph")]
    spec: Option<String>,
    /// Read an edge list ("v e" header, one "a b" pair per line) instead of a spec
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// Largest ring size used for the strips
    #[arg(long, default_value_t = 6, value_parser = parse_rmax)]
    rmax: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Export {
    Edgelist,
    Json,
}

fn parse_rmax(s: &str) -> Result<usize, String> {
    let r: usize = s
        .parse()
        .map_err(|_| format!("`{}` is not an integer", s))?;
    if (MIN_RMAX..=MAX_RMAX).contains(&r) {
        Ok(r)
    } else {
        Err(format!("rmax must be in {}..={}", MIN_RMAX, MAX_RMAX))
    }
}

/// Graph and, when built from a spec, the map it came from.
struct Input {
    label: String,
    graph: Graph,
    map: Option<CombMap>,
    params: Option<StructureParams>,
}

fn parse_spec(text: &str) -> Result<StructureSpec, CliError> {
    dsl::parse(text).map_err(|e| CliError::Usage(e.to_string()))
}

fn load_spec(text: &str) -> Result<Input, CliError> {
    let spec = parse_spec(text)?;
    let map = spec.build()?;
    Ok(Input {
        label: spec.to_string(),
        graph: map.graph(),
        map: Some(map),
        params: spec.params(),
    })
}

fn load(args: &IndexArgs) -> Result<Input, CliError> {
    match (&args.spec, &args.graph) {
        (Some(spec), _) => load_spec(spec),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {}", path.display(), e)))?;
            let graph = Graph::parse_edge_list(&text)
                .map_err(|e| CliError::Usage(format!("{}: {}", path.display(), e)))?;
            Ok(Input {
                label: path.display().to_string(),
                graph,
                map: None,
                params: None,
            })
        }
        (None, None) => Err(CliError::Usage(
            "a structure spec or --graph FILE is required".into(),
        )),
    }
}

fn emit(output: &OutputArgs, text: String, out: &mut dyn Write) -> Result<(), CliError> {
    match &output.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {}", path.display(), e))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Internal(e.to_string())),
    }
}

fn to_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values always serialize");
    s.push('\n');
    s
}

fn polynomial_json(p: &OmegaPolynomial) -> Value {
    Value::Array(p.terms().map(|(s, m)| json!([s, m])).collect())
}

fn note_json(n: &CountNote) -> Value {
    json!({
        "quantity": n.quantity,
        "published": n.published,
        "published_formula": n.published_formula,
        "constructed": n.constructed,
        "constructed_formula": n.constructed_formula,
    })
}

fn index_json(input: &Input, rmax: usize, p: &OmegaPolynomial, ci_value: u64) -> Value {
    let summary = input.map.as_ref().map(CombMap::summary);
    json!({
        "structure": input.label,
        "rmax": rmax,
        "v": input.graph.vertex_count(),
        "e": input.graph.edge_count(),
        "f5": summary.map(|s| s.f5),
        "genus": summary.and_then(|s| s.genus_pentagonal),
        "omega": polynomial_json(p),
        "ci": ci_value,
    })
}

fn omega_and_ci(input: &Input, rmax: usize) -> Result<(OmegaPolynomial, u64), CliError> {
    let p = multitori::omega(&input.graph, rmax).map_err(omega_error)?;
    let c = ci(&p).map_err(omega_error)?;
    Ok((p, c))
}

fn generate(
    spec: &str,
    export: Export,
    output: &OutputArgs,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let input = load_spec(spec)?;
    let map = input.map.as_ref().expect("specs always carry a map");
    let json_requested = output.json || export == Export::Json;
    let text = if json_requested {
        let edges: Vec<Value> = input
            .graph
            .edges()
            .iter()
            .map(|&(a, b)| json!([a, b]))
            .collect();
        to_json(&json!({
            "structure": input.label,
            "v": input.graph.vertex_count(),
            "e": input.graph.edge_count(),
            "edges": edges,
            "ports": map.ports(),
            "rotation": (0..map.vertex_count() as u32).map(|v| map.rotation(v).to_vec()).collect::<Vec<_>>(),
        }))
    } else {
        input.graph.to_edge_list()
    };
    emit(output, text, out)
}

fn counts(spec: &str, output: &OutputArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let input = load_spec(spec)?;
    let s = input
        .map
        .as_ref()
        .expect("specs always carry a map")
        .summary();
    let tt = match input.params {
        Some(p) => Some(
            p.skeleton()
                .map_err(|e| CliError::Internal(e.to_string()))?
                .vertex_count(),
        ),
        None => None,
    };
    let closed = match input.params {
        Some(p) => Some(counts_closed(&p).map_err(|e| CliError::Internal(e.to_string()))?),
        None => None,
    };
    if let (Some(c), Some(tt)) = (closed, tt) {
        if c.tt != tt as u64 || c.v != s.v as u64 {
            return Err(CliError::Mismatch(format!(
                "{}: closed counts tt={} v={} differ from the graph tt={} v={}",
                input.label, c.tt, c.v, tt, s.v
            )));
        }
    }
    let notes: Vec<CountNote> = closed.and_then(|c| c.note).into_iter().collect();
    let text = if output.json {
        to_json(&json!({
            "structure": input.label,
            "tt": tt,
            "v": s.v,
            "e": s.e,
            "f5": s.f5,
            "ports": s.ports,
            "genus": s.genus_pentagonal,
            "genus_embedding": s.genus_embedding,
            "notes": notes.iter().map(note_json).collect::<Vec<_>>(),
        }))
    } else {
        let mut t = format!("structure: {}\n", input.label);
        if let Some(tt) = tt {
            t += &format!("tt: {}\n", tt);
        }
        t += &format!("v: {}\ne: {}\nf5: {}\nports: {}\n", s.v, s.e, s.f5, s.ports);
        match s.genus_pentagonal {
            Some(g) => t += &format!("genus: {}\n", g),
            None => t += "genus: undefined (v - e + f5 is odd)\n",
        }
        t += &format!("genus_embedding: {}\n", s.genus_embedding);
        for n in &notes {
            t += &format!("note: {}\n", n);
        }
        t
    };
    emit(output, text, out)
}

fn rings(args: &IndexArgs, list: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let input = load(args)?;
    let basis =
        chordless_cycles(&input.graph, args.rmax).map_err(|e| CliError::Usage(e.to_string()))?;
    let census = ring_size_census(&basis);
    let text = if args.output.json {
        let mut value = json!({
            "structure": input.label,
            "rmax": args.rmax,
            "census": census.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
            "total": basis.len(),
        });
        if list {
            value["rings"] = basis
                .rings()
                .iter()
                .map(|r| r.vertices().to_vec())
                .collect::<Vec<_>>()
                .into();
        }
        to_json(&value)
    } else {
        let mut t = format!("structure: {}\nrmax: {}\n", input.label, args.rmax);
        for (size, count) in &census {
            t += &format!("size {}: {}\n", size, count);
        }
        t += &format!("total: {}\n", basis.len());
        if list {
            for r in basis.rings() {
                t += &format!("{}\n", r);
            }
        }
        t
    };
    emit(&args.output, text, out)
}

fn cuts(args: &IndexArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let input = load(args)?;
    let co = co_cuts(&input.graph).map_err(omega_error)?;
    let basis =
        chordless_cycles(&input.graph, args.rmax).map_err(|e| CliError::Usage(e.to_string()))?;
    let strips = strip_partition(&input.graph, &basis).map_err(omega_error)?;
    let equals_strips = co.classes.as_slice() == strips.classes();
    let sizes = OmegaPolynomial::from_strip_sizes(co.sizes());
    let text = if args.output.json {
        let classes: Vec<Vec<Value>> = co
            .classes
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&id| {
                        let (a, b) = input.graph.edge(id);
                        json!([a, b])
                    })
                    .collect()
            })
            .collect();
        to_json(&json!({
            "structure": input.label,
            "e": input.graph.edge_count(),
            "classes": classes,
            "class_sizes": polynomial_json(&sizes),
            "transitive": co.transitive,
            "rmax": args.rmax,
            "equals_strips": equals_strips,
        }))
    } else {
        format!(
            "structure: {}\ne: {}\nclasses: {}\nclass sizes: {}\ntransitive: {}\nequals strips at rmax={}: {}\n",
            input.label,
            input.graph.edge_count(),
            co.classes.len(),
            sizes,
            co.transitive,
            args.rmax,
            equals_strips
        )
    };
    emit(&args.output, text, out)
}

/// Every named structure the closed formulas cover.
pub fn named_structures() -> Vec<StructureParams> {
    let mut all: Vec<StructureParams> = (1..=17).map(StructureParams::dendrimer).collect();
    all.extend((1..=6).map(|u| StructureParams::ULinear { u }));
    all.extend((6..=8).map(|u| StructureParams::UCyclic { u }));
    all.push(StructureParams::MT12U);
    all
}

fn report_json(r: &ValidationReport) -> Value {
    json!({
        "structure": r.params.to_string(),
        "rmax": r.rmax,
        "passed": r.passed(),
        "comparisons": r.comparisons.iter().map(|c| json!({
            "quantity": c.quantity,
            "graph": c.graph,
            "closed": c.closed,
            "agrees": c.agrees(),
        })).collect::<Vec<_>>(),
        "notes": r.notes.iter().map(note_json).collect::<Vec<_>>(),
    })
}

fn verify(
    spec: Option<&str>,
    rmax: Option<usize>,
    output: &OutputArgs,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let targets = match spec {
        Some(text) => {
            let parsed = parse_spec(text)?;
            let params = parsed.params().ok_or_else(|| {
                CliError::Usage(format!(
                    "`{}` has no closed formulas; give a named structure",
                    parsed
                ))
            })?;
            vec![params]
        }
        None => named_structures(),
    };
    let levels = match rmax {
        Some(r) => vec![r],
        None => vec![5, 6],
    };
    let mut reports = Vec::new();
    for params in &targets {
        for &r in &levels {
            let report = cross_validate(params, r).map_err(|e| match e {
                ClosedFormError::UnsupportedRmax(_) | ClosedFormError::Params(_) => {
                    CliError::Usage(e.to_string())
                }
                other => CliError::Internal(other.to_string()),
            })?;
            reports.push(report);
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let text = if output.json {
        to_json(&json!({
            "passed": failed == 0,
            "reports": reports.iter().map(report_json).collect::<Vec<_>>(),
        }))
    } else {
        let mut t = String::new();
        for r in &reports {
            t += &format!("{}\n", r);
        }
        t += &format!(
            "{} of {} checks passed\n",
            reports.len() - failed,
            reports.len()
        );
        t
    };
    emit(output, text, out)?;
    if failed > 0 {
        return Err(CliError::Mismatch(format!(
            "{} check(s) disagree with the closed formulas",
            failed
        )));
    }
    Ok(())
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Generate {
            spec,
            export,
            output,
        } => generate(&spec, export, &output, out),
        Command::Omega(args) => {
            let input = load(&args)?;
            let (p, c) = omega_and_ci(&input, args.rmax)?;
            let text = if args.output.json {
                to_json(&index_json(&input, args.rmax, &p, c))
            } else {
                format!("{}\n", p)
            };
            emit(&args.output, text, out)
        }
        Command::Ci(args) => {
            let input = load(&args)?;
            let (p, c) = omega_and_ci(&input, args.rmax)?;
            let text = if args.output.json {
                to_json(&index_json(&input, args.rmax, &p, c))
            } else {
                format!("{}\n", c)
            };
            emit(&args.output, text, out)
        }
        Command::Counts { spec, output } => counts(&spec, &output, out),
        Command::Rings { index, list } => rings(&index, list, out),
        Command::Cuts(args) => cuts(&args, out),
        Command::Verify { spec, rmax, output } => verify(spec.as_deref(), rmax, &output, out),
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                2
            } else {
                let _ = out.write_all(text.as_bytes());
                0
            };
        }
    };
    match dispatch(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{}", e);
            e.exit_code()
        }
    }
}
