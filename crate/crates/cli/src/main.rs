mod render;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use patpoly::census::{run_census, write_rows, OutputFormat};
use patpoly::designs::DesignKind;
use patpoly::graphs::{generate, parse_generator_spec, parse_graph6, Graph};
use patpoly::Error;

const GEN_HELP: &str = "Generator spec: NAME or NAME:PARAM. Names: complete:N, empty:N, \
cycle:N, path:N, hypercube:D, prism:N, petersen, complete-bipartite:A,B. \
Shorthands kN, cN, pN are accepted (e.g. k4, c6).";

/// Pattern polynomial graphs: classification, pattern and coherent bases,
/// polynomial graphs and block designs.
#[derive(Parser)]
#[command(name = "patpoly", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full classification report for one graph.
    Classify(GraphArgs),
    /// Classify every graph6 line of a file.
    Census(CensusArgs),
    /// Pattern classes and their polynomials.
    Patterns(GraphArgs),
    /// Coherent closure by pairwise refinement.
    Closure(GraphArgs),
    /// All graphs polynomial in a pattern polynomial graph.
    Polyenum(GraphArgs),
    /// Block design of a graph and its PBIBD parameters.
    Designs(DesignArgs),
}

#[derive(Args)]
struct GraphArgs {
    /// Graph in graph6 format.
    #[arg(required_unless_present = "gen", conflicts_with = "gen")]
    graph6: Option<String>,
    #[arg(long = "gen", value_name = "SPEC", help = GEN_HELP)]
    gen: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CensusArgs {
    /// File with one graph6 string per line.
    path: PathBuf,
    /// Write rows here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Emit JSON lines instead of CSV.
    #[arg(long)]
    json: bool,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    /// Blocks are edges.
    D1,
    /// Blocks are open neighbourhoods.
    D2,
    /// Blocks are closed neighbourhoods.
    D3,
}

#[derive(Args)]
struct DesignArgs {
    #[command(flatten)]
    x: GraphArgs,
    #[arg(long, value_enum)]
    kind: Kind,
    /// Graph the design is built from, in graph6; defaults to the input graph.
    #[arg(long, value_name = "GRAPH6", conflicts_with = "y_gen")]
    y: Option<String>,
    /// Generator spec for the design graph.
    #[arg(long, value_name = "SPEC")]
    y_gen: Option<String>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Graph6(_) | Error::Graph(_) => 2,
            Error::Inconsistent(_) | Error::Matrix(_) => 4,
            _ => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

fn load(graph6: Option<&str>, spec: Option<&str>) -> Result<Graph, Failure> {
    match (graph6, spec) {
        (_, Some(spec)) => {
            let family = parse_generator_spec(spec)
                .map_err(|e| Failure::parse(format!("generator spec '{spec}': {e}")))?;
            generate(family).map_err(|e| Failure::parse(format!("generator spec '{spec}': {e}")))
        }
        (Some(text), None) => {
            parse_graph6(text).map_err(|e| Failure::parse(format!("graph6 '{text}': {e}")))
        }
        (None, None) => Err(Failure {
            code: 1,
            message: "no input graph given".into(),
        }),
    }
}

fn emit(text: &str) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Classify(a) => {
            let g = load(a.graph6.as_deref(), a.gen.as_deref())?;
            emit(&render::classify(&g, a.json)?)
        }
        Command::Patterns(a) => {
            let g = load(a.graph6.as_deref(), a.gen.as_deref())?;
            emit(&render::patterns(&g, a.json)?)
        }
        Command::Closure(a) => {
            let g = load(a.graph6.as_deref(), a.gen.as_deref())?;
            emit(&render::closure(&g, a.json)?)
        }
        Command::Polyenum(a) => {
            let g = load(a.graph6.as_deref(), a.gen.as_deref())?;
            emit(&render::polyenum(&g, a.json)?)
        }
        Command::Designs(a) => {
            let x = load(a.x.graph6.as_deref(), a.x.gen.as_deref())?;
            let y = match (&a.y, &a.y_gen) {
                (None, None) => x.clone(),
                (y, y_gen) => load(y.as_deref(), y_gen.as_deref())?,
            };
            let kind = match a.kind {
                Kind::D1 => DesignKind::Edges,
                Kind::D2 => DesignKind::OpenNeighborhoods,
                Kind::D3 => DesignKind::ClosedNeighborhoods,
            };
            emit(&render::designs(&x, &y, kind, a.x.json)?)
        }
        Command::Census(a) => census(a),
    }
}

fn census(a: CensusArgs) -> Result<(), Failure> {
    let bytes =
        fs::read(&a.path).map_err(|e| Failure::parse(format!("{}: {e}", a.path.display())))?;
    let text = String::from_utf8_lossy(&bytes);
    let census = run_census(&text, a.jobs)?;
    for w in &census.warnings {
        eprintln!("warning: {}: {w}", a.path.display());
    }
    let format = if a.json {
        OutputFormat::Jsonl
    } else {
        OutputFormat::Csv
    };
    match &a.out {
        Some(path) => {
            let file = fs::File::create(path)
                .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
            write_rows(&census.rows, format, io::BufWriter::new(file))?;
            emit(&format!("{}\n", census.summary))
        }
        None => {
            write_rows(&census.rows, format, io::stdout().lock())?;
            eprintln!("{}", census.summary);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
