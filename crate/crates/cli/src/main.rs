//! `halfint`: exact reports on half-integral polytopes, zonotopes and routings.

mod render;

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use halfint::flows::{self, Routing};
use halfint::graphs::{cartesian_product, Graph, MAX_BRUTEFORCE_VERTICES};
use halfint::zonotope::{self, GeneratorSet, MAX_ENUMERATED_GENERATORS};
use halfint::{xi, Error};

use render::Format;

/// Largest `d` for which `xi --report skeleton` runs.
const MAX_SKELETON_D: usize = 7;

#[derive(Parser, Debug)]
#[command(name = "halfint", version, about = "Exact reports on half-integral polytopes, zonotopes and routings")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for the parallel searches.
    #[arg(long, global = true, env = "HALFINT_THREADS")]
    threads: Option<usize>,

    /// Add a decimal rendering next to every exact rational field.
    #[arg(long, global = true)]
    approx: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The sparse-cut polytope family (d ≡ 3 mod 4).
    Xi {
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum)]
        report: XiReport,
    },
    /// Zonotope generator sets read as JSON from --input or stdin.
    Zono {
        #[arg(value_enum)]
        action: ZonoAction,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Congestion of the explicit routing schemes.
    Flow {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        d: Option<usize>,
        /// Factors for `--family product`, e.g. `cube:2,hexagon,punctured:4`.
        #[arg(long, value_delimiter = ',')]
        factors: Vec<String>,
        /// Also write the full routing as JSON.
        #[arg(long)]
        export_routing: Option<PathBuf>,
    },
    /// Graph tools. Each source is a JSON file, `-` for stdin, or a builtin
    /// such as `builtin:cycle:6`, `builtin:path:3`, `builtin:complete:4`,
    /// `builtin:cube:3`.
    Graph {
        #[arg(value_enum)]
        action: GraphAction,
        #[arg(required = true)]
        sources: Vec<String>,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum XiReport {
    Counts,
    Cut,
    Skeleton,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ZonoAction {
    Vertices,
    Check,
    Recognize,
    Realize,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Family {
    Cube,
    Punctured,
    Hexagon,
    Product,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum GraphAction {
    Expansion,
    Product,
}

/// A failed run: message and exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self {
            code: if e.is_precondition_violation() { 3 } else { 2 },
            message: e.to_string(),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// A report as JSON, plus a DOT rendering when the report is a graph.
struct Report {
    json: Value,
    dot: Option<String>,
}

impl Report {
    fn json(json: Value) -> Self {
        Self { json, dot: None }
    }

    fn graph(json: Value, g: &Graph) -> Self {
        Self {
            json,
            dot: Some(g.to_dot()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Outcome<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::usage(format!("thread pool: {e}")))?;
    }
    let report = match &cli.command {
        Command::Xi { d, report } => cmd_xi(*d, *report)?,
        Command::Zono { action, input } => cmd_zono(*action, input.as_deref())?,
        Command::Flow {
            family,
            d,
            factors,
            export_routing,
        } => cmd_flow(*family, *d, factors, export_routing.as_deref())?,
        Command::Graph { action, sources } => cmd_graph(*action, sources)?,
    };
    let text = render::render(report.json, report.dot, cli.format, cli.approx).map_err(Failure::usage)?;
    write_output(cli.out.as_deref(), &text)
}

fn write_output(out: Option<&Path>, text: &str) -> Outcome<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_input(path: Option<&Path>) -> Outcome<String> {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::read_to_string(p).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::usage(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn cmd_xi(d: usize, kind: XiReport) -> Outcome<Report> {
    xi::validate_d(d)?;
    match kind {
        XiReport::Counts => {
            let (integral, centers) = xi::vertex_count_closed_form(d)?;
            let enumerated = (d <= xi::MAX_ENUMERATE_D)
                .then(|| xi::count_by_enumeration(d))
                .transpose()?;
            let matches = enumerated
                .map(|e| u128::from(e.integral) == integral && u128::from(e.centers) == centers);
            Ok(Report::json(json!({
                "d": d,
                "integral": integral,
                "centers": centers,
                "total": integral + centers,
                "lower_side": (integral + centers) / 2,
                "crossing_edges": xi::crossing_edge_count(d)?,
                "enumerated": enumerated,
                "enumeration_matches": matches,
            })))
        }
        XiReport::Cut => Ok(Report::json(to_value(&xi::cut_report(d)?))),
        XiReport::Skeleton => {
            if d > MAX_SKELETON_D {
                return Err(Failure::usage(format!(
                    "desk-scale guard: skeleton needs d ≤ {MAX_SKELETON_D}, got {d}"
                )));
            }
            let inst = xi::build(d)?;
            let g = inst.skeleton()?;
            let pts = inst.vertices.points();
            let crossing = g
                .edges()
                .iter()
                .filter(|&&(a, b)| (pts[a].sum() <= inst.slab_low) != (pts[b].sum() <= inst.slab_low))
                .count();
            let json = json!({
                "d": d,
                "graph": to_value(&g),
                "crossing_edges": crossing,
                "crossing_matches_closed_form": crossing as u128 == xi::crossing_edge_count(d)?,
            });
            Ok(Report::graph(json, &g))
        }
    }
}

fn check_generators(gs: &GeneratorSet) -> Outcome<()> {
    if gs.len() > MAX_ENUMERATED_GENERATORS {
        return Err(Failure::usage(format!(
            "desk-scale guard: at most {MAX_ENUMERATED_GENERATORS} generators, got {}",
            gs.len()
        )));
    }
    Ok(())
}

fn cmd_zono(action: ZonoAction, input: Option<&Path>) -> Outcome<Report> {
    let text = read_input(input)?;
    if let ZonoAction::Realize = action {
        let g = Graph::from_json_str(&text)?;
        let gs: GeneratorSet = zonotope::realize_half_integral(&g)?;
        return Ok(Report::json(to_value(&gs)));
    }
    let gs: GeneratorSet = GeneratorSet::from_json_str(&text)?;
    check_generators(&gs)?;
    match action {
        ZonoAction::Vertices => Ok(Report::json(to_value(&zonotope::zonotope_vertices(&gs)?))),
        ZonoAction::Check => {
            let mut v = to_value(&zonotope::is_half_integral(&gs)?);
            v["coordinate_budget"] = to_value(&zonotope::coordinate_budget(&gs));
            Ok(Report::json(v))
        }
        ZonoAction::Recognize => {
            let dec = zonotope::recognize_graphical(&gs)?;
            Ok(Report::graph(to_value(&dec), &dec.graph))
        }
        ZonoAction::Realize => unreachable!("handled above"),
    }
}

fn need_d(d: Option<usize>, family: &str) -> Outcome<usize> {
    d.ok_or_else(|| Failure::usage(format!("--family {family} needs --d")))
}

/// A factor routing from a spec such as `cube:3`, `punctured:4`, `hexagon`.
fn factor_routing(spec: &str) -> Outcome<Routing> {
    let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let d = || {
        arg.parse::<usize>()
            .map_err(|_| Failure::usage(format!("factor `{spec}` needs a dimension, e.g. {kind}:3")))
    };
    match kind {
        "cube" => Ok(flows::bitfix_routing(d()?)?),
        "punctured" => Ok(flows::punctured_routing(d()?)?.routing),
        "hexagon" => Ok(flows::hexagon_routing()),
        _ => Err(Failure::usage(format!(
            "unknown factor `{spec}` (expected cube:D, punctured:D or hexagon)"
        ))),
    }
}

fn cmd_flow(family: Family, d: Option<usize>, factors: &[String], export: Option<&Path>) -> Outcome<Report> {
    let mut extra = serde_json::Map::new();
    let routing = match family {
        Family::Cube => flows::bitfix_routing(need_d(d, "cube")?)?,
        Family::Punctured => {
            let p = flows::punctured_routing(need_d(d, "punctured")?)?;
            extra.insert("within_hypothesis".into(), json!(p.within_hypothesis));
            extra.insert("detour_sets_disjoint".into(), json!(p.sets_disjoint));
            extra.insert("detour_arcs_near_origin".into(), json!(p.rerouted_near_origin.len()));
            extra.insert("detour_arcs_near_top".into(), json!(p.rerouted_near_top.len()));
            p.routing
        }
        Family::Hexagon => flows::hexagon_routing(),
        Family::Product => {
            if factors.len() < 2 {
                return Err(Failure::usage("--family product needs at least two --factors"));
            }
            let mut acc = factor_routing(&factors[0])?;
            for f in &factors[1..] {
                acc = flows::product_routing(&acc, &factor_routing(f)?)?;
            }
            extra.insert("factors".into(), json!(factors));
            acc
        }
    };
    if let Some(path) = export {
        fs::write(path, routing.to_json_string())
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    }
    let report = flows::congestion(&routing)?;
    let mut v = to_value(&report);
    v["expansion_lower_bound"] = json!(flows::expansion_lower_bound(&report)?.to_string());
    let obj = v.as_object_mut().expect("report is an object");
    obj.insert(
        "family".into(),
        json!(format!("{family:?}").to_lowercase()),
    );
    if let Some(d) = d {
        obj.insert("d".into(), json!(d));
    }
    obj.extend(extra);
    Ok(Report::json(v))
}

fn load_graph(source: &str) -> Outcome<Graph> {
    if let Some(spec) = source.strip_prefix("builtin:") {
        let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
        let n: usize = arg
            .parse()
            .map_err(|_| Failure::usage(format!("builtin `{spec}` needs a size, e.g. {kind}:4")))?;
        return match kind {
            "cycle" if n >= 3 => Ok(Graph::cycle(n)),
            "path" => Ok(Graph::path(n)),
            "complete" => Ok(Graph::complete(n)),
            "cube" if n <= 20 => Ok(Graph::hypercube(n)),
            _ => Err(Failure::usage(format!("unknown or out-of-range builtin `{spec}`"))),
        };
    }
    let path = (source != "-").then(|| Path::new(source));
    Ok(Graph::from_json_str(&read_input(path)?)?)
}

fn cmd_graph(action: GraphAction, sources: &[String]) -> Outcome<Report> {
    match action {
        GraphAction::Expansion => {
            let [source] = sources else {
                return Err(Failure::usage("expansion takes exactly one graph"));
            };
            let g = load_graph(source)?;
            if g.n() > MAX_BRUTEFORCE_VERTICES {
                return Err(Failure::usage(format!(
                    "desk-scale guard: expansion needs n ≤ {MAX_BRUTEFORCE_VERTICES}, got {}",
                    g.n()
                )));
            }
            let (h, cut) = g.expansion_bruteforce()?;
            Ok(Report::json(json!({
                "n": g.n(),
                "expansion": h.to_string(),
                "witness": to_value(&cut),
            })))
        }
        GraphAction::Product => {
            let [a, b] = sources else {
                return Err(Failure::usage("product takes exactly two graphs"));
            };
            let g = cartesian_product(&load_graph(a)?, &load_graph(b)?);
            Ok(Report::graph(to_value(&g), &g))
        }
    }
}
