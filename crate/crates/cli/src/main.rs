use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use planar_orient::generate::{generate, GenSpec, Lengths, Model};
use planar_orient::graph::validate_graph;
use planar_orient::io::{read_instance, read_orientation, write_instance, write_orientation};
use planar_orient::orient::Orientation;
use planar_orient::shortest::min_cycle_through;
use planar_orient::verify::{
    cycle_diameter, directed_cycle_diameter, directed_cycle_through, full_report, oracle_opt_orientation,
    run_pipeline, DirectedView, ReportOptions,
};
use planar_orient::{Error, WeightedGraph};
use serde::Serialize;
use serde_json::{json, Value};

/// Orient planar graphs so that every node lies on a short directed cycle through a root.
#[derive(Parser)]
#[command(name = "planar-orient", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that an instance is 2-edge-connected with nonnegative lengths.
    Validate {
        #[arg(long)]
        input: PathBuf,
    },
    /// Generate a seeded planar instance.
    Gen {
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Orient an instance and check every bound.
    Orient {
        #[arg(long)]
        input: PathBuf,
        /// Orientation file to write.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Bound report to write.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Procedure trace to write.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Largest edge count for the exhaustive optimum.
        #[arg(long, default_value_t = 14)]
        max_edges: usize,
    },
    /// Check a given orientation, or the computed one when none is given.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        orientation: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = 14)]
        max_edges: usize,
    },
    /// Exhaustive minimum directed cycle diameter.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 14)]
        max_edges: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a generated corpus and write one CSV row per instance.
    Bench {
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 14)]
        max_edges: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
struct GenArgs {
    #[arg(long, default_value = "delaunay")]
    model: String,
    #[arg(long, default_value_t = 20)]
    nodes: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// `unit` or `uniform:K`.
    #[arg(long, default_value = "unit")]
    lengths: String,
    /// Built-in figure name for the paper-figure model.
    #[arg(long)]
    figure: Option<String>,
}

impl GenArgs {
    fn spec(&self, seed: u64) -> Result<GenSpec, Failure> {
        let model: Model = self.model.parse()?;
        let lengths = match self.lengths.as_str() {
            "unit" => Lengths::Unit,
            s => match s.strip_prefix("uniform:").and_then(|k| k.parse().ok()) {
                Some(k) if k >= 1 => Lengths::Uniform(k),
                _ => return Err(Failure::input(format!("bad --lengths {s}, expected unit or uniform:K"))),
            },
        };
        let mut spec = GenSpec::new(model, self.nodes, seed, lengths);
        spec.figure = self.figure.clone();
        Ok(spec)
    }
}

/// Exit code plus the JSON body printed on stderr.
#[derive(Debug)]
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn input(message: String) -> Self {
        Self { code: 1, kind: "input", message }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::BoundViolation(_) | Error::NotStronglyConnected | Error::Unreachable(..) | Error::BrokenI(_) => {
                "bound"
            }
            Error::UnsupportedInstance(_) => "unsupported",
            _ => "input",
        };
        let code = if kind == "bound" { 2 } else { 1 };
        Self { code, kind, message: e.to_string() }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<WeightedGraph, Failure> {
    Ok(read_instance(&read_text(path)?)?)
}

/// Writes to `path`, or stdout when absent.
fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Validate { input } => {
            let g = load(&input)?;
            let report = validate_graph(&g);
            print!("{}", pretty(&report));
            report.check()?;
            Ok(0)
        }
        Command::Gen { gen, output } => {
            let g = generate(&gen.spec(gen.seed)?)?;
            emit(output.as_deref(), &write_instance(&g))?;
            Ok(0)
        }
        Command::Orient { input, output, report, trace, max_edges } => {
            let g = load(&input)?;
            let r = full_report(&g, ReportOptions { oracle_max_edges: max_edges })?;
            let dirs = r.orientation.as_ref().and_then(Orientation::as_bools).unwrap_or_default();
            emit(output.as_deref(), &write_orientation(&dirs))?;
            if let Some(p) = report {
                emit(Some(&p), &pretty(&r))?;
            }
            if let Some(p) = trace {
                let pipe = run_pipeline(&g)?;
                let traces: Vec<Value> =
                    pipe.oriented.iter().map(|o| json!({ "trace": o.trace, "notes": o.notes })).collect();
                emit(Some(&p), &pretty(&traces))?;
            }
            for v in &r.violations {
                eprintln!("{}", json!({ "kind": "bound", "message": v }));
            }
            Ok(if r.passed() { 0 } else { 2 })
        }
        Command::Verify { input, orientation, report, max_edges } => {
            let g = load(&input)?;
            match orientation {
                None => {
                    let r = full_report(&g, ReportOptions { oracle_max_edges: max_edges })?;
                    emit(report.as_deref(), &pretty(&r))?;
                    Ok(if r.passed() { 0 } else { 2 })
                }
                Some(path) => {
                    let dirs = read_orientation(&g, &read_text(&path)?)?;
                    let (body, ok) = check_given(&g, &dirs)?;
                    emit(report.as_deref(), &pretty(&body))?;
                    Ok(if ok { 0 } else { 2 })
                }
            }
        }
        Command::Oracle { input, max_edges, output } => {
            let g = load(&input)?;
            let (d_opt, dirs) = oracle_opt_orientation(&g, max_edges)?;
            let body = json!({
                "nodes": g.node_count(),
                "edges": g.edge_count(),
                "d_g": cycle_diameter(&g)?,
                "d_opt": d_opt,
                "orientation": dirs,
            });
            emit(output.as_deref(), &pretty(&body))?;
            Ok(0)
        }
        Command::Bench { gen, count, max_edges, output } => bench(&gen, count, max_edges, output.as_deref()),
    }
}

/// Strong connectivity, directed diameter and the 405 bound for a supplied orientation.
fn check_given(g: &WeightedGraph, dirs: &[bool]) -> Result<(Value, bool), Failure> {
    let o = Orientation::from_bools(dirs);
    let h = DirectedView::new(g, &o);
    let z = g.root();
    let mut ok = true;
    let mut per_node = Vec::new();
    for v in g.nodes().filter(|&v| v != z) {
        let star = min_cycle_through(g, v)?.len();
        let directed = directed_cycle_through(&h, v).ok();
        let within = directed.is_some_and(|d| (d as i128) <= 405 * star as i128);
        ok &= within;
        per_node.push(json!({ "node": g.name(v), "c_star": star, "directed": directed, "within_405": within }));
    }
    let d_h = directed_cycle_diameter(&h).ok();
    ok &= d_h.is_some();
    Ok((json!({ "strongly_connected": d_h.is_some(), "d_h": d_h, "d_g": cycle_diameter(g)?, "per_node": per_node }), ok))
}

#[derive(Serialize)]
struct BenchRow {
    instance_id: usize,
    seed: u64,
    n: usize,
    m: usize,
    #[serde(rename = "D_G")]
    d_g: i64,
    #[serde(rename = "D_H")]
    d_h: Option<i64>,
    #[serde(rename = "D_opt")]
    d_opt: Option<i64>,
    r9: f64,
    r27: f64,
    r405: Option<f64>,
    ratio1620: Option<f64>,
    ms: u128,
}

fn bench(gen: &GenArgs, count: usize, max_edges: usize, output: Option<&Path>) -> Result<u8, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut ok = true;
    for i in 0..count {
        let seed = gen.seed.wrapping_add(i as u64);
        let g = generate(&gen.spec(seed)?)?;
        let start = Instant::now();
        let r = full_report(&g, ReportOptions { oracle_max_edges: max_edges })?;
        let ms = start.elapsed().as_millis();
        ok &= r.passed();
        for v in &r.violations {
            eprintln!("{}", json!({ "kind": "bound", "instance_id": i, "message": v }));
        }
        w.serialize(BenchRow {
            instance_id: i,
            seed,
            n: r.nodes,
            m: r.edges,
            d_g: r.d_g,
            d_h: r.d_h,
            d_opt: r.d_opt,
            r9: r.max_r9.value(),
            r27: r.max_r27.value(),
            r405: r.max_r405.map(|x| x.value()),
            ratio1620: r.ratio1620.map(|x| x.value()),
            ms,
        })
        .map_err(|e| Failure::input(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::input(e.to_string()))?;
    emit(output, &String::from_utf8(bytes).expect("csv is utf-8"))?;
    Ok(if ok { 0 } else { 2 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        // usage errors are input errors: exit 1, not clap's 2 (reserved for bounds)
        Err(e) => {
            eprintln!("{}", json!({ "kind": "input", "error": e.to_string().trim_end() }));
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{}", json!({ "kind": f.kind, "error": f.message }));
            ExitCode::from(f.code)
        }
    }
}
