//! Command-line front end: instance generation, the exact line solver, the
//! planar approximation, brute-force reference runs, assignment checking,
//! and DOT export. Reports go to stdout (or `--out`) as JSON; failures are
//! reported as a JSON object on stderr with exit code 1.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::approx2d::{approximate, ApproxResult, RootPolicy};
use crate::core::{build_comm_graph, is_strongly_connected, Instance, RangeAssignment};
use crate::error::MtipError;
use crate::instances::{random_line, random_plane, Gadget, GridGraph, Spread};
use crate::io::{
    approx_report_to_json, assignment_to_json, edges_to_json, grid_to_json, instance_to_json,
    parse_assignment, parse_grid, parse_instance, solve_report_to_json, IoError,
};
use crate::oracle::{optimal_assignment, OracleBudget};
use crate::solver1d::solve_line;

#[derive(Parser)]
#[command(
    name = "mtip",
    version,
    about = "Minimum total interference range assignment: exact 1-D solver, planar 2-approximation, and grid-graph reductions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance, a rectangular grid graph, or a reduction gadget
    Gen(GenArgs),
    /// Solve a one-dimensional instance exactly (cubic time)
    Solve1d(Solve1dArgs),
    /// Approximate any instance within a factor of two
    Approx2d(Approx2dArgs),
    /// Brute-force the optimum of a tiny instance
    Oracle(OracleArgs),
    /// Measure an assignment: validity, total interference, encoded cycles
    Verify(VerifyArgs),
    /// Write an assignment's communication graph in DOT format
    ExportDot(ExportDotArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    /// Collinear points
    Line,
    /// Planar points
    Plane,
    /// A full rectangular grid graph (use --grid-size)
    Grid,
    /// The reduction instance for a grid graph
    Gadget,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpreadArg {
    Uniform,
    Clustered,
    Geometric,
}

impl From<SpreadArg> for Spread {
    fn from(arg: SpreadArg) -> Spread {
        match arg {
            SpreadArg::Uniform => Spread::Uniform,
            SpreadArg::Clustered => Spread::Clustered,
            SpreadArg::Geometric => Spread::Geometric,
        }
    }
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Number of points (line and plane kinds)
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = SpreadArg::Uniform)]
    spread: SpreadArg,
    /// Grid dimensions as WxH, e.g. 4x3 (grid kind, or gadget without --grid)
    #[arg(long)]
    grid_size: Option<String>,
    /// Grid-graph JSON file to build the gadget from
    #[arg(long)]
    grid: Option<PathBuf>,
    /// Hamiltonian cycle (JSON array of vertex indices) to encode as an
    /// assignment; written to --assignment-out
    #[arg(long)]
    cycle: Option<PathBuf>,
    #[arg(long)]
    assignment_out: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Solve1dArgs {
    instance: PathBuf,
    /// Also write the solution's witness edges (tree and anchor edges)
    #[arg(long)]
    edges_out: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Approx2dArgs {
    instance: PathBuf,
    /// first, best, or fixed:<index>
    #[arg(long, default_value = "best")]
    root_policy: String,
    /// Worker threads for the best-root sweep
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    instance: PathBuf,
    /// Maximum number of search states (lifts the point limit to 64)
    #[arg(long)]
    budget: Option<u128>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    instance: PathBuf,
    assignment: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExportDotArgs {
    instance: PathBuf,
    assignment: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    File { path: PathBuf, err: std::io::Error },
    Format { path: PathBuf, err: IoError },
    Lib(MtipError),
    Stdout(std::io::Error),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::File { path, err } => write!(f, "{}: {err}", path.display()),
            CliError::Format { path, err } => write!(f, "{}: {err}", path.display()),
            CliError::Lib(err) => write!(f, "{err}"),
            CliError::Stdout(err) => write!(f, "could not write to stdout: {err}"),
            CliError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<MtipError> for CliError {
    fn from(err: MtipError) -> Self {
        CliError::Lib(err)
    }
}

/// Parses the command line, runs it, and returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(err) => {
            let report = serde_json::json!({ "error": err.to_string() });
            eprintln!("{report}");
            1
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Gen(args) => gen(args),
        Command::Solve1d(args) => solve1d(args),
        Command::Approx2d(args) => approx2d(args),
        Command::Oracle(args) => oracle(args),
        Command::Verify(args) => verify(args),
        Command::ExportDot(args) => export_dot(args),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|err| CliError::File {
        path: path.to_path_buf(),
        err,
    })
}

fn write_out(target: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match target {
        Some(path) => fs::write(path, format!("{text}\n")).map_err(|err| CliError::File {
            path: path.clone(),
            err,
        }),
        None => {
            use std::io::Write;
            // A closed pipe downstream (e.g. `mtip ... | head`) is not an
            // error worth reporting.
            match writeln!(std::io::stdout(), "{text}") {
                Err(err) if err.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(CliError::Stdout(err))
                }
                _ => Ok(()),
            }
        }
    }
}

fn load_instance(path: &Path) -> Result<(Instance, Vec<usize>), CliError> {
    parse_instance(&read(path)?).map_err(|err| CliError::Format {
        path: path.to_path_buf(),
        err,
    })
}

/// Reorders internally-indexed ranges back to the positions points had in
/// the input file.
fn ranges_in_file_order(ranges: &RangeAssignment, perm: &[usize]) -> Vec<f64> {
    perm.iter().map(|&stored| ranges.get(stored)).collect()
}

fn parse_grid_size(text: &str) -> Result<GridGraph, CliError> {
    let parts: Vec<&str> = text.split('x').collect();
    let dims: Option<(usize, usize)> = match parts[..] {
        [w, h] => w.parse().ok().zip(h.parse().ok()),
        _ => None,
    };
    let (w, h) =
        dims.ok_or_else(|| CliError::Usage(format!("--grid-size must look like 4x3, got {text}")))?;
    Ok(GridGraph::rectangle(w, h)?)
}

fn gen(args: GenArgs) -> Result<(), CliError> {
    match args.kind {
        KindArg::Line | KindArg::Plane => {
            let n = args
                .n
                .ok_or_else(|| CliError::Usage("--n is required for line and plane".into()))?;
            let inst = match args.kind {
                KindArg::Line => random_line(n, args.spread.into(), args.seed)?,
                _ => random_plane(n, args.spread.into(), args.seed)?,
            };
            write_out(&args.out, &instance_to_json(&inst))
        }
        KindArg::Grid => {
            let size = args.grid_size.as_deref().ok_or_else(|| {
                CliError::Usage("--grid-size is required for grid generation".into())
            })?;
            write_out(&args.out, &grid_to_json(&parse_grid_size(size)?))
        }
        KindArg::Gadget => {
            let grid = match (&args.grid, &args.grid_size) {
                (Some(path), _) => parse_grid(&read(path)?).map_err(|err| CliError::Format {
                    path: path.clone(),
                    err,
                })?,
                (None, Some(size)) => parse_grid_size(size)?,
                (None, None) => {
                    return Err(CliError::Usage(
                        "gadget generation needs --grid or --grid-size".into(),
                    ));
                }
            };
            let gadget = Gadget::from_grid(grid);
            if let Some(cycle_path) = &args.cycle {
                let cycle: Vec<usize> =
                    serde_json::from_str(&read(cycle_path)?).map_err(|err| CliError::Format {
                        path: cycle_path.clone(),
                        err: err.into(),
                    })?;
                let ranges = gadget.hamiltonian_assignment(&cycle)?;
                let target = args.assignment_out.clone().ok_or_else(|| {
                    CliError::Usage("--cycle also needs --assignment-out".into())
                })?;
                write_out(&Some(target), &assignment_to_json(&ranges))?;
            }
            write_out(&args.out, &instance_to_json(gadget.instance()))
        }
    }
}

fn solve1d(args: Solve1dArgs) -> Result<(), CliError> {
    let (inst, perm) = load_instance(&args.instance)?;
    let sol = solve_line(&inst)?;
    if let Some(edges_path) = &args.edges_out {
        // Witness edges refer to points by their position in the input file.
        let mut original = vec![0usize; perm.len()];
        for (file_pos, &stored) in perm.iter().enumerate() {
            original[stored] = file_pos;
        }
        let edges: Vec<(usize, usize)> = sol
            .witness_edges
            .iter()
            .map(|&(a, b)| (original[a], original[b]))
            .collect();
        write_out(&Some(edges_path.clone()), &edges_to_json(&edges))?;
    }
    let ranges = ranges_in_file_order(&sol.assignment, &perm);
    write_out(&args.out, &solve_report_to_json(sol.total, &ranges))
}

fn parse_root_policy(text: &str) -> Result<RootPolicy, CliError> {
    match text {
        "first" => Ok(RootPolicy::First),
        "best" => Ok(RootPolicy::Best),
        _ => match text.strip_prefix("fixed:").and_then(|i| i.parse().ok()) {
            Some(index) => Ok(RootPolicy::Fixed(index)),
            None => Err(CliError::Usage(format!(
                "--root-policy must be first, best, or fixed:<index>, got {text}"
            ))),
        },
    }
}

fn approx2d(args: Approx2dArgs) -> Result<(), CliError> {
    let policy = parse_root_policy(&args.root_policy)?;
    if let Some(jobs) = args.jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|err| CliError::Usage(format!("could not size the thread pool: {err}")))?;
    }
    let (inst, perm) = load_instance(&args.instance)?;
    let result = approximate(&inst, policy)?;
    // Internal indices differ from file positions for 1-d input; report in
    // the file's terms.
    let mut original = vec![0usize; perm.len()];
    for (file_pos, &stored) in perm.iter().enumerate() {
        original[stored] = file_pos;
    }
    let mapped = ApproxResult {
        assignment: RangeAssignment::new(ranges_in_file_order(&result.assignment, &perm))?,
        root: original[result.root],
        ..result
    };
    write_out(&args.out, &approx_report_to_json(&mapped))
}

fn oracle(args: OracleArgs) -> Result<(), CliError> {
    let (inst, perm) = load_instance(&args.instance)?;
    let budget = match args.budget {
        Some(max_states) => OracleBudget {
            max_points: 64,
            max_states,
        },
        None => OracleBudget::default(),
    };
    let (ranges, total) = optimal_assignment(&inst, &budget)?;
    let ranges = ranges_in_file_order(&ranges, &perm);
    write_out(&args.out, &solve_report_to_json(total, &ranges))
}

fn load_checked_pair(
    instance_path: &Path,
    assignment_path: &Path,
) -> Result<(Instance, Vec<usize>, RangeAssignment), CliError> {
    let (inst, perm) = load_instance(instance_path)?;
    let file_ranges = parse_assignment(&read(assignment_path)?).map_err(|err| CliError::Format {
        path: assignment_path.to_path_buf(),
        err,
    })?;
    if file_ranges.len() != inst.len() {
        return Err(CliError::Lib(MtipError::LengthMismatch {
            points: inst.len(),
            ranges: file_ranges.len(),
        }));
    }
    // File order to internal order.
    let mut stored = vec![0.0; inst.len()];
    for (file_pos, &idx) in perm.iter().enumerate() {
        stored[idx] = file_ranges.get(file_pos);
    }
    Ok((inst, perm, RangeAssignment::new(stored)?))
}

fn verify(args: VerifyArgs) -> Result<(), CliError> {
    let (inst, _, ranges) = load_checked_pair(&args.instance, &args.assignment)?;
    let graph = build_comm_graph(&inst, &ranges)?;
    let valid = is_strongly_connected(&graph);
    let total = graph.edge_count();
    let mut report = serde_json::json!({ "valid": valid, "total": total });
    if let Some(gadget) = Gadget::from_instance(&inst) {
        match gadget.extract_hamiltonian(&ranges) {
            Ok(cycle) => {
                report["cycle"] = serde_json::json!(cycle);
                report["extraction_failure"] = serde_json::Value::Null;
            }
            Err(failure) => {
                report["cycle"] = serde_json::Value::Null;
                report["extraction_failure"] = serde_json::json!(failure.to_string());
            }
        }
    }
    write_out(
        &args.out,
        &serde_json::to_string_pretty(&report).expect("plain data serializes"),
    )
}

fn export_dot(args: ExportDotArgs) -> Result<(), CliError> {
    let (inst, perm, ranges) = load_checked_pair(&args.instance, &args.assignment)?;
    let graph = build_comm_graph(&inst, &ranges)?;
    let mut original = vec![0usize; perm.len()];
    for (file_pos, &stored) in perm.iter().enumerate() {
        original[stored] = file_pos;
    }
    let mut dot = String::from("digraph comm {\n");
    for p in 0..inst.len() {
        dot.push_str(&format!("  {};\n", original[p]));
    }
    for (p, q) in graph.edges() {
        dot.push_str(&format!("  {} -> {};\n", original[p], original[q]));
    }
    dot.push('}');
    write_out(&args.out, &dot)
}
