//! `wiener`: generators, exact solver, oracles, Wiener reports, path
//! tooling, and SVG rendering, over stable JSON file formats.
//!
//! Exit codes: 0 success, 2 invalid input, 3 enumeration limit exceeded,
//! 4 infeasible, 1 anything else.

mod svg;

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wiener_core::dp_convex::{dp_tables, solve_convex};
use wiener_core::instances::{
    gen_grid, gen_partition_instance, gen_path_counterexample, gen_random_convex,
    PARTITION_DESK_SCALE,
};
use wiener_core::oracle::{
    budgeted_min_wiener_with, min_wiener_path_bruteforce_with, min_wiener_tree_bruteforce_with,
    OracleOpts, DEFAULT_MAX_PATH_NODES, DEFAULT_MAX_TREE_NODES,
};
use wiener_core::paths::{grid_path_bound_check, twelve_config_wiener, counterexample_anchors};
use wiener_core::tree::{crossing_pairs, wiener_edge_contribution, wiener_pairwise};
use wiener_core::{Error, HamiltonianPath, PointSet, SpanningTree};

#[derive(Parser)]
#[command(
    name = "wiener",
    version,
    about = "Minimum Wiener index spanning trees of planar point sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate point-set instances
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Exact minimum-Wiener spanning tree for strictly convex input
    Solve {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also dump the DP tables
        #[arg(long)]
        tables: bool,
    },
    /// Wiener report for a spanning tree over a point set
    Wiener {
        #[arg(short, long)]
        input: PathBuf,
        /// Spanning tree JSON file
        #[arg(long)]
        tree: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Relative tolerance for the two-method agreement flag
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Exhaustive brute-force searches
    Oracle {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: OracleMode,
        /// Weight budget (budgeted mode only)
        #[arg(long)]
        budget: Option<f64>,
        /// Override the enumeration node cap
        #[arg(long)]
        cap: Option<usize>,
        /// Run even above the cap (the search is exponential)
        #[arg(long)]
        force: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Render a point set, optionally with a tree or path, as SVG
    Render {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        tree: Option<PathBuf>,
        #[arg(long)]
        path: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Hamiltonian-path tooling
    Paths {
        #[arg(short, long)]
        input: Option<PathBuf>,
        /// Evaluate the 12 super-node configurations for cluster size M
        #[arg(long, value_name = "M")]
        twelve_config: Option<usize>,
        /// Brute-force the minimum-Wiener Hamiltonian path of the input
        #[arg(long)]
        oracle: bool,
        /// Check a path against the C(n+1,3) grid lower bound
        #[arg(long)]
        bound_check: bool,
        /// Path JSON file (bound-check; defaults to the oracle optimum)
        #[arg(long)]
        path: Option<PathBuf>,
        /// Also render the relevant path to this SVG file
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        force: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Random points in strictly convex position
    Convex {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Integer grid, row-major
    Grid {
        #[arg(long)]
        w: usize,
        #[arg(long)]
        h: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Partition-reduction instance with its budget/threshold sidecar
    Partition {
        /// Comma-separated positive integers with an even sum
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Sidecar path (default: derived from --output)
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Two clusters plus two apex points
    PathCounterexample {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0.0)]
        epsilon: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleMode {
    Tree,
    Path,
    Budgeted,
}

struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn invalid(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInput(_) => 2,
            Error::LimitExceeded(_) => 3,
            Error::Infeasible(_) => 4,
            Error::Internal(_) => 1,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli.command) {
        eprintln!("error: {}", e.message);
        std::process::exit(e.code);
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::invalid(format!("cannot read {what} {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::invalid(format!("cannot parse {what} {}: {e}", path.display())))
}

fn read_points(path: &Path) -> Result<PointSet, CliError> {
    let ps: PointSet = read_json(path, "point set")?;
    if ps.is_empty() {
        return Err(CliError::invalid("point set is empty"));
    }
    if let Some(i) = ps.points.iter().position(|p| !p.is_finite()) {
        return Err(CliError::invalid(format!(
            "point {i} has non-finite coordinates"
        )));
    }
    if let Some(labels) = &ps.labels {
        if labels.len() != ps.points.len() {
            return Err(CliError::invalid(format!(
                "{} labels for {} points",
                labels.len(),
                ps.points.len()
            )));
        }
    }
    Ok(ps)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError {
            code: 1,
            message: format!("cannot write {}: {e}", path.display()),
        }),
        None => {
            use std::io::Write;
            match std::io::stdout().write_all(text.as_bytes()) {
                Ok(()) => Ok(()),
                // downstream consumer closed the pipe; not our error
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                Err(e) => Err(CliError {
                    code: 1,
                    message: format!("cannot write to stdout: {e}"),
                }),
            }
        }
    }
}

fn emit_json(out: &Option<PathBuf>, value: &Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string(value).expect("serializable");
    text.push('\n');
    emit(out, &text)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Gen { kind } => run_gen(kind),
        Command::Solve {
            input,
            output,
            tables,
        } => {
            let ps = read_points(&input)?;
            let solution = solve_convex(&ps)?;
            let mut doc = to_value(&solution);
            if tables {
                let t = dp_tables(&ps)?;
                doc["tables"] = to_value(&t);
            }
            emit_json(&output, &doc)
        }
        Command::Wiener {
            input,
            tree,
            output,
            tolerance,
        } => {
            if !tolerance.is_finite() || tolerance <= 0.0 {
                return Err(CliError::invalid("tolerance must be positive"));
            }
            let ps = read_points(&input)?;
            let t: SpanningTree = read_json(&tree, "spanning tree")?;
            let report = wiener_edge_contribution(&t, &ps)?;
            let pairwise = wiener_pairwise(&t, &ps)?;
            let difference = (report.wiener - pairwise).abs();
            let mut doc = to_value(&report);
            doc["pairwise"] = json!(pairwise);
            doc["difference"] = json!(difference);
            doc["methods_agree"] = json!(difference <= tolerance * report.wiener.abs().max(1.0));
            emit_json(&output, &doc)
        }
        Command::Oracle {
            input,
            mode,
            budget,
            cap,
            force,
            threads,
            output,
        } => run_oracle(&input, mode, budget, cap, force, threads, &output),
        Command::Render {
            input,
            tree,
            path,
            output,
        } => run_render(&input, &tree, &path, &output),
        Command::Paths {
            input,
            twelve_config,
            oracle,
            bound_check,
            path,
            svg,
            cap,
            force,
            threads,
            output,
        } => run_paths(
            &input,
            twelve_config,
            oracle,
            bound_check,
            &path,
            &svg,
            cap,
            force,
            threads,
            &output,
        ),
    }
}

fn run_gen(kind: GenKind) -> Result<(), CliError> {
    match kind {
        GenKind::Convex { n, seed, output } => {
            let ps = gen_random_convex::<f64>(n, seed)?;
            emit_json(&output, &to_value(&ps))
        }
        GenKind::Grid { w, h, output } => {
            if w == 0 || h == 0 {
                return Err(CliError::invalid("grid dimensions must be positive"));
            }
            emit_json(&output, &to_value(&gen_grid::<f64>(w, h)))
        }
        GenKind::Partition { x, output, sidecar } => {
            let inst = gen_partition_instance::<f64>(&x)?;
            if x.len() > PARTITION_DESK_SCALE {
                eprintln!(
                    "warning: {} items produce {} points; verification passes are quadratic or worse",
                    x.len(),
                    inst.points.len()
                );
            }
            let side = json!({
                "B": inst.budget,
                "W": inst.cost_threshold,
                "roles": to_value(&inst.points.labels),
                "x": inst.x,
                "R": inst.r_sum,
            });
            match (&output, sidecar) {
                (Some(points_path), sidecar) => {
                    emit_json(&output, &to_value(&inst.points))?;
                    let side_path = sidecar.unwrap_or_else(|| {
                        points_path.with_extension("sidecar.json")
                    });
                    emit_json(&Some(side_path), &side)
                }
                (None, sidecar) => {
                    // stdout: points first, then the sidecar
                    emit_json(&None, &to_value(&inst.points))?;
                    emit_json(&sidecar, &side)
                }
            }
        }
        GenKind::PathCounterexample { m, epsilon, output } => {
            if m == 0 {
                return Err(CliError::invalid("cluster size m must be at least 1"));
            }
            if !epsilon.is_finite() || epsilon < 0.0 {
                return Err(CliError::invalid("epsilon must be non-negative"));
            }
            let inst = gen_path_counterexample::<f64>(m, epsilon);
            emit_json(&output, &to_value(&inst.points))
        }
    }
}

fn oracle_opts(
    n: usize,
    default_cap: usize,
    cap: Option<usize>,
    force: bool,
    threads: usize,
) -> Result<OracleOpts, CliError> {
    if threads == 0 {
        return Err(CliError::invalid("threads must be at least 1"));
    }
    if cap.is_some_and(|c| c < 2) {
        return Err(CliError::invalid("cap must be at least 2"));
    }
    let effective = cap.unwrap_or(default_cap);
    if n > effective && !force {
        return Err(CliError {
            code: 3,
            message: format!(
                "{n} points exceed the enumeration cap of {effective}; the search is exponential, pass --force to run it anyway"
            ),
        });
    }
    let lifted = if force { usize::MAX } else { effective };
    Ok(OracleOpts {
        max_tree_nodes: lifted,
        max_path_nodes: lifted,
        threads,
    })
}

fn run_oracle(
    input: &Path,
    mode: OracleMode,
    budget: Option<f64>,
    cap: Option<usize>,
    force: bool,
    threads: usize,
    output: &Option<PathBuf>,
) -> Result<(), CliError> {
    let ps = read_points(input)?;
    let default_cap = match mode {
        OracleMode::Path => DEFAULT_MAX_PATH_NODES,
        _ => DEFAULT_MAX_TREE_NODES,
    };
    let opts = oracle_opts(ps.len(), default_cap, cap, force, threads)?;
    let result = match mode {
        OracleMode::Tree => min_wiener_tree_bruteforce_with(&ps, &opts)?,
        OracleMode::Path => min_wiener_path_bruteforce_with(&ps, &opts)?,
        OracleMode::Budgeted => {
            let budget = budget
                .ok_or_else(|| CliError::invalid("budgeted mode requires --budget"))?;
            if budget.is_nan() {
                return Err(CliError::invalid("budget must be a number"));
            }
            match budgeted_min_wiener_with(&ps, budget, &opts) {
                Ok(r) => r,
                Err(Error::Infeasible(msg)) => {
                    emit_json(output, &json!({ "infeasible": true }))?;
                    return Err(CliError { code: 4, message: msg });
                }
                Err(e) => return Err(e.into()),
            }
        }
    };
    emit_json(output, &to_value(&result))
}

/// Crossing edge indices for an arbitrary edge list over the points.
fn crossing_indices(ps: &PointSet, edges: &[(usize, usize)]) -> HashSet<usize> {
    use wiener_core::geometry::segments_cross;
    let mut crossing = HashSet::new();
    for i in 0..edges.len() {
        for j in (i + 1)..edges.len() {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if segments_cross(ps.points[a], ps.points[b], ps.points[c], ps.points[d]) {
                crossing.insert(i);
                crossing.insert(j);
            }
        }
    }
    crossing
}

fn run_render(
    input: &Path,
    tree: &Option<PathBuf>,
    path: &Option<PathBuf>,
    output: &Option<PathBuf>,
) -> Result<(), CliError> {
    let ps = read_points(input)?;
    let edges: Vec<(usize, usize)> = match (tree, path) {
        (Some(_), Some(_)) => {
            return Err(CliError::invalid("pass at most one of --tree and --path"))
        }
        (Some(tree_path), None) => {
            let t: SpanningTree = read_json(tree_path, "spanning tree")?;
            if t.n != ps.len() || !t.validate() {
                return Err(CliError::invalid(
                    "edge list is not a spanning tree over the input points",
                ));
            }
            // surfaced distinctly in the drawing
            let _ = crossing_pairs(&t, &ps)?;
            t.edges
        }
        (None, Some(path_file)) => {
            let p: HamiltonianPath = read_json(path_file, "path")?;
            if !p.is_valid_over(ps.len()) {
                return Err(CliError::invalid(
                    "order is not a permutation of the input points",
                ));
            }
            p.order.windows(2).map(|w| (w[0], w[1])).collect()
        }
        (None, None) => Vec::new(),
    };
    let crossing = crossing_indices(&ps, &edges);
    emit(output, &svg::render(&ps, &edges, &crossing))
}

#[allow(clippy::too_many_arguments)]
fn run_paths(
    input: &Option<PathBuf>,
    twelve_config: Option<usize>,
    oracle: bool,
    bound_check: bool,
    path: &Option<PathBuf>,
    svg_out: &Option<PathBuf>,
    cap: Option<usize>,
    force: bool,
    threads: usize,
    output: &Option<PathBuf>,
) -> Result<(), CliError> {
    let modes = twelve_config.is_some() as u8 + oracle as u8 + bound_check as u8;
    if modes != 1 {
        return Err(CliError::invalid(
            "pass exactly one of --twelve-config, --oracle, --bound-check",
        ));
    }

    if let Some(m) = twelve_config {
        if m == 0 {
            return Err(CliError::invalid("cluster size m must be at least 1"));
        }
        let ranked = twelve_config_wiener::<f64>(m);
        let rows: Vec<Value> = ranked
            .iter()
            .map(|(config, value)| {
                json!({
                    "order": config.nodes.iter().map(|s| s.name).collect::<Vec<_>>(),
                    "value": value,
                    "planar": config.is_planar(),
                })
            })
            .collect();
        emit_json(output, &json!({ "m": m, "configs": rows }))?;
        if let Some(svg_path) = svg_out {
            let names = ["L", "R", "p", "q"];
            let anchors = PointSet::new(counterexample_anchors::<f64>().to_vec())
                .expect("anchors are valid");
            let order: Vec<usize> = ranked[0]
                .0
                .nodes
                .iter()
                .map(|s| names.iter().position(|n| *n == s.name).unwrap())
                .collect();
            let edges: Vec<(usize, usize)> = order.windows(2).map(|w| (w[0], w[1])).collect();
            let crossing = crossing_indices(&anchors, &edges);
            emit(&Some(svg_path.clone()), &svg::render(&anchors, &edges, &crossing))?;
        }
        return Ok(());
    }

    let input = input
        .as_ref()
        .ok_or_else(|| CliError::invalid("this mode needs --input"))?;
    let ps = read_points(input)?;

    let oracle_path = |threads: usize| -> Result<HamiltonianPath, CliError> {
        let opts = oracle_opts(ps.len(), DEFAULT_MAX_PATH_NODES, cap, force, threads)?;
        let result = min_wiener_path_bruteforce_with(&ps, &opts)?;
        Ok(result.best_witness.as_path().expect("path mode").clone())
    };

    let (doc, drawn): (Value, HamiltonianPath) = if oracle {
        let opts = oracle_opts(ps.len(), DEFAULT_MAX_PATH_NODES, cap, force, threads)?;
        let result = min_wiener_path_bruteforce_with(&ps, &opts)?;
        let witness = result.best_witness.as_path().expect("path mode").clone();
        (to_value(&result), witness)
    } else {
        let p = match path {
            Some(file) => read_json(file, "path")?,
            None => oracle_path(threads)?,
        };
        let report = grid_path_bound_check(&ps, &p)?;
        (to_value(&report), p)
    };
    emit_json(output, &doc)?;

    if let Some(svg_path) = svg_out {
        if !drawn.is_valid_over(ps.len()) {
            return Err(CliError::invalid(
                "order is not a permutation of the input points",
            ));
        }
        let edges: Vec<(usize, usize)> = drawn.order.windows(2).map(|w| (w[0], w[1])).collect();
        let crossing = crossing_indices(&ps, &edges);
        emit(&Some(svg_path.clone()), &svg::render(&ps, &edges, &crossing))?;
    }
    Ok(())
}
