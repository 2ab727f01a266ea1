//! Command-line front end: build reducible trees, trace solution curves of
//! finite Galerkin systems, run the named end-to-end studies, and render
//! energy–frequency diagrams as SVG.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage/validation error, 3 start
//! point failed Newton verification, 4 scenario claims failed.

mod config;
mod output;
mod svg;

use branchforge::continuation::{
    newton_correct, trace_curve, Constraint, ContinuationConfig, SolutionPoint,
};
use branchforge::galerkin::{AlgebraicSystem, Nonlinearity};
use branchforge::modes::{ModeIndex, ModeSet};
use branchforge::scenarios::{self, run_scenario, ScenarioError};
use branchforge::tree::{build_tree, ElementKind};
use clap::{Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "branchforge", version, about = "Bifurcation structure of time-periodic solutions of the cubic wave equation on an interval")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TreeFormat {
    Json,
    Csv,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Build the N-reducible tree and export it.
    Tree {
        /// Diagonal truncation N.
        #[arg(long)]
        truncation: u32,
        /// Maximum branch order to enumerate.
        #[arg(long, default_value_t = 3)]
        max_order: usize,
        /// Upper frequency bound for positivity windows.
        #[arg(long, default_value_t = 6.0)]
        omega_max: f64,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        /// Which artifacts to write.
        #[arg(long, value_enum, default_value_t = TreeFormat::Both)]
        format: TreeFormat,
    },
    /// Trace a solution curve by pseudo-arc-length continuation.
    Trace {
        /// System: `truncated:N` or `modes:"(m,n),(m,n),..."`.
        #[arg(long)]
        system: String,
        /// Start point: `trunk` or a JSON file with `{omega, amplitudes}`.
        #[arg(long, default_value = "trunk")]
        start: String,
        /// Start frequency for the trunk start.
        #[arg(long, default_value_t = 1.1)]
        omega0: f64,
        /// Optional key=value configuration file.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Render CSV curves (and optional markers.json files) into an SVG.
    Plot {
        /// Input files: tree/curve CSVs and markers.json files.
        #[arg(long = "in", num_args = 1.., required = true)]
        inputs: Vec<PathBuf>,
        /// Output SVG file.
        #[arg(long)]
        out: PathBuf,
        /// Window `omega_min,omega_max,e_min,e_max` (default: data bounds).
        #[arg(long)]
        window: Option<String>,
    },
    /// Run a named end-to-end study and write its report.
    Scenario {
        /// Scenario id; see `--id list` for the catalogue.
        #[arg(long)]
        id: String,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
}

enum CliError {
    Io(String),
    Usage(String),
    StartInvalid(String),
    ClaimsFailed(usize),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
            CliError::StartInvalid(_) => 3,
            CliError::ClaimsFailed(_) => 4,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Io(m) => format!("i/o error: {m}"),
            CliError::Usage(m) => format!("error: {m}"),
            CliError::StartInvalid(m) => format!("start point rejected: {m}"),
            CliError::ClaimsFailed(n) => format!("{n} claim(s) failed"),
        }
    }
}

fn io_err(e: std::io::Error, path: &Path) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("BRANCHFORGE_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Tree { truncation, max_order, omega_max, out, format } => {
            cmd_tree(truncation, max_order, omega_max, &out, format)
        }
        Command::Trace { system, start, omega0, config, out } => {
            cmd_trace(&system, &start, omega0, config.as_deref(), &out)
        }
        Command::Plot { inputs, out, window } => cmd_plot(&inputs, &out, window.as_deref()),
        Command::Scenario { id, out } => cmd_scenario(&id, &out),
    }
}

fn write_meta(dir: &Path) -> Result<(), CliError> {
    let args: Vec<String> = std::env::args().collect();
    std::fs::write(dir.join("run_meta.txt"), output::run_meta(&args)).map_err(|e| io_err(e, dir))
}

fn cmd_tree(
    truncation: u32,
    max_order: usize,
    omega_max: f64,
    out: &Path,
    format: TreeFormat,
) -> Result<(), CliError> {
    if truncation == 0 {
        return Err(CliError::Usage("truncation must be at least 1".into()));
    }
    if !(max_order >= 1 && max_order <= 4) {
        return Err(CliError::Usage("max-order must be between 1 and 4".into()));
    }
    if !(omega_max.is_finite() && omega_max > 1.0) {
        return Err(CliError::Usage("omega-max must be finite and above 1".into()));
    }
    let tree = build_tree(truncation, max_order, omega_max);
    std::fs::create_dir_all(out).map_err(|e| io_err(e, out))?;
    if format != TreeFormat::Csv {
        let doc = output::tree_json(&tree);
        let path = out.join("tree.json");
        std::fs::write(&path, serde_json::to_string_pretty(&doc).expect("serializable"))
            .map_err(|e| io_err(e, &path))?;
    }
    if format != TreeFormat::Json {
        for el in &tree.elements {
            let name = scenarios::element_file_name(&el.type_tag, el.kind == ElementKind::Trunk);
            let path = out.join(name);
            std::fs::write(&path, scenarios::element_csv(el, omega_max))
                .map_err(|e| io_err(e, &path))?;
        }
    }
    write_meta(out)?;
    let stats = tree.stats();
    println!(
        "N={} trunks={} branches={} primary={}",
        truncation, stats.trunks, stats.branches, stats.primary_branches
    );
    Ok(())
}

fn parse_mode_list(text: &str) -> Result<ModeSet, CliError> {
    let mut modes = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let Some(open) = rest.find('(') else {
            return Err(CliError::Usage(format!("expected `(m,n)` in `{rest}`")));
        };
        let Some(close) = rest[open..].find(')') else {
            return Err(CliError::Usage(format!("unclosed `(` in `{rest}`")));
        };
        let body = &rest[open + 1..open + close];
        let Some((m, n)) = body.split_once(',') else {
            return Err(CliError::Usage(format!("expected `m,n` in `({body})`")));
        };
        let m: u32 = m
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad temporal index `{m}`")))?;
        let n: u32 = n
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad spatial index `{n}`")))?;
        modes.push(ModeIndex::new(m, n));
        rest = rest[open + close + 1..].trim_start_matches([',', ' ']);
    }
    if modes.is_empty() {
        return Err(CliError::Usage("empty mode list".into()));
    }
    ModeSet::new(modes).map_err(|e| CliError::Usage(e.to_string()))
}

fn parse_system(text: &str) -> Result<AlgebraicSystem, CliError> {
    if let Some(n) = text.strip_prefix("truncated:") {
        let n: u32 = n
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad truncation `{n}`")))?;
        if n == 0 {
            return Err(CliError::Usage("truncation must be at least 1".into()));
        }
        return Ok(AlgebraicSystem::truncated(n));
    }
    if let Some(list) = text.strip_prefix("modes:") {
        let list = list.trim().trim_matches('"');
        let set = parse_mode_list(list)?;
        return Ok(AlgebraicSystem::new(set, Nonlinearity::Defocusing));
    }
    Err(CliError::Usage(format!(
        "system must be `truncated:N` or `modes:\"(m,n),...\"`, got `{text}`"
    )))
}

fn cmd_trace(
    system_text: &str,
    start_text: &str,
    omega0: f64,
    config_path: Option<&Path>,
    out: &Path,
) -> Result<(), CliError> {
    let system = parse_system(system_text)?;
    let mut config = ContinuationConfig::default();
    if let Some(path) = config_path {
        let text = std::fs::read_to_string(path).map_err(|e| io_err(e, path))?;
        config::apply_config_file(&text, &mut config).map_err(CliError::Usage)?;
    }

    let start = if start_text == "trunk" {
        scenarios::trunk_start(&system, omega0).ok_or_else(|| {
            CliError::StartInvalid(format!(
                "no trunk start at omega0 = {omega0} (needs omega0 > 1 and a fundamental mode)"
            ))
        })?
    } else {
        let path = Path::new(start_text);
        let text = std::fs::read_to_string(path).map_err(|e| io_err(e, path))?;
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad start file: {e}")))?;
        let omega = value["omega"]
            .as_f64()
            .ok_or_else(|| CliError::Usage("start file missing `omega`".into()))?;
        let amplitudes: Vec<f64> = value["amplitudes"]
            .as_array()
            .ok_or_else(|| CliError::Usage("start file missing `amplitudes`".into()))?
            .iter()
            .map(|v| v.as_f64().unwrap_or(f64::NAN))
            .collect();
        if amplitudes.len() != system.dim() || amplitudes.iter().any(|a| !a.is_finite()) {
            return Err(CliError::Usage("start amplitudes do not match the system".into()));
        }
        let guess = SolutionPoint::new(&system, omega, amplitudes);
        let constraint = Constraint::fixed_omega(system.dim(), omega);
        newton_correct(&system, &guess, &constraint, &config)
            .map(|(p, _)| p)
            .map_err(|e| CliError::StartInvalid(e.to_string()))?
    };

    let curve = trace_curve(&system, &start, 1.0, &config)
        .map_err(|e| CliError::StartInvalid(e.to_string()))?;

    std::fs::create_dir_all(out).map_err(|e| io_err(e, out))?;
    let curve_path = out.join("curve.csv");
    std::fs::write(&curve_path, scenarios::curve_csv(&curve)).map_err(|e| io_err(e, &curve_path))?;
    let markers_path = out.join("markers.json");
    std::fs::write(
        &markers_path,
        serde_json::to_string_pretty(&output::markers_json(&curve)).expect("serializable"),
    )
    .map_err(|e| io_err(e, &markers_path))?;
    write_meta(out)?;
    println!(
        "traced {} points, {} markers, omega {:.6}..{:.6}",
        curve.points.len(),
        curve.markers.len(),
        curve.points.first().map(|p| p.omega).unwrap_or(f64::NAN),
        curve.points.last().map(|p| p.omega).unwrap_or(f64::NAN)
    );
    Ok(())
}

/// Reads a curve or tree-element CSV into (Ω, E) samples.
fn read_csv_series(path: &Path) -> Result<svg::PlotSeries, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(e, path))?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| CliError::Usage(format!("{}: empty CSV", path.display())))?;
    let columns: Vec<&str> = header.split(',').collect();
    let omega_col = columns
        .iter()
        .position(|c| *c == "omega")
        .ok_or_else(|| CliError::Usage(format!("{}: no omega column", path.display())))?;
    let energy_col = columns
        .iter()
        .position(|c| *c == "energy")
        .ok_or_else(|| CliError::Usage(format!("{}: no energy column", path.display())))?;
    let mut points = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != columns.len() {
            return Err(CliError::Usage(format!(
                "{}: line {} has {} fields, expected {}",
                path.display(),
                lineno + 2,
                fields.len(),
                columns.len()
            )));
        }
        let parse = |i: usize| -> Result<f64, CliError> {
            fields[i]
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("{}: line {}: bad number", path.display(), lineno + 2)))
        };
        points.push((parse(omega_col)?, parse(energy_col)?));
    }
    let name = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(svg::PlotSeries { name, points })
}

fn read_markers(path: &Path) -> Result<Vec<svg::PlotMarker>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(e, path))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let Some(items) = value["markers"].as_array() else {
        return Err(CliError::Usage(format!("{}: no markers array", path.display())));
    };
    Ok(items
        .iter()
        .filter_map(|m| {
            Some(svg::PlotMarker {
                kind: m["kind"].as_str()?.to_string(),
                omega: m["omega"].as_f64()?,
                energy: m["energy"].as_f64()?,
            })
        })
        .collect())
}

fn cmd_plot(inputs: &[PathBuf], out: &Path, window: Option<&str>) -> Result<(), CliError> {
    let mut series = Vec::new();
    let mut markers = Vec::new();
    for path in inputs {
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => markers.extend(read_markers(path)?),
            _ => series.push(read_csv_series(path)?),
        }
    }
    if series.is_empty() {
        return Err(CliError::Usage("no curve inputs".into()));
    }
    let window = match window {
        Some(text) => {
            let parts: Vec<f64> = text
                .split(',')
                .map(|p| p.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|_| CliError::Usage(format!("bad window `{text}`")))?;
            if parts.len() != 4 {
                return Err(CliError::Usage("window needs four numbers".into()));
            }
            (parts[0], parts[1], parts[2], parts[3])
        }
        None => {
            let mut w = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
            for s in &series {
                for &(omega, energy) in &s.points {
                    w.0 = w.0.min(omega);
                    w.1 = w.1.max(omega);
                    w.2 = w.2.min(energy);
                    w.3 = w.3.max(energy);
                }
            }
            w
        }
    };
    if !(window.0 < window.1 && window.2 < window.3) {
        return Err(CliError::Usage("empty plot window".into()));
    }
    let rendered = svg::render(&series, &markers, window);
    std::fs::write(out, rendered).map_err(|e| io_err(e, out))?;
    println!("wrote {} ({} series, {} markers)", out.display(), series.len(), markers.len());
    Ok(())
}

fn cmd_scenario(id: &str, out: &Path) -> Result<(), CliError> {
    match run_scenario(id, Some(out)) {
        Ok(report) => {
            for claim in &report.claims {
                println!(
                    "[{}] {} (expected {}, computed {})",
                    if claim.pass { "pass" } else { "FAIL" },
                    claim.description,
                    claim.expected,
                    claim.computed
                );
            }
            write_meta(out)?;
            let failed = report.failed_claims().len();
            if failed > 0 {
                Err(CliError::ClaimsFailed(failed))
            } else {
                Ok(())
            }
        }
        Err(ScenarioError::UnknownId(id)) => Err(CliError::Usage(format!(
            "unknown scenario `{id}`; known: {}",
            scenarios::scenario_ids().join(", ")
        ))),
        Err(ScenarioError::Io(e)) => Err(CliError::Io(e.to_string())),
    }
}
