//! `fa2`: ForceAtlas2 layouts, transforms and SVG rendering from the shell.

use std::collections::HashSet;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{ArgMatches, Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use fa2_core::bench::{bench_csv, run_bench, scaling_slopes, BenchConfig};
use fa2_core::render::snapshot_file_name;
use fa2_core::style::size_from_attribute;
use fa2_core::timeseries::GraphFormat;
use fa2_core::transforms::apply_all;
use fa2_core::{
    diagnostics_csv, parse_node_attributes, read_layout_tsv, render_snapshots, render_svg,
    run_layout, run_timeseries, write_layout_tsv, Color, Fa2Params, Graph, LayoutMatrix, Manifest,
    Point, RenderSpec, StyleFile, StyleMap, Transform,
};

#[derive(Debug, Parser)]
#[command(
    name = "fa2",
    version,
    about = "ForceAtlas2 graph layout, transforms and SVG rendering"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lay out a graph and write node positions as TSV (id, x, y).
    Layout(LayoutArgs),
    /// Lay out a sequence of graphs, warm-starting each period from the previous one.
    Timeseries(TimeseriesArgs),
    /// Scale, rotate or recenter a layout; steps apply in the order given.
    Transform(TransformArgs),
    /// Render a graph and its layout to SVG.
    Render(RenderArgs),
    /// Time layouts of random graphs (Erdős–Rényi, mean degree 10) across sizes.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum InputFormat {
    /// CSV with header `source,target[,weight]`.
    Edgelist,
    /// Square CSV weight matrix with node ids in the first row and column.
    Matrix,
}

impl From<InputFormat> for GraphFormat {
    fn from(f: InputFormat) -> Self {
        match f {
            InputFormat::Edgelist => GraphFormat::Edgelist,
            InputFormat::Matrix => GraphFormat::Matrix,
        }
    }
}

#[derive(Debug, Args)]
struct GraphInput {
    /// Graph file.
    graph: PathBuf,
    #[arg(long, value_enum, default_value_t = InputFormat::Edgelist)]
    format: InputFormat,
    /// Node attribute CSV with an `id` column (and optionally `label`).
    #[arg(long)]
    attributes: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ParamArgs {
    #[arg(long, default_value_t = Fa2Params::default().iterations)]
    iterations: usize,
    /// Snapshot interval in iterations; 0 disables snapshots.
    #[arg(long, default_value_t = Fa2Params::default().plotstep)]
    plotstep: usize,
    /// LinLog attraction log(1 + d); pair with a small --scaling for tighter clusters.
    #[arg(long)]
    linlog: bool,
    /// Multiply LinLog attraction by the edge weight.
    #[arg(long)]
    linlog_weighted: bool,
    /// Gravity k_g ln(deg + 1) toward --center.
    #[arg(long)]
    stronggravity: bool,
    /// Gravity constant k_g, used with --stronggravity.
    #[arg(long, default_value_t = Fa2Params::default().gravity)]
    gravity: f64,
    /// Gravity attraction point as `x,y`.
    #[arg(long, value_parser = parse_point, default_value = "0,0", allow_hyphen_values = true)]
    center: Point,
    /// Swinging tolerance τ.
    #[arg(long, default_value_t = Fa2Params::default().tolerance)]
    jittertol: f64,
    /// Repulsion constant S.
    #[arg(long, default_value_t = Fa2Params::default().scaling)]
    scaling: f64,
    /// Edge weight influence δ (0 ignores weights).
    #[arg(long, default_value_t = Fa2Params::default().edge_weight_influence, value_parser = clap::value_parser!(u8).range(0..=1))]
    delta: u8,
    /// Local speed constant k_s.
    #[arg(long, default_value_t = Fa2Params::default().speed_constant)]
    speed: f64,
    /// Use --jittertol as given instead of adapting it to graph density.
    #[arg(long)]
    fixed_tolerance: bool,
    /// Random seed for initial positions; drawn and reported on stderr when omitted.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for force computation; results do not depend on it.
    #[arg(long)]
    workers: Option<usize>,
}

impl ParamArgs {
    fn to_params(&self, seed: u64) -> Fa2Params {
        Fa2Params {
            scaling: self.scaling,
            edge_weight_influence: self.delta,
            tolerance: self.jittertol,
            speed_constant: self.speed,
            gravity: self.gravity,
            linlog: self.linlog,
            linlog_weighted: self.linlog_weighted,
            strong_gravity: self.stronggravity,
            iterations: self.iterations,
            seed: Some(seed),
            center: self.center,
            plotstep: self.plotstep,
            adaptive_tolerance: !self.fixed_tolerance,
            workers: self.workers,
        }
    }
}

#[derive(Debug, Args)]
struct LayoutArgs {
    #[command(flatten)]
    input: GraphInput,
    #[command(flatten)]
    params: ParamArgs,
    /// Warm-start positions (TSV: id, x, y) with one row per node.
    #[arg(long)]
    pos: Option<PathBuf>,
    /// Output TSV; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Per-iteration speed diagnostics CSV.
    #[arg(long)]
    diagnostics: Option<PathBuf>,
    /// Directory for snapshot SVGs taken every --plotstep iterations.
    #[arg(long)]
    snapshots: Option<PathBuf>,
    /// Style JSON used for snapshot colors.
    #[arg(long)]
    style: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TimeseriesArgs {
    /// Manifest JSON: `{"periods":[{"label":..,"graph":..}],"params":{..},"chain":true}`.
    manifest: PathBuf,
    /// Directory for `<label>.tsv`, `<label>.svg` and `displacement.csv`.
    #[arg(short, long)]
    out_dir: PathBuf,
    /// Initial positions for the first period (TSV: id, x, y).
    #[arg(long)]
    start: Option<PathBuf>,
    /// Overrides the manifest seed; period k uses seed + k.
    #[arg(long)]
    seed: Option<u64>,
    /// Style JSON applied to every period's SVG.
    #[arg(long)]
    style: Option<PathBuf>,
    /// Skip SVG output.
    #[arg(long)]
    no_svg: bool,
}

#[derive(Debug, Args)]
struct TransformArgs {
    /// Layout TSV.
    layout: PathBuf,
    /// Output TSV; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Scale about the centroid by this positive factor.
    #[arg(long, allow_hyphen_values = true)]
    scale: Vec<f64>,
    /// Rotate counterclockwise about the centroid by this many degrees.
    #[arg(long, allow_hyphen_values = true)]
    rotate: Vec<f64>,
    /// Translate so the centroid lands on `x,y`.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    center: Vec<Point>,
}

#[derive(Debug, Args)]
struct RenderArgs {
    #[command(flatten)]
    input: GraphInput,
    /// Layout TSV with one row per node.
    layout: PathBuf,
    /// Output SVG; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Style JSON: `{"attribute":..,"mapping":{value: "#rrggbb"},"fallback":"#808080"}`.
    #[arg(long)]
    style: Option<PathBuf>,
    /// Numeric node attribute mapped linearly onto [--min-size, --max-size].
    #[arg(long)]
    vertex_size_attr: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    min_size: f64,
    #[arg(long, default_value_t = 6.0)]
    max_size: f64,
    /// Node size when no size attribute is given.
    #[arg(long, default_value_t = RenderSpec::default().vertex_size)]
    vertex_size: f64,
    /// Label font size in em.
    #[arg(long, default_value_t = RenderSpec::default().label_size)]
    label_size: f64,
    #[arg(long, default_value_t = RenderSpec::default().edge_arrow_size)]
    arrow_size: f64,
    #[arg(long, default_value_t = RenderSpec::default().vertex_label_color)]
    label_color: Color,
    /// Color every edge with this instead of its source node's color.
    #[arg(long)]
    edge_color: Option<Color>,
    #[arg(long, default_value_t = RenderSpec::default().width)]
    width: u32,
    #[arg(long, default_value_t = RenderSpec::default().height)]
    height: u32,
    #[arg(long)]
    no_labels: bool,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Node counts, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [250, 500, 1000])]
    nodes: Vec<usize>,
    /// Iteration counts, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [100])]
    iterations: Vec<usize>,
    /// Timed runs per cell.
    #[arg(long, default_value_t = 10)]
    reps: usize,
    /// Seed for graph generation and initial positions.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output CSV; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn parse_point(s: &str) -> Result<Point, String> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `x,y`, got {s:?}"))?;
    let coord = |v: &str| {
        v.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("{v:?} is not a finite number"))
    };
    Ok([coord(x)?, coord(y)?])
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Write to `path`, or stdout when there is none.
fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let s = rand::random();
        eprintln!("seed: {s}");
        s
    })
}

fn load_graph(input: &GraphInput) -> Result<Graph> {
    let graph = GraphFormat::from(input.format)
        .parse(&read(&input.graph)?)
        .with_context(|| format!("{}", input.graph.display()))?;
    match &input.attributes {
        Some(path) => parse_node_attributes(&read(path)?, graph)
            .with_context(|| format!("{}", path.display())),
        None => Ok(graph),
    }
}

fn load_style(graph: &Graph, style: Option<&Path>) -> Result<StyleMap> {
    match style {
        Some(path) => StyleFile::from_json(&read(path)?)
            .and_then(|s| s.apply(graph))
            .with_context(|| format!("{}", path.display())),
        None => Ok(StyleMap::uniform(graph, &Color::fallback_gray())),
    }
}

fn load_layout(graph: &Graph, path: &Path) -> Result<LayoutMatrix> {
    read_layout_tsv(&read(path)?)
        .and_then(|rows| rows.align_to(graph))
        .with_context(|| format!("{}", path.display()))
}

fn cmd_layout(args: &LayoutArgs) -> Result<()> {
    let graph = load_graph(&args.input)?;
    let params = args.params.to_params(resolve_seed(args.params.seed));
    let warm = args
        .pos
        .as_deref()
        .map(|p| load_layout(&graph, p))
        .transpose()?;
    let run = run_layout(&graph, &params, warm.as_deref())?;

    emit(
        args.output.as_deref(),
        &write_layout_tsv(&graph, &run.positions)?,
    )?;
    if let Some(path) = &args.diagnostics {
        emit(Some(path), &diagnostics_csv(&run.trace))?;
    }
    if let Some(dir) = &args.snapshots {
        let style = load_style(&graph, args.style.as_deref())?;
        let frames: Vec<_> = run
            .snapshots
            .iter()
            .map(|s| (s.iteration, s.positions.clone()))
            .collect();
        let base = args.output.as_deref().unwrap_or(&args.input.graph);
        let base = base
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("layout");
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        for (k, svg) in render_snapshots(&graph, &frames, &style, &RenderSpec::default())? {
            emit(Some(&dir.join(snapshot_file_name(base, k))), &svg)?;
        }
    }
    Ok(())
}

/// Period labels as file stems: anything outside `[A-Za-z0-9._-]` becomes `_`.
fn file_stem_for(label: &str) -> String {
    label
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || "._-".contains(c) {
                c
            } else {
                '_'
            }
        })
        .collect()
}

fn cmd_timeseries(args: &TimeseriesArgs) -> Result<()> {
    let mut manifest = Manifest::from_json(&read(&args.manifest)?)
        .with_context(|| format!("{}", args.manifest.display()))?;
    manifest.params.seed = Some(resolve_seed(args.seed.or(manifest.params.seed)));
    let base_dir = args.manifest.parent().unwrap_or(Path::new("."));
    let graphs = manifest.load_graphs(base_dir)?;

    let mut stems = HashSet::new();
    for (label, _) in &graphs {
        if !stems.insert(file_stem_for(label)) {
            bail!("period labels {label:?} and another map to the same file name");
        }
    }
    let start = args
        .start
        .as_deref()
        .map(|p| {
            read(p).and_then(|t| read_layout_tsv(&t).with_context(|| format!("{}", p.display())))
        })
        .transpose()?;
    let run = run_timeseries(&graphs, &manifest.params, manifest.chain, start.as_ref())?;

    fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("cannot create {}", args.out_dir.display()))?;
    for ((label, graph), period) in graphs.iter().zip(&run.periods) {
        let stem = file_stem_for(label);
        let positions = &period.run.positions;
        emit(
            Some(&args.out_dir.join(format!("{stem}.tsv"))),
            &write_layout_tsv(graph, positions)?,
        )?;
        if !args.no_svg {
            let style = load_style(graph, args.style.as_deref())?;
            let svg = render_svg(graph, positions, &style, &RenderSpec::default())
                .with_context(|| format!("period {label}"))?;
            emit(Some(&args.out_dir.join(format!("{stem}.svg"))), &svg)?;
        }
    }
    emit(
        Some(&args.out_dir.join("displacement.csv")),
        &run.displacement_csv(),
    )?;
    for (t, pair) in run.transitions(&graphs).iter().zip(graphs.windows(2)) {
        let pct = if t.diameter > 0.0 {
            100.0 * t.mean_displacement / t.diameter
        } else {
            0.0
        };
        println!(
            "{} -> {}: mean displacement {:.4} ({pct:.2}% of diameter, {} nodes)",
            pair[0].0, pair[1].0, t.mean_displacement, t.nodes
        );
    }
    Ok(())
}

/// Transform steps in command-line order, whatever flag they came from.
fn ordered_transforms(matches: &ArgMatches) -> Vec<Transform> {
    fn collect<T: Clone + Send + Sync + 'static>(
        matches: &ArgMatches,
        id: &str,
        make: impl Fn(T) -> Transform,
        out: &mut Vec<(usize, Transform)>,
    ) {
        if let (Some(idx), Some(vals)) = (matches.indices_of(id), matches.get_many::<T>(id)) {
            out.extend(idx.zip(vals).map(|(i, v)| (i, make(v.clone()))));
        }
    }
    let mut steps = Vec::new();
    collect(matches, "scale", Transform::Scale, &mut steps);
    collect(matches, "rotate", Transform::Rotate, &mut steps);
    collect(matches, "center", Transform::Center, &mut steps);
    steps.sort_by_key(|(i, _)| *i);
    steps.into_iter().map(|(_, t)| t).collect()
}

fn cmd_transform(args: &TransformArgs, matches: &ArgMatches) -> Result<()> {
    let rows = read_layout_tsv(&read(&args.layout)?)
        .with_context(|| format!("{}", args.layout.display()))?;
    let moved = apply_all(&rows.positions(), &ordered_transforms(matches))?;
    emit(
        args.output.as_deref(),
        &rows.with_positions(&moved)?.to_tsv(),
    )
}

fn cmd_render(args: &RenderArgs) -> Result<()> {
    let graph = load_graph(&args.input)?;
    let layout = load_layout(&graph, &args.layout)?;
    let mut style = load_style(&graph, args.style.as_deref())?;
    if let Some(attr) = &args.vertex_size_attr {
        style.node_sizes =
            size_from_attribute(&graph, attr, args.min_size, args.max_size)?.node_sizes;
    }
    let spec = RenderSpec {
        label_size: args.label_size,
        vertex_size: args.vertex_size,
        edge_arrow_size: args.arrow_size,
        vertex_label_color: args.label_color.clone(),
        edge_color: args.edge_color.clone(),
        width: args.width,
        height: args.height,
        show_labels: !args.no_labels,
        ..RenderSpec::default()
    };
    emit(
        args.output.as_deref(),
        &render_svg(&graph, &layout, &style, &spec)?,
    )
}

fn cmd_bench(args: &BenchArgs) -> Result<()> {
    let config = BenchConfig {
        node_counts: args.nodes.clone(),
        iterations: args.iterations.clone(),
        repetitions: args.reps,
        seed: args.seed,
    };
    let rows = run_bench(&config, |r| {
        eprintln!(
            "n={} iterations={}: {:.4}s ± {:.4}s",
            r.node_count, r.iteration_count, r.mean_seconds, r.stddev_seconds
        );
    })?;
    emit(args.output.as_deref(), &bench_csv(&rows))?;
    for (iterations, slope) in scaling_slopes(&rows) {
        match slope {
            Some(s) => eprintln!("log-log slope (iterations={iterations}): {s:.3}"),
            None => {
                eprintln!("log-log slope (iterations={iterations}): needs two or more node counts")
            }
        }
    }
    Ok(())
}

fn run(cli: &Cli, matches: &ArgMatches) -> Result<()> {
    match &cli.command {
        Command::Layout(args) => cmd_layout(args),
        Command::Timeseries(args) => cmd_timeseries(args),
        Command::Transform(args) => {
            let sub = matches
                .subcommand_matches("transform")
                .expect("transform subcommand matched");
            cmd_transform(args, sub)
        }
        Command::Render(args) => cmd_render(args),
        Command::Bench(args) => cmd_bench(args),
    }
}

fn main() -> ExitCode {
    let matches = Cli::command().get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(&cli, &matches) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
