use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use redistrict::decomp::{
    export_decomposition, import_decomposition, radial_bfs_decomposition_from_outer,
    sweep_decomposition, DecompositionFile,
};
use redistrict::dp::{CombineStrategy, Count, Feasibility, MinCost, Mode};
use redistrict::gadgets::{binpacking_gadget, grid, BinPackingInstance};
use redistrict::oracle::enumerate_all;
use redistrict::{
    build_graph, validate_plan, Builder, CostFilter, EmbeddedGraph, Error, GraphFile, Plan,
    Prepared, ProblemSpec, SphereCutDecomposition,
};

#[derive(Parser)]
#[command(
    name = "redistrict",
    version,
    about = "Exact districting of planar graphs"
)]
struct Cli {
    /// Worker threads for the table builds and the oracle (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a branch decomposition and report its width.
    Decompose {
        graph: PathBuf,
        #[command(flatten)]
        decomp: DecompArgs,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Minimum-cost plan.
    Optimize(SolveArgs),
    /// Number of plans, or feasibility / minimum cost with `--semiring`.
    Count {
        #[command(flatten)]
        solve: SolveArgs,
        #[arg(long, value_enum, default_value_t = SemiringArg::Count)]
        semiring: SemiringArg,
    },
    /// A uniformly random plan.
    Sample {
        #[command(flatten)]
        solve: SolveArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Brute-force histogram of all plans (at most 14 vertices).
    Oracle {
        graph: PathBuf,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Hardness gadgets.
    #[command(subcommand)]
    Gadget(GadgetCommand),
    /// Instance generators.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Check a plan against a spec, or a decomposition against its graph.
    Validate {
        graph: PathBuf,
        #[arg(long, required_unless_present = "decomposition")]
        plan: Option<PathBuf>,
        #[arg(long, conflicts_with = "plan")]
        decomposition: Option<PathBuf>,
        #[command(flatten)]
        spec: OptionalSpecArgs,
    },
}

#[derive(Subcommand)]
enum GadgetCommand {
    /// Row gadget for a bin-packing instance with unit-cost edges.
    Binpacking {
        /// Comma-separated item values.
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<u64>,
        #[arg(long)]
        bins: usize,
        #[arg(long)]
        capacity: u64,
        #[arg(short, long)]
        out: PathBuf,
        /// Where to write the row/column to vertex id map and the spec.
        #[arg(long)]
        labels: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Unit-weight, unit-cost grid with `rows` x `cols` vertices.
    Grid {
        rows: usize,
        cols: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SpecArgs {
    /// Number of districts.
    #[arg(long)]
    k: usize,
    /// Smallest admissible district weight.
    #[arg(long)]
    min_weight: u64,
    /// District weights must stay strictly below this.
    #[arg(long)]
    max_weight: u64,
    /// Cut costs must stay strictly below this; `auto` admits every plan.
    #[arg(long, default_value = "auto")]
    max_cost: String,
}

impl SpecArgs {
    fn build(&self, g: &EmbeddedGraph) -> Result<ProblemSpec> {
        let spec = if self.max_cost == "auto" {
            ProblemSpec::with_auto_cost(g, self.k, self.min_weight, self.max_weight)?
        } else {
            let s = self
                .max_cost
                .parse()
                .with_context(|| format!("bad --max-cost {:?}", self.max_cost))?;
            ProblemSpec::new(self.k, self.min_weight, self.max_weight, s)?
        };
        Ok(spec)
    }
}

#[derive(Args)]
struct OptionalSpecArgs {
    #[arg(long, requires_all = ["min_weight", "max_weight"])]
    k: Option<usize>,
    #[arg(long)]
    min_weight: Option<u64>,
    #[arg(long)]
    max_weight: Option<u64>,
    #[arg(long, default_value = "auto")]
    max_cost: String,
}

#[derive(Args)]
struct DecompArgs {
    #[arg(long, value_enum, default_value_t = BuilderArg::Sweep)]
    builder: BuilderArg,
    /// Decomposition file read by `--builder import`.
    #[arg(long, required_if_eq("builder", "import"))]
    decomposition: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    graph: PathBuf,
    #[command(flatten)]
    spec: SpecArgs,
    #[command(flatten)]
    decomp: DecompArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    mode: ModeArg,
    /// Use FFT convolution when combining tables.
    #[arg(long)]
    transform: bool,
    /// Restrict to plans of one cost (`4`) or a half-open range (`2..5`).
    #[arg(long)]
    cost: Option<String>,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BuilderArg {
    Sweep,
    Radial,
    Import,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Noncrossing,
    General,
    Auto,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Noncrossing => Mode::Noncrossing,
            ModeArg::General => Mode::General,
            ModeArg::Auto => Mode::Auto,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SemiringArg {
    Feasibility,
    Count,
    MinCost,
}

fn read_graph(path: &Path) -> Result<EmbeddedGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file =
        GraphFile::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(build_graph(&file)?)
}

fn read_decomposition(path: &Path, g: &EmbeddedGraph) -> Result<SphereCutDecomposition> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file = DecompositionFile::from_json(&text)?;
    Ok(import_decomposition(&file, g)?)
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n"))
            .with_context(|| format!("writing {}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn parse_cost_filter(s: Option<&str>) -> Result<CostFilter> {
    let Some(s) = s else {
        return Ok(CostFilter::Any);
    };
    let num = |t: &str| {
        t.trim()
            .parse::<u64>()
            .with_context(|| format!("bad --cost {s:?}"))
    };
    Ok(match s.split_once("..") {
        Some((lo, hi)) => CostFilter::Range(num(lo)?, num(hi)?),
        None => CostFilter::Exact(num(s)?),
    })
}

fn prepare(args: &SolveArgs, g: &EmbeddedGraph, spec: &ProblemSpec) -> Result<Prepared> {
    let builder = match args.decomp.builder {
        BuilderArg::Sweep => Builder::Sweep,
        BuilderArg::Radial => Builder::Radial,
        BuilderArg::Import => {
            let path = args
                .decomp
                .decomposition
                .as_deref()
                .expect("enforced by clap");
            return Ok(Prepared::with_decomposition(
                g,
                read_decomposition(path, g)?,
            ));
        }
    };
    Ok(Prepared::new(g, spec, builder)?)
}

fn strategy(args: &SolveArgs) -> CombineStrategy {
    if args.transform {
        CombineStrategy::Transform
    } else {
        CombineStrategy::Direct
    }
}

fn emit_plan(out: Option<&Path>, plan: &Plan) -> Result<()> {
    write_or_print(out, &plan.to_json()?)?;
    if out.is_some() {
        println!("cost {}", plan.cost);
    }
    Ok(())
}

fn cmd_decompose(graph: &Path, args: &DecompArgs, out: Option<&Path>) -> Result<()> {
    let g = read_graph(graph)?;
    let d = match args.builder {
        BuilderArg::Sweep => sweep_decomposition(&g)?,
        BuilderArg::Radial => radial_bfs_decomposition_from_outer(&g)?,
        BuilderArg::Import => {
            let path = args.decomposition.as_deref().expect("enforced by clap");
            read_decomposition(path, &g)?
        }
    };
    let internal = d.clusters.iter().filter(|c| !c.is_leaf()).count();
    let certified = d
        .clusters
        .iter()
        .filter(|c| !c.is_leaf() && c.theta.is_some())
        .count();
    eprintln!("clusters {}", d.clusters.len());
    eprintln!("width {}", d.width());
    if internal > 0 {
        eprintln!(
            "theta certified {certified}/{internal} internal clusters ({:.1}%)",
            100.0 * certified as f64 / internal as f64
        );
    }
    if out.is_some() || !matches!(args.builder, BuilderArg::Import) {
        write_or_print(out, &export_decomposition(&d, &g).to_json()?)?;
    }
    Ok(())
}

fn cmd_optimize(args: &SolveArgs) -> Result<()> {
    let g = read_graph(&args.graph)?;
    let spec = args.spec.build(&g)?;
    let prepared = prepare(args, &g, &spec)?;
    let tables = prepared.solve::<MinCost>(&spec, args.mode.into(), strategy(args))?;
    let (_, plan) = tables.optimize()?;
    emit_plan(args.out.as_deref(), &plan)
}

fn cmd_count(args: &SolveArgs, semiring: SemiringArg) -> Result<()> {
    let g = read_graph(&args.graph)?;
    let spec = args.spec.build(&g)?;
    let filter = parse_cost_filter(args.cost.as_deref())?;
    if semiring != SemiringArg::Count && filter != CostFilter::Any {
        bail!("--cost needs the count semiring");
    }
    let prepared = prepare(args, &g, &spec)?;
    let (mode, strategy) = (args.mode.into(), strategy(args));
    let text = match semiring {
        SemiringArg::Count => prepared
            .solve::<Count>(&spec, mode, strategy)?
            .count(filter)
            .to_string(),
        SemiringArg::Feasibility => prepared
            .solve::<Feasibility>(&spec, mode, strategy)?
            .is_feasible()
            .to_string(),
        SemiringArg::MinCost => {
            match prepared.solve::<MinCost>(&spec, mode, strategy)?.min_cost() {
                Some(c) => c.to_string(),
                None => return Err(Error::Infeasible("no plan satisfies the spec".into()).into()),
            }
        }
    };
    write_or_print(args.out.as_deref(), &text)
}

fn cmd_sample(args: &SolveArgs, seed: u64) -> Result<()> {
    let g = read_graph(&args.graph)?;
    let spec = args.spec.build(&g)?;
    let filter = parse_cost_filter(args.cost.as_deref())?;
    let prepared = prepare(args, &g, &spec)?;
    let tables = prepared.solve::<Count>(&spec, args.mode.into(), strategy(args))?;
    let plan = tables.sample(seed, filter)?;
    emit_plan(args.out.as_deref(), &plan)
}

fn cmd_oracle(graph: &Path, spec: &SpecArgs, out: Option<&Path>) -> Result<()> {
    let g = read_graph(graph)?;
    let spec = spec.build(&g)?;
    let result = enumerate_all(&g, &spec)?;
    let hist = result.histogram_file();
    let text = serde_json::to_string_pretty(&hist)?;
    write_or_print(out, &text)?;
    if out.is_some() {
        println!("total {}", hist.total);
    }
    Ok(())
}

fn cmd_validate(
    graph: &Path,
    plan: Option<&Path>,
    decomposition: Option<&Path>,
    spec: &OptionalSpecArgs,
) -> Result<()> {
    let g = read_graph(graph)?;
    if let Some(path) = decomposition {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let file = DecompositionFile::from_json(&text)?;
        return match import_decomposition(&file, &g) {
            Ok(d) => {
                println!("ok: width {}", d.width());
                Ok(())
            }
            Err(Error::Decomposition(msg)) => {
                for line in msg.split("; ") {
                    println!("{line}");
                }
                bail!("decomposition is invalid")
            }
            Err(e) => Err(e.into()),
        };
    }
    let path = plan.expect("enforced by clap");
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let plan = Plan::from_json(&text)?;
    let spec = match spec.k {
        Some(k) => SpecArgs {
            k,
            min_weight: spec.min_weight.unwrap_or_default(),
            max_weight: spec.max_weight.unwrap_or_default(),
            max_cost: spec.max_cost.clone(),
        }
        .build(&g)?,
        // without a spec only the structure of the plan is checked
        None => {
            ProblemSpec::with_auto_cost(&g, plan.num_districts().max(1), 0, g.total_weight() + 1)?
        }
    };
    validate_plan(&g, &spec, &plan)?;
    println!("ok: {} districts, cost {}", plan.num_districts(), plan.cost);
    Ok(())
}

fn cmd_gadget(cmd: &GadgetCommand) -> Result<()> {
    let GadgetCommand::Binpacking {
        values,
        bins,
        capacity,
        out,
        labels,
    } = cmd;
    let bp = BinPackingInstance::new(values.clone(), *bins, *capacity)?;
    let gi = binpacking_gadget(&bp)?;
    write_or_print(Some(out), &gi.graph.to_file().to_json()?)?;
    let mut sidecar = gi.labels_json();
    sidecar["spec"] = serde_json::to_value(gi.spec)?;
    write_or_print(Some(labels), &serde_json::to_string_pretty(&sidecar)?)?;
    println!(
        "{} vertices, {} edges; k = {}, weights in [{}, {}), max cost {}",
        gi.graph.num_vertices(),
        gi.graph.num_edges(),
        gi.spec.k,
        gi.spec.lower,
        gi.spec.upper,
        gi.spec.max_cost
    );
    Ok(())
}

fn cmd_gen(cmd: &GenCommand) -> Result<()> {
    let GenCommand::Grid { rows, cols, out } = cmd;
    if *rows == 0 || *cols == 0 {
        bail!("grid needs at least one row and one column");
    }
    write_or_print(out.as_deref(), &grid(*rows, *cols).to_file().to_json()?)
}

fn run(cli: Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| anyhow!("thread pool: {e}"))?;
    }
    match &cli.command {
        Command::Decompose { graph, decomp, out } => cmd_decompose(graph, decomp, out.as_deref()),
        Command::Optimize(args) => cmd_optimize(args),
        Command::Count { solve, semiring } => cmd_count(solve, *semiring),
        Command::Sample { solve, seed } => cmd_sample(solve, *seed),
        Command::Oracle { graph, spec, out } => cmd_oracle(graph, spec, out.as_deref()),
        Command::Gadget(cmd) => cmd_gadget(cmd),
        Command::Gen(cmd) => cmd_gen(cmd),
        Command::Validate {
            graph,
            plan,
            decomposition,
            spec,
        } => cmd_validate(graph, plan.as_deref(), decomposition.as_deref(), spec),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits with 2 on usage errors; keep 2 for infeasible
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
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::Infeasible(_)) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
