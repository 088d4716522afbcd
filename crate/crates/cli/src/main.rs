use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use motifclust::engine::{
    build_motif_graph_approx, build_motif_graph_exact, conductance, enumerate_instances, motif_conductance,
    motif_ratio_cut, ratio_cut, MotifGraph, Provenance,
};
use motifclust::experiments::{
    gen_circles, gen_cluster_graph, gen_gnp, gen_lfr_like, gen_powerlaw_hidden_variable, phi_diff_experiment,
    records_csv, summary_csv, CirclesParams, ClusterParams, ExperimentConfig, Generated, GeneratorSpec, LfrParams,
};
use motifclust::graph::emit_labeled;
use motifclust::motif::{load_motif, two_anchor_decomposition};
use motifclust::quantum::{algorithm_costs, powerlaw_analysis, Algorithm, CostInputs, NoisyCounter};
use motifclust::spectral::spectral_cluster;
use motifclust::verify::run_verification;
use motifclust::{emit_graph, parse_graph, Graph, LabeledGraph, Mode};

#[derive(Parser)]
#[command(name = "motifclust", version, about = "Motif graphs, motif spectral clustering and quantum cost models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random graph.
    Gen(GenArgs),
    /// Build the motif graph of an input graph.
    MotifGraph(MotifGraphArgs),
    /// Spectral clustering, optionally on a motif graph.
    Cluster(ClusterArgs),
    /// Conductance difference between clusterings of original and perturbed graphs.
    Perturb(PerturbArgs),
    /// Dominant cost terms of the classical and quantum algorithms.
    Cost(CostArgs),
    /// Exponents of n on power-law graphs and the fastest quantum algorithm.
    Regime(RegimeArgs),
    /// Randomised property checks; exits non-zero on any failure.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GeneratorKind {
    Cluster,
    Circles,
    Lfr,
    Powerlaw,
    Gnp,
}

#[derive(Args)]
struct GeneratorOpts {
    /// Number of vertices.
    #[arg(long, default_value_t = 1000)]
    n: usize,
    /// Centres for cluster graphs.
    #[arg(long, default_value_t = 5)]
    centres: usize,
    /// Point spread around each centre.
    #[arg(long, default_value_t = 0.3)]
    spread: f64,
    /// Connection radius (cluster graphs) or distance threshold (circles).
    #[arg(long)]
    radius: Option<f64>,
    /// Numerator of the inverse-distance weight.
    #[arg(long)]
    weight_scale: Option<f64>,
    /// Gaussian noise on the circles.
    #[arg(long, default_value_t = 0.05)]
    noise: f64,
    /// Degree exponent (LFR-like and power-law graphs).
    #[arg(long, default_value_t = 2.5)]
    tau: f64,
    /// Community-size exponent of LFR-like graphs.
    #[arg(long, default_value_t = 1.5)]
    tau_community: f64,
    /// Mixing fraction of LFR-like graphs.
    #[arg(long, default_value_t = 0.2)]
    mixing: f64,
    #[arg(long, default_value_t = 15.0)]
    avg_degree: f64,
    #[arg(long, default_value_t = 50)]
    min_community: usize,
    /// Defaults to n / 5.
    #[arg(long)]
    max_community: Option<usize>,
    /// Edge probability of G(n, p).
    #[arg(long, default_value_t = 0.1)]
    p: f64,
    /// Directed G(n, p).
    #[arg(long)]
    directed: bool,
}

impl GeneratorOpts {
    fn cluster(&self) -> ClusterParams {
        let d = ClusterParams::default();
        ClusterParams {
            n: self.n,
            k: self.centres,
            spread: self.spread,
            radius: self.radius.unwrap_or(d.radius),
            weight_scale: self.weight_scale.unwrap_or(d.weight_scale),
        }
    }

    fn circles(&self) -> CirclesParams {
        let d = CirclesParams::default();
        CirclesParams {
            n: self.n,
            noise: self.noise,
            threshold: self.radius.unwrap_or(d.threshold),
            weight_scale: self.weight_scale.unwrap_or(d.weight_scale),
            ..d
        }
    }

    fn lfr(&self) -> LfrParams {
        LfrParams {
            n: self.n,
            tau_degree: self.tau,
            tau_community: self.tau_community,
            mixing: self.mixing,
            avg_degree: self.avg_degree,
            min_community: self.min_community,
            max_community: self.max_community.unwrap_or((self.n / 5).max(self.min_community)),
        }
    }

    fn spec(&self, kind: GeneratorKind) -> Result<GeneratorSpec> {
        Ok(match kind {
            GeneratorKind::Cluster => GeneratorSpec::Cluster(self.cluster()),
            GeneratorKind::Circles => GeneratorSpec::Circles(self.circles()),
            GeneratorKind::Lfr => GeneratorSpec::Lfr(self.lfr()),
            GeneratorKind::Powerlaw | GeneratorKind::Gnp => bail!("this generator has no planted clusters"),
        })
    }
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    generator: GeneratorKind,
    #[command(flatten)]
    opts: GeneratorOpts,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Graph output file (stdout if absent).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Write `vertex<TAB>group` for generators with planted groups.
    #[arg(long)]
    truth: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Exact,
    Approx,
}

#[derive(Args)]
struct MotifGraphArgs {
    /// Input graph file.
    graph: PathBuf,
    /// Built-in motif name (e.g. triangle2, path3, clique4a2) or motif file.
    #[arg(long, default_value = "triangle2")]
    motif: String,
    #[arg(value_enum, long, default_value = "exact")]
    method: Construction,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    #[arg(long, default_value_t = 0.01)]
    delta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    RatioCut,
    Conductance,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::RatioCut => Mode::RatioCut,
            ModeArg::Conductance => Mode::Conductance,
        }
    }
}

#[derive(Args)]
struct ClusterArgs {
    graph: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(value_enum, long, default_value = "conductance")]
    mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cluster the exact motif graph of this motif instead of the graph itself.
    #[arg(long)]
    motif: Option<String>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct PerturbArgs {
    #[arg(value_enum, default_value = "cluster")]
    generator: GeneratorKind,
    #[command(flatten)]
    opts: GeneratorOpts,
    /// Clusters; defaults to the planted group count.
    #[arg(long)]
    k: Option<usize>,
    /// Comma-separated relative perturbation sizes.
    #[arg(long, value_delimiter = ',', default_value = "0.1")]
    eps: Vec<f64>,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(value_enum, long, default_value = "conductance")]
    mode: ModeArg,
    /// Cluster the whole generated graph rather than its largest connected component.
    #[arg(long)]
    all_components: bool,
    /// Per-trial records CSV.
    #[arg(long)]
    records: Option<PathBuf>,
    /// Summary CSV (stdout if absent).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CostArgs {
    #[arg(long)]
    n: f64,
    /// Maximum degree.
    #[arg(long)]
    d: f64,
    /// Motif size.
    #[arg(long)]
    s: u32,
    /// Largest distance between anchors.
    #[arg(long)]
    l: u32,
    /// Number of motif instances.
    #[arg(long)]
    motifs: f64,
    /// Charge loading the input to the counting-based algorithms.
    #[arg(long)]
    preprocess: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct RegimeArgs {
    #[arg(long)]
    s: u32,
    #[arg(long)]
    tau: f64,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Larger samples.
    #[arg(long)]
    full: bool,
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_graph(path: &Path) -> Result<LabeledGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn gen(args: GenArgs) -> Result<()> {
    let o = &args.opts;
    let generated = match args.generator {
        GeneratorKind::Cluster => gen_cluster_graph(&o.cluster(), args.seed)?,
        GeneratorKind::Circles => gen_circles(&o.circles(), args.seed)?,
        GeneratorKind::Lfr => gen_lfr_like(&o.lfr(), args.seed)?,
        GeneratorKind::Powerlaw => plain(gen_powerlaw_hidden_variable(o.n, o.tau, args.seed)?),
        GeneratorKind::Gnp => plain(gen_gnp(o.n, o.p, o.directed, args.seed)?),
    };
    if let Some(path) = &args.truth {
        if generated.truth.is_empty() {
            bail!("this generator has no planted groups");
        }
        let text: String = generated.truth.iter().enumerate().map(|(v, c)| format!("{v}\t{c}\n")).collect();
        write_out(Some(path), &text)?;
    }
    write_out(args.output.as_deref(), &emit_graph(&generated.graph))
}

fn plain(graph: Graph) -> Generated {
    Generated { graph, truth: Vec::new() }
}

fn approx_motif_graph(args: &MotifGraphArgs, g: &Graph) -> Result<MotifGraph> {
    let m = load_motif(&args.motif)?;
    let counter = NoisyCounter::new(args.seed);
    if m.anchors().len() == 2 {
        return Ok(build_motif_graph_approx(&m, g, args.eps, args.delta, &counter)?);
    }
    let parts = two_anchor_decomposition(&m)?.parts;
    let mut sum: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    let share = args.delta / parts.len() as f64;
    for part in &parts {
        for (u, v, w) in build_motif_graph_approx(&part.motif, g, args.eps, share, &counter)?.graph().edges() {
            *sum.entry((u, v)).or_insert(0.0) += part.weight as f64 * w;
        }
    }
    let graph = Graph::from_edges(g.n(), false, sum.into_iter().map(|((u, v), w)| (u, v, w)))?;
    Ok(MotifGraph::new(graph, Provenance::Approx { eps: args.eps, delta: args.delta, seed: args.seed }))
}

fn motif_graph(args: MotifGraphArgs) -> Result<()> {
    let input = read_graph(&args.graph)?;
    let mg = match args.method {
        Construction::Exact => build_motif_graph_exact(&load_motif(&args.motif)?, &input.graph),
        Construction::Approx => approx_motif_graph(&args, &input.graph)?,
    };
    let labeled = LabeledGraph { graph: mg.graph().clone(), labels: input.labels };
    let mut text = emit_labeled(&labeled);
    text.push_str(&format!("# provenance {}\n", mg.provenance()));
    write_out(args.output.as_deref(), &text)
}

fn cluster(args: ClusterArgs) -> Result<()> {
    let input = read_graph(&args.graph)?;
    let mode = Mode::from(args.mode);
    let (part, quality) = match &args.motif {
        Some(spec) => {
            let m = load_motif(spec)?;
            let instances = enumerate_instances(&m, &input.graph);
            let mg = build_motif_graph_exact(&m, &input.graph);
            let part = spectral_cluster(mg.graph(), args.k, mode, args.seed)?;
            let q = match mode {
                Mode::Conductance => motif_conductance(&instances, part.labels()),
                Mode::RatioCut => motif_ratio_cut(&instances, part.labels()),
            };
            (part, q)
        }
        None => {
            let part = spectral_cluster(&input.graph, args.k, mode, args.seed)?;
            let q = match mode {
                Mode::Conductance => conductance(&input.graph, part.labels()),
                Mode::RatioCut => ratio_cut(&input.graph, part.labels()),
            };
            (part, q)
        }
    };
    let what = if matches!(mode, Mode::Conductance) { "conductance" } else { "ratio cut" };
    eprintln!("{what}: {quality}; {} isolated vertices as singletons", part.isolated().len());
    write_out(args.output.as_deref(), &part.to_tsv(&input.labels))
}

fn perturb(args: PerturbArgs) -> Result<()> {
    let generator = args.opts.spec(args.generator)?;
    let mut cfg = ExperimentConfig::new(generator, args.eps.clone(), args.trials, args.seed);
    cfg.k = args.k;
    cfg.mode = args.mode.into();
    cfg.largest_component = !args.all_components;
    let outcome = phi_diff_experiment(&cfg)?;
    if let Some(path) = &args.records {
        write_out(Some(path), &records_csv(&outcome.records))?;
    }
    write_out(args.output.as_deref(), &summary_csv(&outcome.summary))
}

fn cost(args: CostArgs) -> Result<()> {
    let inputs = CostInputs { n: args.n, d: args.d, s: args.s, l: args.l, motifs: args.motifs, preprocess: args.preprocess };
    write_out(args.output.as_deref(), &algorithm_costs(inputs)?.to_csv())
}

fn regime(args: RegimeArgs) -> Result<()> {
    let r = powerlaw_analysis(args.s, args.tau)?;
    println!("s={} tau={} tau0={:.6} tau1={:.6}", r.s, r.tau, r.tau0, r.tau1);
    println!("algorithm,exponent_of_n,fastest_quantum");
    for alg in Algorithm::ALL {
        println!("{alg},{:.6},{}", r.exponent(alg), alg == r.best);
    }
    Ok(())
}

fn verify(args: VerifyArgs) -> Result<bool> {
    let outcomes = run_verification(args.seed, !args.full)?;
    for o in &outcomes {
        println!("{o}");
    }
    Ok(outcomes.iter().all(|o| o.passed))
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Gen(a) => gen(a)?,
        Command::MotifGraph(a) => motif_graph(a)?,
        Command::Cluster(a) => cluster(a)?,
        Command::Perturb(a) => perturb(a)?,
        Command::Cost(a) => cost(a)?,
        Command::Regime(a) => regime(a)?,
        Command::Verify(a) => return verify(a),
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
