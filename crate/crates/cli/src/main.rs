use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use planted::bench::{dense_scaling, sparse_scaling};
use planted::biclique::{balanced_biclique_finder, biclique_bound, biclique_extractor};
use planted::clique::{clique_finder, CliqueParams};
use planted::experiment::{run_experiment, write_csv, ExperimentSpec, SolverKind};
use planted::generators::{generate_base, BaseKind};
use planted::io::{
    edge_list_string, parse_edge_list_with_limit, parse_mapping, parse_subset, write_mapping,
    write_subset, DEFAULT_MAX_VERTICES,
};
use planted::lower_bound::{
    delete_edges, lb_instance, lb_prefix_statistics, staircase_graph, LbConfig,
};
use planted::oracle::{max_balanced_biclique_exact, max_clique_exact, min_vertex_cover_exact};
use planted::planting::PlantedInstance;
use planted::slack::{densification_stats, find_bulging_set, verify_certificate, Branch};
use planted::{plant, Error, Graph, Seed, Template};

#[derive(Parser)]
#[command(
    name = "planted",
    version,
    about = "Planted clique and biclique recovery toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a base graph.
    Gen(GenArgs),
    /// Plant a template into a base graph.
    Plant(PlantArgs),
    /// Recover a clique from the degree order.
    SolveClique(SolveCliqueArgs),
    /// Recover a balanced biclique.
    SolveBiclique(SolveBicliqueArgs),
    /// Run the component-splitting extractor on a vertex subset.
    ExtractBiclique(ExtractArgs),
    /// Print every vertex's slack and the degree order.
    SlackProfile(InputArgs),
    /// Find a low-slack set or a bulging set.
    Bulging(BulgingArgs),
    /// Densification counts for a planted instance.
    DensifyStats(DensifyArgs),
    /// Emit a (thinned) staircase graph.
    LbGraph(LbGraphArgs),
    /// Prefix statistics over seeded lower-bound instances.
    LbExp(LbExpArgs),
    /// Exact solvers for small graphs.
    Oracle(OracleArgs),
    /// Scaling benchmarks.
    Bench(BenchArgs),
    /// Seeded multi-trial experiment.
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Edge-list file, `-` for stdin.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    json: bool,
    /// Refuse graphs with more vertices than this.
    #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
    max_vertices: usize,
}

#[derive(Args)]
struct GenArgs {
    /// `empty`, `dregular:D`, `er:P` or `staircase:ETA`.
    #[arg(long)]
    generator: BaseKind,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct PlantArgs {
    #[command(flatten)]
    input: InputArgs,
    /// `clique:K` or `biclique:A,B`.
    #[arg(long)]
    template: Template,
    #[arg(long)]
    seed: Option<u64>,
    /// Planted graph edge list.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Template-to-base vertex map.
    #[arg(long)]
    mapping: Option<PathBuf>,
}

#[derive(Args)]
struct SolveCliqueArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = 0.125)]
    eta: f64,
    /// Planted density, for the guarantee.
    #[arg(long, requires = "p")]
    c: Option<f64>,
    /// `1 - max degree / n` of the base, for the guarantee.
    #[arg(long, requires = "c")]
    p: Option<f64>,
    /// Write the clique as a subset file.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SolveBicliqueArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Planted density, for the guarantee.
    #[arg(long)]
    c: Option<f64>,
    /// Write both sides as subset files `<path>.left` and `<path>.right`.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ExtractArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    subset: PathBuf,
}

#[derive(Args)]
struct BulgingArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    beta: f64,
    #[arg(long)]
    s: f64,
}

#[derive(Args)]
struct DensifyArgs {
    /// Base graph edge list.
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    mapping: PathBuf,
    #[arg(long)]
    template: Template,
    /// Slack threshold; defaults to the minimum slack of the base.
    #[arg(long)]
    s_u: Option<f64>,
    /// Defaults to n.
    #[arg(long)]
    u_size: Option<usize>,
    #[arg(long, default_value_t = 6.0)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
}

#[derive(Args)]
struct LbGraphArgs {
    #[arg(long)]
    n: usize,
    /// Deletion probability; defaults to `a / c * sqrt(ln n / n)`.
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long, default_value_t = 0.3)]
    c: f64,
    #[arg(long, default_value_t = 2.0)]
    a: f64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct LbExpArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.3)]
    c: f64,
    #[arg(long, default_value_t = 2.0)]
    a: f64,
    /// Overrides the derived deletion probability.
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Compute clique numbers when n is at most this.
    #[arg(long, default_value_t = 60)]
    oracle_limit: usize,
    /// Fail unless this fraction of trials has no bound violation.
    #[arg(long, default_value_t = 0.96)]
    min_clean: f64,
    /// Per-(trial, s) CSV.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    Clique,
    Biclique,
    Cover,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(value_enum)]
    kind: OracleKind,
    #[command(flatten)]
    input: InputArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchKind {
    DenseClique,
    DenseBiclique,
    Sparse,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    kind: BenchKind,
    /// Smaller size (vertices); the larger run uses twice as many.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 5)]
    reps: usize,
    /// Largest acceptable growth ratio.
    #[arg(long)]
    limit: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExperimentArgs {
    /// JSON experiment description; the flags below are ignored when given.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long)]
    generator: Option<BaseKind>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    template: Option<Template>,
    #[arg(long, value_enum, default_value = "clique")]
    solver: SolverArg,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    densify_alpha: Option<f64>,
    /// Fail when the pass rate is below this.
    #[arg(long, default_value_t = 0.99)]
    min_pass: f64,
    /// Per-trial CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Full JSON report.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverArg {
    Clique,
    Biclique,
}

enum Outcome {
    Success,
    Failure,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Failure) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

type CmdResult = Result<Outcome, Error>;

fn run(command: Command) -> CmdResult {
    match command {
        Command::Gen(a) => gen(a),
        Command::Plant(a) => plant_cmd(a),
        Command::SolveClique(a) => solve_clique(a),
        Command::SolveBiclique(a) => solve_biclique(a),
        Command::ExtractBiclique(a) => extract(a),
        Command::SlackProfile(a) => slack_profile(a),
        Command::Bulging(a) => bulging(a),
        Command::DensifyStats(a) => densify(a),
        Command::LbGraph(a) => lb_graph(a),
        Command::LbExp(a) => lb_exp(a),
        Command::Oracle(a) => oracle(a),
        Command::Bench(a) => bench(a),
        Command::Experiment(a) => experiment(a),
    }
}

fn require_seed(seed: Option<u64>, what: &str) -> Result<u64, Error> {
    seed.ok_or_else(|| Error::Input(format!("{what} is random; pass --seed")))
}

fn read_text(path: &Path) -> Result<String, Error> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
    }
}

fn read_graph(args: &InputArgs) -> Result<Graph, Error> {
    parse_edge_list_with_limit(&read_text(&args.input)?, args.max_vertices)
}

fn write_bytes(path: Option<&Path>, bytes: &[u8]) -> Result<(), Error> {
    match path {
        Some(p) if p != Path::new("-") => fs::write(p, bytes)?,
        _ => io::stdout().write_all(bytes)?,
    }
    Ok(())
}

fn print_json(value: &Value) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value).expect("json values serialize");
    writeln!(io::stdout(), "{text}")?;
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report types serialize")
}

fn join(set: impl Iterator<Item = usize>) -> String {
    set.map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn gen(a: GenArgs) -> CmdResult {
    let seed = match a.generator {
        BaseKind::Empty => a.seed.unwrap_or(0),
        _ => require_seed(a.seed, "this generator")?,
    };
    let g = generate_base(&a.generator, a.n, &Seed::new(seed).purpose("base"))?;
    write_bytes(a.output.as_deref(), edge_list_string(&g).as_bytes())?;
    Ok(Outcome::Success)
}

fn plant_cmd(a: PlantArgs) -> CmdResult {
    let seed = require_seed(a.seed, "planting")?;
    let base = read_graph(&a.input)?;
    let inst = plant(base, a.template, &Seed::new(seed).purpose("plant"))?;
    if let Some(path) = &a.mapping {
        let mut buf = Vec::new();
        write_mapping(&inst.phi, &mut buf)?;
        fs::write(path, buf)?;
    }
    if a.input.json {
        let summary = json!({
            "n": inst.planted.n(),
            "base_edges": inst.base.m(),
            "planted_edges": inst.planted.m(),
            "template": inst.template.to_string(),
            "planted_set": inst.planted_set,
            "c_effective": inst.c_effective,
        });
        if let Some(path) = &a.output {
            fs::write(path, edge_list_string(&inst.planted))?;
        }
        print_json(&summary)?;
    } else {
        write_bytes(
            a.output.as_deref(),
            edge_list_string(&inst.planted).as_bytes(),
        )?;
    }
    Ok(Outcome::Success)
}

fn solve_clique(a: SolveCliqueArgs) -> CmdResult {
    let g = read_graph(&a.input)?;
    let params = CliqueParams {
        eta: a.eta,
        ..CliqueParams::default()
    };
    let mut report = clique_finder(&g, &params)?;
    if let (Some(c), Some(p)) = (a.c, a.p) {
        report = report.with_guarantee(g.n(), c, p)?;
    }
    if let Some(path) = &a.output {
        let mut buf = Vec::new();
        write_subset(&report.found, &mut buf)?;
        fs::write(path, buf)?;
    }
    if a.input.json {
        print_json(&to_json(&report))?;
    } else {
        println!("size {} verified {}", report.size, report.verified);
        if let Some(k) = report.guarantee {
            println!("guarantee {k:.6} met {}", report.meets_guarantee());
        }
        println!("{}", join(report.found.iter()));
    }
    Ok(if report.meets_guarantee() {
        Outcome::Success
    } else {
        Outcome::Failure
    })
}

fn solve_biclique(a: SolveBicliqueArgs) -> CmdResult {
    let g = read_graph(&a.input)?;
    let r = balanced_biclique_finder(&g);
    let bound = a.c.map(|c| biclique_bound(g.n(), c)).transpose()?;
    let need = bound.map_or(0, |b| b.ceil().max(1.0) as usize);
    if let Some(path) = &a.output {
        for (suffix, side) in [("left", &r.left), ("right", &r.right)] {
            let mut buf = Vec::new();
            write_subset(side, &mut buf)?;
            fs::write(path.with_extension(suffix), buf)?;
        }
    }
    if a.input.json {
        let mut v = to_json(&r);
        if let Some(b) = bound {
            v["guarantee"] = json!(b);
        }
        print_json(&v)?;
    } else {
        println!(
            "min_side {} verified {} phase {:?}",
            r.min_side, r.verified, r.phase
        );
        println!("L: {}", join(r.left.iter()));
        println!("R: {}", join(r.right.iter()));
    }
    Ok(if r.verified && r.min_side >= need {
        Outcome::Success
    } else {
        Outcome::Failure
    })
}

fn extract(a: ExtractArgs) -> CmdResult {
    let g = read_graph(&a.input)?;
    let subset = parse_subset(&read_text(&a.subset)?)?;
    let ex = biclique_extractor(&g, &subset)?;
    let verified = g.verify_biclique(&ex.left, &ex.right);
    if a.input.json {
        let mut v = to_json(&ex);
        v["min_side"] = json!(ex.min_side());
        v["verified"] = json!(verified);
        print_json(&v)?;
    } else {
        println!(
            "min_side {} verified {verified} branch {:?}",
            ex.min_side(),
            ex.branch
        );
        println!("L: {}", join(ex.left.iter()));
        println!("R: {}", join(ex.right.iter()));
    }
    Ok(if verified {
        Outcome::Success
    } else {
        Outcome::Failure
    })
}

fn slack_profile(a: InputArgs) -> CmdResult {
    let g = read_graph(&a)?;
    let profile = g.slack_profile();
    if a.json {
        print_json(&to_json(&profile))?;
    } else {
        let mut out = String::from("vertex,slack,rank\n");
        let mut rank = vec![0; g.n()];
        for (i, &v) in profile.order.iter().enumerate() {
            rank[v] = i;
        }
        for (v, s) in profile.slack.iter().enumerate() {
            out.push_str(&format!("{v},{s},{}\n", rank[v]));
        }
        write_bytes(None, out.as_bytes())?;
    }
    Ok(Outcome::Success)
}

fn bulging(a: BulgingArgs) -> CmdResult {
    let g = read_graph(&a.input)?;
    let cert = match find_bulging_set(&g, a.alpha, a.beta, a.s) {
        Ok(cert) => cert,
        Err(e @ Error::NoCertificate { .. }) => {
            eprintln!("{e}");
            return Ok(Outcome::Failure);
        }
        Err(e) => return Err(e),
    };
    let verified = verify_certificate(&g, &cert);
    if a.input.json {
        let mut v = to_json(&cert);
        v["verified"] = json!(verified);
        print_json(&v)?;
    } else {
        let branch = match cert.branch {
            Branch::LowSlackSetLarge => "low-slack set",
            Branch::BulgingSetFound => "bulging set",
        };
        println!(
            "{branch} of size {} (s_U {}, threshold {:.6}) verified {verified}",
            cert.u.len(),
            cert.s_u,
            cert.threshold
        );
        println!("{}", join(cert.u.iter()));
    }
    Ok(if verified {
        Outcome::Success
    } else {
        Outcome::Failure
    })
}

fn densify(a: DensifyArgs) -> CmdResult {
    let base = Arc::new(read_graph(&a.input)?);
    let phi = parse_mapping(&read_text(&a.mapping)?)?;
    let inst = PlantedInstance::from_mapping(Arc::clone(&base), a.template, phi)?;
    let n = base.n();
    let s_u = a.s_u.unwrap_or_else(|| {
        (n.saturating_sub(1) - base.max_degree().min(n.saturating_sub(1))) as f64
    });
    let stats = densification_stats(&inst, s_u, a.u_size.unwrap_or(n), a.alpha, a.a);
    if a.input.json {
        print_json(&to_json(&stats))?;
    } else {
        println!(
            "hit {} miss {} cond_i {} cond_ii {} hypothesis {}",
            stats.hit, stats.miss, stats.cond_i, stats.cond_ii, stats.hypothesis_held
        );
    }
    Ok(if stats.cond_i && stats.cond_ii {
        Outcome::Success
    } else {
        Outcome::Failure
    })
}

fn lb_config(n: usize, c: f64, a: f64, eta: Option<f64>) -> Result<LbConfig, Error> {
    match eta {
        Some(eta) => LbConfig::with_eta(n, c, a, eta),
        None => LbConfig::new(n, c, a),
    }
}

fn lb_graph(a: LbGraphArgs) -> CmdResult {
    let cfg = lb_config(a.n, a.c, a.a, a.eta)?;
    let stair = staircase_graph(a.n)?;
    let g = if cfg.eta_del == 0.0 {
        stair
    } else {
        let seed = require_seed(a.seed, "edge deletion")?;
        delete_edges(&stair, cfg.eta_del, &Seed::new(seed).purpose("delete"))?
    };
    if cfg.clipped {
        eprintln!("note: deletion probability clipped to 1");
    }
    write_bytes(a.output.as_deref(), edge_list_string(&g).as_bytes())?;
    Ok(Outcome::Success)
}

fn lb_exp(a: LbExpArgs) -> CmdResult {
    let seed = require_seed(a.seed, "the lower-bound experiment")?;
    if a.trials == 0 {
        return Err(Error::Input("trials must be at least 1".into()));
    }
    let cfg = lb_config(a.n, a.c, a.a, a.eta)?;
    let master = Seed::new(seed);
    let mut csv = String::from("trial,s,base_at_most,planted_at_most,hit,lower,upper,lower_violated,upper_violated,kappa_prefix,kappa_base\n");
    let (mut clean, mut kappa_failures) = (0, 0);
    for t in 0..a.trials as u64 {
        let inst = lb_instance(&cfg, &master.trial(t))?;
        let recs = lb_prefix_statistics(&inst, &cfg, a.oracle_limit)?;
        if recs.iter().all(|r| !r.violated()) {
            clean += 1;
        }
        if recs
            .iter()
            .any(|r| r.kappa_inequality_holds() == Some(false))
        {
            kappa_failures += 1;
        }
        for r in &recs {
            let opt = |x: Option<usize>| x.map(|k| k.to_string()).unwrap_or_default();
            csv.push_str(&format!(
                "{t},{},{},{},{},{},{},{},{},{},{}\n",
                r.s,
                r.base_at_most,
                r.planted_at_most,
                r.hit,
                planted::experiment::fmt_sig(r.lower),
                planted::experiment::fmt_sig(r.upper),
                r.lower_violated,
                r.upper_violated,
                opt(r.kappa_prefix),
                opt(r.kappa_base)
            ));
        }
    }
    if let Some(path) = &a.output {
        fs::write(path, &csv)?;
    }
    let pass = clean as f64 >= a.min_clean * a.trials as f64 && kappa_failures == 0;
    let summary = json!({
        "config": to_json(&cfg),
        "trials": a.trials,
        "clean_trials": clean,
        "kappa_failures": kappa_failures,
        "pass": pass,
    });
    if a.json {
        print_json(&summary)?;
    } else {
        println!(
            "eta {:.6}{}: {clean}/{} trials within both bounds, {kappa_failures} clique-number violations",
            cfg.eta_del,
            if cfg.clipped { " (clipped)" } else { "" },
            a.trials
        );
    }
    Ok(if pass {
        Outcome::Success
    } else {
        Outcome::Failure
    })
}

fn oracle(a: OracleArgs) -> CmdResult {
    let g = read_graph(&a.input)?;
    let value = match a.kind {
        OracleKind::Clique => {
            let k = max_clique_exact(&g)?;
            json!({ "size": k.len(), "clique": k })
        }
        OracleKind::Biclique => {
            let (l, r) = max_balanced_biclique_exact(&g)?;
            json!({ "min_side": l.len().min(r.len()), "left": l, "right": r })
        }
        OracleKind::Cover => {
            let c = min_vertex_cover_exact(&g)?;
            json!({ "size": c.len(), "cover": c })
        }
    };
    if a.input.json {
        print_json(&value)?;
    } else {
        let (size, sets): (&Value, Vec<&Value>) = match a.kind {
            OracleKind::Biclique => (&value["min_side"], vec![&value["left"], &value["right"]]),
            OracleKind::Clique => (&value["size"], vec![&value["clique"]]),
            OracleKind::Cover => (&value["size"], vec![&value["cover"]]),
        };
        println!("{size}");
        for s in sets {
            let ids: Vec<String> = s
                .as_array()
                .into_iter()
                .flatten()
                .map(|v| v.to_string())
                .collect();
            println!("{}", ids.join(" "));
        }
    }
    Ok(Outcome::Success)
}

fn bench(a: BenchArgs) -> CmdResult {
    let seed = Seed::new(require_seed(a.seed, "benchmark instance generation")?);
    if a.reps == 0 || a.n < 4 {
        return Err(Error::Input("need --reps >= 1 and --n >= 4".into()));
    }
    let report = match a.kind {
        BenchKind::DenseClique => dense_scaling(
            SolverKind::Clique,
            a.n,
            a.reps,
            a.limit.unwrap_or(5.5),
            &seed,
        )?,
        BenchKind::DenseBiclique => dense_scaling(
            SolverKind::Biclique,
            a.n,
            a.reps,
            a.limit.unwrap_or(5.5),
            &seed,
        )?,
        BenchKind::Sparse => sparse_scaling(a.n, a.reps, a.limit.unwrap_or(2.0), &seed)?,
    };
    if a.json {
        print_json(&to_json(&report))?;
    } else {
        println!(
            "{} {} -> {}: {:.2}ms -> {:.2}ms, ratio {:.3} (limit {}) {}",
            report.label,
            report.small,
            report.large,
            report.median_small_ms,
            report.median_large_ms,
            report.ratio,
            report.limit,
            if report.pass { "pass" } else { "FAIL" }
        );
    }
    Ok(if report.pass {
        Outcome::Success
    } else {
        Outcome::Failure
    })
}

fn experiment(a: ExperimentArgs) -> CmdResult {
    let spec = match &a.spec {
        Some(path) => serde_json::from_str::<ExperimentSpec>(&read_text(path)?)
            .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?,
        None => {
            let missing = |what: &str| Error::Input(format!("--{what} is required without --spec"));
            let solver = match a.solver {
                SolverArg::Clique => SolverKind::Clique,
                SolverArg::Biclique => SolverKind::Biclique,
            };
            let mut spec = ExperimentSpec::new(
                a.n.ok_or_else(|| missing("n"))?,
                a.generator.clone().ok_or_else(|| missing("generator"))?,
                a.template.clone().ok_or_else(|| missing("template"))?,
                solver,
                require_seed(a.seed, "an experiment")?,
            );
            spec.trials = a.trials;
            spec.c = a.c;
            spec.p = a.p;
            spec.densify_alpha = a.densify_alpha;
            spec
        }
    };
    let report = run_experiment(&spec)?;
    let mut csv = Vec::new();
    write_csv(&report, &mut csv)?;
    match &a.csv {
        Some(path) => fs::write(path, &csv)?,
        None => io::stdout().write_all(&csv)?,
    }
    if let Some(path) = &a.report {
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        fs::write(path, text)?;
    }
    let s = &report.summary;
    eprintln!(
        "{}/{} passed (threshold {}, guarantee {:.6}); size min {} median {} max {}",
        s.passes, s.trials, s.threshold, s.guarantee, s.min_size, s.median_size, s.max_size
    );
    Ok(if s.pass_rate >= a.min_pass {
        Outcome::Success
    } else {
        Outcome::Failure
    })
}
