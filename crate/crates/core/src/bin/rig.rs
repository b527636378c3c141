//! Command-line front end: sample graphs, check properties with certified
//! verdicts, and drive reproducible threshold/coupling experiments.

use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rigraph::coupling::{chernoff_bound, chernoff_poisson_bound, exact_tv_small};
use rigraph::experiment::{
    self, config_from_manifest, CoupleTask, ExperimentConfig, LawConfig, SweepTask, TaskConfig,
};
use rigraph::gen::{gen_gnp, gen_gstar, gen_rig, gen_uniform_rig, MSpec};
use rigraph::props::{
    hamilton_solve, is_connected, is_k_connected, has_perfect_matching, min_degree_at_least,
    HamiltonBudget, HamiltonStatus, NoWitness,
};
use rigraph::thresholds::{Model, PropertyKind};
use rigraph::{Graph, RigError, Seed};

#[derive(Parser)]
#[command(
    name = "rig",
    version,
    about = "Random intersection graphs: samplers, certified property checkers, \
             coupling experiments and sharp-threshold sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample one graph and print it in edge-list format
    Gen(GenArgs),
    /// Read an edge-list graph and decide a property (exit 0 = holds,
    /// 1 = fails, 2 = unresolved, 3 = error)
    Check(CheckArgs),
    /// Monte Carlo sweep over the omega grid of a threshold formula
    Sweep(SweepArgs),
    /// Draw coupled (G(n,p_hat_minus), G(n,m,p)) samples
    Couple(CoupleArgs),
    /// Exact total variation distance between small-graph distributions
    Tv(TvArgs),
    /// Chernoff concentration bounds
    Bound(BoundArgs),
    /// Print a named experiment preset as a TOML config
    Preset(PresetArgs),
    /// Run an experiment from a TOML config file (or a run manifest)
    Run(RunArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Model: gnp | rig | urig | gstar
    #[arg(long, default_value = "rig")]
    model: String,
    #[arg(short, long)]
    n: usize,
    /// Feature count (rig/urig/gstar)
    #[arg(short, long)]
    m: Option<u64>,
    /// Feature count as n^alpha (alternative to -m)
    #[arg(long)]
    alpha: Option<f64>,
    /// Edge/feature probability (gnp/rig)
    #[arg(short, long)]
    p: Option<f64>,
    /// Features per vertex (urig)
    #[arg(short, long)]
    d: Option<u64>,
    /// Number of pair draws (gstar)
    #[arg(short, long)]
    t: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also print the feature assignment, one "v: w1 w2 ..." line per vertex
    #[arg(long)]
    with_features: bool,
}

#[derive(Args)]
struct CheckArgs {
    /// Edge-list file; "-" reads stdin
    input: PathBuf,
    /// connected | kconn:K | matching | hamilton | mindeg:K
    #[arg(long)]
    property: String,
    /// Print the certificate (Hamilton cycle) or witness on a decision
    #[arg(long)]
    certificate: bool,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    exact_n: Option<usize>,
}

#[derive(Args)]
struct SweepArgs {
    /// Model: gnp | rig
    #[arg(long, default_value = "rig")]
    model: String,
    #[arg(short, long)]
    n: Vec<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(short, long)]
    m: Option<u64>,
    #[arg(short, long, default_value_t = 1)]
    k: usize,
    /// connectivity | k_connectivity | perfect_matching | hamilton | min_degree_k
    #[arg(long, default_value = "connectivity")]
    property: Vec<String>,
    /// Comma-separated omega grid (default -6,-4,-2,-1,0,1,2,4,6)
    #[arg(long)]
    grid: Option<String>,
    #[arg(long, default_value_t = 300)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Experiment name used in artifact file names
    #[arg(long, default_value = "sweep")]
    name: String,
}

#[derive(Args)]
struct CoupleArgs {
    #[arg(short, long)]
    n: usize,
    #[arg(short, long)]
    m: Option<u64>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Explicit feature probability; default derives it from the
    /// connectivity threshold at --omega
    #[arg(short, long)]
    p: Option<f64>,
    #[arg(long)]
    omega: Option<f64>,
    /// Override the coupling's internal divergence parameter
    #[arg(long)]
    omega_c: Option<f64>,
    #[arg(long, default_value_t = 100)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long, default_value = "couple")]
    name: String,
}

#[derive(Args)]
struct TvArgs {
    #[arg(short, long)]
    n: usize,
    /// gnp:P | star-constant:T | star-binomial:M:Q | star-poisson:LAMBDA
    #[arg(long)]
    law1: String,
    #[arg(long)]
    law2: String,
}

#[derive(Args)]
struct BoundArgs {
    /// Binomial mean (or Poisson lambda with --poisson)
    #[arg(long)]
    mean: f64,
    /// Comma-separated deviations t
    #[arg(short, long)]
    t: String,
    #[arg(long)]
    poisson: bool,
    /// Polynomial order of the Poisson bound's o(n^-i) caveat
    #[arg(long, default_value_t = 1)]
    order: u32,
}

#[derive(Args)]
struct PresetArgs {
    /// Preset name; omit to list all presets
    name: Option<String>,
}

#[derive(Args)]
struct RunArgs {
    /// Experiment config (TOML), or a previous run's manifest
    config: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Gen(a) => report(cmd_gen(a)),
        Command::Check(a) => match cmd_check(a) {
            Ok(code) => code,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(3)
            }
        },
        Command::Sweep(a) => report(cmd_sweep(a)),
        Command::Couple(a) => report(cmd_couple(a)),
        Command::Tv(a) => report(cmd_tv(a)),
        Command::Bound(a) => report(cmd_bound(a)),
        Command::Preset(a) => report(cmd_preset(a)),
        Command::Run(a) => report(cmd_run(a)),
    };
    code
}

fn report(r: Result<(), RigError>) -> ExitCode {
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn cmd_gen(a: GenArgs) -> Result<(), RigError> {
    let seed = Seed::new(a.seed);
    let need = |x: Option<f64>, name: &'static str| {
        x.ok_or(RigError::Config {
            field: name.into(),
            why: format!("required for model {}", a.model),
        })
    };
    let feature_count = || -> Result<u64, RigError> {
        match (a.m, a.alpha) {
            (Some(m), _) => Ok(m),
            (None, Some(alpha)) => Ok((a.n as f64).powf(alpha).round() as u64),
            (None, None) => Err(RigError::Config {
                field: "m/alpha".into(),
                why: format!("required for model {}", a.model),
            }),
        }
    };
    match a.model.as_str() {
        "gnp" => {
            let g = gen_gnp(a.n, need(a.p, "p")?, seed)?;
            print!("{}", g.to_edge_list());
        }
        "rig" => {
            let (assignment, g) = gen_rig(a.n, feature_count()?, need(a.p, "p")?, seed)?;
            print!("{}", g.to_edge_list());
            if a.with_features {
                for v in 0..a.n {
                    let ws: Vec<String> =
                        assignment.features_of(v).iter().map(u64::to_string).collect();
                    println!("{v}: {}", ws.join(" "));
                }
            }
        }
        "urig" => {
            let d = a.d.ok_or(RigError::Config {
                field: "d".into(),
                why: "required for model urig".into(),
            })?;
            let (assignment, g) = gen_uniform_rig(a.n, feature_count()?, d, seed)?;
            print!("{}", g.to_edge_list());
            if a.with_features {
                for v in 0..a.n {
                    let ws: Vec<String> =
                        assignment.features_of(v).iter().map(u64::to_string).collect();
                    println!("{v}: {}", ws.join(" "));
                }
            }
        }
        "gstar" => {
            let t = a.t.ok_or(RigError::Config {
                field: "t".into(),
                why: "required for model gstar".into(),
            })?;
            let (_, g) = gen_gstar(a.n, MSpec::Constant(t), seed)?;
            print!("{}", g.to_edge_list());
        }
        other => {
            return Err(RigError::Config {
                field: "model".into(),
                why: format!("unknown model {other:?} (gnp | rig | urig | gstar)"),
            })
        }
    }
    Ok(())
}

fn cmd_check(a: CheckArgs) -> Result<ExitCode, RigError> {
    let text = if a.input.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(&a.input)?
    };
    let g = Graph::from_edge_list(&text)?;
    let parse_order = |spec: &str, tail: &str| -> Result<usize, RigError> {
        tail.parse().map_err(|_| RigError::Parse {
            what: format!("property order in {spec:?}"),
        })
    };
    let decided = |holds: bool| Ok(ExitCode::from(u8::from(!holds)));
    match a.property.as_str() {
        "connected" => {
            let holds = is_connected(&g);
            println!("connected: {holds}");
            decided(holds)
        }
        "matching" => {
            let holds = has_perfect_matching(&g);
            println!("perfect matching: {holds}");
            decided(holds)
        }
        "hamilton" => {
            let mut budget = HamiltonBudget::default();
            if let Some(r) = a.restarts {
                budget.restarts = r;
            }
            if let Some(x) = a.exact_n {
                budget.exact_n = x;
            }
            let v = hamilton_solve(&g, &budget)?;
            match v.status {
                HamiltonStatus::Yes => {
                    println!("hamilton cycle: yes");
                    if a.certificate {
                        let cycle: Vec<String> = v
                            .certificate
                            .as_ref()
                            .unwrap()
                            .iter()
                            .map(u32::to_string)
                            .collect();
                        println!("certificate: {}", cycle.join(" "));
                    }
                    Ok(ExitCode::SUCCESS)
                }
                HamiltonStatus::No => {
                    println!("hamilton cycle: no");
                    if a.certificate {
                        let reason = match v.witness.unwrap() {
                            NoWitness::Disconnected => "disconnected",
                            NoWitness::MinDegreeBelowTwo => "min degree < 2",
                            NoWitness::ExhaustedSearch => "exhaustive search",
                        };
                        println!("witness: {reason}");
                    }
                    Ok(ExitCode::from(1))
                }
                HamiltonStatus::Unresolved => {
                    println!("hamilton cycle: unresolved");
                    Ok(ExitCode::from(2))
                }
            }
        }
        spec if spec.starts_with("kconn:") => {
            let k = parse_order(spec, &spec[6..])?;
            let holds = is_k_connected(&g, k);
            println!("{k}-connected: {holds}");
            decided(holds)
        }
        spec if spec.starts_with("mindeg:") => {
            let k = parse_order(spec, &spec[7..])?;
            let holds = min_degree_at_least(&g, k);
            println!("min degree >= {k}: {holds}");
            decided(holds)
        }
        other => Err(RigError::Parse {
            what: format!(
                "property {other:?} (connected | kconn:K | matching | hamilton | mindeg:K)"
            ),
        }),
    }
}

fn parse_model(s: &str) -> Result<Model, RigError> {
    match s {
        "gnp" => Ok(Model::Gnp),
        "rig" => Ok(Model::Rig),
        other => Err(RigError::Config {
            field: "model".into(),
            why: format!("unknown model {other:?} (gnp | rig)"),
        }),
    }
}

fn parse_property(s: &str) -> Result<PropertyKind, RigError> {
    match s {
        "connectivity" => Ok(PropertyKind::Connectivity),
        "k_connectivity" => Ok(PropertyKind::KConnectivity),
        "perfect_matching" => Ok(PropertyKind::PerfectMatching),
        "hamilton" => Ok(PropertyKind::Hamilton),
        "min_degree_k" => Ok(PropertyKind::MinDegreeK),
        other => Err(RigError::Config {
            field: "property".into(),
            why: format!("unknown property {other:?}"),
        }),
    }
}

fn parse_f64_list(s: &str, field: &str) -> Result<Vec<f64>, RigError> {
    s.split(',')
        .map(|x| {
            x.trim().parse().map_err(|_| RigError::Config {
                field: field.into(),
                why: format!("{x:?} is not a number"),
            })
        })
        .collect()
}

fn run_and_print(config: &ExperimentConfig) -> Result<(), RigError> {
    let artifacts = experiment::run(config)?;
    for line in &artifacts.summary {
        println!("{line}");
    }
    for p in &artifacts.csv_paths {
        println!("wrote {}", p.display());
    }
    println!("wrote {}", artifacts.manifest_path.display());
    Ok(())
}

fn cmd_sweep(a: SweepArgs) -> Result<(), RigError> {
    let grid = match &a.grid {
        Some(g) => parse_f64_list(g, "grid")?,
        None => experiment::default_grid(),
    };
    let properties = a
        .property
        .iter()
        .map(|p| parse_property(p))
        .collect::<Result<Vec<_>, _>>()?;
    let config = ExperimentConfig {
        name: a.name,
        seed: a.seed,
        samples: a.samples,
        threads: a.threads,
        output_dir: a.out_dir,
        exploratory: false,
        task: TaskConfig::Sweep(SweepTask {
            model: parse_model(&a.model)?,
            n: if a.n.is_empty() { vec![1000] } else { a.n },
            alpha: a.alpha,
            m: a.m,
            k: a.k,
            properties,
            grid,
            hamilton: None,
        }),
    };
    run_and_print(&config)
}

fn cmd_couple(a: CoupleArgs) -> Result<(), RigError> {
    let config = ExperimentConfig {
        name: a.name,
        seed: a.seed,
        samples: a.samples,
        threads: a.threads,
        output_dir: a.out_dir,
        exploratory: false,
        task: TaskConfig::Couple(CoupleTask {
            n: a.n,
            alpha: a.alpha,
            m: a.m,
            p: a.p,
            omega: a.omega,
            omega_c: a.omega_c,
        }),
    };
    run_and_print(&config)
}

fn parse_law(s: &str) -> Result<LawConfig, RigError> {
    let err = || RigError::Config {
        field: "law".into(),
        why: format!(
            "cannot parse {s:?} (gnp:P | star-constant:T | star-binomial:M:Q | star-poisson:LAMBDA)"
        ),
    };
    let (kind, rest) = s.split_once(':').ok_or_else(err)?;
    Ok(match kind {
        "gnp" => LawConfig::Gnp {
            p: rest.parse().map_err(|_| err())?,
        },
        "star-constant" => LawConfig::StarConstant {
            t: rest.parse().map_err(|_| err())?,
        },
        "star-poisson" => LawConfig::StarPoisson {
            lambda: rest.parse().map_err(|_| err())?,
        },
        "star-binomial" => {
            let (m, q) = rest.split_once(':').ok_or_else(err)?;
            LawConfig::StarBinomial {
                count: m.parse().map_err(|_| err())?,
                q: q.parse().map_err(|_| err())?,
            }
        }
        _ => return Err(err()),
    })
}

fn cmd_tv(a: TvArgs) -> Result<(), RigError> {
    let law1 = parse_law(&a.law1)?;
    let law2 = parse_law(&a.law2)?;
    let tv = exact_tv_small(a.n, &law1.to_law(), &law2.to_law())?;
    println!("{tv}");
    Ok(())
}

fn cmd_bound(a: BoundArgs) -> Result<(), RigError> {
    for t in parse_f64_list(&a.t, "t")? {
        if a.poisson {
            let b = chernoff_poisson_bound(a.mean, t, a.order)?;
            println!("t={t}: {} {}", b.leading, b.caveat());
        } else {
            println!("t={t}: {}", chernoff_bound(a.mean, t)?);
        }
    }
    Ok(())
}

fn cmd_preset(a: PresetArgs) -> Result<(), RigError> {
    match a.name {
        Some(name) => {
            let config = experiment::preset(&name)?;
            print!("{}", config.to_toml());
        }
        None => {
            for name in experiment::PRESET_NAMES {
                println!("{name}");
            }
        }
    }
    Ok(())
}

fn cmd_run(a: RunArgs) -> Result<(), RigError> {
    let text = std::fs::read_to_string(&a.config)?;
    let mut config = ExperimentConfig::from_toml(&text)
        .or_else(|_| config_from_manifest(&text))?;
    if let Some(seed) = a.seed {
        config.seed = seed;
    }
    if let Some(samples) = a.samples {
        config.samples = samples;
    }
    if let Some(threads) = a.threads {
        config.threads = Some(threads);
    }
    if let Some(dir) = a.out_dir {
        config.output_dir = Some(dir);
    }
    run_and_print(&config)
}
