//! Command-line front end: experiment runner, noise sweeps, growth studies,
//! bound calculators, and projection/gap utilities.
//!
//! Stdout carries only machine-readable results; diagnostics go to stderr.
//! Exit codes: 0 success, 1 runtime failure, 2 malformed flags.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::costs::{self, CostModel};
use crate::error::{Error, Result};
use crate::geometry::ConvexDomain;
use crate::harness::{self, GrowthScenario};
use crate::metrics;
use crate::point::Point;

#[derive(Parser, Debug)]
#[command(
    name = "subgrad",
    about = "Lazy anytime Subgradient learners, regret bounds, and Monte-Carlo experiments",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a Monte-Carlo experiment and emit summary (and optionally
    /// per-turn) CSV.
    Run(RunArgs),
    /// Sweep the noise radius R and emit one final pseudo-regret per trial
    /// and R value.
    Sweep(SweepArgs),
    /// Growth study: mean pseudo-regret across horizons with a fitted
    /// log-log slope.
    Growth(GrowthArgs),
    /// Evaluate the regret, pseudo-regret and tail bounds for given
    /// constants.
    Bounds(BoundsArgs),
    /// Project a point onto a domain (debugging aid).
    Project(ProjectArgs),
    /// Print the suboptimality-gap profile of a mean cost vector.
    Gaps(GapsArgs),
}

/// Flags shared by `run` and `sweep`; mirrors the config-file keys.
#[derive(Args, Debug, Clone)]
struct ExperimentArgs {
    /// Flat key-value config file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// lazy, greedy or ftl
    #[arg(long)]
    algorithm: Option<String>,
    /// simplex, interval or curved
    #[arg(long)]
    domain: Option<String>,
    /// Ambient dimension for the simplex
    #[arg(long)]
    d: Option<u64>,
    /// Curvature exponent of the curved domain (> 2)
    #[arg(long)]
    alpha: Option<f64>,
    /// Mean cost vector, comma-separated
    #[arg(long)]
    mean: Option<String>,
    /// Noise radius
    #[arg(long = "R")]
    radius: Option<f64>,
    /// Step parameter
    #[arg(long)]
    eta: Option<f64>,
    /// Horizon (number of turns)
    #[arg(long = "N")]
    horizon: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// summary or per_turn
    #[arg(long)]
    record_level: Option<String>,
    /// Cost model: sphere, curved_example or greedy_example
    #[arg(long)]
    model: Option<String>,
    /// File of scripted cost vectors, one per line
    #[arg(long)]
    script: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[command(flatten)]
    experiment: ExperimentArgs,
    /// Summary CSV path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the per-turn CSV table here
    #[arg(long)]
    per_turn_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    experiment: ExperimentArgs,
    /// Comma-separated noise radii
    #[arg(long = "R-values")]
    r_values: String,
    /// Sweep CSV path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GrowthArgs {
    /// curved, greedy_scalar or lazy_simplex
    #[arg(long)]
    scenario: String,
    #[arg(long, default_value_t = 3.0)]
    alpha: f64,
    /// Noise radius for the lazy_simplex scenario
    #[arg(long = "R", default_value_t = 1.0)]
    radius: f64,
    /// Comma-separated ascending horizons
    #[arg(long)]
    horizons: String,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Curve CSV path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long = "L2")]
    l2: f64,
    #[arg(long = "R2")]
    r2: f64,
    #[arg(long)]
    gap: f64,
    #[arg(long, default_value_t = 1.0)]
    eta: f64,
    /// Horizon for the adversarial bound
    #[arg(long = "N")]
    horizon: Option<u64>,
    /// Tail-bound argument t
    #[arg(long)]
    t: Option<f64>,
    /// Domain diameter (default: simplex)
    #[arg(long = "D", default_value_t = std::f64::consts::SQRT_2)]
    diameter: f64,
    /// Domain max norm (default: simplex)
    #[arg(long, default_value_t = 1.0)]
    maxnorm: f64,
}

#[derive(Args, Debug)]
struct ProjectArgs {
    /// simplex, interval, curved or zero_sum
    #[arg(long)]
    domain: String,
    /// Point to project, comma-separated
    #[arg(long)]
    point: String,
    #[arg(long, default_value_t = 3.0)]
    alpha: f64,
}

#[derive(Args, Debug)]
struct GapsArgs {
    /// Mean cost vector, comma-separated
    #[arg(long)]
    mean: String,
}

/// Parses argv and dispatches. Returns the process exit status.
pub fn parse_and_dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version (exit 0) and usage errors (exit 2)
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidParameter(_) | Error::InvalidInput(_) | Error::Parse { .. } => {
                    eprintln!("run with --help for usage");
                    2
                }
                _ => 1,
            }
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Run(args) => run(args),
        Command::Sweep(args) => sweep(args),
        Command::Growth(args) => growth(args),
        Command::Bounds(args) => bounds(args),
        Command::Project(args) => project(args),
        Command::Gaps(args) => gaps_cmd(args),
    }
}

fn experiment_config(args: &ExperimentArgs) -> Result<harness::ExperimentConfig> {
    let mut kv: BTreeMap<String, String> = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
                path: path.display().to_string(),
                source: e,
            })?;
            // collect the file entries, then let flags override
            config_entries(&text)?
        }
        None => BTreeMap::new(),
    };
    let mut set = |k: &str, v: Option<String>| {
        if let Some(v) = v {
            kv.insert(k.to_string(), v);
        }
    };
    set("algorithm", args.algorithm.clone());
    set("domain", args.domain.clone());
    set("d", args.d.map(|v| v.to_string()));
    set("alpha", args.alpha.map(|v| v.to_string()));
    set("mean", args.mean.clone());
    set("R", args.radius.map(|v| v.to_string()));
    set("eta", args.eta.map(|v| v.to_string()));
    set("N", args.horizon.map(|v| v.to_string()));
    set("trials", args.trials.map(|v| v.to_string()));
    set("seed", args.seed.map(|v| v.to_string()));
    set("record_level", args.record_level.clone());
    set("model", args.model.clone());

    let mut config = harness::build_config(&kv)?;
    if let Some(path) = &args.script {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        config.cost_model = CostModel::Scripted(costs::parse_scripted(&text)?);
        if config.cost_model.dim() != config.domain.dim() {
            return Err(Error::DimensionMismatch {
                expected: config.domain.dim(),
                got: config.cost_model.dim(),
            });
        }
    }
    Ok(config)
}

fn config_entries(text: &str) -> Result<BTreeMap<String, String>> {
    let mut kv = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: i + 1,
            msg: format!("expected key = value, got {line:?}"),
        })?;
        kv.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(kv)
}

fn emit_or_print(csv_writer: impl Fn(&std::path::Path) -> Result<()>, out: &Option<PathBuf>, fallback: impl Fn()) -> Result<()> {
    match out {
        Some(path) => csv_writer(path),
        None => {
            fallback();
            Ok(())
        }
    }
}

fn run(args: RunArgs) -> Result<()> {
    let config = experiment_config(&args.experiment)?;
    let agg = harness::run_monte_carlo(&config)?;
    if agg.adversarial_violations > 0 {
        eprintln!(
            "warning: {} trial(s) exceeded the pathwise regret bound",
            agg.adversarial_violations
        );
    }
    if let Some(path) = &args.per_turn_out {
        let curves = harness::per_turn_table(&config)?;
        harness::emit_per_turn_csv(&curves, path)?;
    }
    let rows = harness::summary_rows(&agg);
    emit_or_print(
        |p| harness::emit_summary_csv(&rows, p),
        &args.out,
        || {
            println!("turn,mean,quantile05,median,quantile95");
            for r in &rows {
                println!(
                    "{},{},{},{},{}",
                    r.turn, r.mean, r.quantile05, r.median, r.quantile95
                );
            }
        },
    )
}

fn sweep(args: SweepArgs) -> Result<()> {
    let config = experiment_config(&args.experiment)?;
    let r_values: Vec<f64> = args
        .r_values
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::invalid_parameter(format!("bad R value {t:?}")))
        })
        .collect::<Result<_>>()?;
    let rows = harness::sweep_noise(&config, &r_values)?;
    emit_or_print(
        |p| harness::emit_sweep_csv(&rows, p),
        &args.out,
        || {
            println!("R,trial,final_pseudo_regret");
            for r in &rows {
                println!("{},{},{}", r.radius, r.trial, r.final_pseudo_regret);
            }
        },
    )
}

fn growth(args: GrowthArgs) -> Result<()> {
    let scenario = match args.scenario.as_str() {
        "curved" => GrowthScenario::Curved { alpha: args.alpha },
        "greedy_scalar" => GrowthScenario::GreedyScalar,
        "lazy_simplex" => GrowthScenario::LazySimplex {
            radius: args.radius,
        },
        other => {
            return Err(Error::invalid_parameter(format!(
                "unknown scenario {other:?} (expected curved, greedy_scalar or lazy_simplex)"
            )))
        }
    };
    let horizons: Vec<u64> = args
        .horizons
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::invalid_parameter(format!("bad horizon {t:?}")))
        })
        .collect::<Result<_>>()?;
    let (slope, curve) = harness::growth_study(&scenario, &horizons, args.trials, args.seed)?;
    println!("slope,{slope}");
    let body = {
        let mut s = String::from("horizon,mean_pseudo_regret\n");
        for (h, v) in &curve {
            s.push_str(&format!("{h},{v}\n"));
        }
        s
    };
    match &args.out {
        Some(path) => {
            std::fs::write(path, &body).map_err(|e| Error::Io {
                path: path.display().to_string(),
                source: e,
            })?;
        }
        None => print!("{body}"),
    }
    Ok(())
}

fn bounds(args: BoundsArgs) -> Result<()> {
    let pseudo = metrics::bound_pseudo_regret(args.l2, args.r2, args.gap, args.eta)?;
    println!("pseudo_regret_bound {}", pseudo.special_value.unwrap());
    println!("pseudo_regret_bound_general {}", pseudo.bound_value);
    if let Some(n) = args.horizon {
        let adv = metrics::bound_adversarial(
            args.l2,
            n,
            args.eta,
            args.diameter,
            args.maxnorm,
            false,
        )?;
        println!("adversarial_regret_bound {}", adv.bound_value);
        if let Some(s) = adv.special_value {
            println!("adversarial_regret_bound_simplex {s}");
        }
    }
    if let Some(t) = args.t {
        let tail = metrics::bound_tail(args.l2, args.r2, args.gap, args.eta, t)?;
        println!("tail_threshold {}", tail.threshold.unwrap());
        println!("tail_probability_bound {}", tail.bound_value);
        println!("tail_validity_floor {}", tail.validity_floor.unwrap());
        println!("tail_valid {}", tail.valid);
    }
    Ok(())
}

fn project(args: ProjectArgs) -> Result<()> {
    let w = Point::parse(&args.point)?;
    let domain = match args.domain.as_str() {
        "simplex" => ConvexDomain::simplex(w.dim())?,
        "interval" => ConvexDomain::interval(-1.0, 1.0)?,
        "curved" => ConvexDomain::curved(args.alpha)?,
        "zero_sum" => ConvexDomain::zero_sum(w.dim())?,
        other => {
            return Err(Error::invalid_parameter(format!(
                "unknown domain {other:?} (expected simplex, interval, curved or zero_sum)"
            )))
        }
    };
    println!("{}", domain.project(&w)?);
    Ok(())
}

fn gaps_cmd(args: GapsArgs) -> Result<()> {
    let mean = Point::parse(&args.mean)?;
    let profile = costs::gaps(&mean);
    let joined = |v: &[f64]| {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    println!("sorted_gaps,{}", joined(&profile.sorted_gaps));
    match profile.min_positive_gap {
        Some(g) => println!("min_positive_gap,{g}"),
        None => println!("min_positive_gap,undefined"),
    }
    println!(
        "permutation,{}",
        profile
            .permutation
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    Ok(())
}
