//! Experiment orchestration: seeded trials, Monte-Carlo aggregation, noise
//! sweeps, counterexample growth studies, and CSV emission.
//!
//! Trials are independently seeded by (seed, trial_index) and merged by
//! index, so results are identical under any worker count or scheduling.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::algorithms::{Algorithm, Learner};
use crate::costs::{CostModel, CostStream, RngStream};
use crate::error::{Error, Result};
use crate::geometry::ConvexDomain;
use crate::metrics::{self, RunRecord, TurnLog};
use crate::point::Point;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecordLevel {
    Summary,
    PerTurn,
}

impl RecordLevel {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "summary" => Ok(RecordLevel::Summary),
            "per_turn" => Ok(RecordLevel::PerTurn),
            other => Err(Error::invalid_parameter(format!(
                "unknown record level {other:?} (expected summary or per_turn)"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub algorithm: Algorithm,
    pub domain: ConvexDomain,
    pub cost_model: CostModel,
    pub eta: f64,
    pub horizon: u64,
    pub trials: u64,
    pub seed: u64,
    pub record_level: RecordLevel,
}

impl ExperimentConfig {
    fn validate(&self) -> Result<()> {
        if self.horizon < 1 {
            return Err(Error::invalid_parameter("horizon must be >= 1"));
        }
        if self.trials < 1 {
            return Err(Error::invalid_parameter("trials must be >= 1"));
        }
        if !(self.eta > 0.0) {
            return Err(Error::invalid_parameter("eta must be positive"));
        }
        if self.cost_model.dim() != self.domain.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.domain.dim(),
                got: self.cost_model.dim(),
            });
        }
        Ok(())
    }
}

/// Per-trial reduction used by the aggregators: the instant pseudo-regret
/// (or, for adversarial streams, instant regret) per turn, plus the pathwise
/// adversarial-bound safety check.
#[derive(Clone, Debug)]
struct TrialCurve {
    instants: Vec<f64>,
    measured_regret: f64,
    regret_bound: f64,
}

/// Plays the configured learner against the configured stream for N turns,
/// keeping the full per-turn log.
pub fn run_trial(config: &ExperimentConfig, trial_index: u64) -> Result<RunRecord> {
    config.validate()?;
    let attach = |e: Error| Error::Trial {
        trial: trial_index,
        source: Box::new(e),
    };
    let mut stream = CostStream::new(
        config.cost_model.clone(),
        RngStream::new(config.seed, trial_index),
    );
    let (mut learner, first) =
        Learner::start(config.algorithm, config.domain.clone(), config.eta).map_err(attach)?;
    let mut turns = Vec::with_capacity(config.horizon as usize);
    let mut action = first;
    for _ in 0..config.horizon {
        let cost = stream.next_cost().map_err(attach)?;
        turns.push(TurnLog {
            cost: cost.clone(),
            unprojected: learner.unprojected_iterate(),
            action: action.clone(),
        });
        action = learner.step(&cost).map_err(attach)?;
    }
    Ok(RunRecord {
        eta: config.eta,
        domain: config.domain.clone(),
        turns,
        mean_cost: config.cost_model.mean(),
    })
}

/// Allocation-light trial runner feeding the aggregators. Matches
/// [`run_trial`] turn for turn.
fn run_curve(config: &ExperimentConfig, trial_index: u64) -> Result<TrialCurve> {
    let attach = |e: Error| Error::Trial {
        trial: trial_index,
        source: Box::new(e),
    };
    let mut stream = CostStream::new(
        config.cost_model.clone(),
        RngStream::new(config.seed, trial_index),
    );
    let (mut learner, first) =
        Learner::start(config.algorithm, config.domain.clone(), config.eta).map_err(attach)?;
    let mean = config.cost_model.mean();
    let comparator = match &mean {
        Some(a) => Some(metrics::linear_minimizer(&config.domain, a).map_err(attach)?),
        None => None,
    };

    let mut instants = Vec::with_capacity(config.horizon as usize);
    let mut action = first;
    let mut cum_cost = Point::zeros(config.domain.dim());
    let mut paid = 0.0;
    let mut max_cost_norm = 0.0_f64;
    let mut prev_regret = 0.0;
    for _ in 0..config.horizon {
        let cost = stream.next_cost().map_err(attach)?;
        paid += cost.dot(&action);
        cum_cost.add_assign(&cost);
        max_cost_norm = max_cost_norm.max(cost.norm());
        match (&mean, &comparator) {
            (Some(a), Some(star)) => {
                instants.push(a.dot(&action) - a.dot(star));
            }
            _ => {
                // adversarial stream: log the cumulative-regret increments
                let comp = metrics::linear_minimizer(&config.domain, &cum_cost).map_err(attach)?;
                let cum_regret = paid - cum_cost.dot(&comp);
                instants.push(cum_regret - prev_regret);
                prev_regret = cum_regret;
            }
        }
        action = learner.step(&cost).map_err(attach)?;
    }
    let comp = metrics::linear_minimizer(&config.domain, &cum_cost).map_err(attach)?;
    let measured_regret = paid - cum_cost.dot(&comp);
    // the pathwise safety net is a statement about the lazy algorithm only
    let regret_bound = if config.algorithm == Algorithm::Lazy && max_cost_norm > 0.0 {
        metrics::bound_adversarial(
            max_cost_norm,
            config.horizon,
            config.eta,
            config.domain.diameter(),
            config.domain.max_norm(),
            false,
        )
        .map(|r| r.bound_value)
        .unwrap_or(f64::INFINITY)
    } else {
        f64::INFINITY // zero costs: regret is exactly 0, bound is vacuous
    };
    Ok(TrialCurve {
        instants,
        measured_regret,
        regret_bound,
    })
}

/// Aggregate of a Monte-Carlo batch.
#[derive(Clone, Debug)]
pub struct AggregateResult {
    /// Per-turn mean cumulative pseudo-regret (or regret).
    pub mean: Vec<f64>,
    pub quantile05: Vec<f64>,
    pub median: Vec<f64>,
    pub quantile95: Vec<f64>,
    /// Final cumulative value per trial, ordered by trial index.
    pub finals: Vec<f64>,
    pub runtime: Duration,
    /// Trials whose measured regret exceeded the pathwise adversarial bound.
    pub adversarial_violations: u64,
    /// Largest measured_regret - bound over all trials (negative when the
    /// pathwise bound holds everywhere).
    pub max_regret_slack: f64,
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    let idx = ((sorted.len() - 1) as f64 * q).round() as usize;
    sorted[idx]
}

/// Runs all trials (in parallel) and aggregates per-turn curves. Results are
/// merged by trial index, so worker count does not affect the output.
pub fn run_monte_carlo(config: &ExperimentConfig) -> Result<AggregateResult> {
    config.validate()?;
    let start = Instant::now();
    let curves: Vec<TrialCurve> = (0..config.trials)
        .into_par_iter()
        .map(|trial| run_curve(config, trial))
        .collect::<Result<_>>()?;

    let n = config.horizon as usize;
    let trials = curves.len();
    let mut cumulative: Vec<Vec<f64>> = Vec::with_capacity(trials);
    let mut violations = 0;
    let mut max_slack = f64::NEG_INFINITY;
    for c in &curves {
        let mut cum = Vec::with_capacity(n);
        let mut acc = 0.0;
        for &v in &c.instants {
            acc += v;
            cum.push(acc);
        }
        let slack = c.measured_regret - c.regret_bound;
        if slack > 0.0 {
            violations += 1;
        }
        max_slack = max_slack.max(slack);
        cumulative.push(cum);
    }

    let mut mean = vec![0.0; n];
    let mut q05 = vec![0.0; n];
    let mut med = vec![0.0; n];
    let mut q95 = vec![0.0; n];
    let mut column = vec![0.0; trials];
    for turn in 0..n {
        for (i, cum) in cumulative.iter().enumerate() {
            column[i] = cum[turn];
        }
        mean[turn] = column.iter().sum::<f64>() / trials as f64;
        column.sort_by(|a, b| a.partial_cmp(b).unwrap());
        q05[turn] = quantile(&column, 0.05);
        med[turn] = quantile(&column, 0.50);
        q95[turn] = quantile(&column, 0.95);
    }
    let finals: Vec<f64> = cumulative.iter().map(|c| *c.last().unwrap()).collect();
    Ok(AggregateResult {
        mean,
        quantile05: q05,
        median: med,
        quantile95: q95,
        finals,
        runtime: start.elapsed(),
        adversarial_violations: violations,
        max_regret_slack: max_slack,
    })
}

/// Per-trial curves of a batch, for the per-turn CSV table.
pub fn per_turn_table(config: &ExperimentConfig) -> Result<Vec<Vec<f64>>> {
    config.validate()?;
    let curves: Vec<TrialCurve> = (0..config.trials)
        .into_par_iter()
        .map(|trial| run_curve(config, trial))
        .collect::<Result<_>>()?;
    Ok(curves.into_iter().map(|c| c.instants).collect())
}

/// One row of a noise sweep: final pseudo-regret of one trial at one R.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub radius: f64,
    pub trial: u64,
    pub final_pseudo_regret: f64,
}

/// Runs `trials` samples for each noise radius R and reports the final
/// pseudo-regret of every trial.
pub fn sweep_noise(base: &ExperimentConfig, r_values: &[f64]) -> Result<Vec<SweepRow>> {
    let mean = match &base.cost_model {
        CostModel::SphereNoise { mean, .. } => mean.clone(),
        _ => {
            return Err(Error::unsupported(
                "noise sweeps need a sphere-noise cost model",
            ))
        }
    };
    if r_values.iter().any(|&r| !(r >= 0.0)) {
        return Err(Error::invalid_parameter("R values must be >= 0"));
    }
    let mut rows = Vec::with_capacity(r_values.len() * base.trials as usize);
    for (r_idx, &radius) in r_values.iter().enumerate() {
        let config = ExperimentConfig {
            cost_model: CostModel::sphere_noise(mean.clone(), radius)?,
            // distinct noise draws per sweep column
            seed: base.seed.wrapping_add(r_idx as u64),
            ..base.clone()
        };
        let agg = run_monte_carlo(&config)?;
        for (trial, &f) in agg.finals.iter().enumerate() {
            rows.push(SweepRow {
                radius,
                trial: trial as u64,
                final_pseudo_regret: f,
            });
        }
    }
    Ok(rows)
}

/// A counterexample growth scenario.
#[derive(Clone, Debug)]
pub enum GrowthScenario {
    /// Lazy Subgradient on the curved domain with costs (+-1, 1).
    Curved { alpha: f64 },
    /// Greedy Subgradient on [-1, 1] with scalar costs +1 w.p. 3/4.
    GreedyScalar,
    /// Lazy Subgradient on the 2-simplex under sphere noise; the bounded
    /// pseudo-regret contrast case.
    LazySimplex { radius: f64 },
}

impl GrowthScenario {
    fn config(&self, horizon: u64, trials: u64, seed: u64) -> Result<ExperimentConfig> {
        let (algorithm, domain, cost_model) = match self {
            GrowthScenario::Curved { alpha } => (
                Algorithm::Lazy,
                ConvexDomain::curved(*alpha)?,
                CostModel::CurvedExample,
            ),
            GrowthScenario::GreedyScalar => (
                Algorithm::Greedy,
                ConvexDomain::interval(-1.0, 1.0)?,
                CostModel::GreedyExample,
            ),
            GrowthScenario::LazySimplex { radius } => (
                Algorithm::Lazy,
                ConvexDomain::simplex(2)?,
                CostModel::sphere_noise(Point::new(vec![0.0, 1.0])?, *radius)?,
            ),
        };
        Ok(ExperimentConfig {
            algorithm,
            domain,
            cost_model,
            eta: 1.0,
            horizon,
            trials,
            seed,
            record_level: RecordLevel::Summary,
        })
    }
}

/// Mean pseudo-regret at a list of horizons, plus the fitted log-log slope
/// over the largest decade [max/10, max].
pub fn growth_study(
    scenario: &GrowthScenario,
    horizons: &[u64],
    trials: u64,
    seed: u64,
) -> Result<(f64, Vec<(u64, f64)>)> {
    if horizons.is_empty() || horizons.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid_parameter(
            "horizons must be strictly ascending and nonempty",
        ));
    }
    let max_h = *horizons.last().unwrap();
    // the anytime schedule makes shorter horizons prefixes of the longest
    // run, so one trajectory per trial covers every checkpoint
    let config = scenario.config(max_h, trials, seed)?;
    let sums: Vec<Vec<f64>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let curve = run_curve(&config, trial)?;
            let mut acc = 0.0;
            let mut at = Vec::with_capacity(horizons.len());
            let mut next = 0;
            for (i, &v) in curve.instants.iter().enumerate() {
                acc += v;
                if next < horizons.len() && (i + 1) as u64 == horizons[next] {
                    at.push(acc);
                    next += 1;
                }
            }
            Ok(at)
        })
        .collect::<Result<_>>()?;

    let curve: Vec<(u64, f64)> = horizons
        .iter()
        .enumerate()
        .map(|(k, &h)| {
            let m = sums.iter().map(|s| s[k]).sum::<f64>() / trials as f64;
            (h, m)
        })
        .collect();
    let ns: Vec<u64> = curve.iter().map(|&(h, _)| h).collect();
    let vals: Vec<f64> = curve.iter().map(|&(_, v)| v).collect();
    let window = (max_h as f64 / 10.0, max_h as f64);
    let slope = metrics::fit_loglog_slope(&ns, &vals, window)?;
    Ok((slope, curve))
}

fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    let mut f = fs::File::create(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    f.write_all(contents.as_bytes()).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })
}

/// `trial,turn,instant_pseudo_regret,cumulative_pseudo_regret`
pub fn emit_per_turn_csv(curves: &[Vec<f64>], path: &Path) -> Result<()> {
    let mut out = String::from("trial,turn,instant_pseudo_regret,cumulative_pseudo_regret\n");
    for (trial, instants) in curves.iter().enumerate() {
        let mut acc = 0.0;
        for (i, &v) in instants.iter().enumerate() {
            acc += v;
            out.push_str(&format!("{},{},{},{}\n", trial, i + 1, fmt_f64(v), fmt_f64(acc)));
        }
    }
    write_file(path, &out)
}

/// `R,trial,final_pseudo_regret`
pub fn emit_sweep_csv(rows: &[SweepRow], path: &Path) -> Result<()> {
    let mut out = String::from("R,trial,final_pseudo_regret\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{}\n",
            fmt_f64(r.radius),
            r.trial,
            fmt_f64(r.final_pseudo_regret)
        ));
    }
    write_file(path, &out)
}

/// One row of the summary table.
#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub turn: u64,
    pub mean: f64,
    pub quantile05: f64,
    pub median: f64,
    pub quantile95: f64,
}

pub fn summary_rows(agg: &AggregateResult) -> Vec<SummaryRow> {
    (0..agg.mean.len())
        .map(|i| SummaryRow {
            turn: (i + 1) as u64,
            mean: agg.mean[i],
            quantile05: agg.quantile05[i],
            median: agg.median[i],
            quantile95: agg.quantile95[i],
        })
        .collect()
}

/// `turn,mean,quantile05,median,quantile95`
pub fn emit_summary_csv(rows: &[SummaryRow], path: &Path) -> Result<()> {
    let mut out = String::from("turn,mean,quantile05,median,quantile95\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.turn,
            fmt_f64(r.mean),
            fmt_f64(r.quantile05),
            fmt_f64(r.median),
            fmt_f64(r.quantile95)
        ));
    }
    write_file(path, &out)
}

/// Parses the summary CSV contract back; inverse of [`emit_summary_csv`].
pub fn read_summary_csv(path: &Path) -> Result<Vec<SummaryRow>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == "turn,mean,quantile05,median,quantile95" => {}
        _ => {
            return Err(Error::Parse {
                line: 1,
                msg: "bad or missing summary header".into(),
            })
        }
    }
    let mut rows = Vec::new();
    for (i, line) in lines {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(Error::Parse {
                line: i + 1,
                msg: format!("expected 5 fields, got {}", fields.len()),
            });
        }
        let parse = |s: &str| -> Result<f64> {
            s.parse().map_err(|_| Error::Parse {
                line: i + 1,
                msg: format!("bad number {s:?}"),
            })
        };
        rows.push(SummaryRow {
            turn: fields[0].parse().map_err(|_| Error::Parse {
                line: i + 1,
                msg: format!("bad turn {:?}", fields[0]),
            })?,
            mean: parse(fields[1])?,
            quantile05: parse(fields[2])?,
            median: parse(fields[3])?,
            quantile95: parse(fields[4])?,
        });
    }
    Ok(rows)
}

/// Parses the flat key-value experiment config format.
///
/// One `key = value` pair per line, `#` comments ignored. Keys: algorithm,
/// domain, alpha, d, eta, mean, R, N, trials, seed, record_level, model.
/// When `model` is omitted it is inferred: sphere noise when `mean` is
/// given, otherwise the counterexample stream matching the domain.
pub fn parse_config_text(text: &str) -> Result<ExperimentConfig> {
    let mut kv = std::collections::BTreeMap::new();
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
    build_config(&kv)
}

/// Builds an [`ExperimentConfig`] from string key-value pairs; shared by the
/// config-file parser and the CLI flag mapping.
pub fn build_config(kv: &std::collections::BTreeMap<String, String>) -> Result<ExperimentConfig> {
    let known = [
        "algorithm", "domain", "alpha", "d", "eta", "mean", "R", "N", "trials", "seed",
        "record_level", "model",
    ];
    for k in kv.keys() {
        if !known.contains(&k.as_str()) {
            return Err(Error::invalid_parameter(format!("unknown config key {k:?}")));
        }
    }
    let get = |k: &str| kv.get(k).map(String::as_str);
    let parse_f64 = |k: &str, v: &str| -> Result<f64> {
        v.parse()
            .map_err(|_| Error::invalid_parameter(format!("bad value for {k}: {v:?}")))
    };
    let parse_u64 = |k: &str, v: &str| -> Result<u64> {
        v.parse()
            .map_err(|_| Error::invalid_parameter(format!("bad value for {k}: {v:?}")))
    };

    let algorithm = Algorithm::parse(get("algorithm").unwrap_or("lazy"))?;
    let dim = match get("d") {
        Some(v) => parse_u64("d", v)? as usize,
        None => 2,
    };
    let domain = match get("domain").unwrap_or("simplex") {
        "simplex" => ConvexDomain::simplex(dim)?,
        "interval" => ConvexDomain::interval(-1.0, 1.0)?,
        "curved" => {
            let alpha = match get("alpha") {
                Some(v) => parse_f64("alpha", v)?,
                None => 3.0,
            };
            ConvexDomain::curved(alpha)?
        }
        other => {
            return Err(Error::invalid_parameter(format!(
                "unknown domain {other:?} (expected simplex, interval or curved)"
            )))
        }
    };
    let mean = match get("mean") {
        Some(v) => Some(Point::parse(v)?),
        None => None,
    };
    let radius = match get("R") {
        Some(v) => parse_f64("R", v)?,
        None => 0.0,
    };
    let model = get("model").map(str::to_string).unwrap_or_else(|| {
        if mean.is_some() {
            "sphere".into()
        } else {
            match &domain {
                ConvexDomain::Curved { .. } => "curved_example".into(),
                ConvexDomain::Interval { .. } => "greedy_example".into(),
                _ => "sphere".into(),
            }
        }
    });
    let cost_model = match model.as_str() {
        "sphere" => {
            let mean = mean.ok_or_else(|| {
                Error::invalid_parameter("sphere-noise model requires mean")
            })?;
            CostModel::sphere_noise(mean, radius)?
        }
        "curved_example" => CostModel::CurvedExample,
        "greedy_example" => CostModel::GreedyExample,
        other => {
            return Err(Error::invalid_parameter(format!(
                "unknown cost model {other:?}"
            )))
        }
    };

    Ok(ExperimentConfig {
        algorithm,
        domain,
        cost_model,
        eta: match get("eta") {
            Some(v) => parse_f64("eta", v)?,
            None => 1.0,
        },
        horizon: match get("N") {
            Some(v) => parse_u64("N", v)?,
            None => 500,
        },
        trials: match get("trials") {
            Some(v) => parse_u64("trials", v)?,
            None => 1,
        },
        seed: match get("seed") {
            Some(v) => parse_u64("seed", v)?,
            None => 0,
        },
        record_level: RecordLevel::parse(get("record_level").unwrap_or("summary"))?,
    })
}
