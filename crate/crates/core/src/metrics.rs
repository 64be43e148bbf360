//! Regret and pseudo-regret accounting, snap certificates, and calculators
//! for the printed theoretical bounds.

use crate::error::{Error, Result};
use crate::geometry::{pow_abs, ConvexDomain};
use crate::point::Point;

/// Suboptimality gaps of a mean cost vector, sorted ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct GapProfile {
    /// Delta_1 = 0 <= Delta_2 <= ... <= Delta_d.
    pub sorted_gaps: Vec<f64>,
    /// Delta = min { Delta_j : Delta_j > 0 }; None when all components tie.
    pub min_positive_gap: Option<f64>,
    /// permutation[j] is the original index of the j-th smallest component.
    pub permutation: Vec<usize>,
}

/// Per-turn log of one trial; the unit of analysis for all metrics.
#[derive(Clone, Debug)]
pub struct TurnLog {
    pub cost: Point,
    /// Unprojected iterate y_n; absent at turn 1 and for non-lazy learners.
    pub unprojected: Option<Point>,
    pub action: Point,
}

#[derive(Clone, Debug)]
pub struct RunRecord {
    pub eta: f64,
    pub domain: ConvexDomain,
    pub turns: Vec<TurnLog>,
    /// Mean cost vector; absent for adversarial (scripted) runs.
    pub mean_cost: Option<Point>,
}

impl RunRecord {
    pub fn horizon(&self) -> usize {
        self.turns.len()
    }

    pub fn costs(&self) -> Vec<Point> {
        self.turns.iter().map(|t| t.cost.clone()).collect()
    }

    pub fn actions(&self) -> Vec<Point> {
        self.turns.iter().map(|t| t.action.clone()).collect()
    }
}

/// Inputs echoed into a [`BoundReport`].
#[derive(Clone, Debug, Default)]
pub struct BoundInputs {
    pub l2: Option<f64>,
    pub r2: Option<f64>,
    pub gap: Option<f64>,
    pub eta: Option<f64>,
    pub horizon: Option<u64>,
    pub diameter: Option<f64>,
    pub max_norm: Option<f64>,
    pub t: Option<f64>,
}

/// Result of a bound calculator.
#[derive(Clone, Debug)]
pub struct BoundReport {
    /// The bound as printed, evaluated at the given inputs.
    pub bound_value: f64,
    /// Simplified special-case value (simplex domain, eta = 1/(2 L)), when
    /// one is printed for the bound.
    pub special_value: Option<f64>,
    /// Tail-bound regret threshold 2 L2 + (L2^2 / Delta) t.
    pub threshold: Option<f64>,
    /// Smallest t for which the tail bound is stated.
    pub validity_floor: Option<f64>,
    /// False when an input misses a stated validity condition (e.g. t below
    /// the tail-bound floor). The values are still reported.
    pub valid: bool,
    pub inputs: BoundInputs,
}

/// Minimizer of the linear function g . x over the domain.
///
/// On the simplex this is the best vertex (ties to the smallest index); on
/// boxes it is the per-axis sign clamp; on the curved domain a 1-D
/// minimization over the boundary. The zero-sum hyperplane is unbounded, so
/// linear minimization is unsupported there.
pub fn linear_minimizer(domain: &ConvexDomain, g: &Point) -> Result<Point> {
    if g.dim() != domain.dim() {
        return Err(Error::DimensionMismatch {
            expected: domain.dim(),
            got: g.dim(),
        });
    }
    match domain {
        ConvexDomain::Simplex { dim } => Ok(Point::unit(*dim, g.argmin())),
        ConvexDomain::Box { lo, hi } => Point::new(
            (0..g.dim())
                .map(|j| if g[j] > 0.0 { lo[j] } else { hi[j] })
                .collect(),
        ),
        ConvexDomain::Interval { lo, hi } => {
            Point::new(vec![if g[0] > 0.0 { *lo } else { *hi }])
        }
        ConvexDomain::Curved { alpha } => curved_linear_minimizer(g, *alpha),
        ConvexDomain::ZeroSumHyperplane { .. } => Err(Error::unsupported(
            "linear minimization is unbounded on the zero-sum hyperplane",
        )),
    }
}

/// Minimizes g1 x + g2 y over {(x, y) : |x|^alpha <= y <= 1}.
///
/// A linear function attains its minimum on the boundary: either a corner,
/// the origin, or the stationary point of g1 x + g2 |x|^alpha on the graph.
fn curved_linear_minimizer(g: &Point, alpha: f64) -> Result<Point> {
    let (g1, g2) = (g[0], g[1]);
    let value = |x: f64, y: f64| g1 * x + g2 * y;
    let mut candidates: Vec<(f64, f64)> = vec![(-1.0, 1.0), (1.0, 1.0), (0.0, 0.0)];
    if g2 > 0.0 && g1 != 0.0 {
        // stationary point on the graph: |x|^(alpha-1) = |g1| / (alpha g2)
        let mag = (g1.abs() / (alpha * g2)).powf(1.0 / (alpha - 1.0));
        if mag <= 1.0 {
            let x = -g1.signum() * mag;
            candidates.push((x, pow_abs(x, alpha)));
        }
    }
    let best = candidates
        .into_iter()
        .min_by(|a, b| value(a.0, a.1).partial_cmp(&value(b.0, b.1)).unwrap())
        .unwrap();
    Point::new(vec![best.0, best.1])
}

/// Regret sum b_i . (x_i - x*) against the hindsight comparator
/// x* minimizing the cumulative cost over the domain.
pub fn regret(costs: &[Point], actions: &[Point], domain: &ConvexDomain) -> Result<f64> {
    if costs.len() != actions.len() {
        return Err(Error::invalid_input(format!(
            "{} costs but {} actions",
            costs.len(),
            actions.len()
        )));
    }
    if costs.is_empty() {
        return Ok(0.0);
    }
    let mut cum = Point::zeros(domain.dim());
    let mut paid = 0.0;
    for (b, x) in costs.iter().zip(actions) {
        paid += b.dot(x);
        cum.add_assign(b);
    }
    let comparator = linear_minimizer(domain, &cum)?;
    Ok(paid - cum.dot(&comparator))
}

/// Pseudo-regret sum a . (x_i - e_{j*}) on the simplex, j* the best arm.
pub fn pseudo_regret(mean: &Point, actions: &[Point]) -> f64 {
    let best = mean[mean.argmin()];
    actions.iter().map(|x| mean.dot(x) - best).sum()
}

/// The general adversarial regret bound, plus the simplex special value when
/// the inputs match the simplex geometry with eta = 1/(2 L2).
///
/// `proof_variant` replaces the 1/(2 eta) leading constant with 1/eta, the
/// form the pseudo-regret derivation consumes.
pub fn bound_adversarial(
    l2: f64,
    horizon: u64,
    eta: f64,
    diameter: f64,
    max_norm: f64,
    proof_variant: bool,
) -> Result<BoundReport> {
    if !(l2 > 0.0 && eta > 0.0 && diameter > 0.0 && max_norm > 0.0) {
        return Err(Error::invalid_parameter(
            "adversarial bound needs positive L2, eta, D and ||X||",
        ));
    }
    let sqrt_n = (horizon as f64).sqrt();
    let lead = if proof_variant { 1.0 / eta } else { 1.0 / (2.0 * eta) };
    let general = l2 * diameter + (lead * max_norm * max_norm + 2.0 * eta * l2 * l2) * sqrt_n;

    let is_simplex = (max_norm - 1.0).abs() < 1e-9
        && (diameter - std::f64::consts::SQRT_2).abs() < 1e-9
        && (eta - 1.0 / (2.0 * l2)).abs() < 1e-9;
    let special = if is_simplex && !proof_variant {
        Some(std::f64::consts::SQRT_2 * l2 + 2.0 * l2 * sqrt_n)
    } else {
        None
    };

    Ok(BoundReport {
        bound_value: general,
        special_value: special,
        threshold: None,
        validity_floor: None,
        valid: true,
        inputs: BoundInputs {
            l2: Some(l2),
            eta: Some(eta),
            horizon: Some(horizon),
            diameter: Some(diameter),
            max_norm: Some(max_norm),
            ..Default::default()
        },
    })
}

/// The i.i.d. pseudo-regret bound on the simplex: the general form at the
/// given eta, and the special value 2 L + (18 L2^2 + 72 R2^2) / Delta taken
/// at eta = 1/(2 L).
pub fn bound_pseudo_regret(l2: f64, r2: f64, gap: f64, eta: f64) -> Result<BoundReport> {
    if !(l2 > 0.0 && r2 > 0.0 && eta > 0.0) {
        return Err(Error::invalid_parameter(
            "pseudo-regret bound needs positive L2, R2 and eta",
        ));
    }
    if !(gap > 0.0) {
        return Err(Error::UndefinedGap);
    }
    let e2 = eta * eta;
    let general = std::f64::consts::SQRT_2 * l2
        + (1.0 + 2.0 * e2 * l2 * l2) * l2 / 6.0
        + (3.0 / e2
            + 6.0 * l2 * l2
            + 72.0 * r2 * r2 * (-1.0 / (2.0 * e2 * r2 * r2)).exp())
            / gap;
    let special = 2.0 * l2 + (18.0 * l2 * l2 + 72.0 * r2 * r2) / gap;
    Ok(BoundReport {
        bound_value: general,
        special_value: Some(special),
        threshold: None,
        validity_floor: None,
        valid: true,
        inputs: BoundInputs {
            l2: Some(l2),
            r2: Some(r2),
            gap: Some(gap),
            eta: Some(eta),
            ..Default::default()
        },
    })
}

/// Tail bound on the total pseudo-regret: the probability that the total
/// exceeds 2 L2 + (L2^2 / Delta) t is at most (1 + 36 R2^2) e^(-t / 24 R2^2),
/// stated for t at or above a validity floor. A t below the floor is flagged,
/// not rejected.
pub fn bound_tail(l2: f64, r2: f64, gap: f64, eta: f64, t: f64) -> Result<BoundReport> {
    if !(l2 > 0.0 && r2 > 0.0 && gap > 0.0 && eta > 0.0) {
        return Err(Error::invalid_parameter(
            "tail bound needs positive L2, R2, Delta and eta",
        ));
    }
    let sqrt2 = std::f64::consts::SQRT_2;
    let floor = 3.0 / (l2 * l2) * (2.0 * l2 + sqrt2 / eta + sqrt2 / 3.0 * gap).powi(2);
    let threshold = 2.0 * l2 + l2 * l2 / gap * t;
    let probability = (1.0 + 36.0 * r2 * r2) * (-t / (24.0 * r2 * r2)).exp();
    Ok(BoundReport {
        bound_value: probability,
        special_value: None,
        threshold: Some(threshold),
        validity_floor: Some(floor),
        valid: t >= floor,
        inputs: BoundInputs {
            l2: Some(l2),
            r2: Some(r2),
            gap: Some(gap),
            eta: Some(eta),
            t: Some(t),
            ..Default::default()
        },
    })
}

/// The tilde constants: norms after projecting out the component orthogonal
/// to the simplex's affine hull. Returns (L2~, R2~).
pub fn tilde_constants(samples: &[Point], mean: &Point) -> Result<(f64, f64)> {
    if samples.is_empty() {
        return Err(Error::invalid_input("tilde constants need samples"));
    }
    let d = mean.dim() as f64;
    let tilde = |p: &Point| {
        let s = p.sum();
        (p.dot(p) - s * s / d).max(0.0).sqrt()
    };
    let mut l = 0.0_f64;
    let mut r = 0.0_f64;
    for a in samples {
        if a.dim() != mean.dim() {
            return Err(Error::DimensionMismatch {
                expected: mean.dim(),
                got: a.dim(),
            });
        }
        l = l.max(tilde(a));
        r = r.max(tilde(&a.sub(mean)));
    }
    Ok((l, r))
}

/// Per-turn snap certificate.
#[derive(Clone, Copy, Debug)]
pub struct SnapCheck {
    /// The turn n whose first n costs feed the check; the conclusion is about
    /// the action played at turn n + 1.
    pub turn: u64,
    /// True when some positive gap level Delta_j satisfies both
    /// n >= 9 / (Delta_j^2 eta^2) and the empirical mean deviation
    /// ||(1/n) sum (a - a_i)||_inf <= Delta_j / 3.
    pub hypothesis_holds: bool,
    /// True when every level whose hypothesis holds also has the action
    /// supported on the better vertices only (coordinates at sorted
    /// positions >= j are zero). Vacuously true when no hypothesis holds.
    pub conclusion_holds: bool,
}

/// Evaluates the snap certificate for every turn of a stochastic run.
pub fn snap_certificate(
    record: &RunRecord,
    profile: &GapProfile,
    eta: f64,
) -> Result<Vec<SnapCheck>> {
    let mean = record
        .mean_cost
        .as_ref()
        .ok_or_else(|| Error::unsupported("snap certificate needs a known mean cost"))?;
    let d = mean.dim();
    let mut deviation = Point::zeros(d); // running sum of (a - a_i)
    let mut checks = Vec::with_capacity(record.horizon().saturating_sub(1));
    for (i, log) in record.turns.iter().enumerate() {
        deviation.add_assign(&mean.sub(&log.cost));
        let next = match record.turns.get(i + 1) {
            Some(t) => &t.action,
            None => break,
        };
        let n = (i + 1) as f64;
        let err_inf = deviation.norm_inf() / n;
        let mut hypothesis_holds = false;
        let mut conclusion_holds = true;
        for j in 1..d {
            let gap_j = profile.sorted_gaps[j];
            if gap_j <= 0.0 {
                continue;
            }
            let hyp = n >= 9.0 / (gap_j * gap_j * eta * eta) && err_inf <= gap_j / 3.0;
            if hyp {
                hypothesis_holds = true;
                let snapped = (j..d).all(|q| next[profile.permutation[q]] <= 1e-12);
                if !snapped {
                    conclusion_holds = false;
                }
            }
        }
        checks.push(SnapCheck {
            turn: (i + 1) as u64,
            hypothesis_holds,
            conclusion_holds,
        });
    }
    Ok(checks)
}

/// Least-squares slope of log(value) against log(n) over the window
/// [n_lo, n_hi] (inclusive).
pub fn fit_loglog_slope(
    turn_indices: &[u64],
    values: &[f64],
    window: (f64, f64),
) -> Result<f64> {
    if turn_indices.len() != values.len() {
        return Err(Error::invalid_input("index/value length mismatch"));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (&n, &v) in turn_indices.iter().zip(values) {
        let nf = n as f64;
        if nf < window.0 || nf > window.1 {
            continue;
        }
        if !(v > 0.0) {
            return Err(Error::invalid_input(format!(
                "non-positive value {v} at n = {n} inside the fit window"
            )));
        }
        xs.push(nf.ln());
        ys.push(v.ln());
    }
    if xs.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "need at least 3 points in the window, have {}",
            xs.len()
        )));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(sxy / sxx)
}
