//! Online learners: lazy anytime Subgradient, greedy Subgradient, and
//! Follow-the-Leader.
//!
//! The lazy learner keeps the running cost sum and projects the scaled sum
//! each turn (dual averaging style); the greedy learner steps from its
//! previous projected action and re-projects. Both use the anytime step
//! schedule eta / sqrt(n - 1), which needs no horizon. FTL plays the vertex
//! minimizing the cumulative cost and is only supported on the simplex.

use crate::error::{Error, Result};
use crate::geometry::{ConvexDomain, CONTAINS_TOL};
use crate::point::Point;

/// State of the lazy anytime Subgradient learner.
///
/// After `turn` = n the learner has received costs a_1..a_{n-1} and played
/// x_n. The next call to [`LazyState::step`] consumes a_n and produces
/// x_{n+1} = P(-eta * (a_1 + .. + a_n) / sqrt(n)).
#[derive(Clone, Debug)]
pub struct LazyState {
    pub eta: f64,
    pub turn: u64,
    pub cum_cost: Point,
    pub domain: ConvexDomain,
}

/// State of the greedy Subgradient learner; tracks the current projected
/// action instead of the cost sum.
#[derive(Clone, Debug)]
pub struct GreedyState {
    pub eta: f64,
    pub turn: u64,
    pub current_action: Point,
    pub domain: ConvexDomain,
}

/// Follow-the-Leader on the simplex: play the vertex minimizing the
/// cumulative cost, ties broken by smallest index.
#[derive(Clone, Debug)]
pub struct FtlState {
    pub turn: u64,
    pub cum_cost: Point,
    pub domain: ConvexDomain,
}

fn check_cost(cost: &Point, domain: &ConvexDomain) -> Result<()> {
    if cost.dim() != domain.dim() {
        return Err(Error::DimensionMismatch {
            expected: domain.dim(),
            got: cost.dim(),
        });
    }
    Ok(())
}

/// Starts the lazy learner; the first action is P(0).
pub fn lazy_init(domain: ConvexDomain, eta: f64) -> Result<(LazyState, Point)> {
    if !(eta > 0.0) {
        return Err(Error::invalid_parameter("eta must be positive"));
    }
    let first = domain.project(&Point::zeros(domain.dim()))?;
    let state = LazyState {
        eta,
        turn: 1,
        cum_cost: Point::zeros(domain.dim()),
        domain,
    };
    Ok((state, first))
}

impl LazyState {
    /// Consumes the cost of the current turn and returns the next action.
    pub fn step(&mut self, cost: &Point) -> Result<Point> {
        check_cost(cost, &self.domain)?;
        self.cum_cost.add_assign(cost);
        self.turn += 1;
        self.domain.project(&self.unprojected_iterate()?)
    }

    /// The unprojected iterate y_n = -eta * cum_cost / sqrt(n - 1).
    /// Defined from turn 2 onward.
    pub fn unprojected_iterate(&self) -> Result<Point> {
        if self.turn < 2 {
            return Err(Error::NotYetDefined);
        }
        let scale = -self.eta / ((self.turn - 1) as f64).sqrt();
        Ok(self.cum_cost.scale(scale))
    }
}

/// Starts the greedy learner; the first action is P(0).
pub fn greedy_init(domain: ConvexDomain, eta: f64) -> Result<(GreedyState, Point)> {
    if !(eta > 0.0) {
        return Err(Error::invalid_parameter("eta must be positive"));
    }
    let first = domain.project(&Point::zeros(domain.dim()))?;
    let state = GreedyState {
        eta,
        turn: 1,
        current_action: first.clone(),
        domain,
    };
    Ok((state, first))
}

impl GreedyState {
    /// Update rule y_{n+1} = x_n - (eta / sqrt(n)) * a_n, then re-project.
    pub fn step(&mut self, cost: &Point) -> Result<Point> {
        check_cost(cost, &self.domain)?;
        let n = self.turn as f64;
        let y = self
            .current_action
            .sub(&cost.scale(self.eta / n.sqrt()));
        let action = self.domain.project(&y)?;
        debug_assert!(self.domain.contains(&action, CONTAINS_TOL));
        self.current_action = action.clone();
        self.turn += 1;
        Ok(action)
    }
}

/// Starts FTL. Only the simplex is supported; the all-zero cumulative cost
/// ties every vertex, so the first action is e_1.
pub fn ftl_init(domain: ConvexDomain) -> Result<(FtlState, Point)> {
    match domain {
        ConvexDomain::Simplex { dim } => {
            let state = FtlState {
                turn: 1,
                cum_cost: Point::zeros(dim),
                domain,
            };
            let first = Point::unit(dim, 0);
            Ok((state, first))
        }
        _ => Err(Error::unsupported("FTL is only supported on the simplex")),
    }
}

impl FtlState {
    pub fn step(&mut self, cost: &Point) -> Result<Point> {
        check_cost(cost, &self.domain)?;
        self.cum_cost.add_assign(cost);
        self.turn += 1;
        Ok(Point::unit(self.cum_cost.dim(), self.cum_cost.argmin()))
    }
}

/// Algorithm selector used by the experiment harness and CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    Lazy,
    Greedy,
    Ftl,
}

impl Algorithm {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "lazy" => Ok(Algorithm::Lazy),
            "greedy" => Ok(Algorithm::Greedy),
            "ftl" => Ok(Algorithm::Ftl),
            other => Err(Error::invalid_parameter(format!(
                "unknown algorithm {other:?} (expected lazy, greedy or ftl)"
            ))),
        }
    }
}

/// A running learner of any of the three kinds, behind one step interface.
#[derive(Clone, Debug)]
pub enum Learner {
    Lazy(LazyState),
    Greedy(GreedyState),
    Ftl(FtlState),
}

impl Learner {
    /// Builds the learner and returns it with its first action.
    pub fn start(algorithm: Algorithm, domain: ConvexDomain, eta: f64) -> Result<(Learner, Point)> {
        match algorithm {
            Algorithm::Lazy => {
                let (s, a) = lazy_init(domain, eta)?;
                Ok((Learner::Lazy(s), a))
            }
            Algorithm::Greedy => {
                let (s, a) = greedy_init(domain, eta)?;
                Ok((Learner::Greedy(s), a))
            }
            Algorithm::Ftl => {
                let (s, a) = ftl_init(domain)?;
                Ok((Learner::Ftl(s), a))
            }
        }
    }

    pub fn step(&mut self, cost: &Point) -> Result<Point> {
        match self {
            Learner::Lazy(s) => s.step(cost),
            Learner::Greedy(s) => s.step(cost),
            Learner::Ftl(s) => s.step(cost),
        }
    }

    /// The lazy learner's unprojected iterate, if defined.
    pub fn unprojected_iterate(&self) -> Option<Point> {
        match self {
            Learner::Lazy(s) => s.unprojected_iterate().ok(),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::brute_force_project;

    fn pt(coords: &[f64]) -> Point {
        Point::new(coords.to_vec()).unwrap()
    }

    #[test]
    fn lazy_init_first_actions() {
        let (_, a) = lazy_init(ConvexDomain::simplex(4).unwrap(), 0.7).unwrap();
        assert_eq!(a, pt(&[0.25, 0.25, 0.25, 0.25]));

        let (_, a) = lazy_init(ConvexDomain::interval(-1.0, 1.0).unwrap(), 1.0).unwrap();
        assert_eq!(a, pt(&[0.0]));

        let (_, a) = lazy_init(ConvexDomain::curved(3.0).unwrap(), 1.0).unwrap();
        assert_eq!(a, pt(&[0.0, 0.0]));
    }

    #[test]
    fn lazy_init_rejects_nonpositive_eta() {
        assert!(lazy_init(ConvexDomain::simplex(2).unwrap(), 0.0).is_err());
        assert!(lazy_init(ConvexDomain::simplex(2).unwrap(), -1.0).is_err());
    }

    #[test]
    fn lazy_step_snaps_on_unit_gap() {
        // first cost (1,0): y_2 = (-1,0), coordinate gap 1 zeroes coordinate 0
        let (mut s, _) = lazy_init(ConvexDomain::simplex(2).unwrap(), 1.0).unwrap();
        let a = s.step(&pt(&[1.0, 0.0])).unwrap();
        assert_eq!(s.unprojected_iterate().unwrap(), pt(&[-1.0, 0.0]));
        assert_eq!(a, pt(&[0.0, 1.0]));
        let oracle = brute_force_project(&s.domain, &pt(&[-1.0, 0.0]), 1e-4).unwrap();
        assert!(a.distance(&oracle) < 1e-3);
    }

    #[test]
    fn lazy_step_zero_cost_stays_uniform() {
        let (mut s, _) = lazy_init(ConvexDomain::simplex(2).unwrap(), 1.0).unwrap();
        let a = s.step(&pt(&[0.0, 0.0])).unwrap();
        assert_eq!(a, pt(&[0.5, 0.5]));
    }

    #[test]
    fn lazy_two_steps() {
        let (mut s, _) = lazy_init(ConvexDomain::simplex(2).unwrap(), 1.0).unwrap();
        s.step(&pt(&[1.0, 0.0])).unwrap();
        let a = s.step(&pt(&[1.0, 0.0])).unwrap();
        let y3 = s.unprojected_iterate().unwrap();
        let sqrt2 = std::f64::consts::SQRT_2;
        assert!((y3[0] + 2.0 / sqrt2).abs() < 1e-15);
        assert_eq!(y3[1], 0.0);
        // gap sqrt(2) >= 1 forces the vertex
        assert_eq!(a, pt(&[0.0, 1.0]));
    }

    #[test]
    fn lazy_step_rejects_dimension_mismatch() {
        let (mut s, _) = lazy_init(ConvexDomain::simplex(2).unwrap(), 1.0).unwrap();
        assert!(s.step(&pt(&[1.0, 0.0, 0.0])).is_err());
    }

    #[test]
    fn unprojected_iterate_undefined_at_turn_one() {
        let (s, _) = lazy_init(ConvexDomain::simplex(2).unwrap(), 1.0).unwrap();
        assert!(matches!(s.unprojected_iterate(), Err(Error::NotYetDefined)));
    }

    #[test]
    fn unprojected_iterate_formula() {
        let (mut s, _) = lazy_init(ConvexDomain::simplex(2).unwrap(), 2.0).unwrap();
        s.step(&pt(&[1.0, 0.0])).unwrap();
        s.step(&pt(&[0.0, 1.0])).unwrap();
        let y = s.unprojected_iterate().unwrap();
        let sqrt2 = std::f64::consts::SQRT_2;
        assert!((y[0] + 2.0 / sqrt2).abs() < 1e-15);
        assert!((y[1] + 2.0 / sqrt2).abs() < 1e-15);

        let (mut z, _) = lazy_init(ConvexDomain::simplex(2).unwrap(), 1.0).unwrap();
        z.step(&pt(&[0.0, 0.0])).unwrap();
        assert_eq!(z.unprojected_iterate().unwrap(), pt(&[0.0, 0.0]));
    }

    #[test]
    fn greedy_interval_arithmetic() {
        // x_4 = -1, cost -1 at n = 4: y_5 = -1 + 1/2 = -0.5
        let dom = ConvexDomain::interval(-1.0, 1.0).unwrap();
        let mut s = GreedyState {
            eta: 1.0,
            turn: 4,
            current_action: pt(&[-1.0]),
            domain: dom.clone(),
        };
        let a = s.step(&pt(&[-1.0])).unwrap();
        assert_eq!(a, pt(&[-0.5]));

        // cost +1 pushes below the interval and clamps back to -1
        let mut s = GreedyState {
            eta: 1.0,
            turn: 9,
            current_action: pt(&[-1.0]),
            domain: dom,
        };
        let a = s.step(&pt(&[1.0])).unwrap();
        assert_eq!(a, pt(&[-1.0]));
    }

    #[test]
    fn greedy_simplex_first_step() {
        let (mut s, first) = greedy_init(ConvexDomain::simplex(2).unwrap(), 1.0).unwrap();
        assert_eq!(first, pt(&[0.5, 0.5]));
        let a = s.step(&pt(&[1.0, 0.0])).unwrap();
        // y_2 = (-1/2, 1/2), projection oracle confirms the vertex
        let oracle = brute_force_project(
            &ConvexDomain::simplex(2).unwrap(),
            &pt(&[-0.5, 0.5]),
            1e-4,
        )
        .unwrap();
        assert_eq!(a, pt(&[0.0, 1.0]));
        assert!(a.distance(&oracle) < 1e-3);
    }

    #[test]
    fn ftl_argmin_and_ties() {
        let (mut s, first) = ftl_init(ConvexDomain::simplex(3).unwrap()).unwrap();
        assert_eq!(first, pt(&[1.0, 0.0, 0.0]));
        let a = s.step(&pt(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(a, pt(&[0.0, 1.0, 0.0]));

        let (mut s, _) = ftl_init(ConvexDomain::simplex(2).unwrap()).unwrap();
        let a = s.step(&pt(&[0.0, 0.0])).unwrap();
        assert_eq!(a, pt(&[1.0, 0.0]));

        let (mut s, _) = ftl_init(ConvexDomain::simplex(3).unwrap()).unwrap();
        let a = s.step(&pt(&[2.0, 2.0, 2.0])).unwrap();
        assert_eq!(a, pt(&[1.0, 0.0, 0.0]));
    }

    #[test]
    fn ftl_rejects_non_simplex_domain() {
        assert!(matches!(
            ftl_init(ConvexDomain::interval(-1.0, 1.0).unwrap()),
            Err(Error::Unsupported(_))
        ));
    }
}
