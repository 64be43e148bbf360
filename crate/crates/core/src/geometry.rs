//! Convex domains and exact Euclidean projections.
//!
//! The supported domains are the probability simplex, axis-aligned boxes and
//! intervals, the zero-sum hyperplane {x : sum x(j) = 0}, and the curved
//! two-dimensional family bounded below by y = |x|^alpha. Every projection is
//! the exact Euclidean minimizer; `brute_force_project` is an independent
//! grid-search oracle used to cross-check them.

use crate::error::{Error, Result};
use crate::point::Point;

/// Constraint-residual tolerance for membership checks.
pub const CONTAINS_TOL: f64 = 1e-12;

/// A projection target with a project/contains/diameter/max-norm contract.
#[derive(Clone, Debug, PartialEq)]
pub enum ConvexDomain {
    /// Probability vectors in R^d.
    Simplex { dim: usize },
    /// Componentwise interval [lo, hi] in R^d.
    Box { lo: Point, hi: Point },
    /// Scalar interval, a 1-dimensional box.
    Interval { lo: f64, hi: f64 },
    /// The compact region {(x, y) : |x|^alpha <= y <= 1}, alpha > 2.
    Curved { alpha: f64 },
    /// The hyperplane {x : sum x(j) = 0}, the affine span of the simplex
    /// translated to the origin.
    ZeroSumHyperplane { dim: usize },
}

impl ConvexDomain {
    pub fn simplex(dim: usize) -> Result<Self> {
        if dim < 1 {
            return Err(Error::invalid_parameter("simplex dimension must be >= 1"));
        }
        Ok(ConvexDomain::Simplex { dim })
    }

    pub fn boxed(lo: Point, hi: Point) -> Result<Self> {
        if lo.dim() != hi.dim() {
            return Err(Error::DimensionMismatch {
                expected: lo.dim(),
                got: hi.dim(),
            });
        }
        for j in 0..lo.dim() {
            if lo[j] > hi[j] {
                return Err(Error::invalid_input(format!(
                    "box has lo > hi in component {j}"
                )));
            }
        }
        Ok(ConvexDomain::Box { lo, hi })
    }

    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::invalid_input("interval needs finite lo <= hi"));
        }
        Ok(ConvexDomain::Interval { lo, hi })
    }

    /// The counterexample family requires alpha > 2; alpha <= 2 is rejected.
    pub fn curved(alpha: f64) -> Result<Self> {
        if !(alpha > 2.0) || !alpha.is_finite() {
            return Err(Error::invalid_parameter(
                "curved domain requires finite alpha > 2",
            ));
        }
        Ok(ConvexDomain::Curved { alpha })
    }

    pub fn zero_sum(dim: usize) -> Result<Self> {
        if dim < 1 {
            return Err(Error::invalid_parameter("hyperplane dimension must be >= 1"));
        }
        Ok(ConvexDomain::ZeroSumHyperplane { dim })
    }

    /// Ambient dimension d.
    pub fn dim(&self) -> usize {
        match self {
            ConvexDomain::Simplex { dim } => *dim,
            ConvexDomain::Box { lo, .. } => lo.dim(),
            ConvexDomain::Interval { .. } => 1,
            ConvexDomain::Curved { .. } => 2,
            ConvexDomain::ZeroSumHyperplane { dim } => *dim,
        }
    }

    /// Diameter D = max distance between two domain points. Infinite for the
    /// (unbounded) zero-sum hyperplane.
    pub fn diameter(&self) -> f64 {
        match self {
            ConvexDomain::Simplex { .. } => std::f64::consts::SQRT_2,
            ConvexDomain::Box { lo, hi } => hi.sub(lo).norm(),
            ConvexDomain::Interval { lo, hi } => hi - lo,
            ConvexDomain::Curved { .. } => 2.0, // (-1,1) to (1,1)
            ConvexDomain::ZeroSumHyperplane { .. } => f64::INFINITY,
        }
    }

    /// ||X|| = max { ||x|| : x in X }.
    pub fn max_norm(&self) -> f64 {
        match self {
            ConvexDomain::Simplex { .. } => 1.0,
            ConvexDomain::Box { lo, hi } => {
                // farthest corner from the origin
                let s: f64 = lo
                    .coords()
                    .iter()
                    .zip(hi.coords())
                    .map(|(&l, &h)| l.abs().max(h.abs()).powi(2))
                    .sum();
                s.sqrt()
            }
            ConvexDomain::Interval { lo, hi } => lo.abs().max(hi.abs()),
            ConvexDomain::Curved { .. } => std::f64::consts::SQRT_2, // corners (+-1, 1)
            ConvexDomain::ZeroSumHyperplane { .. } => f64::INFINITY,
        }
    }

    pub fn contains(&self, p: &Point, tol: f64) -> bool {
        if p.dim() != self.dim() {
            return false;
        }
        match self {
            ConvexDomain::Simplex { .. } => {
                p.coords().iter().all(|&c| c >= -tol) && (p.sum() - 1.0).abs() <= tol
            }
            ConvexDomain::Box { lo, hi } => (0..p.dim())
                .all(|j| p[j] >= lo[j] - tol && p[j] <= hi[j] + tol),
            ConvexDomain::Interval { lo, hi } => p[0] >= lo - tol && p[0] <= hi + tol,
            ConvexDomain::Curved { alpha } => {
                let (x, y) = (p[0], p[1]);
                x.abs() <= 1.0 + tol && y <= 1.0 + tol && y >= pow_abs(x, *alpha) - tol
            }
            ConvexDomain::ZeroSumHyperplane { .. } => p.sum().abs() <= tol,
        }
    }

    /// Euclidean projection of `w` onto the domain.
    pub fn project(&self, w: &Point) -> Result<Point> {
        if w.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: w.dim(),
            });
        }
        match self {
            ConvexDomain::Simplex { .. } => project_simplex(w),
            ConvexDomain::Box { lo, hi } => project_box(w, lo, hi),
            ConvexDomain::Interval { lo, hi } => {
                Ok(Point::new(vec![w[0].clamp(*lo, *hi)]).expect("clamp of finite value"))
            }
            ConvexDomain::Curved { alpha } => project_curved(w, *alpha),
            ConvexDomain::ZeroSumHyperplane { .. } => project_zero_sum(w),
        }
    }
}

/// |x|^alpha with a fast path for small integer exponents.
#[inline]
pub(crate) fn pow_abs(x: f64, alpha: f64) -> f64 {
    let a = x.abs();
    if alpha == 3.0 {
        a * a * a
    } else if alpha == 4.0 {
        let s = a * a;
        s * s
    } else {
        a.powf(alpha)
    }
}

/// alpha * |x|^(alpha-1), the magnitude of the boundary slope.
#[inline]
fn pow_abs_deriv(x: f64, alpha: f64) -> f64 {
    let a = x.abs();
    if alpha == 3.0 {
        3.0 * a * a
    } else {
        alpha * a.powf(alpha - 1.0)
    }
}

/// Euclidean projection onto the probability simplex.
///
/// Sort-and-threshold: sort descending, find the pivot index, subtract the
/// threshold and clamp at zero. O(d log d) and exact.
pub fn project_simplex(w: &Point) -> Result<Point> {
    let mut sorted: Vec<f64> = w.coords().to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());

    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (j, &u) in sorted.iter().enumerate() {
        cumsum += u;
        let t = (cumsum - 1.0) / (j + 1) as f64;
        if u - t > 0.0 {
            theta = t;
        }
    }
    let coords: Vec<f64> = w.coords().iter().map(|&c| (c - theta).max(0.0)).collect();
    Point::new(coords)
}

/// Projection onto the zero-sum hyperplane: subtract the coordinate mean.
pub fn project_zero_sum(w: &Point) -> Result<Point> {
    let mean = w.sum() / w.dim() as f64;
    Point::new(w.coords().iter().map(|&c| c - mean).collect())
}

/// Componentwise clamp onto the box [lo, hi].
pub fn project_box(w: &Point, lo: &Point, hi: &Point) -> Result<Point> {
    if lo.dim() != hi.dim() || w.dim() != lo.dim() {
        return Err(Error::DimensionMismatch {
            expected: w.dim(),
            got: lo.dim(),
        });
    }
    for j in 0..lo.dim() {
        if lo[j] > hi[j] {
            return Err(Error::invalid_input(format!(
                "box has lo > hi in component {j}"
            )));
        }
    }
    Point::new(
        w.coords()
            .iter()
            .enumerate()
            .map(|(j, &c)| c.clamp(lo[j], hi[j]))
            .collect(),
    )
}

const CURVE_GRID: usize = 128;

/// Euclidean projection onto the curved domain {(x, y) : |x|^alpha <= y <= 1}.
///
/// Interior points are returned unchanged. Otherwise the projection lies on
/// the boundary: either the top segment y = 1 or the graph y = |x|^alpha. The
/// graph candidate minimizes g(x) = (x - w1)^2 + (|x|^alpha - w2)^2 over
/// [-1, 1]; we bracket sign changes of g' on a grid, bisect each bracket, and
/// also refine around the best grid sample. The global minimizer over all
/// candidates is returned.
pub fn project_curved(w: &Point, alpha: f64) -> Result<Point> {
    if !(alpha > 2.0) {
        return Err(Error::invalid_parameter("curved projection requires alpha > 2"));
    }
    if w.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: w.dim(),
        });
    }
    let domain = ConvexDomain::Curved { alpha };
    if domain.contains(w, CONTAINS_TOL) {
        return Ok(w.clone());
    }
    let (wx, wy) = (w[0], w[1]);

    let dist2 = |x: f64, y: f64| (x - wx) * (x - wx) + (y - wy) * (y - wy);
    // squared distance to the graph point (x, |x|^alpha)
    let g = |x: f64| dist2(x, pow_abs(x, alpha));
    // g'(x)/2
    let gd = |x: f64| {
        (x - wx) + pow_abs_deriv(x, alpha) * x.signum() * (pow_abs(x, alpha) - wy)
    };

    let mut best_x = -1.0;
    let mut best_val = g(-1.0);
    let mut consider = |x: f64| {
        let v = g(x);
        if v < best_val {
            best_val = v;
            best_x = x;
        }
    };

    let step = 2.0 / CURVE_GRID as f64;
    let mut best_grid_idx = 0usize;
    let mut best_grid_val = f64::INFINITY;
    let mut prev_x = -1.0;
    let mut prev_gd = gd(prev_x);
    for i in 0..=CURVE_GRID {
        let x = -1.0 + i as f64 * step;
        let v = g(x);
        if v < best_grid_val {
            best_grid_val = v;
            best_grid_idx = i;
        }
        consider(x);
        let cur_gd = gd(x);
        if i > 0 && prev_gd.signum() != cur_gd.signum() {
            consider(bisect_root(&gd, prev_x, x));
        }
        prev_x = x;
        prev_gd = cur_gd;
    }
    // ternary refinement of the cells adjacent to the best grid sample,
    // guards against brackets that contain two stationary points
    let lo = (-1.0 + best_grid_idx.saturating_sub(1) as f64 * step).max(-1.0);
    let hi = (-1.0 + (best_grid_idx + 1) as f64 * step).min(1.0);
    consider(ternary_min(&g, lo, hi));

    let graph_candidate = (best_x, pow_abs(best_x, alpha));
    let top_candidate = (wx.clamp(-1.0, 1.0), 1.0);

    let (px, py) = if dist2(graph_candidate.0, graph_candidate.1)
        <= dist2(top_candidate.0, top_candidate.1)
    {
        graph_candidate
    } else {
        top_candidate
    };
    Point::new(vec![px, py])
}

/// Bisection for a sign change of `f` on [lo, hi], to interval width 1e-14.
fn bisect_root(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..60 {
        if hi - lo < 1e-14 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fmid = f(mid);
        if flo.signum() == fmid.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Ternary search for a local minimum of `f` on [lo, hi].
fn ternary_min(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..100 {
        if hi - lo < 1e-14 {
            break;
        }
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if f(m1) <= f(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    0.5 * (lo + hi)
}

/// Independent projection oracle: nested grid search over the domain.
///
/// Starting from a grid covering the whole feasible region, the window around
/// the best sample is shrunk until the step falls below `resolution`. The
/// squared distance is strictly convex over a convex set, so keeping a margin
/// of one cell around the incumbent preserves the global minimizer. Supports
/// simplex/box up to d = 5 and the curved domain (d = 2).
pub fn brute_force_project(domain: &ConvexDomain, w: &Point, resolution: f64) -> Result<Point> {
    if !(resolution > 0.0) {
        return Err(Error::invalid_parameter("resolution must be positive"));
    }
    if w.dim() != domain.dim() {
        return Err(Error::DimensionMismatch {
            expected: domain.dim(),
            got: w.dim(),
        });
    }
    match domain {
        ConvexDomain::Simplex { dim } => {
            if *dim > 5 {
                return Err(Error::unsupported("brute-force simplex oracle needs d <= 5"));
            }
            brute_force_simplex(w, resolution)
        }
        ConvexDomain::Box { lo, hi } => {
            if lo.dim() > 5 {
                return Err(Error::unsupported("brute-force box oracle needs d <= 5"));
            }
            brute_force_box(w, lo.coords(), hi.coords(), resolution)
        }
        ConvexDomain::Interval { lo, hi } => {
            brute_force_box(w, &[*lo], &[*hi], resolution)
        }
        ConvexDomain::Curved { alpha } => brute_force_curved(w, *alpha, resolution),
        ConvexDomain::ZeroSumHyperplane { .. } => Err(Error::unsupported(
            "brute-force oracle does not handle unbounded domains",
        )),
    }
}

const ORACLE_CELLS: usize = 10;

/// One refinement pass of a nested grid search over `free` coordinates with
/// per-axis windows. `eval` maps free coordinates to Some(squared distance)
/// when feasible. Ties broken by smallest lexicographic grid index.
fn nested_grid_search(
    mut centers: Vec<f64>,
    mut half: f64,
    resolution: f64,
    bounds: &[(f64, f64)],
    eval: &dyn Fn(&[f64]) -> Option<f64>,
) -> Vec<f64> {
    let k = centers.len();
    loop {
        let step = 2.0 * half / ORACLE_CELLS as f64;
        let mut best: Option<(f64, Vec<f64>)> = None;
        let mut idx = vec![0usize; k];
        let mut point = vec![0.0; k];
        'outer: loop {
            for a in 0..k {
                let v = centers[a] - half + idx[a] as f64 * step;
                point[a] = v.clamp(bounds[a].0, bounds[a].1);
            }
            if let Some(val) = eval(&point) {
                let better = match &best {
                    None => true,
                    Some((bv, _)) => val < *bv,
                };
                if better {
                    best = Some((val, point.clone()));
                }
            }
            // odometer increment
            for a in (0..k).rev() {
                idx[a] += 1;
                if idx[a] <= ORACLE_CELLS {
                    continue 'outer;
                }
                idx[a] = 0;
                if a == 0 {
                    break 'outer;
                }
            }
        }
        let (_, best_pt) = best.expect("feasible region always sampled");
        centers = best_pt;
        if step <= resolution {
            return centers;
        }
        // keep one full cell of margin around the incumbent
        half = 2.0 * step;
    }
}

fn brute_force_simplex(w: &Point, resolution: f64) -> Result<Point> {
    let d = w.dim();
    if d == 1 {
        return Point::new(vec![1.0]);
    }
    let k = d - 1; // free coordinates, last = 1 - sum
    let eval = |free: &[f64]| -> Option<f64> {
        let s: f64 = free.iter().sum();
        let last = 1.0 - s;
        if last < -1e-9 {
            return None;
        }
        let last = last.max(0.0);
        let mut dist = (last - w[k]) * (last - w[k]);
        for (a, &f) in free.iter().enumerate() {
            dist += (f - w[a]) * (f - w[a]);
        }
        Some(dist)
    };
    let free = nested_grid_search(
        vec![0.5; k],
        0.5,
        resolution,
        &vec![(0.0, 1.0); k],
        &eval,
    );
    let mut coords = free;
    let s: f64 = coords.iter().sum();
    coords.push((1.0 - s).max(0.0));
    Point::new(coords)
}

fn brute_force_box(w: &Point, lo: &[f64], hi: &[f64], resolution: f64) -> Result<Point> {
    let k = lo.len();
    let centers: Vec<f64> = (0..k).map(|a| 0.5 * (lo[a] + hi[a])).collect();
    let half = (0..k)
        .map(|a| 0.5 * (hi[a] - lo[a]))
        .fold(0.0_f64, f64::max)
        .max(resolution);
    let eval = |p: &[f64]| -> Option<f64> {
        Some((0..k).map(|a| (p[a] - w[a]) * (p[a] - w[a])).sum())
    };
    let bounds: Vec<(f64, f64)> = (0..k).map(|a| (lo[a], hi[a])).collect();
    let coords = nested_grid_search(centers, half, resolution, &bounds, &eval);
    Point::new(coords)
}

fn brute_force_curved(w: &Point, alpha: f64, resolution: f64) -> Result<Point> {
    let inside = pow_abs(w[0], alpha) <= w[1] && w[1] <= 1.0 && w[0].abs() <= 1.0;
    if inside {
        return Ok(w.clone());
    }
    // an exterior point projects onto the boundary: the graph y = |x|^alpha
    // or the top cap y = 1, both 1-D in x, so a dense flat scan is cheap
    let steps = (2.0 / resolution).ceil() as usize;
    let mut best: Option<(f64, (f64, f64))> = None;
    let mut consider = |x: f64, y: f64| {
        let d = (x - w[0]) * (x - w[0]) + (y - w[1]) * (y - w[1]);
        if best.map_or(true, |(bd, _)| d < bd) {
            best = Some((d, (x, y)));
        }
    };
    for i in 0..=steps {
        let x = -1.0 + 2.0 * i as f64 / steps as f64;
        consider(x, pow_abs(x, alpha).min(1.0));
        consider(x, 1.0);
    }
    let (_, (x, y)) = best.unwrap();
    Point::new(vec![x, y])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(coords: &[f64]) -> Point {
        Point::new(coords.to_vec()).unwrap()
    }

    #[test]
    fn simplex_projection_of_origin_is_uniform() {
        let p = project_simplex(&pt(&[0.0, 0.0, 0.0])).unwrap();
        for j in 0..3 {
            assert!((p[j] - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn simplex_projection_hits_vertex() {
        // brute-force oracle agrees: gap 2 >= 1 forces the low coordinate to 0
        let p = project_simplex(&pt(&[2.0, 0.0])).unwrap();
        assert!((p[0] - 1.0).abs() < 1e-12);
        assert!(p[1].abs() < 1e-12);
        let oracle = brute_force_project(
            &ConvexDomain::simplex(2).unwrap(),
            &pt(&[2.0, 0.0]),
            1e-4,
        )
        .unwrap();
        assert!(p.distance(&oracle) < 1e-3);
    }

    #[test]
    fn simplex_projection_identity_inside() {
        let p = project_simplex(&pt(&[0.6, 0.4])).unwrap();
        assert!((p[0] - 0.6).abs() < 1e-12);
        assert!((p[1] - 0.4).abs() < 1e-12);
    }

    #[test]
    fn simplex_gap_one_zeroes_low_coordinate() {
        // w(0) - w(2) = 1.3 >= 1, so coordinate 2 projects to zero
        let p = project_simplex(&pt(&[1.0, 0.5, -0.3])).unwrap();
        assert_eq!(p[2], 0.0);
        assert!((p.sum() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_sum_examples() {
        assert_eq!(project_zero_sum(&pt(&[1.0, 1.0])).unwrap(), pt(&[0.0, 0.0]));
        assert_eq!(project_zero_sum(&pt(&[3.0, 1.0])).unwrap(), pt(&[1.0, -1.0]));
        assert_eq!(
            project_zero_sum(&pt(&[1.0, 2.0, 3.0])).unwrap(),
            pt(&[-1.0, 0.0, 1.0])
        );
    }

    #[test]
    fn curved_projection_below_origin() {
        let p = project_curved(&pt(&[0.0, -1.0]), 3.0).unwrap();
        assert!(p[0].abs() < 1e-9);
        assert!(p[1].abs() < 1e-9);
    }

    #[test]
    fn curved_projection_identity_inside() {
        let p = project_curved(&pt(&[0.5, 0.5]), 3.0).unwrap();
        assert_eq!(p, pt(&[0.5, 0.5]));
    }

    #[test]
    fn curved_projection_matches_dense_scan() {
        // independent oracle: dense 1-D scan over the graph at step 1e-6,
        // refined by bisection on the scan bracket
        let w = pt(&[-0.5, -2.0]);
        let alpha = 3.0;
        let g = |x: f64| (x - w[0]) * (x - w[0]) + (pow_abs(x, alpha) - w[1]) * (pow_abs(x, alpha) - w[1]);
        let mut best_x = -1.0;
        let mut best = g(-1.0);
        let n = 2_000_000;
        for i in 0..=n {
            let x = -1.0 + 2.0 * i as f64 / n as f64;
            let v = g(x);
            if v < best {
                best = v;
                best_x = x;
            }
        }
        let p = project_curved(&w, alpha).unwrap();
        assert!((p[0] - best_x).abs() < 1e-5, "got {} want {}", p[0], best_x);
        assert!((p[1] - pow_abs(best_x, alpha)).abs() < 1e-5);
        // normality: residual parallel to the outward normal of the graph
        let slope = 3.0 * p[0] * p[0] * p[0].signum();
        let normal = pt(&[slope, -1.0]); // outward for points below the graph
        let resid = w.sub(&p);
        let cos = resid.dot(&normal) / (resid.norm() * normal.norm());
        assert!((cos - 1.0).abs() < 1e-10, "cos = {cos}");
    }

    #[test]
    fn curved_rejects_alpha_at_most_two() {
        assert!(project_curved(&pt(&[0.0, -1.0]), 2.0).is_err());
        assert!(ConvexDomain::curved(1.5).is_err());
    }

    #[test]
    fn box_projection_examples() {
        let lo = pt(&[-1.0, 0.0]);
        let hi = pt(&[1.0, 1.0]);
        assert_eq!(project_box(&pt(&[2.0, -3.0]), &lo, &hi).unwrap(), pt(&[1.0, 0.0]));
        assert_eq!(
            project_box(&pt(&[0.2, 0.3]), &lo, &hi).unwrap(),
            pt(&[0.2, 0.3])
        );
        // scalar -1 + 1/2 on [-1, 1] stays put
        let iv = ConvexDomain::interval(-1.0, 1.0).unwrap();
        assert_eq!(iv.project(&pt(&[-0.5])).unwrap(), pt(&[-0.5]));
    }

    #[test]
    fn box_rejects_inverted_bounds() {
        let r = project_box(&pt(&[0.0]), &pt(&[1.0]), &pt(&[0.0]));
        assert!(r.is_err());
        assert!(ConvexDomain::boxed(pt(&[1.0]), pt(&[0.0])).is_err());
    }

    #[test]
    fn brute_force_curved_symmetry() {
        let dom = ConvexDomain::curved(3.0).unwrap();
        let p = brute_force_project(&dom, &pt(&[0.0, -1.0]), 1e-4).unwrap();
        assert!(p[0].abs() < 1e-3);
        assert!(p[1].abs() < 1e-3);
    }

    #[test]
    fn brute_force_box_matches_clamp() {
        let dom = ConvexDomain::boxed(pt(&[-1.0, 0.0]), pt(&[1.0, 1.0])).unwrap();
        let w = pt(&[1.7, -0.4]);
        let exact = dom.project(&w).unwrap();
        let oracle = brute_force_project(&dom, &w, 1e-4).unwrap();
        assert!(exact.distance(&oracle) < 1e-4);
    }

    #[test]
    fn brute_force_rejects_large_dimension() {
        let dom = ConvexDomain::simplex(6).unwrap();
        let w = Point::zeros(6);
        assert!(matches!(
            brute_force_project(&dom, &w, 1e-3),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn simplex_diameter_and_max_norm() {
        let dom = ConvexDomain::simplex(4).unwrap();
        assert!((dom.diameter() - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert_eq!(dom.max_norm(), 1.0);
    }
}
