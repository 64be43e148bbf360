//! Cost-vector streams: the i.i.d. sphere-noise model, the two
//! counterexample distributions, and scripted (file-backed) sequences.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::metrics::GapProfile;
use crate::point::Point;

/// Seeded random stream. The (seed, stream_id) pair fully determines the
/// sample sequence; distinct stream ids give independent streams, so each
/// trial owns one stream and fan-out is always by a fresh stream id.
#[derive(Clone, Debug)]
pub struct RngStream {
    pub seed: u64,
    pub stream_id: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        RngStream {
            seed,
            stream_id,
            rng,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

/// Uniform sample from the (d-1)-dimensional unit sphere: draw d independent
/// standard normals and normalise.
pub fn sample_sphere(d: usize, rng: &mut RngStream) -> Result<Point> {
    if d < 2 {
        return Err(Error::invalid_parameter("sphere sampling requires d >= 2"));
    }
    loop {
        let coords: Vec<f64> = (0..d).map(|_| rng.rng().sample(StandardNormal)).collect();
        let norm = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return Point::new(coords.into_iter().map(|c| c / norm).collect());
        }
        // astronomically unlikely; redraw
    }
}

/// Specification of a cost stream.
#[derive(Clone, Debug)]
pub enum CostModel {
    /// a_n = a + R * N_n with N_n uniform on the unit sphere.
    SphereNoise { mean: Point, radius: f64 },
    /// Two-dimensional (B, 1) with B = +-1 equiprobable.
    CurvedExample,
    /// Scalar +1 with probability 3/4, -1 with probability 1/4. Mean 1/2.
    GreedyExample,
    /// Replays a fixed list of cost vectors, then signals stream end.
    Scripted(Vec<Point>),
}

impl CostModel {
    pub fn sphere_noise(mean: Point, radius: f64) -> Result<Self> {
        if !(radius >= 0.0) || !radius.is_finite() {
            return Err(Error::invalid_parameter("noise radius must be >= 0"));
        }
        if mean.dim() < 2 && radius > 0.0 {
            return Err(Error::invalid_parameter(
                "sphere noise requires mean dimension >= 2",
            ));
        }
        Ok(CostModel::SphereNoise { mean, radius })
    }

    pub fn dim(&self) -> usize {
        match self {
            CostModel::SphereNoise { mean, .. } => mean.dim(),
            CostModel::CurvedExample => 2,
            CostModel::GreedyExample => 1,
            CostModel::Scripted(points) => points.first().map_or(0, Point::dim),
        }
    }

    /// Mean cost vector, when the model is stochastic with a known mean.
    pub fn mean(&self) -> Option<Point> {
        match self {
            CostModel::SphereNoise { mean, .. } => Some(mean.clone()),
            CostModel::CurvedExample => Some(Point::new(vec![0.0, 1.0]).unwrap()),
            CostModel::GreedyExample => Some(Point::new(vec![0.5]).unwrap()),
            CostModel::Scripted(_) => None,
        }
    }

    /// Draws the next cost vector.
    pub fn next_cost(&self, rng: &mut RngStream, position: usize) -> Result<Point> {
        match self {
            CostModel::SphereNoise { mean, radius } => {
                if *radius == 0.0 {
                    return Ok(mean.clone());
                }
                let noise = sample_sphere(mean.dim(), rng)?;
                Ok(mean.add(&noise.scale(*radius)))
            }
            CostModel::CurvedExample => {
                let b = if rng.rng().gen_bool(0.5) { 1.0 } else { -1.0 };
                Point::new(vec![b, 1.0])
            }
            CostModel::GreedyExample => {
                let c = if rng.rng().gen_bool(0.75) { 1.0 } else { -1.0 };
                Point::new(vec![c])
            }
            CostModel::Scripted(points) => points
                .get(position)
                .cloned()
                .ok_or(Error::StreamEnd(points.len())),
        }
    }
}

/// A model paired with its stream state; yields one cost per turn.
#[derive(Clone, Debug)]
pub struct CostStream {
    model: CostModel,
    rng: RngStream,
    position: usize,
}

impl CostStream {
    pub fn new(model: CostModel, rng: RngStream) -> Self {
        CostStream {
            model,
            rng,
            position: 0,
        }
    }

    pub fn model(&self) -> &CostModel {
        &self.model
    }

    pub fn next_cost(&mut self) -> Result<Point> {
        let c = self.model.next_cost(&mut self.rng, self.position)?;
        self.position += 1;
        Ok(c)
    }
}

/// Parses the scripted-cost format: one comma-separated vector per line,
/// `#` comment lines and blank lines ignored.
pub fn parse_scripted(text: &str) -> Result<Vec<Point>> {
    let mut points = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let p = Point::parse(line).map_err(|e| Error::Parse {
            line: i + 1,
            msg: e.to_string(),
        })?;
        if let Some(first) = points.first() {
            let first: &Point = first;
            if p.dim() != first.dim() {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("dimension {} != {}", p.dim(), first.dim()),
                });
            }
        }
        points.push(p);
    }
    if points.is_empty() {
        return Err(Error::invalid_input("scripted stream has no cost vectors"));
    }
    Ok(points)
}

/// Sorts the mean ascending and reports the suboptimality gaps
/// Delta_j = a(sigma(j)) - a(sigma(1)).
pub fn gaps(a: &Point) -> GapProfile {
    let d = a.dim();
    let mut permutation: Vec<usize> = (0..d).collect();
    permutation.sort_by(|&i, &j| a[i].partial_cmp(&a[j]).unwrap().then(i.cmp(&j)));
    let base = a[permutation[0]];
    let sorted_gaps: Vec<f64> = permutation.iter().map(|&i| a[i] - base).collect();
    let min_positive_gap = sorted_gaps.iter().copied().find(|&g| g > 0.0);
    GapProfile {
        sorted_gaps,
        min_positive_gap,
        permutation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(coords: &[f64]) -> Point {
        Point::new(coords.to_vec()).unwrap()
    }

    #[test]
    fn sphere_samples_have_unit_norm() {
        let mut rng = RngStream::new(7, 0);
        for d in [2, 3, 8] {
            for _ in 0..100 {
                let v = sample_sphere(d, &mut rng).unwrap();
                assert!((v.norm() - 1.0).abs() < 1e-12);
            }
        }
        assert!(sample_sphere(1, &mut rng).is_err());
    }

    #[test]
    fn sphere_mean_is_near_zero() {
        // standard error of each component is sqrt(1/(d*n)); allow 3 sigma
        // with extra slack
        let d = 3;
        let n = 100_000;
        let mut rng = RngStream::new(11, 0);
        let mut sums = vec![0.0; d];
        for _ in 0..n {
            let v = sample_sphere(d, &mut rng).unwrap();
            for j in 0..d {
                sums[j] += v[j];
            }
        }
        let tol = 5.0 * (1.0 / (d as f64 * n as f64)).sqrt() * 3.0;
        for s in sums {
            assert!((s / n as f64).abs() < tol);
        }
    }

    #[test]
    fn sphere_angle_uniform_by_ks() {
        // d = 2: the angle is uniform on [0, 2pi); one-sample KS test at
        // level 0.01 (critical value 1.628 / sqrt(n))
        let n = 10_000;
        let mut rng = RngStream::new(13, 0);
        let mut angles: Vec<f64> = (0..n)
            .map(|_| {
                let v = sample_sphere(2, &mut rng).unwrap();
                let a = v[1].atan2(v[0]);
                (a + 2.0 * std::f64::consts::PI) % (2.0 * std::f64::consts::PI)
            })
            .collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut ks: f64 = 0.0;
        for (i, &a) in angles.iter().enumerate() {
            let cdf = a / (2.0 * std::f64::consts::PI);
            let lo = i as f64 / n as f64;
            let hi = (i + 1) as f64 / n as f64;
            ks = ks.max((cdf - lo).abs()).max((hi - cdf).abs());
        }
        let critical = 1.628 / (n as f64).sqrt();
        assert!(ks < critical, "KS statistic {ks} >= {critical}");
    }

    #[test]
    fn zero_noise_model_repeats_mean() {
        let model = CostModel::sphere_noise(pt(&[0.0, 1.0]), 0.0).unwrap();
        let mut rng = RngStream::new(1, 0);
        for i in 0..10 {
            assert_eq!(model.next_cost(&mut rng, i).unwrap(), pt(&[0.0, 1.0]));
        }
    }

    #[test]
    fn sphere_noise_sample_bounds() {
        let mean = pt(&[0.0, 1.0, 2.0]);
        let model = CostModel::sphere_noise(mean.clone(), 2.5).unwrap();
        let mut rng = RngStream::new(3, 4);
        for i in 0..1000 {
            let c = model.next_cost(&mut rng, i).unwrap();
            assert!((c.sub(&mean).norm() - 2.5).abs() < 1e-12);
            assert!(c.norm() <= mean.norm() + 2.5 + 1e-12);
        }
    }

    #[test]
    fn curved_example_mean() {
        let model = CostModel::CurvedExample;
        let mut rng = RngStream::new(5, 0);
        let n = 100_000;
        let mut sum = 0.0;
        for i in 0..n {
            let c = model.next_cost(&mut rng, i).unwrap();
            assert_eq!(c[1], 1.0);
            assert!(c[0] == 1.0 || c[0] == -1.0);
            sum += c[0];
        }
        assert!((sum / n as f64).abs() < 0.02);
    }

    #[test]
    fn greedy_example_mean() {
        let model = CostModel::GreedyExample;
        let mut rng = RngStream::new(5, 1);
        let n = 100_000;
        let mut sum = 0.0;
        for i in 0..n {
            sum += model.next_cost(&mut rng, i).unwrap()[0];
        }
        assert!((sum / n as f64 - 0.5).abs() < 0.02);
    }

    #[test]
    fn scripted_replays_then_signals_end() {
        let model = CostModel::Scripted(vec![pt(&[1.0, 0.0]), pt(&[0.0, 1.0])]);
        let mut stream = CostStream::new(model, RngStream::new(0, 0));
        assert_eq!(stream.next_cost().unwrap(), pt(&[1.0, 0.0]));
        assert_eq!(stream.next_cost().unwrap(), pt(&[0.0, 1.0]));
        assert!(matches!(stream.next_cost(), Err(Error::StreamEnd(2))));
    }

    #[test]
    fn streams_are_bitwise_reproducible() {
        let model = CostModel::sphere_noise(pt(&[0.0, 1.0]), 3.0).unwrap();
        let run = |seed, stream| {
            let mut s = CostStream::new(model.clone(), RngStream::new(seed, stream));
            (0..50).map(|_| s.next_cost().unwrap()).collect::<Vec<_>>()
        };
        assert_eq!(run(42, 7), run(42, 7));
        assert_ne!(run(42, 7), run(42, 8));
    }

    #[test]
    fn distinct_streams_are_uncorrelated() {
        let model = CostModel::sphere_noise(pt(&[0.0, 0.0]), 1.0).unwrap();
        let draw = |stream_id| {
            let mut s = CostStream::new(model.clone(), RngStream::new(99, stream_id));
            (0..1000).map(|_| s.next_cost().unwrap()).collect::<Vec<_>>()
        };
        let a = draw(0);
        let b = draw(1);
        for j in 0..2 {
            let xa: Vec<f64> = a.iter().map(|p| p[j]).collect();
            let xb: Vec<f64> = b.iter().map(|p| p[j]).collect();
            let n = xa.len() as f64;
            let ma = xa.iter().sum::<f64>() / n;
            let mb = xb.iter().sum::<f64>() / n;
            let cov: f64 = xa.iter().zip(&xb).map(|(x, y)| (x - ma) * (y - mb)).sum::<f64>() / n;
            let va: f64 = xa.iter().map(|x| (x - ma) * (x - ma)).sum::<f64>() / n;
            let vb: f64 = xb.iter().map(|x| (x - mb) * (x - mb)).sum::<f64>() / n;
            let corr = cov / (va * vb).sqrt();
            assert!(corr.abs() < 0.05, "component {j} correlation {corr}");
        }
    }

    #[test]
    fn gaps_examples() {
        let g = gaps(&pt(&[0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0]));
        assert_eq!(g.min_positive_gap, Some(1.0));
        assert!(g.sorted_gaps[1..].iter().all(|&x| x == 1.0));

        let g = gaps(&pt(&[0.0, 1.0, 2.0, 3.0]));
        assert_eq!(g.sorted_gaps, vec![0.0, 1.0, 2.0, 3.0]);
        assert_eq!(g.min_positive_gap, Some(1.0));
        assert_eq!(g.permutation, vec![0, 1, 2, 3]);

        let g = gaps(&pt(&[5.0, 5.0]));
        assert_eq!(g.sorted_gaps, vec![0.0, 0.0]);
        assert_eq!(g.min_positive_gap, None);
    }

    #[test]
    fn parse_scripted_format() {
        let pts = parse_scripted("# comment\n1,0\n0.5, 0.5\n\n").unwrap();
        assert_eq!(pts, vec![pt(&[1.0, 0.0]), pt(&[0.5, 0.5])]);
        assert!(parse_scripted("1,0\n1,0,0\n").is_err());
        assert!(parse_scripted("# only comments\n").is_err());
    }
}
