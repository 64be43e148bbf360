use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};

/// A dense real vector of fixed dimension d >= 1.
///
/// All entries are finite by construction. Points are the common currency for
/// cost vectors, iterates and actions.
#[derive(Clone, Debug, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::invalid_input("point dimension must be at least 1"));
        }
        if !coords.iter().all(|c| c.is_finite()) {
            return Err(Error::invalid_input("point has non-finite coordinate"));
        }
        Ok(Point(coords))
    }

    /// Origin of R^d.
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1);
        Point(vec![0.0; dim])
    }

    /// Coordinate vector e_j (0-based index).
    pub fn unit(dim: usize, j: usize) -> Self {
        assert!(j < dim);
        let mut c = vec![0.0; dim];
        c[j] = 1.0;
        Point(c)
    }

    /// 1-dimensional point, handy for scalar domains.
    pub fn scalar(v: f64) -> Result<Self> {
        Point::new(vec![v])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn dot(&self, other: &Point) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn norm_inf(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn distance(&self, other: &Point) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&self, factor: f64) -> Point {
        Point(self.0.iter().map(|c| c * factor).collect())
    }

    pub fn add(&self, other: &Point) -> Point {
        debug_assert_eq!(self.dim(), other.dim());
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Point) -> Point {
        debug_assert_eq!(self.dim(), other.dim());
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add_assign(&mut self, other: &Point) {
        debug_assert_eq!(self.dim(), other.dim());
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
    }

    /// Index of the smallest coordinate, ties broken by smallest index.
    pub fn argmin(&self) -> usize {
        let mut best = 0;
        for (j, &c) in self.0.iter().enumerate() {
            if c < self.0[best] {
                best = j;
            }
        }
        best
    }

    /// Parses a comma-separated coordinate list, e.g. "2,0" or "0.5, 0.5".
    pub fn parse(s: &str) -> Result<Self> {
        let coords: Vec<f64> = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::invalid_input(format!("bad coordinate {t:?}")))
            })
            .collect::<Result<_>>()?;
        Point::new(coords)
    }
}

impl Index<usize> for Point {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl fmt::Display for Point {
    /// Comma-separated coordinates, shortest round-trip float formatting.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, c) in self.0.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
