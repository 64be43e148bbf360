//! Lazy anytime Subgradient learners over pluggable convex domains, with
//! exact projections, stochastic and scripted cost streams, regret and
//! pseudo-regret accounting, calculators for the theoretical bounds, and a
//! seeded Monte-Carlo experiment harness.

pub mod algorithms;
pub mod cli;
pub mod costs;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod metrics;
pub mod point;

pub use error::{Error, Result};
pub use geometry::ConvexDomain;
pub use point::Point;
