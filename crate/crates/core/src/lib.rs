//! Finite free additive and multiplicative convolutions of real-rooted
//! polynomials, computed in exact rational arithmetic, with the surrounding
//! tools for comparing root distributions: empirical CDFs, Kolmogorov and
//! Lévy distances, atoms, interlacing, quantile polynomials, closed-form limit
//! laws, and a random-matrix Monte Carlo oracle.

pub mod convolve;
pub mod error;
pub mod freelimits;
pub mod io;
pub mod measures;
pub mod metrics;
pub mod polycore;
pub mod rational;
pub mod rmt;

pub use convolve::{boxplus, boxtimes, convolve, ConvKind};
pub use error::{Error, Result};
pub use polycore::{Interval, MonicPoly, RealRoot, Transform};
pub use rational::Rational;
pub use freelimits::{AnalyticCDF, DiscreteMeasure};
pub use measures::{EmpiricalMeasure, StepCDF};
pub use metrics::{kolmogorov, levy, Cdf, DistanceResult};
