//! Polynomials whose roots are quantiles of a target distribution.

use std::cmp::Ordering;

use super::StepCDF;
use crate::error::{Error, Result};
use crate::polycore::{MonicPoly, RealRoot};
use crate::rational::{ratio, Rational};

/// A distribution with a computable generalized inverse.
pub trait QuantileTarget {
    /// `inf { x : F(x) >= level }` for `level` in `(0, 1]`, as an exact
    /// rational.
    fn quantile(&self, level: &Rational) -> Result<Rational>;

    /// A point at or just below the quantile whose CDF does not exceed
    /// `level`. Differs from [`quantile`](Self::quantile) only when the
    /// quantile has to be rounded.
    fn quantile_floor(&self, level: &Rational) -> Result<Rational> {
        self.quantile(level)
    }
}

impl QuantileTarget for StepCDF {
    fn quantile(&self, level: &Rational) -> Result<Rational> {
        let i = self.values().partition_point(|v| v.cmp(level) == Ordering::Less);
        match self.points().get(i) {
            Some(RealRoot::Rational(x)) => Ok(x.clone()),
            Some(_) => Err(Error::Unsupported("quantile at an irrational breakpoint".into())),
            None => Err(Error::Domain("quantile level above 1".into())),
        }
    }
}

/// Degree-`d` polynomial with roots at the `k/d` quantiles (`k = 1..d-1`)
/// plus a repeat of the last one, so its root distribution is within
/// Kolmogorov distance `1/d` of the target. For `d = 1` the median is used.
///
/// A rounded quantile keeps the bound only if its CDF stays on the correct
/// side of the level: the `k/d` roots are rounded down and the repeated root
/// up.
pub fn quantile_poly(target: &dyn QuantileTarget, d: usize) -> Result<MonicPoly> {
    if d == 0 {
        return Err(Error::Degree("quantile polynomial needs d >= 1".into()));
    }
    if d == 1 {
        return MonicPoly::from_roots(&[target.quantile(&ratio(1, 2))?]);
    }
    let mut roots = (1..d)
        .map(|k| target.quantile_floor(&ratio(k as i64, d as i64)))
        .collect::<Result<Vec<_>>>()?;
    roots.push(target.quantile(&ratio(d as i64 - 1, d as i64))?);
    MonicPoly::from_roots(&roots)
}
