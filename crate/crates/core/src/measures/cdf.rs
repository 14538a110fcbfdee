//! Right-continuous step CDFs with rational values.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polycore::RealRoot;
use crate::rational::{to_f64, Rational};

/// `F(x) = values[i]` for `points[i] <= x < points[i + 1]`, `0` before the
/// first point; the last value is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct StepCDF {
    points: Vec<RealRoot>,
    values: Vec<Rational>,
}

impl StepCDF {
    /// Points must be strictly increasing and values strictly increasing in
    /// `(0, 1]`, ending at 1.
    pub fn new(points: Vec<RealRoot>, values: Vec<Rational>) -> Result<Self> {
        if points.is_empty() || points.len() != values.len() {
            return Err(Error::Domain("step CDF needs matching nonempty points and values".into()));
        }
        if points.windows(2).any(|w| w[0].cmp_exact(&w[1]) != Ordering::Less) {
            return Err(Error::Domain("step CDF points must be strictly increasing".into()));
        }
        if values.windows(2).any(|w| w[0] >= w[1]) || values[0] <= Rational::zero() {
            return Err(Error::Domain("step CDF values must increase strictly from above 0".into()));
        }
        if !values.last().unwrap().is_one() {
            return Err(Error::Domain("step CDF must end at 1".into()));
        }
        Ok(StepCDF { points, values })
    }

    /// From atoms `(location, mass)` in any order; equal locations merge.
    pub fn from_atoms(mut atoms: Vec<(RealRoot, Rational)>) -> Result<Self> {
        atoms.sort_by(|a, b| a.0.cmp_exact(&b.0));
        let mut points: Vec<RealRoot> = Vec::with_capacity(atoms.len());
        let mut values: Vec<Rational> = Vec::with_capacity(atoms.len());
        let mut acc = Rational::zero();
        for (x, m) in atoms {
            if m <= Rational::zero() {
                return Err(Error::Domain("atom masses must be positive".into()));
            }
            acc += m;
            if points.last().is_some_and(|p| p.cmp_exact(&x) == Ordering::Equal) {
                *values.last_mut().unwrap() = acc.clone();
            } else {
                points.push(x);
                values.push(acc.clone());
            }
        }
        Self::new(points, values)
    }

    pub fn points(&self) -> &[RealRoot] {
        &self.points
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// True when every breakpoint is exact (rational or isolated algebraic).
    pub fn is_exact(&self) -> bool {
        self.points.iter().all(RealRoot::is_exact)
    }

    /// Value just before breakpoint `i`.
    pub fn value_before(&self, i: usize) -> Rational {
        if i == 0 {
            Rational::zero()
        } else {
            self.values[i - 1].clone()
        }
    }

    /// Jump size at breakpoint `i`.
    pub fn jump(&self, i: usize) -> Rational {
        &self.values[i] - self.value_before(i)
    }

    /// Number of points `<= x`, by exact comparison.
    fn count_le(&self, x: &RealRoot) -> usize {
        self.points.partition_point(|p| p.cmp_exact(x) != Ordering::Greater)
    }

    /// Number of points `< x`.
    fn count_lt(&self, x: &RealRoot) -> usize {
        self.points.partition_point(|p| p.cmp_exact(x) == Ordering::Less)
    }

    pub fn eval(&self, x: &RealRoot) -> Rational {
        let k = self.count_le(x);
        if k == 0 {
            Rational::zero()
        } else {
            self.values[k - 1].clone()
        }
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        self.eval(&RealRoot::Rational(x.clone()))
    }

    /// Left limit `F(x-)`.
    pub fn eval_left(&self, x: &RealRoot) -> Rational {
        let k = self.count_lt(x);
        if k == 0 {
            Rational::zero()
        } else {
            self.values[k - 1].clone()
        }
    }

    /// Mass of the single point `x`.
    pub fn mass_at(&self, x: &RealRoot) -> Rational {
        self.eval(x) - self.eval_left(x)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let k = self.points.partition_point(|p| p.to_f64() <= x);
        if k == 0 {
            0.0
        } else {
            to_f64(&self.values[k - 1])
        }
    }

    pub fn eval_left_f64(&self, x: f64) -> f64 {
        let k = self.points.partition_point(|p| p.to_f64() < x);
        if k == 0 {
            0.0
        } else {
            to_f64(&self.values[k - 1])
        }
    }

    /// CDF of the reflected measure `x -> -x`.
    pub fn reflect(&self) -> StepCDF {
        let atoms = (0..self.len())
            .map(|i| (negate(&self.points[i]), self.jump(i)))
            .collect();
        StepCDF::from_atoms(atoms).expect("reflection of a valid CDF is valid")
    }

    /// `(x, F(x))` rows with `x` as exact rational when available.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,F\n");
        for (p, v) in self.points.iter().zip(&self.values) {
            out.push_str(&format!("{},{}\n", p, crate::rational::format_rational(v)));
        }
        out
    }
}

/// `-x` for a real root.
pub fn negate(x: &RealRoot) -> RealRoot {
    match x {
        RealRoot::Rational(r) => RealRoot::Rational(-r),
        RealRoot::Algebraic { poly, lo, hi, approx } => RealRoot::Algebraic {
            poly: std::sync::Arc::new(poly.reflect()),
            lo: -hi,
            hi: -lo,
            approx: -approx,
        },
        RealRoot::Approx(v) => RealRoot::Approx(-v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn r(x: i64) -> RealRoot {
        RealRoot::Rational(int(x))
    }

    #[test]
    fn evaluation() {
        let f = StepCDF::from_atoms(vec![(r(1), ratio(3, 4)), (r(5), ratio(1, 4))]).unwrap();
        assert_eq!(f.eval(&r(1)), ratio(3, 4));
        assert_eq!(f.eval_left(&r(1)), int(0));
        assert_eq!(f.eval(&r(4)), ratio(3, 4));
        assert_eq!(f.eval(&r(5)), int(1));
        assert_eq!(f.mass_at(&r(5)), ratio(1, 4));
        assert_eq!(f.eval_f64(0.5), 0.0);
        assert_eq!(f.eval_left_f64(5.0), 0.75);
        let g = f.reflect();
        assert_eq!(g.eval(&r(-5)), ratio(1, 4));
        assert_eq!(g.eval(&r(-1)), int(1));
    }

    #[test]
    fn validation() {
        assert!(StepCDF::new(vec![r(0), r(0)], vec![ratio(1, 2), int(1)]).is_err());
        assert!(StepCDF::new(vec![r(0)], vec![ratio(1, 2)]).is_err());
        assert!(StepCDF::from_atoms(vec![(r(0), ratio(1, 2)), (r(0), ratio(1, 2))]).is_ok());
    }
}
