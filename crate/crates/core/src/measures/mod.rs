//! Roots as measures: empirical root distributions, step CDFs, cuts, order,
//! interlacing, atoms of convolutions and quantile polynomials.

pub mod atoms;
pub mod cdf;
pub mod order;
pub mod quantile;

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::polycore::isolate::isolate_real_roots;
use crate::polycore::{MonicPoly, RealRoot};
use crate::rational::Rational;

pub use atoms::{atom_triplets, AtomTriplet};
pub use cdf::StepCDF;
pub use order::{cut, interlaces, interlacing_chain, partial_order_le, CutMode};
pub use quantile::{quantile_poly, QuantileTarget};

/// Default isolating-interval width for irrational roots.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Distinct roots in increasing order with multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalMeasure {
    entries: Vec<(RealRoot, usize)>,
    degree: usize,
}

impl EmpiricalMeasure {
    /// Entries need not be sorted; equal locations must not repeat.
    pub fn new(mut entries: Vec<(RealRoot, usize)>) -> Result<Self> {
        entries.retain(|(_, m)| *m > 0);
        entries.sort_by(|a, b| a.0.cmp_exact(&b.0));
        if entries.windows(2).any(|w| w[0].0.cmp_exact(&w[1].0) == Ordering::Equal) {
            return Err(Error::Domain("repeated root location".into()));
        }
        let degree = entries.iter().map(|e| e.1).sum();
        if degree == 0 {
            return Err(Error::Degree("empty measure".into()));
        }
        Ok(EmpiricalMeasure { entries, degree })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn entries(&self) -> &[(RealRoot, usize)] {
        &self.entries
    }

    /// Roots repeated by multiplicity, increasing.
    pub fn sorted_roots(&self) -> Vec<RealRoot> {
        self.entries
            .iter()
            .flat_map(|(r, m)| std::iter::repeat_n(r.clone(), *m))
            .collect()
    }

    /// All roots as rationals, if every root is rational.
    pub fn rational_roots(&self) -> Option<Vec<Rational>> {
        self.sorted_roots()
            .iter()
            .map(|r| r.as_rational().cloned())
            .collect()
    }

    pub fn lambda_max(&self) -> &RealRoot {
        &self.entries.last().expect("nonempty measure").0
    }

    pub fn lambda_min(&self) -> &RealRoot {
        &self.entries[0].0
    }

    /// Multiplicity at an exact location (0 if not a root).
    pub fn multiplicity_at(&self, x: &RealRoot) -> usize {
        self.entries
            .iter()
            .find(|(r, _)| r.cmp_exact(x) == Ordering::Equal)
            .map_or(0, |e| e.1)
    }

    /// Number of roots strictly below `x`.
    pub fn count_below(&self, x: &RealRoot) -> usize {
        self.entries
            .iter()
            .take_while(|(r, _)| r.cmp_exact(x) == Ordering::Less)
            .map(|e| e.1)
            .sum()
    }

    /// Number of roots strictly above `x`.
    pub fn count_above(&self, x: &RealRoot) -> usize {
        self.degree - self.count_below(x) - self.multiplicity_at(x)
    }

    pub fn cdf(&self) -> StepCDF {
        let d = Rational::from_integer(self.degree.into());
        let mut acc = 0usize;
        let mut points = Vec::with_capacity(self.entries.len());
        let mut values = Vec::with_capacity(self.entries.len());
        for (r, m) in &self.entries {
            acc += m;
            points.push(r.clone());
            values.push(Rational::from_integer(acc.into()) / &d);
        }
        StepCDF::new(points, values).expect("empirical measure yields a valid CDF")
    }

    /// True if every root is at least zero.
    pub fn is_nonnegative(&self) -> bool {
        self.lambda_min().cmp_rational(&Rational::from_integer(0.into())) != Ordering::Less
    }
}

/// Roots of a real-rooted polynomial with exact multiplicities (from the
/// square-free decomposition); irrational roots isolated to width `tol`.
pub fn roots_with_multiplicity(p: &MonicPoly, tol: f64) -> Result<EmpiricalMeasure> {
    if let Some(r) = p.known_roots() {
        let mut entries: Vec<(RealRoot, usize)> = Vec::new();
        for x in r {
            match entries.last_mut() {
                Some((RealRoot::Rational(last), m)) if last == x => *m += 1,
                _ => entries.push((RealRoot::Rational(x.clone()), 1)),
            }
        }
        return EmpiricalMeasure::new(entries);
    }
    let mut entries = Vec::new();
    for (f, m) in p.squarefree_factors() {
        match isolate_real_roots(&f, tol) {
            Some(roots) => entries.extend(roots.into_iter().map(|r| (r, m))),
            None => {
                return Err(Error::NotRealRooted { degree: p.degree(), real: p.real_root_count() })
            }
        }
    }
    EmpiricalMeasure::new(entries)
}

pub fn empirical_cdf(p: &MonicPoly, tol: f64) -> Result<StepCDF> {
    Ok(roots_with_multiplicity(p, tol)?.cdf())
}

/// Polynomial from an empirical measure whose roots are all rational.
pub fn poly_from_measure(m: &EmpiricalMeasure) -> Result<MonicPoly> {
    let roots = m
        .rational_roots()
        .ok_or_else(|| Error::Unsupported("measure has irrational roots".into()))?;
    MonicPoly::from_roots(&roots)
}
