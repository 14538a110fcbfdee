//! Closed-form reference laws for limits of convolutions, and the atoms of
//! free convolutions of finitely atomic measures.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::convolve::ConvKind;
use crate::error::{Error, Result};
use crate::measures::{QuantileTarget, StepCDF};
use crate::polycore::RealRoot;
use crate::rational::{format_rational, from_f64, parse_rational, ratio, to_f64, Rational};

/// Finitely many atoms with rational locations and masses summing to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteMeasure {
    atoms: Vec<(Rational, Rational)>,
}

impl DiscreteMeasure {
    pub fn new(mut atoms: Vec<(Rational, Rational)>) -> Result<Self> {
        atoms.sort_by(|a, b| a.0.cmp(&b.0));
        if atoms.is_empty() {
            return Err(Error::Domain("measure needs at least one atom".into()));
        }
        if atoms.iter().any(|a| !a.1.is_positive()) {
            return Err(Error::Domain("atom masses must be positive".into()));
        }
        if atoms.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Domain("atom locations must be distinct".into()));
        }
        let total: Rational = atoms.iter().map(|a| &a.1).sum();
        if !total.is_one() {
            return Err(Error::Domain(format!("atom masses sum to {}", format_rational(&total))));
        }
        Ok(DiscreteMeasure { atoms })
    }

    pub fn point(c: Rational) -> Self {
        DiscreteMeasure { atoms: vec![(c, Rational::one())] }
    }

    /// `(δ_{-1} + δ_1) / 2`.
    pub fn bernoulli_pm1() -> Self {
        DiscreteMeasure { atoms: vec![(ratio(-1, 1), ratio(1, 2)), (ratio(1, 1), ratio(1, 2))] }
    }

    /// Sorted by location.
    pub fn atoms(&self) -> &[(Rational, Rational)] {
        &self.atoms
    }

    pub fn mass_at(&self, x: &Rational) -> Rational {
        self.atoms.iter().find(|a| &a.0 == x).map_or_else(Rational::zero, |a| a.1.clone())
    }

    pub fn cdf(&self, x: &Rational) -> Rational {
        self.atoms.iter().take_while(|a| &a.0 <= x).map(|a| &a.1).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.atoms[0].0.is_negative()
    }

    pub fn to_step_cdf(&self) -> StepCDF {
        StepCDF::from_atoms(
            self.atoms.iter().map(|(x, m)| (RealRoot::Rational(x.clone()), m.clone())).collect(),
        )
        .expect("valid discrete measure")
    }
}

/// A reference law with a closed-form CDF.
#[derive(Clone, Debug, PartialEq)]
pub enum AnalyticCDF {
    /// Arcsine law on `[a, b]`.
    Arcsine { a: Rational, b: Rational },
    /// Semicircle law with the given mean and variance.
    Semicircle { mean: Rational, var: Rational },
    Uniform { a: Rational, b: Rational },
    Discrete(DiscreteMeasure),
}

impl AnalyticCDF {
    pub fn arcsine(a: Rational, b: Rational) -> Result<Self> {
        if b <= a {
            return Err(Error::Domain("arcsine law needs a < b".into()));
        }
        Ok(AnalyticCDF::Arcsine { a, b })
    }

    pub fn semicircle(mean: Rational, var: Rational) -> Result<Self> {
        if !var.is_positive() {
            return Err(Error::Domain("semicircle law needs positive variance".into()));
        }
        Ok(AnalyticCDF::Semicircle { mean, var })
    }

    pub fn uniform(a: Rational, b: Rational) -> Result<Self> {
        if b <= a {
            return Err(Error::Domain("uniform law needs a < b".into()));
        }
        Ok(AnalyticCDF::Uniform { a, b })
    }

    pub fn point(c: Rational) -> Self {
        AnalyticCDF::Discrete(DiscreteMeasure::point(c))
    }

    pub fn bernoulli_pm1() -> Self {
        AnalyticCDF::Discrete(DiscreteMeasure::bernoulli_pm1())
    }

    /// Closed support `[lo, hi]` as floats.
    pub fn support(&self) -> (f64, f64) {
        match self {
            AnalyticCDF::Arcsine { a, b } | AnalyticCDF::Uniform { a, b } => (to_f64(a), to_f64(b)),
            AnalyticCDF::Semicircle { mean, var } => {
                let r = 2.0 * to_f64(var).sqrt();
                (to_f64(mean) - r, to_f64(mean) + r)
            }
            AnalyticCDF::Discrete(m) => {
                (to_f64(&m.atoms[0].0), to_f64(&m.atoms.last().unwrap().0))
            }
        }
    }

    /// Atoms `(location, mass)`; empty for the continuous laws.
    pub fn atoms(&self) -> &[(Rational, Rational)] {
        match self {
            AnalyticCDF::Discrete(m) => m.atoms(),
            _ => &[],
        }
    }

    pub fn as_discrete(&self) -> Option<&DiscreteMeasure> {
        match self {
            AnalyticCDF::Discrete(m) => Some(m),
            _ => None,
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        let unit = |t: f64, f: &dyn Fn(f64) -> f64| {
            if t <= -1.0 {
                0.0
            } else if t >= 1.0 {
                1.0
            } else {
                f(t).clamp(0.0, 1.0)
            }
        };
        match self {
            AnalyticCDF::Arcsine { a, b } => {
                let (a, b) = (to_f64(a), to_f64(b));
                unit((2.0 * x - a - b) / (b - a), &|t| 0.5 + t.asin() / PI)
            }
            AnalyticCDF::Semicircle { mean, var } => {
                let r = 2.0 * to_f64(var).sqrt();
                unit((x - to_f64(mean)) / r, &|t| 0.5 + (t * (1.0 - t * t).sqrt() + t.asin()) / PI)
            }
            AnalyticCDF::Uniform { a, b } => {
                let (a, b) = (to_f64(a), to_f64(b));
                ((x - a) / (b - a)).clamp(0.0, 1.0)
            }
            AnalyticCDF::Discrete(m) => match from_f64(x) {
                Ok(r) => to_f64(&m.cdf(&r)),
                Err(_) => if x > 0.0 { 1.0 } else { 0.0 },
            },
        }
    }

    /// Left limit `F(x-)`.
    pub fn cdf_left(&self, x: f64) -> f64 {
        match self {
            AnalyticCDF::Discrete(m) => {
                let below: Rational = match from_f64(x) {
                    Ok(r) => m.atoms.iter().take_while(|a| a.0 < r).map(|a| &a.1).sum(),
                    Err(_) => return if x > 0.0 { 1.0 } else { 0.0 },
                };
                to_f64(&below)
            }
            _ => self.cdf(x),
        }
    }
}

impl fmt::Display for AnalyticCDF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = format_rational;
        match self {
            AnalyticCDF::Arcsine { a, b } => write!(f, "arcsine:{}:{}", r(a), r(b)),
            AnalyticCDF::Semicircle { mean, var } => write!(f, "semicircle:{}:{}", r(mean), r(var)),
            AnalyticCDF::Uniform { a, b } => write!(f, "uniform:{}:{}", r(a), r(b)),
            AnalyticCDF::Discrete(m) => {
                let parts: Vec<String> =
                    m.atoms.iter().map(|(x, w)| format!("{}@{}", r(x), r(w))).collect();
                write!(f, "atoms:{}", parts.join(","))
            }
        }
    }
}

/// Parses `bernoulli_pm1`, `point:c`, `uniform:a:b`, `arcsine:a:b`,
/// `semicircle:mean:var`, or `atoms:x1@m1,x2@m2,...`.
impl FromStr for AnalyticCDF {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let params = || -> Result<Vec<Rational>> {
            rest.split(':').map(parse_rational).collect()
        };
        let want = |n: usize| -> Result<Vec<Rational>> {
            let p = params()?;
            if p.len() != n {
                return Err(Error::Parse(format!("{name} takes {n} parameter(s)")));
            }
            Ok(p)
        };
        match name {
            "bernoulli_pm1" if rest.is_empty() => Ok(AnalyticCDF::bernoulli_pm1()),
            "point" => Ok(AnalyticCDF::point(want(1)?.remove(0))),
            "uniform" => {
                let p = want(2)?;
                AnalyticCDF::uniform(p[0].clone(), p[1].clone())
            }
            "arcsine" => {
                let p = want(2)?;
                AnalyticCDF::arcsine(p[0].clone(), p[1].clone())
            }
            "semicircle" => {
                let p = want(2)?;
                AnalyticCDF::semicircle(p[0].clone(), p[1].clone())
            }
            "atoms" => {
                let atoms = rest
                    .split(',')
                    .map(|a| {
                        let (x, m) = a
                            .split_once('@')
                            .ok_or_else(|| Error::Parse(format!("atom {a:?} is not x@mass")))?;
                        Ok((parse_rational(x)?, parse_rational(m)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(AnalyticCDF::Discrete(DiscreteMeasure::new(atoms)?))
            }
            _ => Err(Error::Parse(format!("unknown law {s:?}"))),
        }
    }
}

/// Total order on finite floats as integers.
fn float_key(x: f64) -> i64 {
    let b = x.to_bits() as i64;
    if b < 0 {
        i64::MIN - b
    } else {
        b
    }
}

fn key_float(k: i64) -> f64 {
    let b = if k < 0 { i64::MIN - k } else { k };
    f64::from_bits(b as u64)
}

/// Smallest float in `[lo, hi]` satisfying a monotone predicate that holds
/// at `hi`.
fn least_float(lo: f64, hi: f64, pred: impl Fn(f64) -> bool) -> f64 {
    let (mut a, mut b) = (float_key(lo), float_key(hi));
    if pred(lo) {
        return lo;
    }
    while (b as i128) - (a as i128) > 1 {
        let m = ((a as i128 + b as i128) / 2) as i64;
        if pred(key_float(m)) {
            b = m;
        } else {
            a = m;
        }
    }
    key_float(b)
}

impl QuantileTarget for AnalyticCDF {
    /// Exact for uniform and discrete laws; otherwise the smallest float `x`
    /// whose computed CDF is at least `level`.
    fn quantile(&self, level: &Rational) -> Result<Rational> {
        if !level.is_positive() || *level > Rational::one() {
            return Err(Error::Domain("quantile level must lie in (0, 1]".into()));
        }
        match self {
            AnalyticCDF::Uniform { a, b } => Ok(a + level * (b - a)),
            AnalyticCDF::Discrete(m) => m.to_step_cdf().quantile(level),
            _ => {
                let (lo, hi) = self.support();
                let x = least_float(lo, hi, |x| {
                    from_f64(self.cdf(x)).is_ok_and(|v| v.cmp(level) != Ordering::Less)
                });
                from_f64(x)
            }
        }
    }

    /// Exact where [`quantile`](Self::quantile) is; otherwise the largest
    /// float whose computed CDF is at most `level`.
    fn quantile_floor(&self, level: &Rational) -> Result<Rational> {
        match self {
            AnalyticCDF::Uniform { .. } | AnalyticCDF::Discrete(_) => self.quantile(level),
            _ => {
                if !level.is_positive() || *level > Rational::one() {
                    return Err(Error::Domain("quantile level must lie in (0, 1]".into()));
                }
                let (lo, hi) = self.support();
                let above = |x: f64| from_f64(self.cdf(x)).is_ok_and(|v| v.cmp(level) == Ordering::Greater);
                if !above(hi) {
                    return from_f64(hi);
                }
                let x = least_float(lo, hi, above);
                if x == lo {
                    return from_f64(lo);
                }
                from_f64(key_float(float_key(x) - 1))
            }
        }
    }
}

/// An atom of a free convolution of two discrete measures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAtom {
    pub location: Rational,
    pub mass: Rational,
    /// CDF of the convolution at the atom, when determined by the inputs.
    pub cdf: Option<Rational>,
}

/// All atoms of `mu ⊞ nu` or `mu ⊠ nu`. The multiplicative case needs `nu`
/// supported on `[0, ∞)`.
pub fn free_atoms(mu: &DiscreteMeasure, nu: &DiscreteMeasure, kind: ConvKind) -> Result<Vec<FreeAtom>> {
    let one = Rational::one();
    let mut out = Vec::new();
    if kind == ConvKind::Multiplicative {
        if !nu.is_nonnegative() {
            return Err(Error::Domain("multiplicative convolution needs nu on [0, ∞)".into()));
        }
        let zero = Rational::zero();
        let m0 = mu.mass_at(&zero).max(nu.mass_at(&zero));
        if m0.is_positive() {
            let cdf = mu.is_nonnegative().then(|| m0.clone());
            out.push(FreeAtom { location: zero, mass: m0, cdf });
        }
    }
    for (a, ma) in mu.atoms() {
        for (b, mb) in nu.atoms() {
            if ma + mb <= one {
                continue;
            }
            let (location, cdf_known) = match kind {
                ConvKind::Additive => (a + b, true),
                ConvKind::Multiplicative => {
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    (a * b, a.is_positive() && mu.is_nonnegative())
                }
            };
            let cdf = cdf_known.then(|| mu.cdf(a) + nu.cdf(b) - &one);
            out.push(FreeAtom { location, mass: ma + mb - &one, cdf });
        }
    }
    out.sort_by(|x, y| x.location.cmp(&y.location));
    Ok(out)
}
