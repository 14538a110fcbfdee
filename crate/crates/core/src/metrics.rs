//! Kolmogorov and Lévy distances between step CDFs (exactly) and between a
//! step CDF and a closed-form law.

use std::borrow::Cow;
use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::freelimits::AnalyticCDF;
use crate::measures::StepCDF;
use crate::polycore::RealRoot;
use crate::rational::{from_f64, to_f64, Rational};

/// Iterations of the Lévy bisection on `[0, 1]`.
pub const LEVY_ITERATIONS: u32 = 60;

#[derive(Clone, Debug, PartialEq)]
pub enum Cdf {
    Step(StepCDF),
    Analytic(AnalyticCDF),
}

impl From<StepCDF> for Cdf {
    fn from(f: StepCDF) -> Self {
        Cdf::Step(f)
    }
}

impl From<AnalyticCDF> for Cdf {
    fn from(f: AnalyticCDF) -> Self {
        Cdf::Analytic(f)
    }
}

impl Cdf {
    /// Step form, available for step CDFs and discrete laws.
    pub fn as_step(&self) -> Option<Cow<'_, StepCDF>> {
        match self {
            Cdf::Step(f) => Some(Cow::Borrowed(f)),
            Cdf::Analytic(a) => a.as_discrete().map(|m| Cow::Owned(m.to_step_cdf())),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistanceResult {
    pub value: f64,
    /// The value as a rational when it was computed in exact arithmetic.
    /// For a step CDF against a continuous law this is exact relative to the
    /// floating-point CDF values.
    pub rational: Option<Rational>,
    /// True when every input was exact (rational or isolated breakpoints and
    /// no floating-point law).
    pub exact: bool,
    /// A location attaining the distance.
    pub witness: Option<f64>,
}

impl DistanceResult {
    fn from_rational(r: Rational, exact: bool, witness: Option<f64>) -> Self {
        DistanceResult { value: to_f64(&r), rational: Some(r), exact, witness }
    }
}

enum Pair<'a> {
    Steps(Cow<'a, StepCDF>, Cow<'a, StepCDF>),
    Mixed(&'a StepCDF, &'a AnalyticCDF),
}

fn classify<'a>(f: &'a Cdf, g: &'a Cdf) -> Result<Pair<'a>> {
    if let (Some(a), Some(b)) = (f.as_step(), g.as_step()) {
        return Ok(Pair::Steps(a, b));
    }
    match (f, g) {
        (Cdf::Step(s), Cdf::Analytic(a)) | (Cdf::Analytic(a), Cdf::Step(s)) => Ok(Pair::Mixed(s, a)),
        _ => Err(Error::Unsupported("distance between two continuous laws".into())),
    }
}

/// `sup_x |F(x) - G(x)|`.
pub fn kolmogorov(f: &Cdf, g: &Cdf) -> Result<DistanceResult> {
    Ok(match classify(f, g)? {
        Pair::Steps(a, b) => kolmogorov_steps(&a, &b),
        Pair::Mixed(s, a) => kolmogorov_mixed(s, a),
    })
}

/// Exact Kolmogorov distance between step CDFs, over the merged breakpoints.
pub fn kolmogorov_steps(f: &StepCDF, g: &StepCDF) -> DistanceResult {
    let (xs, ys) = (f.points(), g.points());
    let (mut i, mut j) = (0, 0);
    let mut best = Rational::zero();
    let mut witness = None;
    while i < xs.len() || j < ys.len() {
        let ord = match (xs.get(i), ys.get(j)) {
            (Some(x), Some(y)) => x.cmp_exact(y),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        let at = if ord == Ordering::Greater { &ys[j] } else { &xs[i] };
        if ord != Ordering::Greater {
            i += 1;
        }
        if ord != Ordering::Less {
            j += 1;
        }
        let fv = if i == 0 { Rational::zero() } else { f.values()[i - 1].clone() };
        let gv = if j == 0 { Rational::zero() } else { g.values()[j - 1].clone() };
        let diff = (fv - gv).abs();
        if diff > best {
            best = diff;
            witness = Some(at.to_f64());
        }
    }
    DistanceResult::from_rational(best, f.is_exact() && g.is_exact(), witness)
}

fn exact_f64(x: f64) -> Rational {
    from_f64(x).expect("CDF values are finite")
}

/// Between breakpoints the step CDF is constant and the law is monotone, so
/// the sup is attained at a breakpoint or as a left limit.
fn kolmogorov_mixed(f: &StepCDF, g: &AnalyticCDF) -> DistanceResult {
    let mut best = Rational::zero();
    let mut witness = None;
    for (i, p) in f.points().iter().enumerate() {
        let x = p.to_f64();
        let right = (&f.values()[i] - exact_f64(g.cdf(x))).abs();
        let left = (f.value_before(i) - exact_f64(g.cdf_left(x))).abs();
        let d = right.max(left);
        if d > best {
            best = d;
            witness = Some(x);
        }
    }
    DistanceResult::from_rational(best, false, witness)
}

/// Smallest `eps` with `F(x - eps) - eps <= G(x) <= F(x + eps) + eps` for
/// all `x`.
pub fn levy(f: &Cdf, g: &Cdf) -> Result<DistanceResult> {
    Ok(match classify(f, g)? {
        Pair::Steps(a, b) => levy_steps(&a, &b),
        Pair::Mixed(s, a) => levy_mixed(s, a),
    })
}

/// Differences `y - x` exactly when both are rational.
enum Gap {
    Exact(Rational),
    Float(f64),
}

fn gap(y: &RealRoot, x: &RealRoot) -> Gap {
    match (y.as_rational(), x.as_rational()) {
        (Some(a), Some(b)) => Gap::Exact(a - b),
        _ => Gap::Float(y.to_f64() - x.to_f64()),
    }
}

/// Smallest `eps` with `F(x) <= G(x + eps) + eps` for all `x`, as
/// `max_i min_j max(0, y_j - x_i, F_i - G_j)` with `G_0 = 0`, `y_0 = -inf`.
/// Returns the exact value when every gap was rational, the float value, and
/// the index of the worst breakpoint of `f`.
fn levy_one_sided(f: &StepCDF, g: &StepCDF) -> (Option<Rational>, f64, usize) {
    let (xs, ys) = (f.points(), g.points());
    let mut rows: Vec<(Option<Rational>, f64)> = Vec::with_capacity(xs.len());
    for (i, x) in xs.iter().enumerate() {
        let fi = &f.values()[i];
        let mut best_r = Some(fi.clone());
        let mut best_f = to_f64(fi);
        // terms with y_j <= x reduce to F_i - G_j; the last such is smallest
        let start = ys.partition_point(|y| y.cmp_exact(x) != Ordering::Greater);
        for j in start.max(1)..=ys.len() {
            let df = fi - &g.values()[j - 1];
            match (gap(&ys[j - 1], x), &best_r) {
                (Gap::Exact(dy), Some(b)) => {
                    if &dy >= b {
                        break;
                    }
                    let c = dy.max(df).max(Rational::zero());
                    if &c < b {
                        best_f = to_f64(&c);
                        best_r = Some(c);
                    }
                }
                (dy, _) => {
                    let dy = match dy {
                        Gap::Exact(r) => to_f64(&r),
                        Gap::Float(v) => v,
                    };
                    if dy >= best_f {
                        break;
                    }
                    best_r = None;
                    best_f = best_f.min(dy.max(to_f64(&df)).max(0.0));
                }
            }
        }
        rows.push((best_r, best_f));
    }
    let all_exact = rows.iter().all(|r| r.0.is_some());
    let mut worst = 0;
    for k in 1..rows.len() {
        let better = match (&rows[k].0, &rows[worst].0) {
            (Some(a), Some(b)) if all_exact => a > b,
            _ => rows[k].1 > rows[worst].1,
        };
        if better {
            worst = k;
        }
    }
    let (r, v) = rows.swap_remove(worst);
    (r.filter(|_| all_exact), v, worst)
}

/// Exact Lévy distance between step CDFs.
pub fn levy_steps(f: &StepCDF, g: &StepCDF) -> DistanceResult {
    let (a, af, ai) = levy_one_sided(f, g);
    let (b, bf, bi) = levy_one_sided(g, f);
    let first = match (&a, &b) {
        (Some(x), Some(y)) => x >= y,
        _ => af >= bf,
    };
    let w = if first { f.points()[ai].to_f64() } else { g.points()[bi].to_f64() };
    match (a, b) {
        (Some(x), Some(y)) => {
            DistanceResult::from_rational(x.max(y), f.is_exact() && g.is_exact(), Some(w))
        }
        _ => DistanceResult { value: af.max(bf), rational: None, exact: false, witness: Some(w) },
    }
}

/// Whether `eps` satisfies both Lévy inequalities between a step CDF and a
/// law, checked at the breakpoints shifted by `eps`.
fn levy_feasible(f: &StepCDF, g: &AnalyticCDF, eps: f64) -> bool {
    f.points().iter().enumerate().all(|(i, p)| {
        let x = p.to_f64();
        to_f64(&f.values()[i]) <= g.cdf(x + eps) + eps
            && g.cdf_left(x - eps) <= to_f64(&f.value_before(i)) + eps
    })
}

fn levy_mixed(f: &StepCDF, g: &AnalyticCDF) -> DistanceResult {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    if levy_feasible(f, g, 0.0) {
        hi = 0.0;
    } else {
        for _ in 0..LEVY_ITERATIONS {
            let mid = 0.5 * (lo + hi);
            if levy_feasible(f, g, mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }
    DistanceResult { value: hi, rational: None, exact: false, witness: None }
}
