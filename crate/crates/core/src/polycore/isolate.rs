//! Real root isolation for square-free integer polynomials.
//!
//! Small degrees use Sturm sequences with bisection. Larger degrees first find
//! float approximations with Laguerre's method (the logarithmic derivatives are
//! evaluated exactly and rounded once) and then certify them by exact sign
//! alternation: `n + 1` alternating signs separate `n` roots of a degree-`n`
//! polynomial, so every root is real and isolated. If certification fails the
//! Sturm path is used.

use std::cmp::Ordering;
use std::sync::Arc;

use num_traits::Signed;

use super::real::RealRoot;
use super::sturm::SturmSequence;
use super::zpoly::ZPoly;
use crate::rational::{from_f64, midpoint, simplest_between, to_f64, Rational};

/// Degree above which the Laguerre path is tried first.
const STURM_MAX_DEGREE: usize = 24;
const LAGUERRE_MAX_ITER: usize = 200;
const GAP_SEARCH_ROUNDS: usize = 4;

/// Sorted real roots of a square-free polynomial, or `None` if some root is
/// not real. Irrational roots are isolated to intervals of width at most `tol`.
pub fn isolate_real_roots(f: &ZPoly, tol: f64) -> Option<Vec<RealRoot>> {
    let n = f.degree();
    if n == 0 {
        return Some(Vec::new());
    }
    let f = Arc::new(f.clone().primitive());
    if n == 1 {
        let c = f.coeffs();
        return Some(vec![RealRoot::Rational(Rational::new(-c[0].clone(), c[1].clone()))]);
    }
    let tol_r = from_f64(tol).unwrap_or_else(|_| Rational::new(1.into(), (1u64 << 40).into()));
    if n > STURM_MAX_DEGREE {
        if let Some(roots) = laguerre_isolate(&f, tol, &tol_r) {
            return Some(roots);
        }
    }
    sturm_isolate(&f, &tol_r)
}

/// Number of distinct real roots, computed exactly.
pub fn count_real_roots(f: &ZPoly) -> usize {
    if f.degree() > STURM_MAX_DEGREE {
        let certified = approximate_roots(f).is_some_and(|z| certify(f, &z).is_some());
        if certified {
            return f.degree();
        }
    }
    SturmSequence::new(f).count_real()
}

fn sturm_isolate(f: &Arc<ZPoly>, tol: &Rational) -> Option<Vec<RealRoot>> {
    let n = f.degree();
    let seq = SturmSequence::new(f);
    if seq.count_real() < n {
        return None;
    }
    let b = f.root_bound();
    let mut stack = vec![(-b.clone(), b, n)];
    let mut out = Vec::with_capacity(n);
    while let Some((lo, hi, count)) = stack.pop() {
        match count {
            0 => {}
            1 => out.push(refine(f, lo, hi, tol, None)),
            _ => {
                let m = midpoint(&lo, &hi);
                let left = seq.count(&lo, &m);
                stack.push((lo, m.clone(), left));
                stack.push((m, hi, count - left));
            }
        }
    }
    out.sort();
    Some(out)
}

/// Refines the single root in `(lo, hi]` to an isolating open interval of
/// width at most `tol` (or an exact rational).
fn refine(
    f: &Arc<ZPoly>,
    mut lo: Rational,
    mut hi: Rational,
    tol: &Rational,
    guess: Option<f64>,
) -> RealRoot {
    let sh = f.sign_at(&hi);
    if sh == Ordering::Equal {
        return RealRoot::Rational(hi);
    }
    // a rational root p/q has q | lc; separate it from other such rationals
    let lc_bits = f.lc().bits();
    let target = if lc_bits <= 24 {
        let lc = Rational::from_integer(f.lc().clone());
        tol.clone().min((&lc * &lc * Rational::from_integer(2.into())).recip())
    } else {
        tol.clone()
    };
    let mut sl = f.sign_at(&lo);
    while sl == Ordering::Equal || &hi - &lo > target {
        let m = midpoint(&lo, &hi);
        let s = f.sign_at(&m);
        if s == Ordering::Equal {
            return RealRoot::Rational(m);
        }
        if s == sh {
            hi = m;
        } else {
            lo = m;
            sl = s;
        }
    }
    finish(f, lo, hi, guess)
}

/// Rational detection and float polish for an isolating interval.
fn finish(f: &Arc<ZPoly>, lo: Rational, hi: Rational, guess: Option<f64>) -> RealRoot {
    let cand = simplest_between(&lo, &hi);
    if f.sign_at(&cand) == Ordering::Equal {
        return RealRoot::Rational(cand);
    }
    let (flo, fhi) = (to_f64(&lo), to_f64(&hi));
    if let Some(g) = guess.filter(|g| flo <= *g && *g <= fhi) {
        return RealRoot::Algebraic { poly: f.clone(), lo, hi, approx: g };
    }
    let mut x = to_f64(&midpoint(&lo, &hi));
    for _ in 0..3 {
        match f.newton_ratio(x) {
            Some(step) if step.is_finite() => {
                let nx = (x - step).clamp(flo, fhi);
                if nx == x {
                    break;
                }
                x = nx;
            }
            _ => break,
        }
    }
    RealRoot::Algebraic { poly: f.clone(), lo, hi, approx: x }
}

/// Mean and variance of the roots, from the top three coefficients.
fn root_moments(f: &ZPoly) -> Option<(f64, f64)> {
    let c = f.coeffs();
    let n = f.degree();
    let lc = Rational::from_integer(c[n].clone());
    let e1 = -Rational::from_integer(c[n - 1].clone()) / &lc;
    let e2 = Rational::from_integer(c[n - 2].clone()) / &lc;
    let nn = Rational::from_integer(n.into());
    let mean = &e1 / &nn;
    let var = (&e1 * &e1 - &e2 * Rational::from_integer(2.into())) / &nn - &mean * &mean;
    if var.is_negative() {
        return None;
    }
    Some((to_f64(&mean), to_f64(&var)))
}

/// Laguerre iteration. For a real-rooted polynomial it converges from any
/// real start to one of the two roots adjacent to it (monotonically to the
/// extreme root when started outside all roots).
fn laguerre(f: &ZPoly, mut x: f64) -> Option<f64> {
    let n = f.degree() as f64;
    for _ in 0..LAGUERRE_MAX_ITER {
        let Some((g, h2)) = f.log_derivatives(x) else {
            return Some(x);
        };
        let h = g * g - h2;
        let disc = ((n - 1.0) * (n * h - g * g)).max(0.0).sqrt();
        let den = if g >= 0.0 { g + disc } else { g - disc };
        if den == 0.0 || !den.is_finite() {
            return None;
        }
        let step = n / den;
        let nx = x - step;
        if !nx.is_finite() {
            return None;
        }
        if nx == x || step.abs() <= 2.0 * f64::EPSILON * x.abs() {
            return Some(nx);
        }
        x = nx;
    }
    Some(x)
}

/// Inserts `r` into the sorted list unless it duplicates a neighbour.
fn insert_distinct(found: &mut Vec<f64>, r: f64, sep: f64) -> bool {
    let i = found.partition_point(|&v| v < r);
    let near = |j: usize| found.get(j).is_some_and(|&v| (v - r).abs() <= sep);
    if near(i) || (i > 0 && near(i - 1)) {
        return false;
    }
    found.insert(i, r);
    true
}

/// Float approximations of all roots of a square-free polynomial believed to
/// be real-rooted, or `None` if they could not all be found.
fn approximate_roots(f: &ZPoly) -> Option<Vec<f64>> {
    let n = f.degree();
    let (mean, var) = root_moments(f)?;
    // every root of a real-rooted polynomial lies within sqrt(n-1) standard
    // deviations of the mean
    let bound = ((n - 1) as f64).sqrt() * var.sqrt();
    if !bound.is_finite() || bound == 0.0 {
        return None;
    }
    let pad = bound * 1e-6 + f64::EPSILON * mean.abs();
    let hi = laguerre(f, mean + bound + pad)?;
    let lo = laguerre(f, mean - bound - pad)?;
    if !(lo < hi) {
        return None;
    }
    let sep = 64.0 * f64::EPSILON * lo.abs().max(hi.abs());
    let mut found = vec![lo, hi];
    let (c, h) = (lo / 2.0 + hi / 2.0, hi / 2.0 - lo / 2.0);
    for i in 1..n - 1 {
        let t = std::f64::consts::PI * i as f64 / (n - 1) as f64;
        if let Some(r) = laguerre(f, c - h * t.cos()) {
            if r > lo && r < hi {
                insert_distinct(&mut found, r, sep);
            }
        }
    }
    // a gap between consecutive known roots that still hides roots attracts
    // some start inside it to a new root
    let mut tries = 1usize;
    while found.len() < n && tries <= GAP_SEARCH_ROUNDS {
        let gaps: Vec<(f64, f64)> = found.windows(2).map(|w| (w[0], w[1])).collect();
        let before = found.len();
        for (a, b) in gaps {
            for k in 1..=tries {
                let x = a + (b - a) * k as f64 / (tries + 1) as f64;
                if let Some(r) = laguerre(f, x) {
                    if r > a && r < b && insert_distinct(&mut found, r, sep) {
                        break;
                    }
                }
            }
            if found.len() == n {
                break;
            }
        }
        if found.len() == before {
            tries += 1;
        }
    }
    (found.len() == n).then_some(found)
}

/// Checks exact sign alternation at separating points; returns isolating
/// open intervals with nonzero endpoint signs.
fn certify(f: &ZPoly, z: &[f64]) -> Option<Vec<(Rational, Rational, Ordering)>> {
    let n = z.len();
    let b = f.root_bound();
    let mut pts = Vec::with_capacity(n + 1);
    pts.push(-b.clone());
    for w in z.windows(2) {
        let m = w[0] / 2.0 + w[1] / 2.0;
        if !(w[0] < m && m < w[1]) {
            return None;
        }
        pts.push(from_f64(m).ok()?);
    }
    pts.push(b);
    let signs: Vec<Ordering> = pts.iter().map(|p| f.sign_at(p)).collect();
    if signs.contains(&Ordering::Equal) || signs.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(
        pts.windows(2)
            .zip(signs[1..].iter())
            .map(|(w, &s)| (w[0].clone(), w[1].clone(), s))
            .collect(),
    )
}

fn laguerre_isolate(f: &Arc<ZPoly>, tol: f64, tol_r: &Rational) -> Option<Vec<RealRoot>> {
    let z = approximate_roots(f)?;
    let intervals = certify(f, &z)?;
    let out = intervals
        .into_iter()
        .zip(z.iter())
        .map(|((lo, hi, sh), &zi)| {
            // try a tight bracket around the approximation first
            let delta = (tol / 4.0).max(4.0 * ulp(zi));
            if let (Ok(a), Ok(b)) = (from_f64(zi - delta), from_f64(zi + delta)) {
                if a > lo && b < hi {
                    let sa = f.sign_at(&a);
                    let sb = f.sign_at(&b);
                    if sa != Ordering::Equal && sb == sh && sa != sb {
                        return refine(f, a, b, tol_r, Some(zi));
                    }
                }
            }
            refine(f, lo, hi, tol_r, Some(zi))
        })
        .collect();
    Some(out)
}

fn ulp(x: f64) -> f64 {
    let a = x.abs();
    if a == 0.0 {
        return f64::MIN_POSITIVE;
    }
    f64::from_bits(a.to_bits() + 1) - a
}
