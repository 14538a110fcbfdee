//! Cut polynomials, the root-wise partial order, interlacing, and the
//! interlacing chain that moves one polynomial above another.

use std::cmp::Ordering;

use num_traits::One;

use super::{roots_with_multiplicity, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::polycore::dense::QPoly;
use crate::polycore::isolate::isolate_real_roots;
use crate::polycore::{MonicPoly, RealRoot};
use crate::rational::{floor, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CutMode {
    /// Roots above `a` move down to `a`.
    Up(Rational),
    /// Roots below `a` move up to `a`.
    Down(Rational),
    /// Roots clamped into `[-a, a]`, `a > 0`.
    Both(Rational),
}

fn linear_power(c: &Rational, k: usize) -> QPoly {
    let lin = QPoly::new(vec![-c.clone(), Rational::one()]);
    (0..k).fold(QPoly::one(), |acc, _| acc.mul(&lin))
}

fn clamp(p: &MonicPoly, lo: Option<&Rational>, hi: Option<&Rational>) -> Result<MonicPoly> {
    let clamp_one = |x: &Rational| -> Rational {
        let mut y = x.clone();
        if let Some(l) = lo {
            y = y.max(l.clone());
        }
        if let Some(h) = hi {
            y = y.min(h.clone());
        }
        y
    };
    if let Some(r) = p.known_roots() {
        let roots: Vec<Rational> = r.iter().map(clamp_one).collect();
        return MonicPoly::from_roots(&roots);
    }
    let mut out = QPoly::one();
    let mut rational_roots = Vec::new();
    for (f, m) in p.squarefree_factors() {
        let roots = isolate_real_roots(&f, DEFAULT_TOL).ok_or(Error::NotRealRooted {
            degree: p.degree(),
            real: p.real_root_count(),
        })?;
        let side = |x: &RealRoot| -> Ordering {
            if lo.is_some_and(|l| x.cmp_rational(l) == Ordering::Less) {
                Ordering::Less
            } else if hi.is_some_and(|h| x.cmp_rational(h) == Ordering::Greater) {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        };
        // split off rational roots; the rest must lie on one side
        let mut g = QPoly::from_zpoly(&f).monic();
        let mut sides = Vec::new();
        for r in &roots {
            match r.as_rational() {
                Some(x) => {
                    rational_roots.extend(std::iter::repeat_n(clamp_one(x), m));
                    g = g.div_rem(&linear_power(x, 1)).0;
                }
                None => sides.push(side(r)),
            }
        }
        if sides.is_empty() {
            continue;
        }
        if sides.iter().all(|&s| s == Ordering::Equal) {
            out = (0..m).fold(out, |acc, _| acc.mul(&g));
        } else if sides.iter().all(|&s| s == Ordering::Less) {
            out = out.mul(&linear_power(lo.unwrap(), g.degree() * m));
        } else if sides.iter().all(|&s| s == Ordering::Greater) {
            out = out.mul(&linear_power(hi.unwrap(), g.degree() * m));
        } else {
            return Err(Error::Unsupported(
                "cut point separates the roots of an irreducible irrational factor".into(),
            ));
        }
    }
    let lin = MonicPoly::from_roots(&rational_roots).ok();
    match lin {
        Some(l) if out.degree() == 0 => Ok(l),
        Some(l) => MonicPoly::from_qpoly(&out.mul(&l.to_qpoly())),
        None => MonicPoly::from_qpoly(&out),
    }
}

/// Cut-up, cut-down, or two-sided cut of a real-rooted polynomial.
pub fn cut(p: &MonicPoly, mode: &CutMode) -> Result<MonicPoly> {
    match mode {
        CutMode::Up(a) => clamp(p, None, Some(a)),
        CutMode::Down(a) => clamp(p, Some(a), None),
        CutMode::Both(a) => {
            if *a <= Rational::from_integer(0.into()) {
                return Err(Error::Domain("two-sided cut needs a > 0".into()));
            }
            clamp(p, Some(&-a), Some(a))
        }
    }
}

fn sorted_roots(p: &MonicPoly) -> Result<Vec<RealRoot>> {
    Ok(roots_with_multiplicity(p, DEFAULT_TOL)?.sorted_roots())
}

fn le(a: &RealRoot, b: &RealRoot) -> bool {
    a.cmp_exact(b) != Ordering::Greater
}

/// `p <= q`: the sorted roots satisfy `λ_i(p) <= λ_i(q)` for every `i`.
pub fn partial_order_le(p: &MonicPoly, q: &MonicPoly) -> Result<bool> {
    if p.degree() != q.degree() {
        return Err(Error::Dimension(p.degree(), q.degree()));
    }
    let (a, b) = (sorted_roots(p)?, sorted_roots(q)?);
    Ok(a.iter().zip(&b).all(|(x, y)| le(x, y)))
}

/// `p` interlaces `q`, for equal degrees or `deg p = deg q - 1`.
pub fn interlaces(p: &MonicPoly, q: &MonicPoly) -> Result<bool> {
    let (dp, dq) = (p.degree(), q.degree());
    let (a, b) = if dp == dq || dp + 1 == dq {
        (sorted_roots(p)?, sorted_roots(q)?)
    } else {
        return Err(Error::Dimension(dp, dq));
    };
    // merge into one chain that must be non-decreasing
    let chain: Vec<&RealRoot> = if dp == dq {
        a.iter().zip(&b).flat_map(|(x, y)| [x, y]).collect()
    } else {
        let mut c: Vec<&RealRoot> = Vec::with_capacity(dp + dq);
        for i in 0..dp {
            c.push(&b[i]);
            c.push(&a[i]);
        }
        c.push(&b[dp]);
        c
    };
    Ok(chain.windows(2).all(|w| le(w[0], w[1])))
}

/// A rational strictly above `x`: `x + 1` for rationals, otherwise one above
/// the upper end of the isolating interval.
fn above(x: &RealRoot) -> Rational {
    match x {
        RealRoot::Rational(r) => r + Rational::one(),
        RealRoot::Algebraic { hi, .. } => hi + Rational::one(),
        RealRoot::Approx(v) => Rational::from_integer(floor(
            &crate::rational::from_f64(*v).unwrap_or_else(|_| Rational::one()),
        )) + Rational::from_integer(2.into()),
    }
}

/// Chain `q = q^(0), ..., q^(l)` in which each step replaces the smallest
/// remaining original root of `q` by `a = max(λ_max(p), λ_max(q)) + 1`, so
/// that consecutive members interlace and `p <= q^(l)`.
///
/// Requires `λ_i(p) <= λ_{l+i}(q)` for `i = 1..=d-l`, and rational roots of `q`.
pub fn interlacing_chain(p: &MonicPoly, q: &MonicPoly, l: usize) -> Result<Vec<MonicPoly>> {
    let d = p.degree();
    if d != q.degree() {
        return Err(Error::Dimension(d, q.degree()));
    }
    if l > d {
        return Err(Error::Index { index: l, max: d });
    }
    let (a, b) = (sorted_roots(p)?, sorted_roots(q)?);
    for i in 0..d - l {
        if !le(&a[i], &b[l + i]) {
            return Err(Error::Precondition(format!(
                "root {} of p exceeds root {} of q",
                i + 1,
                l + i + 1
            )));
        }
    }
    let qr: Vec<Rational> = b
        .iter()
        .map(|r| r.as_rational().cloned())
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Unsupported("interlacing chain needs rational roots of q".into()))?;
    let top = if a[d - 1].cmp_exact(&b[d - 1]) == Ordering::Greater { &a[d - 1] } else { &b[d - 1] };
    let cap = above(top);
    let mut chain = Vec::with_capacity(l + 1);
    for k in 0..=l {
        let mut roots = qr[k..].to_vec();
        roots.extend(std::iter::repeat_n(cap.clone(), k));
        chain.push(MonicPoly::from_roots(&roots)?);
    }
    Ok(chain)
}
