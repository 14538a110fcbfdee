//! Real numbers as produced by root isolation: exact rationals, isolated
//! algebraic numbers, or plain floats (sampled eigenvalues).

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::zpoly::ZPoly;
use crate::rational::{format_rational, midpoint, to_f64, Rational};

#[derive(Clone, Debug)]
pub enum RealRoot {
    Rational(Rational),
    /// The unique root of the square-free `poly` inside the open interval
    /// `(lo, hi)`; `poly` has opposite nonzero signs at the endpoints.
    Algebraic {
        poly: Arc<ZPoly>,
        lo: Rational,
        hi: Rational,
        approx: f64,
    },
    Approx(f64),
}

impl RealRoot {
    pub fn to_f64(&self) -> f64 {
        match self {
            RealRoot::Rational(r) => to_f64(r),
            RealRoot::Algebraic { approx, .. } => *approx,
            RealRoot::Approx(x) => *x,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            RealRoot::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, RealRoot::Approx(_))
    }

    /// Exact order for exact values; float order whenever a float is involved.
    pub fn cmp_exact(&self, other: &RealRoot) -> Ordering {
        use RealRoot::*;
        match (self, other) {
            (Rational(a), Rational(b)) => a.cmp(b),
            (Rational(r), alg @ Algebraic { .. }) => cmp_rational_algebraic(r, alg),
            (alg @ Algebraic { .. }, Rational(r)) => cmp_rational_algebraic(r, alg).reverse(),
            (a @ Algebraic { .. }, b @ Algebraic { .. }) => cmp_algebraic(a.clone(), b.clone()),
            _ => self.to_f64().total_cmp(&other.to_f64()),
        }
    }

    /// Exact comparison against a rational.
    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        self.cmp_exact(&RealRoot::Rational(r.clone()))
    }
}

impl PartialEq for RealRoot {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_exact(other) == Ordering::Equal
    }
}

impl Eq for RealRoot {}

impl PartialOrd for RealRoot {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RealRoot {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_exact(other)
    }
}

impl fmt::Display for RealRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealRoot::Rational(r) => write!(f, "{}", format_rational(r)),
            RealRoot::Algebraic { approx, .. } | RealRoot::Approx(approx) => write!(f, "{approx:e}"),
        }
    }
}

fn parts(a: &RealRoot) -> (&ZPoly, &Rational, &Rational) {
    match a {
        RealRoot::Algebraic { poly, lo, hi, .. } => (poly, lo, hi),
        _ => unreachable!("algebraic root expected"),
    }
}

fn cmp_rational_algebraic(r: &Rational, alg: &RealRoot) -> Ordering {
    let (poly, lo, hi) = parts(alg);
    if r <= lo {
        return Ordering::Less;
    }
    if r >= hi {
        return Ordering::Greater;
    }
    let s = poly.sign_at(r);
    if s == Ordering::Equal {
        Ordering::Equal
    } else if s == poly.sign_at(hi) {
        // root lies in (lo, r)
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// Halves the isolating interval of an algebraic root.
fn bisect(a: &mut RealRoot) {
    if let RealRoot::Algebraic { poly, lo, hi, .. } = a {
        let m = midpoint(lo, hi);
        let s = poly.sign_at(&m);
        if s == Ordering::Equal {
            *a = RealRoot::Rational(m);
        } else if s == poly.sign_at(hi) {
            *hi = m;
        } else {
            *lo = m;
        }
    }
}

fn cmp_algebraic(mut a: RealRoot, mut b: RealRoot) -> Ordering {
    let mut checked_common = false;
    loop {
        if !(matches!(a, RealRoot::Algebraic { .. }) && matches!(b, RealRoot::Algebraic { .. })) {
            return a.cmp_exact(&b);
        }
        let (pa, la, ha) = parts(&a);
        let (pb, lb, hb) = parts(&b);
        if ha <= lb {
            return Ordering::Less;
        }
        if hb <= la {
            return Ordering::Greater;
        }
        if !checked_common {
            checked_common = true;
            let g = if pa == pb { pa.clone() } else { pa.gcd(pb) };
            if g.degree() > 0 {
                // g is square-free with at most one root in each interval
                let in_a = g.sign_at(la) != g.sign_at(ha);
                let in_b = g.sign_at(lb) != g.sign_at(hb);
                if in_a && in_b {
                    let jl = la.max(lb);
                    let jh = ha.min(hb);
                    if g.sign_at(jl) != g.sign_at(jh) {
                        return Ordering::Equal;
                    }
                }
            }
        }
        bisect(&mut a);
        bisect(&mut b);
    }
}
