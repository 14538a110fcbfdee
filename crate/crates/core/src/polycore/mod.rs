//! Monic polynomials with exact rational coefficients.

pub mod dense;
pub mod isolate;
pub mod real;
pub mod sturm;
pub mod zpoly;

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{binomial, from_f64, Rational};
use dense::QPoly;
use sturm::SturmSequence;
use zpoly::ZPoly;

pub use real::RealRoot;

/// Monic polynomial of degree `d >= 1`, coefficients in descending powers.
///
/// When the polynomial was built from explicit rational roots those roots are
/// kept alongside, sorted, so that root extraction is free.
#[derive(Clone, Debug)]
pub struct MonicPoly {
    coeffs: Vec<Rational>,
    roots: Option<Arc<Vec<Rational>>>,
}

impl PartialEq for MonicPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for MonicPoly {}

/// Closed interval endpoints for root counting; counts use `(lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo >= hi {
            return Err(Error::Domain("interval needs lo < hi".into()));
        }
        Ok(Interval { lo, hi })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transform {
    /// `p(x - c)`: every root moves by `c`.
    Shift(Rational),
    /// `c^d p(x / c)`: every root is multiplied by `c`; `c = 0` gives `x^d`.
    Dilate(Rational),
    /// `(-1)^d p(-x)`.
    Reflect,
    /// `x^d p(1/x)` made monic; requires `p(0) != 0`.
    Reverse,
}

impl MonicPoly {
    /// From descending coefficients; the leading coefficient must be 1.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::Degree("a monic polynomial needs degree at least 1".into()));
        }
        if !coeffs[0].is_one() {
            return Err(Error::Domain("leading coefficient must be 1".into()));
        }
        Ok(MonicPoly { coeffs, roots: None })
    }

    /// From ascending coefficients of any nonzero polynomial of degree >= 1,
    /// divided by its leading coefficient.
    pub(crate) fn from_qpoly(p: &QPoly) -> Result<Self> {
        if p.degree() == 0 {
            return Err(Error::Degree("constant polynomial".into()));
        }
        let mut c = p.monic().into_coeffs();
        c.reverse();
        Ok(MonicPoly { coeffs: c, roots: None })
    }

    /// `prod (x - r)` expanded exactly.
    pub fn from_roots(roots: &[Rational]) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::Degree("empty root list".into()));
        }
        let mut c = vec![Rational::one()];
        for r in roots {
            c.push(Rational::zero());
            for i in (1..c.len()).rev() {
                let t = &c[i - 1] * r;
                c[i] -= t;
            }
        }
        let mut sorted = roots.to_vec();
        sorted.sort();
        Ok(MonicPoly { coeffs: c, roots: Some(Arc::new(sorted)) })
    }

    /// Float roots are converted exactly to rationals first.
    pub fn from_f64_roots(roots: &[f64]) -> Result<Self> {
        let r = roots.iter().map(|&x| from_f64(x)).collect::<Result<Vec<_>>>()?;
        Self::from_roots(&r)
    }

    /// Builds from normalized coefficients `e_0 = 1, e_1, ..., e_d`.
    pub fn from_e_tilde(e: &[Rational]) -> Result<Self> {
        if e.len() < 2 {
            return Err(Error::Degree("a monic polynomial needs degree at least 1".into()));
        }
        let d = e.len() - 1;
        let coeffs = e
            .iter()
            .enumerate()
            .map(|(k, ek)| {
                let c = ek * Rational::from_integer(binomial(d, k));
                if k % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Descending coefficients, starting with 1.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Sorted rational roots, when known from construction.
    pub fn known_roots(&self) -> Option<&[Rational]> {
        self.roots.as_deref().map(|v| v.as_slice())
    }

    pub(crate) fn with_known_roots(mut self, mut roots: Vec<Rational>) -> Self {
        debug_assert_eq!(roots.len(), self.degree());
        roots.sort();
        self.roots = Some(Arc::new(roots));
        self
    }

    pub fn to_qpoly(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    pub fn to_zpoly(&self) -> ZPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        ZPoly::from_rationals(&c)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in &self.coeffs {
            acc = acc * x + c;
        }
        acc
    }

    /// Normalized elementary symmetric function `e~_k = (-1)^k a_k / C(d, k)`,
    /// where `a_k` is the coefficient of `x^(d-k)`.
    pub fn e_tilde(&self, k: usize) -> Result<Rational> {
        let d = self.degree();
        if k > d {
            return Err(Error::Index { index: k, max: d });
        }
        Ok(self.e_tilde_unchecked(k))
    }

    pub(crate) fn e_tilde_unchecked(&self, k: usize) -> Rational {
        let c = &self.coeffs[k] / Rational::from_integer(binomial(self.degree(), k));
        if k % 2 == 1 {
            -c
        } else {
            c
        }
    }

    pub fn e_tilde_all(&self) -> Vec<Rational> {
        (0..=self.degree()).map(|k| self.e_tilde_unchecked(k)).collect()
    }

    pub fn transform(&self, kind: &Transform) -> Result<MonicPoly> {
        let d = self.degree();
        let map_roots = |f: &dyn Fn(&Rational) -> Rational| {
            self.roots.as_ref().map(|r| r.iter().map(f).collect::<Vec<_>>())
        };
        let out = match kind {
            Transform::Shift(c) => {
                let q = self.to_qpoly().compose_shift(c);
                let p = MonicPoly::from_qpoly(&q)?;
                (p, map_roots(&|r| r + c))
            }
            Transform::Dilate(c) => {
                // coefficient of x^(d-k) scales by c^k
                let mut pw = Rational::one();
                let mut coeffs = Vec::with_capacity(d + 1);
                for a in &self.coeffs {
                    coeffs.push(a * &pw);
                    pw *= c;
                }
                (MonicPoly { coeffs, roots: None }, map_roots(&|r| r * c))
            }
            Transform::Reflect => {
                let coeffs = self
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, a)| if k % 2 == 1 { -a } else { a.clone() })
                    .collect();
                (MonicPoly { coeffs, roots: None }, map_roots(&|r| -r))
            }
            Transform::Reverse => {
                let p0 = &self.coeffs[d];
                if p0.is_zero() {
                    return Err(Error::Domain("reverse needs a nonzero constant term".into()));
                }
                let coeffs = self.coeffs.iter().rev().map(|a| a / p0).collect();
                (MonicPoly { coeffs, roots: None }, map_roots(&|r| r.recip()))
            }
        };
        let (p, roots) = out;
        Ok(match roots {
            Some(r) => p.with_known_roots(r),
            None => p,
        })
    }

    /// Monic degree-`j` polynomial proportional to the `(d - j)`-th derivative.
    pub fn derivative_map(&self, j: usize) -> Result<MonicPoly> {
        let d = self.degree();
        if j == 0 || j > d {
            return Err(Error::Index { index: j, max: d });
        }
        // a_k x^(d-k) differentiates to a_k (d-k)!/(j-k)! x^(j-k); divide by d!/j!
        let coeffs = (0..=j)
            .map(|k| {
                let num = falling(d - k, d - j);
                let den = falling(d, d - j);
                &self.coeffs[k] * Rational::new(num, den)
            })
            .collect();
        Ok(MonicPoly { coeffs, roots: None })
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn sturm_count(&self, iv: &Interval) -> usize {
        SturmSequence::new(&self.to_zpoly()).count(&iv.lo, &iv.hi)
    }

    /// Square-free factors with multiplicities, each as a primitive integer
    /// polynomial.
    pub fn squarefree_factors(&self) -> Vec<(ZPoly, usize)> {
        if let Some(r) = self.known_roots() {
            let mut out: Vec<(ZPoly, usize)> = Vec::new();
            let mut i = 0;
            while i < r.len() {
                let mut j = i;
                while j < r.len() && r[j] == r[i] {
                    j += 1;
                }
                let lin = ZPoly::from_rationals(&[-r[i].clone(), Rational::one()]);
                out.push((lin, j - i));
                i = j;
            }
            return out;
        }
        self.to_qpoly()
            .squarefree_decomposition()
            .into_iter()
            .map(|(f, m)| (ZPoly::from_rationals(f.coeffs()), m))
            .collect()
    }

    /// Real roots counted with multiplicity.
    pub fn real_root_count(&self) -> usize {
        if self.roots.is_some() {
            return self.degree();
        }
        self.squarefree_factors()
            .iter()
            .map(|(f, m)| m * isolate::count_real_roots(f))
            .sum()
    }

    pub fn is_real_rooted(&self) -> bool {
        self.real_root_count() == self.degree()
    }

    /// Largest integer polynomial coefficient size in bits, for diagnostics.
    pub fn height_bits(&self) -> u64 {
        self.to_zpoly().coeffs().iter().map(|c| c.abs().bits()).max().unwrap_or(0)
    }
}

/// `n (n-1) ... (n-k+1)`.
fn falling(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn poly(c: &[i64]) -> MonicPoly {
        MonicPoly::from_coeffs(c.iter().map(|&x| int(x)).collect()).unwrap()
    }

    fn ints(r: &[i64]) -> Vec<Rational> {
        r.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn from_roots_examples() {
        assert_eq!(MonicPoly::from_roots(&ints(&[1, 2])).unwrap(), poly(&[1, -3, 2]));
        assert_eq!(MonicPoly::from_roots(&ints(&[0, 0, 0])).unwrap(), poly(&[1, 0, 0, 0]));
        assert_eq!(MonicPoly::from_roots(&ints(&[1, 1, 5])).unwrap(), poly(&[1, -7, 11, -5]));
        assert!(matches!(MonicPoly::from_roots(&[]), Err(Error::Degree(_))));
    }

    #[test]
    fn e_tilde_examples() {
        let p = poly(&[1, -10, 9]);
        assert_eq!(p.e_tilde(1).unwrap(), int(5));
        assert_eq!(p.e_tilde(2).unwrap(), int(9));
        assert_eq!(p.e_tilde(0).unwrap(), int(1));
        assert_eq!(p.e_tilde(3), Err(Error::Index { index: 3, max: 2 }));
        assert_eq!(MonicPoly::from_e_tilde(&p.e_tilde_all()).unwrap(), p);
    }

    #[test]
    fn transform_examples() {
        let p = poly(&[1, 0, -1]);
        assert_eq!(p.transform(&Transform::Shift(int(1))).unwrap(), poly(&[1, -2, 0]));
        let p = poly(&[1, -3, 2]);
        assert_eq!(p.transform(&Transform::Reflect).unwrap(), poly(&[1, 3, 2]));
        let rev = p.transform(&Transform::Reverse).unwrap();
        assert_eq!(rev.coeffs(), &[int(1), ratio(-3, 2), ratio(1, 2)]);
        assert_eq!(p.transform(&Transform::Dilate(int(0))).unwrap(), poly(&[1, 0, 0]));
        assert!(poly(&[1, 1, 0]).transform(&Transform::Reverse).is_err());
        // odd degree: roots {1, 2, 3} reverse to {1, 1/2, 1/3}
        let q = MonicPoly::from_roots(&ints(&[1, 2, 3])).unwrap();
        let expect = MonicPoly::from_roots(&[int(1), ratio(1, 2), ratio(1, 3)]).unwrap();
        assert_eq!(q.transform(&Transform::Reverse).unwrap(), expect);
        let q = poly(&[1, -7, 11, -5]);
        assert_eq!(q.transform(&Transform::Reverse).unwrap(), expect_rev(&[1, 1, 5]));
    }

    fn expect_rev(r: &[i64]) -> MonicPoly {
        MonicPoly::from_roots(&r.iter().map(|&x| ratio(1, x)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn derivative_map_examples() {
        assert_eq!(poly(&[1, 0, 0, 0]).derivative_map(2).unwrap(), poly(&[1, 0, 0]));
        assert_eq!(poly(&[1, 0, -1]).derivative_map(1).unwrap(), poly(&[1, 0]));
        let p = poly(&[1, -7, 11, -5]);
        assert_eq!(p.derivative_map(3).unwrap(), p);
        // D(x^3 - 7x^2 + 11x - 5) / 3 = x^2 - 14/3 x + 11/3
        assert_eq!(
            p.derivative_map(2).unwrap().coeffs(),
            &[int(1), ratio(-14, 3), ratio(11, 3)]
        );
        assert!(p.derivative_map(0).is_err());
        assert!(p.derivative_map(4).is_err());
    }

    #[test]
    fn sturm_count_examples() {
        let iv = Interval::new(int(0), int(2)).unwrap();
        assert_eq!(poly(&[1, 0, -2]).sturm_count(&iv), 1);
        assert_eq!(poly(&[1, -2, 1]).sturm_count(&iv), 1);
        let wide = Interval::new(int(-10), int(10)).unwrap();
        assert_eq!(poly(&[1, 0, 1]).sturm_count(&wide), 0);
    }

    #[test]
    fn real_rootedness() {
        assert!(poly(&[1, 0, -2]).is_real_rooted());
        assert!(!poly(&[1, 0, 1]).is_real_rooted());
        assert!(poly(&[1, -3, 3, -1]).is_real_rooted());
        // (x^2 + 1)(x - 1)^2
        assert!(!poly(&[1, -2, 2, -2, 1]).is_real_rooted());
        assert_eq!(poly(&[1, -2, 2, -2, 1]).real_root_count(), 2);
    }
}
