//! Dense polynomials over the rationals, ascending coefficient order.

use num_traits::{One, Zero};

use super::zpoly::ZPoly;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn one() -> Self {
        QPoly::new(vec![Rational::one()])
    }

    pub fn from_zpoly(p: &ZPoly) -> Self {
        QPoly::new(p.to_rationals())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> &Rational {
        self.coeffs.last().expect("zero polynomial")
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.lc().clone();
        QPoly::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn mul(&self, other: &QPoly) -> Self {
        if self.is_zero() || other.is_zero() {
            return QPoly::new(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn sub(&self, other: &QPoly) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        QPoly::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).unwrap_or(&zero) - other.coeffs.get(i).unwrap_or(&zero)
                })
                .collect(),
        )
    }

    pub fn div_rem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.coeffs.len() < divisor.coeffs.len() {
            return (QPoly::new(Vec::new()), self.clone());
        }
        let dd = divisor.degree();
        let inv = divisor.lc().recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let f = &r[k + dd] * &inv;
            if !f.is_zero() {
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    r[k + i] -= &f * c;
                }
            }
            q[k] = f;
        }
        r.truncate(dd);
        (QPoly::new(q), QPoly::new(r))
    }

    fn div_exact(&self, divisor: &QPoly) -> QPoly {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let g = ZPoly::from_rationals(&self.coeffs).gcd(&ZPoly::from_rationals(&other.coeffs));
        QPoly::from_zpoly(&g).monic()
    }

    /// `p(x - c)` by repeated synthetic division.
    pub fn compose_shift(&self, c: &Rational) -> QPoly {
        let mut a = self.coeffs.clone();
        let n = a.len();
        if c.is_zero() || n <= 1 {
            return self.clone();
        }
        let mc = -c;
        // Taylor shift: after pass i, a[i] holds the i-th coefficient in powers of x.
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &a[j + 1] * &mc;
                a[j] += t;
            }
        }
        QPoly::new(a)
    }

    /// Square-free decomposition: monic pairwise coprime factors `f_i` with
    /// `p = lc * prod f_i^i`. Returned as `(f_i, i)` for non-constant factors.
    pub fn squarefree_decomposition(&self) -> Vec<(QPoly, usize)> {
        if self.degree() == 0 {
            return Vec::new();
        }
        let f = self.monic();
        if ZPoly::from_rationals(&f.coeffs).squarefree_mod_p() == Some(true) {
            return vec![(f, 1)];
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0);
        let mut c = df.div_exact(&a0);
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut i = 1;
        while b.degree() > 0 {
            let a = b.gcd(&d);
            let nb = b.div_exact(&a);
            c = d.div_exact(&a);
            if a.degree() > 0 {
                out.push((a, i));
            }
            b = nb;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }
}
