//! Dense integer polynomials used for exact sign evaluation, remainder
//! sequences and gcds. Coefficients are stored in ascending order.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    /// Primitive integer polynomial with positive leading coefficient that is a
    /// positive rational multiple of `coeffs` (ascending order).
    pub fn from_rationals(coeffs: &[Rational]) -> Self {
        let lcm = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        ZPoly::new(ints).primitive()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> &BigInt {
        self.coeffs.last().expect("zero polynomial has no leading coefficient")
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(self) -> Self {
        if self.is_zero() {
            return self;
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        if g.is_one() {
            return self;
        }
        ZPoly::new(self.coeffs.into_iter().map(|c| c / &g).collect())
    }

    pub fn derivative(&self) -> Self {
        ZPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.coeffs
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect()
    }

    /// Sign of the value at `x`.
    pub fn sign_at(&self, x: &Rational) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        sign_of(&self.eval_homogeneous(x.numer(), x.denom()))
    }

    /// `sum c_i a^i b^(n-i)`, which has the sign of `p(a/b)` for `b > 0`.
    pub fn eval_homogeneous(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let n = self.degree();
        let mut acc = self.coeffs[n].clone();
        if b.is_one() {
            for c in self.coeffs[..n].iter().rev() {
                acc = acc * a + c;
            }
            return acc;
        }
        if let Some(shift) = power_of_two(b) {
            for (k, c) in self.coeffs[..n].iter().rev().enumerate() {
                acc = acc * a + (c << (shift * (k as u64 + 1)));
            }
            return acc;
        }
        let mut bp = BigInt::one();
        for c in self.coeffs[..n].iter().rev() {
            bp *= b;
            acc = acc * a + c * &bp;
        }
        acc
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let n = self.degree() as u32;
        let num = self.eval_homogeneous(x.numer(), x.denom());
        BigRational::new(num, num_traits::pow(x.denom().clone(), n as usize))
    }

    /// Newton step `p(x)/p'(x)` at a float point, computed exactly and rounded
    /// once. `None` when `p'(x) = 0` or `x` is not finite.
    pub fn newton_ratio(&self, x: f64) -> Option<f64> {
        if !x.is_finite() || self.degree() == 0 {
            return None;
        }
        let xr = Rational::from_float(x)?;
        let (a, b) = (xr.numer(), xr.denom());
        let n = self.degree();
        let mut p = self.coeffs[n].clone();
        let mut dp = BigInt::zero();
        let shift = power_of_two(b).expect("float denominators are powers of two");
        for (k, c) in self.coeffs[..n].iter().rev().enumerate() {
            dp = dp * a + &p;
            p = p * a + (c << (shift * (k as u64 + 1)));
        }
        if dp.is_zero() {
            return None;
        }
        Some(quotient_f64(&p, &(dp * b)))
    }

    /// `(p'/p, p''/p)` at a float point, computed exactly and rounded once
    /// each. `None` when `p(x) = 0` or `x` is not finite.
    pub fn log_derivatives(&self, x: f64) -> Option<(f64, f64)> {
        if !x.is_finite() || self.degree() < 2 {
            return None;
        }
        let xr = Rational::from_float(x)?;
        let (a, b) = (xr.numer(), xr.denom());
        let n = self.degree();
        let mut p = self.coeffs[n].clone();
        let mut dp = BigInt::zero();
        let mut half_ddp = BigInt::zero();
        let shift = power_of_two(b).expect("float denominators are powers of two");
        for (k, c) in self.coeffs[..n].iter().rev().enumerate() {
            half_ddp = half_ddp * a + &dp;
            dp = dp * a + &p;
            p = p * a + (c << (shift * (k as u64 + 1)));
        }
        if p.is_zero() {
            return None;
        }
        let g = quotient_f64(&(dp * b), &p);
        let h = 2.0 * quotient_f64(&(half_ddp * b * b), &p);
        Some((g, h))
    }

    /// Pseudo-remainder of `self` by `divisor` together with the sign of the
    /// factor `lc(divisor)^k` that was applied.
    pub fn pseudo_rem(&self, divisor: &ZPoly) -> (ZPoly, Ordering) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree();
        let lcd = divisor.lc();
        let mut r = self.coeffs.clone();
        let mut steps = 0u32;
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let lr = r[top].clone();
            let off = top - dd;
            for c in r.iter_mut() {
                *c *= lcd;
            }
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                r[off + i] -= &lr * dc;
            }
            steps += 1;
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        let sign = if lcd.is_negative() && steps % 2 == 1 {
            Ordering::Less
        } else {
            Ordering::Greater
        };
        (ZPoly::new(r), sign)
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &ZPoly) -> ZPoly {
        let (mut a, mut b) = (self.clone().primitive(), other.clone().primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (r, _) = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive()
    }

    /// Exact quotient `self / divisor` over the rationals, as a primitive
    /// integer polynomial. Panics if the division is not exact.
    pub fn div_exact(&self, divisor: &ZPoly) -> ZPoly {
        let (q, r) = crate::polycore::dense::QPoly::from_zpoly(self)
            .div_rem(&crate::polycore::dense::QPoly::from_zpoly(divisor));
        assert!(r.is_zero(), "inexact polynomial division");
        ZPoly::from_rationals(q.coeffs())
    }

    /// Certifies square-freeness by a gcd computation modulo a large prime.
    ///
    /// `Some(true)` is a proof (a repeated factor over Q survives reduction
    /// modulo any prime not dividing the leading coefficient); `None` means
    /// the test was inconclusive.
    pub fn squarefree_mod_p(&self) -> Option<bool> {
        const PRIMES: [u64; 4] = [2_305_843_009_213_693_951, 2_147_483_647, 1_000_000_007, 998_244_353];
        if self.degree() <= 1 {
            return Some(true);
        }
        for &p in PRIMES.iter() {
            let f = self.reduce_mod(p);
            if f.last().copied().unwrap_or(0) == 0 || (self.degree() as u64) >= p {
                continue;
            }
            let df: Vec<u64> = f
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
                .collect();
            if gcd_mod(f, df, p).len() <= 1 {
                return Some(true);
            }
        }
        None
    }

    fn reduce_mod(&self, p: u64) -> Vec<u64> {
        let pb = BigInt::from(p);
        self.coeffs
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("reduced coefficient fits"))
            .collect()
    }

    /// Cauchy bound: every root satisfies `|x| < bound`.
    pub fn root_bound(&self) -> Rational {
        let lc = Rational::from_integer(self.lc().abs());
        let max = self.coeffs[..self.degree()]
            .iter()
            .map(|c| Rational::from_integer(c.abs()))
            .max()
            .unwrap_or_else(Rational::zero);
        Rational::one() + max / lc
    }

    /// `p(-x)`, made primitive with positive leading coefficient.
    pub fn reflect(&self) -> ZPoly {
        ZPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
        .primitive()
    }

    /// `p(x - c)`, primitive.
    pub fn shift(&self, c: &Rational) -> ZPoly {
        let q = crate::polycore::dense::QPoly::from_zpoly(self).compose_shift(c);
        ZPoly::from_rationals(q.coeffs())
    }

    /// `p(x / c)` up to a positive factor, primitive.
    pub fn dilate(&self, c: &Rational) -> ZPoly {
        let inv = c.recip();
        let mut pw = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for coef in &self.coeffs {
            out.push(Rational::from_integer(coef.clone()) * &pw);
            pw *= &inv;
        }
        ZPoly::from_rationals(&out)
    }
}

/// `a / b` rounded to a float from the leading bits of both operands,
/// avoiding a gcd. Relative error is a few ulps.
fn quotient_f64(a: &BigInt, b: &BigInt) -> f64 {
    fn top(x: &BigInt) -> (f64, i64) {
        let bits = x.bits() as i64;
        let shift = (bits - 64).max(0);
        let m = (x >> shift as u64).to_f64().unwrap_or(0.0);
        (m, shift)
    }
    let (ma, ea) = top(a);
    let (mb, eb) = top(b);
    let e = ea - eb;
    let q = ma / mb;
    if e > 2000 {
        return q * f64::INFINITY;
    }
    if e < -2000 {
        return 0.0 * q;
    }
    q * 2f64.powi(e as i32)
}

fn sign_of(x: &BigInt) -> Ordering {
    match x.sign() {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    }
}

fn power_of_two(b: &BigInt) -> Option<u64> {
    if !b.is_positive() {
        return None;
    }
    let tz = b.trailing_zeros()?;
    if b.bits() == tz + 1 {
        Some(tz)
    } else {
        None
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn trim_mod(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim_mod(&mut a);
    trim_mod(&mut b);
    while !b.is_empty() {
        let inv = pow_mod(*b.last().unwrap(), p - 2, p);
        while a.len() >= b.len() {
            let f = mul_mod(*a.last().unwrap(), inv, p);
            let off = a.len() - b.len();
            for (i, &bc) in b.iter().enumerate() {
                a[off + i] = (a[off + i] + p - mul_mod(f, bc, p)) % p;
            }
            trim_mod(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}
