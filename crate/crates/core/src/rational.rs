//! Exact rational helpers: parsing, formatting, binomials, float conversion.
//!
//! Rationals are `num_rational::BigRational`, which is always kept in lowest
//! terms with a positive denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"a/b"`, an integer, or a finite decimal such as `"-1.25e-3"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = d
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Ok(n) = s.parse::<BigInt>() {
        return Ok(Rational::from_integer(n));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{whole}{frac}0").parse().map_err(|_| bad())?;
    let scale = exp - frac.len() as i64 - 1;
    if scale.unsigned_abs() > 100_000 {
        return Err(bad());
    }
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        Rational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

/// `"n"` for integers, `"n/d"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Exact value of a finite float.
pub fn from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::Domain(format!("non-finite value {x}")))
}

/// Nearest float (correctly rounded for `BigRational`).
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub fn floor(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}

/// The rational with the smallest denominator in the closed interval `[lo, hi]`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    if !lo.is_positive() {
        return Rational::zero();
    }
    let fl = Rational::from_integer(floor(lo));
    if &fl == lo {
        return fl;
    }
    let next = &fl + Rational::one();
    if &next <= hi {
        return next;
    }
    // both strictly inside (fl, fl + 1)
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

/// Midpoint of two rationals.
pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}
