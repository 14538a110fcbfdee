//! Finite free additive and multiplicative convolutions.
//!
//! Both convolutions are computed on integer-scaled coefficient vectors so
//! that large degrees only need one rational normalization per coefficient.
//! `boxtimes_via_diffop` is an independent route through the basis
//! `r^(k) = (x D / d)^k (x - 1)^d`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polycore::dense::QPoly;
use crate::polycore::MonicPoly;
use crate::rational::{binomial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConvKind {
    Additive,
    Multiplicative,
}

impl FromStr for ConvKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "boxplus" | "additive" | "plus" => Ok(ConvKind::Additive),
            "boxtimes" | "multiplicative" | "times" => Ok(ConvKind::Multiplicative),
            other => Err(Error::Parse(format!("unknown convolution {other:?}"))),
        }
    }
}

impl fmt::Display for ConvKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConvKind::Additive => "boxplus",
            ConvKind::Multiplicative => "boxtimes",
        })
    }
}

fn check_degrees(p: &MonicPoly, q: &MonicPoly) -> Result<usize> {
    if p.degree() != q.degree() {
        return Err(Error::Dimension(p.degree(), q.degree()));
    }
    Ok(p.degree())
}

/// Integer numerators over a common denominator.
fn scaled(coeffs: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (nums, den)
}

fn factorials(n: usize) -> Vec<BigInt> {
    let mut f = vec![BigInt::one()];
    for i in 1..=n {
        let next = &f[i - 1] * BigInt::from(i);
        f.push(next);
    }
    f
}

pub fn convolve(p: &MonicPoly, q: &MonicPoly, kind: ConvKind) -> Result<MonicPoly> {
    match kind {
        ConvKind::Additive => boxplus(p, q),
        ConvKind::Multiplicative => boxtimes(p, q),
    }
}

/// `p ⊞_d q`: the coefficient of `x^(d-k)` is
/// `sum_{i+j=k} (d-i)! (d-j)! / (d! (d-k)!) a_i b_j`.
pub fn boxplus(p: &MonicPoly, q: &MonicPoly) -> Result<MonicPoly> {
    let d = check_degrees(p, q)?;
    let fact = factorials(d);
    let (a, da) = scaled(p.coeffs());
    let (b, db) = scaled(q.coeffs());
    let a: Vec<BigInt> = a.into_iter().enumerate().map(|(i, x)| x * &fact[d - i]).collect();
    let b: Vec<BigInt> = b.into_iter().enumerate().map(|(j, x)| x * &fact[d - j]).collect();
    let base = da * db * &fact[d];
    let coeffs = (0..=d)
        .map(|k| {
            let mut acc = BigInt::zero();
            for i in 0..=k {
                if !a[i].is_zero() && !b[k - i].is_zero() {
                    acc += &a[i] * &b[k - i];
                }
            }
            Rational::new(acc, &base * &fact[d - k])
        })
        .collect();
    MonicPoly::from_coeffs(coeffs)
}

/// `p ⊠_d q`: the coefficient of `x^(d-k)` is `(-1)^k a_k b_k / C(d, k)`.
pub fn boxtimes(p: &MonicPoly, q: &MonicPoly) -> Result<MonicPoly> {
    let d = check_degrees(p, q)?;
    let coeffs = (0..=d)
        .map(|k| {
            let c = &p.coeffs()[k] * &q.coeffs()[k] / Rational::from_integer(binomial(d, k));
            if k % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    MonicPoly::from_coeffs(coeffs)
}

/// Coefficients `a_0..a_d` with `p = sum a_k r^(k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RBasisCoeffs {
    pub degree: usize,
    pub coeffs: Vec<Rational>,
}

/// The basis polynomials `r^(0..=m)` written in powers of `y = x - 1`
/// (ascending), using `x D = (1 + y) D_y`.
fn r_basis_in_y(d: usize, m: usize) -> Vec<Vec<Rational>> {
    let dd = Rational::from_integer(d.into());
    let mut cur = vec![Rational::zero(); d + 1];
    cur[d] = Rational::one();
    let mut out = vec![cur.clone()];
    for _ in 0..m {
        let mut next = vec![Rational::zero(); d + 1];
        for (e, c) in cur.iter().enumerate() {
            if e == 0 || c.is_zero() {
                continue;
            }
            let t = c * Rational::from_integer(e.into()) / &dd;
            next[e - 1] += &t;
            next[e] += t;
        }
        out.push(next.clone());
        cur = next;
    }
    out
}

/// Solves `t = sum_k a_k basis[k]` where `basis[k]` has no terms below
/// `y^(d-k)`: row `j` involves only `k >= d - j`.
fn solve_triangular(d: usize, basis: &[Vec<Rational>], t: &[Rational]) -> Vec<Rational> {
    let mut a = vec![Rational::zero(); d + 1];
    for j in 0..=d {
        let k = d - j;
        let mut rhs = t.get(j).cloned().unwrap_or_else(Rational::zero);
        for (kk, ak) in a.iter().enumerate().skip(k + 1) {
            rhs -= ak * &basis[kk][j];
        }
        a[k] = rhs / &basis[k][j];
    }
    a
}

/// Taylor coefficients of `p` at `x = 1`, ascending.
fn taylor_at_one(p: &MonicPoly) -> Vec<Rational> {
    let mut t = p.to_qpoly().compose_shift(&-Rational::one()).into_coeffs();
    t.resize(p.degree() + 1, Rational::zero());
    t
}

pub fn expand_in_r_basis(p: &MonicPoly) -> RBasisCoeffs {
    let d = p.degree();
    let basis = r_basis_in_y(d, d);
    RBasisCoeffs { degree: d, coeffs: solve_triangular(d, &basis, &taylor_at_one(p)) }
}

/// `p ⊠_d q` as `[(PQ)(xD/d)] (x - 1)^d`, where `P`, `Q` hold the
/// r-basis coefficients. Products of degree above `d` are reduced with the
/// expansion of `r^(d+1)` in the basis, shifted: `r^(m) = sum c_k r^(k+m-d-1)`.
pub fn boxtimes_via_diffop(p: &MonicPoly, q: &MonicPoly) -> Result<MonicPoly> {
    let d = check_degrees(p, q)?;
    let basis = r_basis_in_y(d, d + 1);
    let a = solve_triangular(d, &basis, &taylor_at_one(p));
    let b = solve_triangular(d, &basis, &taylor_at_one(q));
    let top = solve_triangular(d, &basis, &basis[d + 1]);
    let mut c = vec![Rational::zero(); 2 * d + 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            c[i + j] += ai * bj;
        }
    }
    for m in (d + 1..=2 * d).rev() {
        let cm = std::mem::take(&mut c[m]);
        if cm.is_zero() {
            continue;
        }
        for (k, tk) in top.iter().enumerate() {
            c[k + m - d - 1] += &cm * tk;
        }
    }
    let mut y = vec![Rational::zero(); d + 1];
    for (k, ck) in c.iter().take(d + 1).enumerate() {
        for (e, v) in basis[k].iter().enumerate() {
            y[e] += ck * v;
        }
    }
    MonicPoly::from_qpoly(&QPoly::new(y).compose_shift(&Rational::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn poly(c: &[i64]) -> MonicPoly {
        MonicPoly::from_coeffs(c.iter().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn boxplus_examples() {
        assert_eq!(boxplus(&poly(&[1, -3, 2]), &poly(&[1, -2, 1])).unwrap(), poly(&[1, -5, 6]));
        assert_eq!(boxplus(&poly(&[1, 0, -1]), &poly(&[1, 0, -1])).unwrap(), poly(&[1, 0, -2]));
        assert_eq!(
            boxplus(&poly(&[1, 0, -1]), &poly(&[1, 0, 0, 0])),
            Err(Error::Dimension(2, 3))
        );
    }

    #[test]
    fn boxtimes_examples() {
        let p = poly(&[1, 7, -3]);
        assert_eq!(boxtimes(&p, &poly(&[1, -2, 1])).unwrap(), p);
        assert_eq!(boxtimes(&poly(&[1, -10, 9]), &poly(&[1, -5, 4])).unwrap(), poly(&[1, -25, 36]));
        assert_eq!(boxtimes(&poly(&[1, 0, -1]), &poly(&[1, 0, -1])).unwrap(), poly(&[1, 0, 1]));
        // x^(d-k) times the derivative map
        assert_eq!(boxtimes(&poly(&[1, 0, -1]), &poly(&[1, -1, 0])).unwrap(), poly(&[1, 0, 0]));
    }

    #[test]
    fn r_basis_examples() {
        let r = |p: MonicPoly| expand_in_r_basis(&p).coeffs;
        assert_eq!(r(poly(&[1, -2, 1])), vec![int(1), int(0), int(0)]);
        assert_eq!(r(poly(&[1, -1, 0])), vec![int(0), int(1), int(0)]);
        assert_eq!(r(poly(&[1, 0, 0])), vec![int(0), int(-1), int(2)]);
    }

    #[test]
    fn diffop_examples() {
        let p = poly(&[1, 0, -1]);
        assert_eq!(boxtimes_via_diffop(&p, &p).unwrap(), poly(&[1, 0, 1]));
        let p = poly(&[1, 4, -2, 7]);
        assert_eq!(boxtimes_via_diffop(&p, &poly(&[1, -3, 3, -1])).unwrap(), p);
        let (a, b) = (poly(&[1, 0, 0]), poly(&[1, -1, 0]));
        assert_eq!(boxtimes_via_diffop(&a, &b).unwrap(), boxtimes(&a, &b).unwrap());
    }
}
