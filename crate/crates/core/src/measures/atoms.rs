//! Roots of a convolution forced by heavy roots of the inputs.

use num_traits::Zero;

use super::{roots_with_multiplicity, EmpiricalMeasure, DEFAULT_TOL};
use crate::convolve::ConvKind;
use crate::error::{Error, Result};
use crate::polycore::{MonicPoly, RealRoot};
use crate::rational::Rational;

/// A root `gamma` of `p ⊞ q` (`alpha + beta`) or `p ⊠ q` (`alpha * beta`)
/// whose multiplicity is fixed by the multiplicities of `alpha` in `p` and
/// `beta` in `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomTriplet {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub multiplicity: usize,
    /// `multiplicity / d`.
    pub mass: Rational,
    /// Predicted CDF of the convolution at `gamma`. Always present for
    /// `⊞`; for `⊠` only when both inputs have nonnegative roots.
    pub cdf_at_gamma: Option<Rational>,
}

fn rational_atoms(m: &EmpiricalMeasure, other_max: usize, d: usize) -> Result<Vec<(Rational, usize)>> {
    let mut out = Vec::new();
    for (r, k) in m.entries() {
        match r {
            RealRoot::Rational(x) => out.push((x.clone(), *k)),
            _ if k + other_max > d => {
                return Err(Error::Unsupported(
                    "atom prediction needs rational roots where multiplicities are large".into(),
                ))
            }
            _ => {}
        }
    }
    Ok(out)
}

/// All atom triplets of `(p, q, p ⊞ q)` or `(p, q, p ⊠ q)`. For `⊠` the root
/// at the origin is reported once, with `alpha = beta = 0` and multiplicity
/// `max(m_p(0), m_q(0))`.
pub fn atom_triplets(p: &MonicPoly, q: &MonicPoly, kind: ConvKind) -> Result<Vec<AtomTriplet>> {
    let d = p.degree();
    if d != q.degree() {
        return Err(Error::Dimension(d, q.degree()));
    }
    let (mp, mq) = (roots_with_multiplicity(p, DEFAULT_TOL)?, roots_with_multiplicity(q, DEFAULT_TOL)?);
    let max_p = mp.entries().iter().map(|e| e.1).max().unwrap_or(0);
    let max_q = mq.entries().iter().map(|e| e.1).max().unwrap_or(0);
    let ap = rational_atoms(&mp, max_q, d)?;
    let aq = rational_atoms(&mq, max_p, d)?;
    let (fp, fq) = (mp.cdf(), mq.cdf());
    let dr = Rational::from_integer(d.into());
    let one = Rational::from_integer(1.into());
    let nonneg = mp.is_nonnegative() && mq.is_nonnegative();

    let mut out = Vec::new();
    if kind == ConvKind::Multiplicative {
        let zero_mult = |a: &[(Rational, usize)]| {
            a.iter().find(|(x, _)| x.is_zero()).map_or(0, |e| e.1)
        };
        let m0 = zero_mult(&ap).max(zero_mult(&aq));
        if m0 > 0 {
            let mass = Rational::from_integer(m0.into()) / &dr;
            out.push(AtomTriplet {
                alpha: Rational::zero(),
                beta: Rational::zero(),
                gamma: Rational::zero(),
                multiplicity: m0,
                cdf_at_gamma: nonneg.then(|| mass.clone()),
                mass,
            });
        }
    }
    for (a, ma) in &ap {
        for (b, mb) in &aq {
            if ma + mb <= d {
                continue;
            }
            let gamma = match kind {
                ConvKind::Additive => a + b,
                ConvKind::Multiplicative => {
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    a * b
                }
            };
            let m = ma + mb - d;
            let cdf = fp.eval_rational(a) + fq.eval_rational(b) - &one;
            out.push(AtomTriplet {
                alpha: a.clone(),
                beta: b.clone(),
                gamma,
                multiplicity: m,
                mass: Rational::from_integer(m.into()) / &dr,
                cdf_at_gamma: (kind == ConvKind::Additive || nonneg).then_some(cdf),
            });
        }
    }
    Ok(out)
}
