//! Monte-Carlo oracle over Haar-random unitary conjugations: expected
//! characteristic polynomials of `A + U B U*` and `S U B U* S`, and pooled
//! spectral CDFs at large dimension.
//!
//! Randomness comes from ChaCha8 with one stream per fixed-size chunk of
//! samples; chunks are reduced in index order, so results depend only on the
//! seed and the sample count, never on the thread count.

mod kernel;

use faer::{c64, Mat, Side};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::convolve::ConvKind;
use crate::error::{Error, Result};
use crate::freelimits::DiscreteMeasure;
use crate::measures::StepCDF;
use crate::polycore::RealRoot;
use crate::rational::{floor, to_f64, Rational};

/// Samples per random stream.
const CHUNK: usize = 1024;
/// Dimensions up to this use the in-crate Gram–Schmidt kernel.
const SMALL_DIM: usize = 16;

fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
/// of `diag(R)` moved into `Q`.
pub fn haar_unitary(d: usize, rng: &mut impl Rng) -> Mat<c64> {
    if d <= SMALL_DIM {
        let u = kernel::haar_small(d, rng);
        return Mat::from_fn(d, d, |i, j| u.get(i, j));
    }
    let g = kernel::ginibre(d, rng);
    let g = Mat::from_fn(d, d, |i, j| g.get(i, j));
    let qr = g.qr();
    let mut q = qr.compute_Q();
    let r = qr.R();
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { c64::new(1.0, 0.0) };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Monte-Carlo means and standard errors of characteristic-polynomial
/// coefficients, leading coefficient first.
#[derive(Clone, Debug, PartialEq)]
pub struct MCEstimate {
    pub coeff_means: Vec<f64>,
    pub coeff_stderrs: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
}

/// Running mean and sum of squared deviations.
#[derive(Clone, Debug)]
struct Moments {
    n: usize,
    mean: Vec<f64>,
    m2: Vec<f64>,
}

impl Moments {
    fn new(k: usize) -> Self {
        Moments { n: 0, mean: vec![0.0; k], m2: vec![0.0; k] }
    }

    fn push(&mut self, x: &[f64]) {
        self.n += 1;
        let n = self.n as f64;
        for ((m, s), &v) in self.mean.iter_mut().zip(&mut self.m2).zip(x) {
            let delta = v - *m;
            *m += delta / n;
            *s += delta * (v - *m);
        }
    }

    fn merge(mut self, other: &Moments) -> Self {
        if other.n == 0 {
            return self;
        }
        let (na, nb) = (self.n as f64, other.n as f64);
        let n = na + nb;
        for k in 0..self.mean.len() {
            let delta = other.mean[k] - self.mean[k];
            self.mean[k] += delta * nb / n;
            self.m2[k] += other.m2[k] + delta * delta * na * nb / n;
        }
        self.n += other.n;
        self
    }
}

/// Estimates `E det(xI - M)` with `M = A + U B U*` (additive) or
/// `M = S U B U* S`, `S = sqrt(A)` (multiplicative), `A = diag(a)`,
/// `B = diag(b)`, `U` Haar. In the multiplicative case the square root is
/// taken of whichever side is nonnegative; the characteristic polynomial of
/// `M` has the same law as that of `A U B U*`.
pub fn expected_charpoly_mc(a: &[f64], b: &[f64], kind: ConvKind, n: usize, seed: u64) -> Result<MCEstimate> {
    let d = a.len();
    if d != b.len() {
        return Err(Error::Dimension(d, b.len()));
    }
    if d == 0 {
        return Err(Error::Degree("empty root list".into()));
    }
    if n < 2 {
        return Err(Error::InsufficientSamples(n));
    }
    // (conjugated diagonal, outer scaling, added diagonal)
    let (inner, scale, shift): (&[f64], Option<Vec<f64>>, Option<&[f64]>) = match kind {
        ConvKind::Additive => (b, None, Some(a)),
        ConvKind::Multiplicative => {
            if a.iter().all(|&x| x >= 0.0) {
                (b, Some(a.iter().map(|x| x.sqrt()).collect()), None)
            } else if b.iter().all(|&x| x >= 0.0) {
                (a, Some(b.iter().map(|x| x.sqrt()).collect()), None)
            } else {
                return Err(Error::Domain("multiplicative estimate needs one nonnegative side".into()));
            }
        }
    };
    // a scalar matrix is fixed by conjugation, so the estimate is exact
    if inner.iter().all(|&x| x == inner[0]) {
        let roots: Vec<f64> = match (&scale, shift) {
            (Some(s), _) => s.iter().map(|v| v * v * inner[0]).collect(),
            (None, Some(a)) => a.iter().map(|v| v + inner[0]).collect(),
            (None, None) => unreachable!(),
        };
        return Ok(MCEstimate {
            coeff_means: kernel::vieta(&roots),
            coeff_stderrs: vec![0.0; d + 1],
            samples: n,
            seed,
        });
    }
    let chunks = n.div_ceil(CHUNK);
    let parts: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = stream(seed, c as u64);
            let mut acc = Moments::new(d + 1);
            for _ in 0..CHUNK.min(n - c * CHUNK) {
                let u = kernel::haar_small(d, &mut rng);
                let m = kernel::conjugated(&u, inner, scale.as_deref(), shift);
                acc.push(&kernel::vieta(&kernel::hermitian_eigenvalues(&m)));
            }
            acc
        })
        .collect();
    let total = parts.iter().fold(Moments::new(d + 1), |acc, p| acc.merge(p));
    let nf = n as f64;
    let stderrs = total.m2.iter().map(|s| (s / (nf - 1.0)).max(0.0).sqrt() / nf.sqrt()).collect();
    Ok(MCEstimate { coeff_means: total.mean, coeff_stderrs: stderrs, samples: n, seed })
}

/// Atom counts at dimension `dim` by largest remainder; the flag reports
/// whether any count had to be rounded.
pub fn realize_counts(m: &DiscreteMeasure, dim: usize) -> (Vec<usize>, bool) {
    let dr = Rational::from_integer(dim.into());
    let scaled: Vec<Rational> = m.atoms().iter().map(|(_, w)| w * &dr).collect();
    let mut counts: Vec<usize> = scaled.iter().map(|s| floor(s).to_usize().unwrap_or(0)).collect();
    let rounded = scaled.iter().any(|s| !s.is_integer());
    let mut short = dim - counts.iter().sum::<usize>();
    let mut order: Vec<usize> = (0..counts.len()).collect();
    order.sort_by(|&i, &j| {
        let fi = &scaled[i] - Rational::from_integer(floor(&scaled[i]));
        let fj = &scaled[j] - Rational::from_integer(floor(&scaled[j]));
        fj.cmp(&fi)
    });
    for &i in &order {
        if short == 0 {
            break;
        }
        counts[i] += 1;
        short -= 1;
    }
    (counts, rounded)
}

fn diagonal(m: &DiscreteMeasure, dim: usize) -> (Vec<f64>, bool) {
    let (counts, rounded) = realize_counts(m, dim);
    let diag = m
        .atoms()
        .iter()
        .zip(counts)
        .flat_map(|((x, _), c)| std::iter::repeat_n(to_f64(x), c))
        .collect();
    (diag, rounded)
}

/// Pooled eigenvalue CDF from [`spectral_cdf_mc`].
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralSample {
    pub cdf: StepCDF,
    /// True when an atom mass times the dimension was not an integer.
    pub rounded: bool,
}

fn sample_spectrum(a: &[f64], b: &[f64], kind: ConvKind, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let d = a.len();
    let u = haar_unitary(d, rng);
    // inner = U diag(x) U*
    let (x, s) = match kind {
        ConvKind::Additive => (b, None),
        ConvKind::Multiplicative => (a, Some(b)),
    };
    let w = Mat::from_fn(d, d, |i, j| u[(i, j)] * x[j]);
    let mut m = &w * u.adjoint();
    match (kind, s) {
        (ConvKind::Additive, _) => {
            for i in 0..d {
                m[(i, i)] += a[i];
            }
        }
        (_, Some(s)) => {
            let s: Vec<f64> = s.iter().map(|v| v.sqrt()).collect();
            for j in 0..d {
                for i in 0..d {
                    m[(i, j)] *= s[i] * s[j];
                }
            }
        }
        _ => unreachable!(),
    }
    m.self_adjoint_eigenvalues(Side::Lower).expect("Hermitian eigenvalues converge")
}

/// Pooled empirical eigenvalue CDF of `A + U B U*` (additive) or
/// `sqrt(B) U A U* sqrt(B)` (multiplicative) with `A`, `B` diagonal
/// realizations of `mu`, `nu` at dimension `dim`.
pub fn spectral_cdf_mc(
    mu: &DiscreteMeasure,
    nu: &DiscreteMeasure,
    kind: ConvKind,
    dim: usize,
    samples: usize,
    seed: u64,
) -> Result<SpectralSample> {
    if dim < 2 {
        return Err(Error::Degree("matrix dimension must be at least 2".into()));
    }
    if samples == 0 {
        return Err(Error::InsufficientSamples(0));
    }
    if kind == ConvKind::Multiplicative && !nu.is_nonnegative() {
        return Err(Error::Domain("multiplicative spectrum needs nu on [0, ∞)".into()));
    }
    let (a, ra) = diagonal(mu, dim);
    let (b, rb) = diagonal(nu, dim);
    let point = |m: &DiscreteMeasure| (m.atoms().len() == 1).then(|| to_f64(&m.atoms()[0].0));
    // a point mass commutes with everything
    let fixed: Option<Vec<f64>> = match (kind, point(mu), point(nu)) {
        (ConvKind::Additive, _, Some(c)) => Some(a.iter().map(|x| x + c).collect()),
        (ConvKind::Additive, Some(c), _) => Some(b.iter().map(|x| x + c).collect()),
        (ConvKind::Multiplicative, _, Some(c)) => Some(a.iter().map(|x| x * c).collect()),
        (ConvKind::Multiplicative, Some(c), _) => Some(b.iter().map(|x| x * c).collect()),
        _ => None,
    };
    let mut eig: Vec<f64> = match fixed {
        Some(e) => (0..samples).flat_map(|_| e.iter().copied()).collect(),
        None => {
            let per: Vec<Vec<f64>> = (0..samples)
                .into_par_iter()
                .map(|s| sample_spectrum(&a, &b, kind, &mut stream(seed, s as u64)))
                .collect();
            per.concat()
        }
    };
    eig.sort_by(f64::total_cmp);
    let total = eig.len();
    let mut points = Vec::new();
    let mut counts = Vec::new();
    for (k, x) in eig.iter().enumerate() {
        if k + 1 == total || eig[k + 1] != *x {
            points.push(RealRoot::Approx(*x));
            counts.push(k + 1);
        }
    }
    let nr = Rational::from_integer(total.into());
    let values = counts.into_iter().map(|c| Rational::from_integer(c.into()) / &nr).collect();
    Ok(SpectralSample { cdf: StepCDF::new(points, values)?, rounded: ra || rb })
}
