//! Small dense complex kernels: Haar sampling by Gram–Schmidt, Hermitian
//! eigenvalues by Jacobi rotations on the real embedding, and Vieta.

use faer::c64;
use rand::Rng;
use rand_distr::StandardNormal;

/// Column-major square complex matrix.
#[derive(Clone, Debug)]
pub(crate) struct Small {
    pub n: usize,
    pub a: Vec<c64>,
}

impl Small {
    pub fn get(&self, i: usize, j: usize) -> c64 {
        self.a[i + j * self.n]
    }
}

pub(crate) fn ginibre(n: usize, rng: &mut impl Rng) -> Small {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let a = (0..n * n)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            c64::new(re * s, im * s)
        })
        .collect();
    Small { n, a }
}

/// Orthonormalizes the columns in place (two passes of modified
/// Gram–Schmidt). The implied `R` has a positive diagonal, so a Ginibre input
/// yields a Haar unitary.
pub(crate) fn gram_schmidt(m: &mut Small) {
    let n = m.n;
    for j in 0..n {
        for _ in 0..2 {
            for k in 0..j {
                let mut dot = c64::new(0.0, 0.0);
                for i in 0..n {
                    dot += m.a[i + k * n].conj() * m.a[i + j * n];
                }
                for i in 0..n {
                    let q = m.a[i + k * n];
                    m.a[i + j * n] -= q * dot;
                }
            }
        }
        let norm = (0..n).map(|i| m.a[i + j * n].norm_sqr()).sum::<f64>().sqrt();
        for i in 0..n {
            m.a[i + j * n] /= norm;
        }
    }
}

pub(crate) fn haar_small(n: usize, rng: &mut impl Rng) -> Small {
    let mut g = ginibre(n, rng);
    gram_schmidt(&mut g);
    g
}

/// `S U diag(b) U* S + diag(a)`, with `S = diag(s)` (or identity).
pub(crate) fn conjugated(u: &Small, b: &[f64], s: Option<&[f64]>, a: Option<&[f64]>) -> Small {
    let n = u.n;
    let mut out = vec![c64::new(0.0, 0.0); n * n];
    for j in 0..n {
        for i in 0..n {
            let mut acc = c64::new(0.0, 0.0);
            for (k, &bk) in b.iter().enumerate() {
                acc += u.get(i, k) * u.get(j, k).conj() * bk;
            }
            if let Some(s) = s {
                acc *= s[i] * s[j];
            }
            out[i + j * n] = acc;
        }
        if let Some(a) = a {
            out[j + j * n] += a[j];
        }
    }
    Small { n, a: out }
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub(crate) fn hermitian_eigenvalues(h: &Small) -> Vec<f64> {
    let n = h.n;
    let m = 2 * n;
    // [[Re, -Im], [Im, Re]] has every eigenvalue of h twice
    let mut s = vec![0.0; m * m];
    for j in 0..n {
        for i in 0..n {
            let z = h.get(i, j);
            s[i * m + j] = z.re;
            s[(i + n) * m + j + n] = z.re;
            s[i * m + j + n] = -z.im;
            s[(i + n) * m + j] = z.im;
        }
    }
    let mut ev = jacobi_eigenvalues(&mut s, m);
    ev.sort_by(f64::total_cmp);
    ev.into_iter().step_by(2).collect()
}

/// Cyclic Jacobi on a dense symmetric row-major matrix; destroys `s`.
fn jacobi_eigenvalues(s: &mut [f64], m: usize) -> Vec<f64> {
    let total: f64 = s.iter().map(|x| x * x).sum();
    for _ in 0..64 {
        let off: f64 = (0..m)
            .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| s[i * m + j] * s[i * m + j])
            .sum();
        if off <= 1e-30 * total {
            break;
        }
        for p in 0..m {
            for q in p + 1..m {
                let apq = s[p * m + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (s[q * m + q] - s[p * m + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                for k in 0..m {
                    let (akp, akq) = (s[k * m + p], s[k * m + q]);
                    s[k * m + p] = c * akp - sn * akq;
                    s[k * m + q] = sn * akp + c * akq;
                }
                for k in 0..m {
                    let (apk, aqk) = (s[p * m + k], s[q * m + k]);
                    s[p * m + k] = c * apk - sn * aqk;
                    s[q * m + k] = sn * apk + c * aqk;
                }
            }
        }
    }
    (0..m).map(|i| s[i * m + i]).collect()
}

/// Coefficients of `prod (x - r)`, leading first.
pub(crate) fn vieta(roots: &[f64]) -> Vec<f64> {
    let mut c = vec![1.0];
    for &r in roots {
        c.push(0.0);
        for k in (1..c.len()).rev() {
            c[k] -= r * c[k - 1];
        }
    }
    c
}
