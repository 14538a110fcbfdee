//! Sturm sequences over the integers with content removal at every step.

use std::cmp::Ordering;

use num_traits::Signed;

use super::zpoly::ZPoly;
use crate::rational::Rational;

#[derive(Clone, Debug)]
pub struct SturmSequence {
    seq: Vec<ZPoly>,
}

impl SturmSequence {
    /// Sequence for `f`; `f` need not be square-free (counts are then of
    /// distinct roots).
    pub fn new(f: &ZPoly) -> Self {
        let f0 = f.clone().primitive();
        if f0.degree() == 0 {
            return SturmSequence { seq: vec![f0] };
        }
        let f1 = f0.derivative().primitive();
        let mut seq = vec![f0, f1];
        loop {
            let n = seq.len();
            let (r, factor_sign) = seq[n - 2].pseudo_rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            // next = -rem, up to a positive factor
            let content = r.content();
            let mut coeffs: Vec<_> = r.coeffs().iter().map(|c| c / &content).collect();
            if factor_sign == Ordering::Greater {
                coeffs.iter_mut().for_each(|c| *c = -c.clone());
            }
            seq.push(ZPoly::new(coeffs));
        }
        SturmSequence { seq }
    }

    fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
        let mut prev = Ordering::Equal;
        let mut count = 0;
        for s in signs {
            if s == Ordering::Equal {
                continue;
            }
            if prev != Ordering::Equal && s != prev {
                count += 1;
            }
            prev = s;
        }
        count
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::variations(self.seq.iter().map(|p| p.sign_at(x)))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.seq.iter().map(|p| {
            let s = if p.lc().is_negative() { Ordering::Less } else { Ordering::Greater };
            if !positive && p.degree() % 2 == 1 {
                s.reverse()
            } else {
                s
            }
        }))
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Rational, hi: &Rational) -> usize {
        if lo >= hi {
            return 0;
        }
        self.variations_at(lo).saturating_sub(self.variations_at(hi))
    }

    /// Number of distinct real roots.
    pub fn count_real(&self) -> usize {
        self.variations_at_infinity(false)
            .saturating_sub(self.variations_at_infinity(true))
    }
}
