//! Seeded random exact sample points.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalars::{QSqrt2, Rational};
use crate::weyl::n_of;

/// Draws rationals `n/d` with `n ∈ [−9, 9] ∖ {0}`, `d ∈ [1, 9]`.
pub struct Sampler {
    rng: ChaCha8Rng,
    redraws: usize,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), redraws: 0 }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Number of rejected draws so far.
    pub fn redraws(&self) -> usize {
        self.redraws
    }

    pub fn rational(&mut self) -> Rational {
        let mut n = self.rng.random_range(-9i64..=8);
        if n >= 0 {
            n += 1;
        }
        let d = self.rng.random_range(1i64..=9);
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    pub fn scalar(&mut self) -> QSqrt2 {
        QSqrt2::new(self.rational(), Rational::from_integer(0.into()))
    }

    /// `a + b√2` with independent rational `a`, `b` (either may be zero).
    pub fn field_element(&mut self) -> QSqrt2 {
        let a = if self.rng.random_bool(0.8) { self.rational() } else { Rational::from_integer(0.into()) };
        let b = if self.rng.random_bool(0.5) { self.rational() } else { Rational::from_integer(0.into()) };
        QSqrt2::new(a, b)
    }

    /// `N = m(m+1)/2` nonzero rationals.
    pub fn point(&mut self, m: usize) -> Vec<QSqrt2> {
        (0..n_of(m)).map(|_| self.scalar()).collect()
    }

    /// A point accepted by `ok`, re-drawing (and counting) rejections.
    pub fn point_where(&mut self, m: usize, ok: impl Fn(&[QSqrt2]) -> bool) -> Vec<QSqrt2> {
        loop {
            let b = self.point(m);
            if ok(&b) {
                return b;
            }
            self.redraws += 1;
        }
    }
}
