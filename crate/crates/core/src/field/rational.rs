use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::Field;

/// Magnitude bound for random rational draws: integers in `[-RANGE, RANGE]`.
pub const RATIONAL_SAMPLE_RANGE: i64 = 10_000;

impl Field for BigRational {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        self.recip()
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn characteristic() -> u64 {
        0
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::from_i64(rng.gen_range(-RATIONAL_SAMPLE_RANGE..=RATIONAL_SAMPLE_RANGE))
    }

    fn axpy(dst: &mut [Self], c: &Self, src: &[Self]) {
        if c.is_zero() {
            return;
        }
        let unit = c.is_one();
        for (d, s) in dst.iter_mut().zip(src) {
            if s.is_zero() {
                continue;
            }
            if unit {
                *d += s;
            } else {
                *d += c * s;
            }
        }
    }

    fn rank_rows(rows: Vec<Vec<(usize, Self)>>, cols: usize) -> usize {
        crate::linalg::fraction_free_rank(rows, cols)
    }

    fn describe() -> String {
        "Q".to_string()
    }
}
