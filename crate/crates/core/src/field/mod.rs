//! Exact coefficient fields: prime fields `GF(p)` and the rationals.

mod fp;
mod rational;

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use fp::{Fp, Mersenne61, Modulus, Prime62, RuntimePrime, MERSENNE_61, PRIME_62};
pub use rational::RATIONAL_SAMPLE_RANGE;

/// An exact field. Everything in the crate is generic over this trait.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn from_i64(v: i64) -> Self;

    /// 0 for the rationals.
    fn characteristic() -> u64;

    /// Uniform draw (integers in a fixed window for the rationals).
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self;

    fn sample_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let x = Self::sample(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// `dst += c * src`, elementwise.
    fn axpy(dst: &mut [Self], c: &Self, src: &[Self]) {
        if c.is_zero() {
            return;
        }
        for (d, s) in dst.iter_mut().zip(src) {
            if !s.is_zero() {
                *d = d.clone() + c.clone() * s.clone();
            }
        }
    }

    /// Rank of a matrix given as sparse rows `(column, value)`.
    fn rank_rows(rows: Vec<Vec<(usize, Self)>>, cols: usize) -> usize {
        crate::linalg::sparse_rank(rows, cols)
    }

    fn describe() -> String;
}

/// Which coefficient field a computation runs over, chosen at runtime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    Prime(u64),
    Rational,
}

impl Default for FieldKind {
    fn default() -> Self {
        FieldKind::Prime(MERSENNE_61)
    }
}

impl std::fmt::Display for FieldKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldKind::Prime(p) => write!(f, "GF({p})"),
            FieldKind::Rational => write!(f, "Q"),
        }
    }
}

impl FieldKind {
    /// Checks that a prime modulus is usable: prime and in `(2^31, 2^63)`.
    pub fn validate(self) -> Result<Self> {
        if let FieldKind::Prime(p) = self {
            if p <= 1 << 31 || p >= 1 << 63 {
                return Err(Error::param(format!(
                    "prime {p} out of supported range (2^31, 2^63)"
                )));
            }
            if !is_prime(p) {
                return Err(Error::param(format!("{p} is not prime")));
            }
        }
        Ok(self)
    }

    /// A second, different prime used to cross-check probabilistic results.
    pub fn companion(self) -> Self {
        match self {
            FieldKind::Prime(MERSENNE_61) => FieldKind::Prime(PRIME_62),
            FieldKind::Prime(_) => FieldKind::Prime(MERSENNE_61),
            FieldKind::Rational => FieldKind::Rational,
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldKind::Prime(p) => p,
            FieldKind::Rational => 0,
        }
    }
}

/// Runs `$body` with `$f` bound to the concrete field type for `$kind`.
///
/// Primes other than the two built-in ones go through [`RuntimePrime`],
/// which is a process-wide setting.
#[macro_export]
macro_rules! with_field {
    ($kind:expr, $f:ident => $body:expr) => {
        match $kind {
            $crate::field::FieldKind::Rational => {
                #[allow(dead_code)]
                type $f = $crate::Rational;
                $body
            }
            $crate::field::FieldKind::Prime(p) if p == $crate::field::MERSENNE_61 => {
                #[allow(dead_code)]
                type $f = $crate::Fp61;
                $body
            }
            $crate::field::FieldKind::Prime(p) if p == $crate::field::PRIME_62 => {
                #[allow(dead_code)]
                type $f = $crate::Fp62;
                $body
            }
            $crate::field::FieldKind::Prime(p) => {
                $crate::field::RuntimePrime::install(p);
                #[allow(dead_code)]
                type $f = $crate::FpRuntime;
                $body
            }
        }
    };
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
