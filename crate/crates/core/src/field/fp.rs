use std::fmt;
use std::hash::{Hash, Hasher};
use std::marker::PhantomData;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::atomic::{AtomicU64, Ordering};

use num_traits::{One, Zero};
use rand::Rng;

use super::Field;

/// Compile-time (or process-global) choice of the prime modulus.
pub trait Modulus: 'static + Send + Sync {
    fn value() -> u64;

    #[inline]
    fn mul_mod(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % Self::value() as u128) as u64
    }
}

/// p = 2^61 - 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mersenne61;

pub const MERSENNE_61: u64 = (1 << 61) - 1;

impl Modulus for Mersenne61 {
    #[inline]
    fn value() -> u64 {
        MERSENNE_61
    }

    #[inline]
    fn mul_mod(a: u64, b: u64) -> u64 {
        let x = a as u128 * b as u128;
        let mut s = (x as u64 & MERSENNE_61) + (x >> 61) as u64;
        if s >= MERSENNE_61 {
            s -= MERSENNE_61;
        }
        if s >= MERSENNE_61 {
            s -= MERSENNE_61;
        }
        s
    }
}

/// p = 2^62 - 57.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Prime62;

pub const PRIME_62: u64 = (1 << 62) - 57;

impl Modulus for Prime62 {
    #[inline]
    fn value() -> u64 {
        PRIME_62
    }

    #[inline]
    fn mul_mod(a: u64, b: u64) -> u64 {
        const MASK: u128 = (1 << 62) - 1;
        let x = a as u128 * b as u128;
        let y = (x >> 62) * 57 + (x & MASK);
        let mut z = ((y >> 62) * 57 + (y & MASK)) as u64;
        while z >= PRIME_62 {
            z -= PRIME_62;
        }
        z
    }
}

static RUNTIME_PRIME: AtomicU64 = AtomicU64::new(MERSENNE_61);

/// Modulus read from a process-wide setting; see [`RuntimePrime::install`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuntimePrime;

impl RuntimePrime {
    /// Sets the modulus used by every `Fp<RuntimePrime>` in the process.
    /// Callers must validate primality first.
    pub fn install(p: u64) {
        RUNTIME_PRIME.store(p, Ordering::SeqCst);
    }
}

impl Modulus for RuntimePrime {
    #[inline]
    fn value() -> u64 {
        RUNTIME_PRIME.load(Ordering::Relaxed)
    }
}

/// Element of the prime field with modulus `M`, stored reduced in `[0, p)`.
pub struct Fp<M: Modulus>(u64, PhantomData<fn() -> M>);

impl<M: Modulus> Fp<M> {
    #[inline]
    pub fn new(v: u64) -> Self {
        Fp(v % M::value(), PhantomData)
    }

    #[inline]
    fn raw(v: u64) -> Self {
        Fp(v, PhantomData)
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    pub fn modulus() -> u64 {
        M::value()
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self.0;
        let mut acc = 1u64 % M::value();
        while e > 0 {
            if e & 1 == 1 {
                acc = M::mul_mod(acc, base);
            }
            base = M::mul_mod(base, base);
            e >>= 1;
        }
        Self::raw(acc)
    }
}

impl<M: Modulus> Clone for Fp<M> {
    #[inline]
    fn clone(&self) -> Self {
        *self
    }
}
impl<M: Modulus> Copy for Fp<M> {}

impl<M: Modulus> PartialEq for Fp<M> {
    #[inline]
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}
impl<M: Modulus> Eq for Fp<M> {}

impl<M: Modulus> Hash for Fp<M> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state);
    }
}

impl<M: Modulus> fmt::Debug for Fp<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<M: Modulus> fmt::Display for Fp<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<M: Modulus> Zero for Fp<M> {
    #[inline]
    fn zero() -> Self {
        Self::raw(0)
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<M: Modulus> One for Fp<M> {
    #[inline]
    fn one() -> Self {
        Self::raw(1)
    }
}

impl<M: Modulus> Add for Fp<M> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        let p = M::value();
        Self::raw(if s >= p { s - p } else { s })
    }
}

impl<M: Modulus> Sub for Fp<M> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        if self.0 >= rhs.0 {
            Self::raw(self.0 - rhs.0)
        } else {
            Self::raw(self.0 + M::value() - rhs.0)
        }
    }
}

impl<M: Modulus> Mul for Fp<M> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Self::raw(M::mul_mod(self.0, rhs.0))
    }
}

impl<M: Modulus> Neg for Fp<M> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        if self.0 == 0 {
            self
        } else {
            Self::raw(M::value() - self.0)
        }
    }
}

impl<M: Modulus> Div for Fp<M> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv()
    }
}

impl<M: Modulus> AddAssign for Fp<M> {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<M: Modulus> SubAssign for Fp<M> {
    #[inline]
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<M: Modulus> MulAssign for Fp<M> {
    #[inline]
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl<M: Modulus> Field for Fp<M> {
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(M::value() - 2)
    }

    fn from_i64(v: i64) -> Self {
        let p = M::value() as i128;
        Self::raw((v as i128).rem_euclid(p) as u64)
    }

    fn characteristic() -> u64 {
        M::value()
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::raw(rng.gen_range(0..M::value()))
    }

    /// Shoup's precomputed-quotient multiplication; valid for p < 2^63.
    fn axpy(dst: &mut [Self], c: &Self, src: &[Self]) {
        if c.0 == 0 {
            return;
        }
        let p = M::value();
        let cv = c.0;
        let cs = (((cv as u128) << 64) / p as u128) as u64;
        for (d, s) in dst.iter_mut().zip(src) {
            if s.0 == 0 {
                continue;
            }
            let q = ((cs as u128 * s.0 as u128) >> 64) as u64;
            let mut r = cv.wrapping_mul(s.0).wrapping_sub(q.wrapping_mul(p));
            if r >= p {
                r -= p;
            }
            let t = d.0 + r;
            d.0 = if t >= p { t - p } else { t };
        }
    }

    fn describe() -> String {
        format!("GF({})", M::value())
    }
}
