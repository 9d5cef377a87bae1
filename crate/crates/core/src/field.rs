//! Coefficient fields: prime fields of word size and the rationals.
//!
//! Everything above this module is generic over [`Field`]. Prime fields are
//! the workhorse (fast exact rank); the rationals serve as an independent
//! cross-check for small matrices.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::rank;

/// Default working prime for randomized certification.
pub const DEFAULT_PRIME: u64 = 65537;
/// Prime used when a run at [`DEFAULT_PRIME`] is inconclusive.
pub const ESCALATION_PRIME: u64 = 2_147_483_647;

/// Bound on the magnitude of random rational coefficients.
const RATIONAL_SAMPLE_BOUND: i64 = 1 << 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "p")]
pub enum FieldDescriptor {
    Prime(u64),
    Rationals,
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Prime(p) => write!(f, "F_{p}"),
            FieldDescriptor::Rationals => write!(f, "Q"),
        }
    }
}

pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn descriptor(&self) -> FieldDescriptor;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;

    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn inv(&self, x: &Self::Elem) -> Option<Self::Elem>;

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Integer representative used for text export; `None` for non-integral
    /// rationals.
    fn to_integer(&self, x: &Self::Elem) -> Option<BigInt>;

    /// Exact rank of the matrix given by sparse `(row, col, value)` triplets.
    fn rank(&self, nrows: usize, ncols: usize, entries: &[(usize, usize, Self::Elem)]) -> usize {
        rank::gauss_rank(self, nrows, ncols, entries)
    }

    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        loop {
            let x = self.random(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }

    fn pow(&self, x: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = x.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(crate::Error::FieldMismatch(
                self.descriptor().to_string(),
                other.descriptor().to_string(),
            ))
        }
    }
}

/// The prime field F_p for an odd word-sized prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Result<Self> {
        if p <= 2 {
            return Err(domain!("prime must exceed 2, got {p}"));
        }
        if !is_prime(p) {
            return Err(domain!("{p} is not prime"));
        }
        Ok(Fp { p })
    }

    pub fn default_prime() -> Self {
        Fp { p: DEFAULT_PRIME }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.p as i128) as u64
    }
}

impl Field for Fp {
    type Elem = u64;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Prime(self.p)
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }

    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }

    #[inline]
    fn add(&self, x: &u64, y: &u64) -> u64 {
        let s = *x as u128 + *y as u128;
        (s % self.p as u128) as u64
    }

    #[inline]
    fn sub(&self, x: &u64, y: &u64) -> u64 {
        if x >= y {
            x - y
        } else {
            self.p - (y - x)
        }
    }

    #[inline]
    fn mul(&self, x: &u64, y: &u64) -> u64 {
        ((*x as u128 * *y as u128) % self.p as u128) as u64
    }

    fn neg(&self, x: &u64) -> u64 {
        if *x == 0 {
            0
        } else {
            self.p - x
        }
    }

    fn inv(&self, x: &u64) -> Option<u64> {
        if *x == 0 {
            None
        } else {
            Some(self.pow(x, self.p - 2))
        }
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.random_range(0..self.p)
    }

    fn to_integer(&self, x: &u64) -> Option<BigInt> {
        Some(BigInt::from(*x))
    }

    fn rank(&self, nrows: usize, ncols: usize, entries: &[(usize, usize, u64)]) -> usize {
        rank::rank_mod_p(self.p, nrows, ncols, entries)
    }
}

/// The rationals, with arbitrary-precision numerators and denominators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_zero(&self, x: &BigRational) -> bool {
        x.is_zero()
    }

    fn add(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x + y
    }

    fn sub(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x - y
    }

    fn mul(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x * y
    }

    fn neg(&self, x: &BigRational) -> BigRational {
        -x
    }

    fn inv(&self, x: &BigRational) -> Option<BigRational> {
        if x.is_zero() {
            None
        } else {
            Some(x.recip())
        }
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let v = rng.random_range(-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND);
        self.from_i64(v)
    }

    fn to_integer(&self, x: &BigRational) -> Option<BigInt> {
        x.is_integer().then(|| x.to_integer())
    }

    fn rank(&self, nrows: usize, ncols: usize, entries: &[(usize, usize, BigRational)]) -> usize {
        rank::rank_rational(nrows, ncols, entries)
    }
}

/// Rational number from an integer pair, for tests and bindings.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
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

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(65537));
        assert!(is_prime(ESCALATION_PRIME));
        assert!(is_prime(18446744073709551557));
        assert!(!is_prime(65535));
        assert!(!is_prime(3215031751)); // strong pseudoprime to 2,3,5,7
        assert!(!is_prime(1));
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(Fp::new(2).is_err());
        assert!(Fp::new(91).is_err());
        assert!(Fp::new(3).is_ok());
    }

    #[test]
    fn fp_arithmetic() {
        let f = Fp::new(7).unwrap();
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.sub(&2, &5), 4);
        assert_eq!(f.neg(&0), 0);
        let big = Fp::new(18446744073709551557).unwrap();
        let x = big.from_i64(-2);
        assert_eq!(big.mul(&x, &x), 4);
    }

    #[test]
    fn rational_export() {
        let q = Rationals;
        assert_eq!(q.to_integer(&ratio(6, 3)), Some(BigInt::from(2)));
        assert_eq!(q.to_integer(&ratio(1, 3)), None);
    }
}
