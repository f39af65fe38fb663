//! Coefficient fields: arbitrary-precision rationals and prime fields `F_p`
//! with `3 <= p < 2^62`.
//!
//! A [`Field`] value is a descriptor; its elements are plain values
//! ([`BigRational`] for ℚ, a reduced `u64` residue for `F_p`) and every
//! arithmetic operation goes through the descriptor.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::AlgebraError;

/// Serializable description of a coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rational,
    Prime(u64),
}

impl std::fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldDescriptor::Rational => write!(f, "Q"),
            FieldDescriptor::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

/// Height bound for "general" random elements of ℚ.
pub const RATIONAL_SAMPLE_HEIGHT: i64 = 1000;

// conversions need the field value: `Fp` carries its modulus
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + Debug + PartialEq + Eq + Hash + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn descriptor(&self) -> FieldDescriptor;
    /// 0 for ℚ.
    fn characteristic(&self) -> u64;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;

    /// Image of a rational number; fails when the denominator is not
    /// invertible in the field.
    fn from_rational(&self, v: &BigRational) -> Result<Self::Elem, AlgebraError>;

    /// Canonical rational representative (symmetric residue for `F_p`).
    fn to_rational(&self, a: &Self::Elem) -> BigRational;

    /// A random "general" element: height-bounded integer for ℚ, uniform
    /// residue for `F_p`.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Random element of bounded height, in every field.
    fn random_small<R: Rng + ?Sized>(&self, rng: &mut R, height: i64) -> Self::Elem {
        self.from_i64(rng.gen_range(-height..=height))
    }

    fn format(&self, a: &Self::Elem) -> String;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
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

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    /// `a - c * b`, the inner step of every elimination.
    fn sub_mul(&self, a: &Self::Elem, c: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(c, b))
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rational
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
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn from_rational(&self, v: &BigRational) -> Result<BigRational, AlgebraError> {
        Ok(v.clone())
    }
    fn to_rational(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.random_small(rng, RATIONAL_SAMPLE_HEIGHT)
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

/// The prime field `F_p`, elements stored as residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

pub const MAX_PRIME: u64 = 1 << 62;

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        if !(3..MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(AlgebraError::InvalidModulus(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.p as i128) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Prime(self.p)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn is_one(&self, a: &u64) -> bool {
        *a == 1
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        // p < 2^62 so the sum cannot overflow
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let (mut t, mut new_t) = (0i128, 1i128);
        let (mut r, mut new_r) = (self.p as i128, *a as i128);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        debug_assert_eq!(r, 1);
        Some(self.reduce_i128(t))
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i128(v as i128)
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        let m = v.mod_floor(&BigInt::from(self.p));
        m.to_u64().expect("residue fits in u64")
    }
    fn from_rational(&self, v: &BigRational) -> Result<u64, AlgebraError> {
        let den = self.from_bigint(v.denom());
        let inv = self.inv(&den).ok_or(AlgebraError::BadReduction(self.p))?;
        Ok(self.mul(&self.from_bigint(v.numer()), &inv))
    }
    fn to_rational(&self, a: &u64) -> BigRational {
        let v = if *a > self.p / 2 {
            -((self.p - a) as i128)
        } else {
            *a as i128
        };
        BigRational::from_integer(BigInt::from(v))
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0u32);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
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

/// Smallest prime `>= n`.
pub fn next_prime(mut n: u64) -> u64 {
    if n <= 2 {
        return 2;
    }
    if n.is_multiple_of(2) {
        n += 1;
    }
    while !is_prime(n) {
        n += 2;
    }
    n
}

/// A seeded random prime in `[2^31 - 2^24, 2^31)`.
pub fn random_prime_near_2_31<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    loop {
        let p = next_prime(rng.gen_range((1u64 << 31) - (1 << 24)..(1u64 << 31)));
        if p < (1 << 31) {
            return p;
        }
    }
}

/// `count` consecutive primes just below `2^31`, largest first.
pub fn primes_below_2_31(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = (1u64 << 31) - 1;
    while out.len() < count {
        if is_prime(n) {
            out.push(n);
        }
        n -= 2;
    }
    out
}

/// Reduce a rational to `F_p`, `None` if `p` divides the denominator.
pub fn rational_mod(v: &BigRational, field: &PrimeField) -> Option<u64> {
    field.from_rational(v).ok()
}
