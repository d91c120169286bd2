//! Scalar fields used by the exact linear algebra.
//!
//! Field elements carry no context of their own; every operation goes through
//! a field value (`Rationals` or `PrimeField`). This keeps prime-field elements
//! as plain `u64` words in the hot loops.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

pub type Rational = BigRational;

/// Arithmetic context for a commutative field.
pub trait Field: Clone + Send + Sync + fmt::Debug {
    type El: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::El) -> Option<Self::El>;
    fn from_i64(&self, v: i64) -> Self::El;
    /// Image of a rational number; `None` when the denominator vanishes.
    fn from_rational(&self, q: &Rational) -> Option<Self::El>;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    /// Rough heap footprint of one element, for memory budgeting.
    fn el_bytes(&self) -> usize;
    fn render(&self, a: &Self::El) -> String;
    /// Image of `a` in `F_p`, when the reduction is defined.
    fn residue(&self, a: &Self::El, fp: &PrimeField) -> Option<u64>;

    /// `acc += a * b`
    fn mul_add_assign(&self, acc: &mut Self::El, a: &Self::El, b: &Self::El) {
        let t = self.mul(a, b);
        *acc = self.add(acc, &t);
    }
}

/// The field of rational numbers with arbitrary-precision numerators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type El = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, v: i64) -> Rational {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_rational(&self, q: &Rational) -> Option<Rational> {
        Some(q.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn el_bytes(&self) -> usize {
        64
    }
    fn render(&self, a: &Rational) -> String {
        a.to_string()
    }
    fn residue(&self, a: &Rational, fp: &PrimeField) -> Option<u64> {
        fp.from_rational(a)
    }
    fn mul_add_assign(&self, acc: &mut Rational, a: &Rational, b: &Rational) {
        *acc += a * b;
    }
}

/// `Z/pZ` for a prime `p < 2^32`. Elements are canonical residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Panics unless `p` is a prime below `2^32`.
    pub fn new(p: u64) -> Self {
        assert!(p < (1 << 32) && is_prime(p), "{p} is not a prime below 2^32");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, v: u64) -> u64 {
        v % self.p
    }

    #[inline]
    pub fn reduce_wide(&self, v: u128) -> u64 {
        (v % self.p as u128) as u64
    }

    pub fn pow(&self, base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        let mut b = base % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % self.p;
            }
            b = b * b % self.p;
            exp >>= 1;
        }
        acc
    }

    /// A square root of `-1`, which exists iff `p ≡ 1 (mod 4)`.
    pub fn sqrt_minus_one(&self) -> Option<u64> {
        if self.p % 4 != 1 {
            return None;
        }
        // a^((p-1)/4) squares to -1 whenever a is a non-residue.
        (2..self.p).find_map(|a| {
            let r = self.pow(a, (self.p - 1) / 4);
            (r * r % self.p == self.p - 1).then_some(r)
        })
    }

    pub fn random_nonzero<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.gen_range(1..self.p)
    }
}

impl Field for PrimeField {
    type El = u64;

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
    fn add(&self, a: &u64, b: &u64) -> u64 {
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
        a * b % self.p
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
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn from_i64(&self, v: i64) -> u64 {
        let m = v.rem_euclid(self.p as i64);
        m as u64
    }
    fn from_rational(&self, q: &Rational) -> Option<u64> {
        let p = BigInt::from(self.p);
        let reduce = |x: &BigInt| {
            let r = ((x % &p) + &p) % &p;
            r.to_u64().expect("residue fits in u64")
        };
        let num = reduce(q.numer());
        let den = reduce(q.denom());
        self.inv(&den).map(|d| num * d % self.p)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn el_bytes(&self) -> usize {
        8
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn residue(&self, a: &u64, fp: &PrimeField) -> Option<u64> {
        (fp.p == self.p).then_some(*a)
    }
}

/// Deterministic Miller-Rabin, exact for all `n < 2^64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for &a in &SMALL {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Draws distinct random primes in `(2^30, 2^31)` with `p ≡ 1 (mod 4)`, so
/// that every returned field contains a square root of `-1`.
pub fn random_primes<R: Rng>(rng: &mut R, count: usize, avoid: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(count);
    while out.len() < count {
        let candidate = rng.gen_range((1u64 << 30)..(1u64 << 31)) | 1;
        if candidate % 4 == 1
            && is_prime(candidate)
            && !out.contains(&candidate)
            && !avoid.contains(&candidate)
        {
            out.push(candidate);
        }
    }
    out
}

/// Integer value of a rational, if it is one and fits in `i64`.
pub fn rational_to_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

pub fn rational_abs_is_one(q: &Rational) -> bool {
    q.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn miller_rabin_matches_trial_division() {
        let trial = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..5000 {
            assert_eq!(is_prime(n), trial(n), "n = {n}");
        }
        assert!(is_prime(2147483629));
        assert!(!is_prime(2147483647 * 3));
    }

    #[test]
    fn random_primes_are_31_bit_and_split_minus_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let ps = random_primes(&mut rng, 4, &[]);
        assert_eq!(ps.len(), 4);
        for p in ps {
            assert!(p > 1 << 30 && p < 1 << 31);
            let f = PrimeField::new(p);
            let i = f.sqrt_minus_one().unwrap();
            assert_eq!(f.mul(&i, &i), f.neg(&1));
        }
    }

    #[test]
    fn rational_reduction() {
        let f = PrimeField::new(1_000_000_007);
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        let h = f.from_rational(&half).unwrap();
        assert_eq!(f.mul(&h, &2), 1);
        let bad = Rational::new(BigInt::from(1), BigInt::from(1_000_000_007u64));
        assert!(f.from_rational(&bad).is_none());
        assert_eq!(f.from_i64(-1), 1_000_000_006);
    }
}
