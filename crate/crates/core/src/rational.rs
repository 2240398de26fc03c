//! Exact rational arithmetic helpers on top of `num-rational`.
//!
//! Everything in the crate runs on `BigRational`; this module adds the
//! number-theoretic utilities (square classes, valuations, Legendre
//! symbols) needed for local computations over the rationals.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Factors |n| by trial division. Returns (prime, exponent) pairs.
pub fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut m = n.abs();
    let mut out = Vec::new();
    if m.is_zero() || m.is_one() {
        return out;
    }
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        if (&m % &p).is_zero() {
            let mut e = 0u32;
            while (&m % &p).is_zero() {
                m /= &p;
                e += 1;
            }
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if m > BigInt::one() {
        out.push((m, 1));
    }
    out
}

/// Squarefree integer representing the square class of a nonzero rational:
/// the squarefree part of numerator times denominator, with the sign kept.
pub fn squarefree_part(x: &Rat) -> BigInt {
    debug_assert!(!x.is_zero());
    let prod = x.numer() * x.denom();
    let sign = if prod.is_negative() { -1 } else { 1 };
    let mut sf = BigInt::one();
    for (p, e) in factor(&prod) {
        if e % 2 == 1 {
            sf *= p;
        }
    }
    sf * BigInt::from(sign)
}

/// Exact square test for a rational.
pub fn is_square(x: &Rat) -> bool {
    !x.is_zero() && x.is_positive() && squarefree_part(x).is_one()
}

/// The p-adic valuation of a nonzero rational, together with the unit part.
pub fn valuation(x: &Rat, p: &BigInt) -> (i64, Rat) {
    debug_assert!(!x.is_zero());
    let mut v = 0i64;
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    while (&num % p).is_zero() {
        num /= p;
        v += 1;
    }
    while (&den % p).is_zero() {
        den /= p;
        v -= 1;
    }
    (v, Rat::new(num, den))
}

/// Residue of a rational with p-unit denominator modulo `m`, in `0..m`.
pub fn residue_mod(x: &Rat, m: &BigInt) -> BigInt {
    let num = x.numer().mod_floor(m);
    let den = x.denom().mod_floor(m);
    let inv = mod_inverse(&den, m).expect("denominator invertible mod m");
    (num * inv).mod_floor(m)
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Legendre symbol (a/p) for an odd prime p and a prime to p.
pub fn legendre(a: &BigInt, p: &BigInt) -> i32 {
    debug_assert!(p > &BigInt::from(2));
    let a = a.mod_floor(p);
    debug_assert!(!a.is_zero());
    let exp = (p - BigInt::one()) / BigInt::from(2);
    let r = a.modpow(&exp, p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Sign of a nonzero rational as +1 / -1.
pub fn sign_of(x: &Rat) -> i8 {
    debug_assert!(!x.is_zero());
    match x.numer().sign() {
        Sign::Plus => 1,
        Sign::Minus => -1,
        Sign::NoSign => unreachable!(),
    }
}
