//! Integer and modular arithmetic primitives.
//!
//! Everything here works on [`BigInt`]. The moduli that show up in practice
//! are small odd primes and conductors, but nothing assumes a machine-word
//! bound.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default trial-division bound used by [`factorize`].
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

/// Environment variable overriding [`DEFAULT_TRIAL_BOUND`].
pub const TRIAL_BOUND_ENV: &str = "QUADORDER_TRIAL_BOUND";

/// Non-negative remainder of `a` modulo `m` (`m > 0`).
pub fn modp(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

/// Standard non-negative gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Modular inverse of `a` modulo `m`, if it exists.
pub fn inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = modp(a, m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(modp(&e.x, m))
    } else {
        None
    }
}

const SMALL_PRIMES: [u32; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

/// Miller-Rabin with the first twenty primes as bases. Deterministic far
/// beyond 2^64; every modulus this crate handles is well inside that range.
pub fn is_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    for &p in SMALL_PRIMES.iter() {
        let p = BigInt::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let mut d = n_minus_1.clone();
    let mut r = 0u32;
    while d.is_even() {
        d >>= 1;
        r += 1;
    }
    'witness: for &base in SMALL_PRIMES.iter() {
        let mut y = BigInt::from(base).modpow(&d, n);
        if y.is_one() || y == n_minus_1 {
            continue;
        }
        for _ in 1..r {
            y = (&y * &y) % n;
            if y == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// An odd prime, validated once at construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OddPrime(BigInt);

impl OddPrime {
    pub fn new(p: impl Into<BigInt>) -> Result<Self> {
        let p = p.into();
        if p.is_odd() && is_prime(&p) {
            Ok(OddPrime(p))
        } else {
            Err(Error::NotOddPrime(p))
        }
    }

    pub fn get(&self) -> &BigInt {
        &self.0
    }

    /// The prime as a `u64`, when it fits.
    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    /// `p mod 4`, either 1 or 3.
    pub fn residue_mod4(&self) -> u32 {
        (&self.0 % 4u32).to_u32().unwrap()
    }
}

impl fmt::Display for OddPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi(a: &BigInt, n: &BigInt) -> i8 {
    assert!(n.is_positive() && n.is_odd(), "jacobi needs odd positive n");
    let mut a = modp(a, n);
    let mut n = n.clone();
    let mut sign = 1i8;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = (&n % 8u32).to_u32().unwrap();
            if r == 3 || r == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u32() == Some(3) && (&n % 4u32).to_u32() == Some(3) {
            sign = -sign;
        }
        a = modp(&a, &n);
    }
    if n.is_one() {
        sign
    } else {
        0
    }
}

/// Legendre symbol `(a/p)`: 0 when `p | a`, +1 for a nonzero square, -1 otherwise.
pub fn legendre(a: &BigInt, p: &OddPrime) -> i8 {
    jacobi(a, p.get())
}

/// An element of `Z/mZ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Residue {
    value: BigInt,
    modulus: BigInt,
}

impl Residue {
    pub fn new(value: &BigInt, modulus: &BigInt) -> Result<Self> {
        if modulus < &BigInt::from(2) {
            return Err(Error::BadModulus(modulus.clone()));
        }
        Ok(Residue {
            value: modp(value, modulus),
            modulus: modulus.clone(),
        })
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// True when this residue is congruent to the integer `k`.
    pub fn is(&self, k: i64) -> bool {
        modp(&BigInt::from(k), &self.modulus) == self.value
    }

    pub fn pow(&self, e: &BigInt) -> Residue {
        Residue {
            value: self.value.modpow(e, &self.modulus),
            modulus: self.modulus.clone(),
        }
    }

    fn same_modulus(&self, other: &Residue) {
        assert_eq!(
            self.modulus, other.modulus,
            "residues with different moduli cannot be combined"
        );
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl Add for &Residue {
    type Output = Residue;
    fn add(self, rhs: &Residue) -> Residue {
        self.same_modulus(rhs);
        Residue {
            value: modp(&(&self.value + &rhs.value), &self.modulus),
            modulus: self.modulus.clone(),
        }
    }
}

impl Sub for &Residue {
    type Output = Residue;
    fn sub(self, rhs: &Residue) -> Residue {
        self.same_modulus(rhs);
        Residue {
            value: modp(&(&self.value - &rhs.value), &self.modulus),
            modulus: self.modulus.clone(),
        }
    }
}

impl Mul for &Residue {
    type Output = Residue;
    fn mul(self, rhs: &Residue) -> Residue {
        self.same_modulus(rhs);
        Residue {
            value: modp(&(&self.value * &rhs.value), &self.modulus),
            modulus: self.modulus.clone(),
        }
    }
}

impl Neg for &Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue {
            value: modp(&(-&self.value), &self.modulus),
            modulus: self.modulus.clone(),
        }
    }
}

/// Square root of `a` modulo `p` by Tonelli-Shanks.
///
/// Returns `None` for a non-residue. Of the two roots `{r, p - r}` the smaller
/// one is returned, so results are reproducible.
pub fn sqrt_mod(a: &BigInt, p: &OddPrime) -> Option<Residue> {
    let pm = p.get();
    let a = modp(a, pm);
    let wrap = |v: BigInt| {
        let other = pm - &v;
        let v = if other < v { other } else { v };
        Residue {
            value: modp(&v, pm),
            modulus: pm.clone(),
        }
    };
    if a.is_zero() {
        return Some(wrap(BigInt::zero()));
    }
    if legendre(&a, p) != 1 {
        return None;
    }
    let one = BigInt::one();
    let pm1: BigInt = pm - 1u32;
    let mut q = pm1.clone();
    let mut s = 0u32;
    while q.is_even() {
        q >>= 1;
        s += 1;
    }
    if s == 1 {
        let e: BigInt = (pm + 1u32) >> 2;
        return Some(wrap(a.modpow(&e, pm)));
    }
    let mut z = BigInt::from(2);
    while legendre(&z, p) != -1 {
        z += 1u32;
    }
    let mut m = s;
    let mut c = z.modpow(&q, pm);
    let mut t = a.modpow(&q, pm);
    let mut r = a.modpow(&((&q + 1u32) >> 1), pm);
    while !t.is_one() {
        let mut i = 0u32;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2) % pm;
            i += 1;
        }
        let b = c.modpow(&(&one << (m - i - 1)), pm);
        m = i;
        c = (&b * &b) % pm;
        t = (&t * &c) % pm;
        r = (&r * &b) % pm;
    }
    Some(wrap(r))
}

/// A complete prime factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub base: BigInt,
    /// `(prime, exponent)` pairs, primes strictly increasing.
    pub factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    pub fn product(&self) -> BigInt {
        self.factors
            .iter()
            .fold(BigInt::one(), |acc, (p, e)| acc * num_traits::pow(p.clone(), *e as usize))
    }

    pub fn is_square_free(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }
}

/// Trial bound from `QUADORDER_TRIAL_BOUND`, falling back to the default.
pub fn trial_bound() -> u64 {
    std::env::var(TRIAL_BOUND_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&b: &u64| b >= 2)
        .unwrap_or(DEFAULT_TRIAL_BOUND)
}

/// Factorize `n >= 1` with the trial bound from [`trial_bound`].
pub fn factorize(n: &BigInt) -> Result<Factorization> {
    factorize_with_bound(n, trial_bound())
}

/// Trial division up to `bound`, then a primality check on the cofactor.
pub fn factorize_with_bound(n: &BigInt, bound: u64) -> Result<Factorization> {
    if !n.is_positive() {
        return Err(Error::NonPositive(n.clone()));
    }
    let mut rest = n.clone();
    let mut factors = Vec::new();
    let mut push = |p: BigInt, rest: &mut BigInt| {
        let mut e = 0u32;
        while (&*rest % &p).is_zero() {
            *rest /= &p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(BigInt::from(2), &mut rest);
    let mut d = 3u64;
    while d <= bound {
        let dd = BigInt::from(d);
        if &dd * &dd > rest {
            break;
        }
        push(dd, &mut rest);
        d += 2;
    }
    if !rest.is_one() {
        if is_prime(&rest) {
            factors.push((rest, 1));
        } else {
            return Err(Error::FactorizationIncomplete {
                n: n.clone(),
                cofactor: rest,
                bound,
            });
        }
    }
    Ok(Factorization {
        base: n.clone(),
        factors,
    })
}
