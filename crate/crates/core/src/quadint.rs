//! Integers of a quadratic field `Q(√d)` and their matrix embedding.
//!
//! With `d = 4q + r`, `r ∈ {1, 2, 3}`, an integer is stored as the pair
//! `(a, b)` meaning `a + b√d` when `r ∈ {2, 3}` and `(a + b√d)/2` with
//! `a + b` even when `r = 1`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cheby::{eval_fast, ChebyParams};
use crate::error::{Error, Result};
use crate::modarith::{factorize, inverse, modp, OddPrime};

/// A 2×2 integer matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2([[BigInt; 2]; 2]);

impl Mat2 {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn identity() -> Self {
        Self::new(BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one())
    }

    pub fn a(&self) -> &BigInt {
        &self.0[0][0]
    }
    pub fn b(&self) -> &BigInt {
        &self.0[0][1]
    }
    pub fn c(&self) -> &BigInt {
        &self.0[1][0]
    }
    pub fn d(&self) -> &BigInt {
        &self.0[1][1]
    }

    pub fn trace(&self) -> BigInt {
        self.a() + self.d()
    }

    pub fn det(&self) -> BigInt {
        self.a() * self.d() - self.b() * self.c()
    }

    pub fn entries(&self) -> impl Iterator<Item = &BigInt> {
        self.0.iter().flatten()
    }

    /// Entrywise reduction into `[0, m)`.
    pub fn reduce(&self, m: &BigInt) -> Mat2 {
        Mat2(self.0.clone().map(|row| row.map(|v| modp(&v, m))))
    }

    pub fn mul_mod(&self, rhs: &Mat2, m: Option<&BigInt>) -> Mat2 {
        let (l, r) = (&self.0, &rhs.0);
        let entry = |i: usize, j: usize| {
            let v = &l[i][0] * &r[0][j] + &l[i][1] * &r[1][j];
            match m {
                Some(m) => modp(&v, m),
                None => v,
            }
        };
        Mat2([[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]])
    }

    /// `selfⁿ` by binary exponentiation, optionally reduced mod `m`.
    pub fn pow_mod(&self, mut n: u64, m: Option<&BigInt>) -> Mat2 {
        let mut base = match m {
            Some(m) => self.reduce(m),
            None => self.clone(),
        };
        let mut acc = Mat2::identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_mod(&base, m);
            }
        }
        acc
    }

    pub fn congruent_mod(&self, other: &Mat2, m: &BigInt) -> bool {
        self.reduce(m) == other.reduce(m)
    }

    pub fn is_identity_mod(&self, m: &BigInt) -> bool {
        self.congruent_mod(&Mat2::identity(), m)
    }
}

impl std::ops::Mul for &Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: &Mat2) -> Mat2 {
        self.mul_mod(rhs, None)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.a(),
            self.b(),
            self.c(),
            self.d()
        )
    }
}

/// Residue class of `d` modulo 4 in `{1, 2, 3}`.
fn residue_class(d: &BigInt) -> u8 {
    let r: u8 = modp(d, &BigInt::from(4)).try_into().unwrap();
    r
}

/// Check that `d` is square-free and not 0 or 1.
pub fn validate_d(d: &BigInt) -> Result<()> {
    if d.is_zero() || d.is_one() {
        return Err(Error::InvalidDiscriminant(d.clone()));
    }
    let f = factorize(&d.abs())?;
    if !f.is_square_free() {
        return Err(Error::InvalidDiscriminant(d.clone()));
    }
    Ok(())
}

/// An algebraic integer of `Q(√d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadInt {
    a: BigInt,
    b: BigInt,
    d: BigInt,
    r: u8,
}

impl QuadInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        let d = d.into();
        validate_d(&d)?;
        Self::with_valid_d(a.into(), b.into(), d)
    }

    /// Construct without re-checking that `d` is square-free.
    pub(crate) fn with_valid_d(a: BigInt, b: BigInt, d: BigInt) -> Result<Self> {
        let r = residue_class(&d);
        if r == 1 && (&a + &b).is_odd() {
            return Err(Error::ParityViolation { a, b, d });
        }
        Ok(QuadInt { a, b, d, r })
    }

    /// The integer `k` embedded in `Q(√d)`.
    pub fn integer(k: impl Into<BigInt>, d: &BigInt) -> Result<Self> {
        let k = k.into();
        validate_d(d)?;
        let a = if residue_class(d) == 1 { k * 2 } else { k };
        Self::with_valid_d(a, BigInt::zero(), d.clone())
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn d(&self) -> &BigInt {
        &self.d
    }
    pub fn r(&self) -> u8 {
        self.r
    }

    /// True for the half-integer representation (`r = 1`).
    pub fn is_half(&self) -> bool {
        self.r == 1
    }

    /// `q` in `d = 4q + r`.
    pub fn q(&self) -> BigInt {
        (&self.d - BigInt::from(self.r)) / 4
    }

    /// `Norm(α)`: `a² − b²d`, or a quarter of it when `r = 1`.
    pub fn norm(&self) -> BigInt {
        let n = &self.a * &self.a - &self.b * &self.b * &self.d;
        if self.is_half() {
            n / 4
        } else {
            n
        }
    }

    /// Trace of `φ(α)`: `2a` for `r ∈ {2, 3}`, `a` for `r = 1`.
    pub fn trace_x(&self) -> BigInt {
        if self.is_half() {
            self.a.clone()
        } else {
            &self.a * 2
        }
    }

    /// `(x, s)` as exact Chebyshev parameters; fails when the norm is zero.
    pub fn cheby_params(&self) -> Result<ChebyParams> {
        ChebyParams::exact(self.trace_x(), self.norm())
    }

    /// The matrix `φ(α) ∈ GL(2, Z)`.
    pub fn embed(&self) -> Result<Mat2> {
        if self.norm().is_zero() {
            return Err(Error::ZeroNorm);
        }
        let (a, b) = (&self.a, &self.b);
        Ok(if self.is_half() {
            Mat2::new((a + b) / 2, b.clone(), self.q() * b, (a - b) / 2)
        } else {
            Mat2::new(a.clone(), b.clone(), b * &self.d, a.clone())
        })
    }

    fn same_field(&self, other: &QuadInt) -> Result<()> {
        if self.d != other.d {
            return Err(Error::FieldMismatch(self.d.clone(), other.d.clone()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &QuadInt) -> Result<QuadInt> {
        self.same_field(other)?;
        let a = &self.a * &other.a + &self.b * &other.b * &self.d;
        let b = &self.a * &other.b + &other.a * &self.b;
        let (a, b) = if self.is_half() { (a / 2, b / 2) } else { (a, b) };
        Ok(QuadInt {
            a,
            b,
            d: self.d.clone(),
            r: self.r,
        })
    }

    /// `αⁿ` by repeated multiplication.
    pub fn pow_naive(&self, n: u64) -> QuadInt {
        let mut acc = QuadInt::integer(1, &self.d).expect("d already validated");
        for _ in 0..n {
            acc = acc.mul(self).expect("same field");
        }
        acc
    }

    /// `αⁿ` from `t_n(x; s)` and `u_{n−1}(x; s)`.
    ///
    /// For `r ∈ {2, 3}`: `αⁿ = ½t_n(2a) + u_{n−1}(2a)·b√d`; for `r = 1`:
    /// `αⁿ = ½(t_n(a) + u_{n−1}(a)·b√d)`.
    pub fn pow(&self, n: u64) -> Result<QuadInt> {
        let pair = eval_fast(&self.cheby_params()?, n);
        let b = pair.u_prev * &self.b;
        let a = if self.is_half() { pair.t } else { pair.t / 2 };
        Ok(QuadInt {
            a,
            b,
            d: self.d.clone(),
            r: self.r,
        })
    }

    /// Coefficients reduced modulo an odd modulus.
    pub fn reduce_mod(&self, m: &BigInt) -> ReducedQuad {
        ReducedQuad {
            a: modp(&self.a, m),
            b: modp(&self.b, m),
            half: self.is_half(),
            modulus: m.clone(),
        }
    }

    /// `αⁿ mod p` via the modular Chebyshev pair.
    pub fn pow_mod(&self, n: u64, p: &OddPrime) -> Result<ReducedQuad> {
        let m = p.get();
        let params = self.cheby_params()?.with_modulus(Some(m.clone()));
        let pair = eval_fast(&params, n);
        let b = modp(&(pair.u_prev * &self.b), m);
        let a = if self.is_half() {
            pair.t
        } else {
            let half = inverse(&BigInt::from(2), m).expect("odd modulus");
            modp(&(pair.t * half), m)
        };
        Ok(ReducedQuad {
            a,
            b,
            half: self.is_half(),
            modulus: m.clone(),
        })
    }

    /// `α ≡ β (mod p)`: componentwise congruence of the stored pairs.
    pub fn congruent_mod_p(&self, other: &QuadInt, p: &OddPrime) -> Result<bool> {
        self.same_field(other)?;
        Ok(self.reduce_mod(p.get()) == other.reduce_mod(p.get()))
    }

    /// Membership in the order `O_f` of conductor `f`.
    ///
    /// For `r ∈ {2, 3}`, `O_f = {a' + b'f√d}`. For `r = 1`,
    /// `O_f = {½(a' + (f−1)b') + ½b'f√d : a' + b' even}`; we solve for
    /// `(a', b')` and check the parity constraint.
    pub fn in_order(&self, f: &BigInt) -> bool {
        assert!(f.is_positive(), "conductor must be positive");
        let (b_prime, rem) = self.b.div_rem(f);
        if !rem.is_zero() {
            return false;
        }
        if !self.is_half() {
            return true;
        }
        let a_prime: BigInt = &self.a - (f - 1) * &b_prime;
        (a_prime + b_prime).is_even()
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.b.is_negative() { "-" } else { "+" };
        let body = format!("{} {} {}√{}", self.a, sign, self.b.abs(), self.d);
        if self.is_half() {
            write!(f, "({body})/2")
        } else {
            f.write_str(&body)
        }
    }
}

/// A quadratic integer with its stored pair reduced modulo an odd modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedQuad {
    pub a: BigInt,
    pub b: BigInt,
    pub half: bool,
    pub modulus: BigInt,
}

impl ReducedQuad {
    /// Congruent to the rational integer `k`.
    pub fn is_congruent_to(&self, k: i64) -> bool {
        let want = if self.half { 2 * k } else { k };
        self.b.is_zero() && self.a == modp(&BigInt::from(want), &self.modulus)
    }
}
