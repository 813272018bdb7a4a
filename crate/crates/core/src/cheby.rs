//! Adapted Chebyshev polynomials `t_n(x; s)` and `u_n(x; s)`.
//!
//! Both satisfy the recurrence `w_{n+1} = x·w_n − s·w_{n−1}` with
//! `t_0 = 2, t_1 = x` and `u_0 = 1, u_1 = x`. They coincide with the Lucas
//! sequences `V_n(x, s)` and `U_{n+1}(x, s)`.
//!
//! Values are carried as pairs `(t_n, u_{n−1})`, with `u_{−1} := 0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::modarith::modp;
use crate::quadint::Mat2;

/// Evaluation parameters: trace `x`, norm `s` and an optional modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChebyParams {
    pub x: BigInt,
    pub s: BigInt,
    pub modulus: Option<BigInt>,
}

impl ChebyParams {
    pub fn exact(x: impl Into<BigInt>, s: impl Into<BigInt>) -> Result<Self> {
        let s = s.into();
        if s.is_zero() {
            return Err(Error::ZeroNorm);
        }
        Ok(ChebyParams {
            x: x.into(),
            s,
            modulus: None,
        })
    }

    pub fn modular(x: impl Into<BigInt>, s: impl Into<BigInt>, m: impl Into<BigInt>) -> Result<Self> {
        let m = m.into();
        if m < BigInt::from(2) {
            return Err(Error::BadModulus(m));
        }
        let mut p = Self::exact(x, s)?;
        p.modulus = Some(m);
        Ok(p)
    }

    /// Same `(x, s)` with a different modulus.
    pub fn with_modulus(&self, m: Option<BigInt>) -> Self {
        ChebyParams {
            x: self.x.clone(),
            s: self.s.clone(),
            modulus: m,
        }
    }

    /// The discriminant `x² − 4s`.
    pub fn discriminant(&self) -> BigInt {
        &self.x * &self.x - 4 * &self.s
    }

    pub(crate) fn reduce(&self, v: BigInt) -> BigInt {
        match &self.modulus {
            Some(m) => modp(&v, m),
            None => v,
        }
    }
}

/// `(t_n, u_{n−1})` evaluated at `params`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChebyPair {
    pub n: u64,
    pub t: BigInt,
    pub u_prev: BigInt,
    pub params: ChebyParams,
}

impl ChebyPair {
    /// `(x² − 4s)·u_{n−1}² = t_n² − 4sⁿ`, exactly or modulo the modulus.
    pub fn satisfies_norm_identity(&self) -> bool {
        let p = &self.params;
        let s_n = pow_index(&p.s, self.n, p.modulus.as_ref());
        let lhs = p.reduce(p.discriminant() * &self.u_prev * &self.u_prev);
        let rhs = p.reduce(&self.t * &self.t - 4 * s_n);
        lhs == rhs
    }
}

fn recurrence(params: &ChebyParams, w0: BigInt, n_max: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(params.reduce(w0));
    if n_max == 0 {
        return out;
    }
    out.push(params.reduce(params.x.clone()));
    for i in 1..n_max {
        let next = &params.x * &out[i] - &params.s * &out[i - 1];
        out.push(params.reduce(next));
    }
    out
}

/// `u_0, …, u_{n_max}` by the linear recurrence.
pub fn u_seq(params: &ChebyParams, n_max: usize) -> Vec<BigInt> {
    recurrence(params, BigInt::one(), n_max)
}

/// `t_0, …, t_{n_max}` by the linear recurrence.
pub fn t_seq(params: &ChebyParams, n_max: usize) -> Vec<BigInt> {
    recurrence(params, BigInt::from(2), n_max)
}

/// `(t_n, u_{n−1})` in `O(log n)` matrix products.
///
/// The `n`-th power of the companion matrix `[[x, −s], [1, 0]]` is
/// `[[u_n, −s·u_{n−1}], [u_{n−1}, −s·u_{n−2}]]`; its trace is `t_n`. Works in
/// exact mode too when `params.modulus` is `None`.
pub fn eval_fast(params: &ChebyParams, n: u64) -> ChebyPair {
    let m = params.modulus.as_ref();
    let c = Mat2::new(
        params.x.clone(),
        -params.s.clone(),
        BigInt::one(),
        BigInt::zero(),
    );
    let pw = c.pow_mod(n, m);
    ChebyPair {
        n,
        t: params.reduce(pw.trace()),
        u_prev: params.reduce(pw.c().clone()),
        params: params.clone(),
    }
}

/// `t_n(x; s)`, exact or reduced.
pub fn t_at(params: &ChebyParams, n: u64) -> BigInt {
    eval_fast(params, n).t
}

/// `u_{n−1}(x; s)`, exact or reduced; `u_{−1} = 0`.
pub fn u_prev_at(params: &ChebyParams, n: u64) -> BigInt {
    eval_fast(params, n).u_prev
}

/// `base^n`, reduced when a modulus is given.
pub(crate) fn pow_index(base: &BigInt, n: u64, m: Option<&BigInt>) -> BigInt {
    match m {
        Some(m) => modp(base, m).modpow(&BigInt::from(n), m),
        None => num_traits::pow(base.clone(), n as usize),
    }
}

/// Binomial-sum evaluation of `u_{n−1}(x; s)` for odd `n`:
///
/// `2^{1−n}·[Σ_{k=0}^{(n−3)/2} C(n, 2k+1)·x^{n−2k−1}·(x²−4s)^k + (x²−4s)^{(n−1)/2}]`.
pub fn u_odd_closed_form(x: &BigInt, s: &BigInt, n: u64) -> Result<BigInt> {
    if n.is_even() {
        return Err(Error::EvenIndex(n));
    }
    let disc = x * x - 4 * s;
    let half = (n - 1) / 2;
    let mut sum = BigInt::zero();
    let mut binom = BigInt::from(n); // C(n, 1)
    let mut disc_k = BigInt::one();
    for k in 0..half {
        sum += &binom * num_traits::pow(x.clone(), (n - 2 * k - 1) as usize) * &disc_k;
        // C(n, 2k+3) = C(n, 2k+1)·(n−2k−1)(n−2k−2) / ((2k+2)(2k+3))
        binom = binom * (n - 2 * k - 1) * (n - 2 * k - 2) / ((2 * k + 2) * (2 * k + 3));
        disc_k *= &disc;
    }
    sum += disc_k;
    let denom = BigInt::one() << (n - 1);
    let (q, r) = sum.div_rem(&denom);
    debug_assert!(r.is_zero(), "binomial sum not divisible by 2^(n-1)");
    Ok(q)
}

/// Two evaluations of the same quantity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `u_{mn−1}(x; s)` against `u_{m−1}(t_n(x; s); sⁿ)·u_{n−1}(x; s)`.
///
/// Reduced modulo `params.modulus` when present.
pub fn compose_u(m: u64, n: u64, params: &ChebyParams) -> IdentityCheck {
    let md = params.modulus.as_ref();
    let lhs = u_prev_at(params, m * n);
    let inner = eval_fast(params, n);
    let outer = ChebyParams {
        x: inner.t.clone(),
        s: pow_index(&params.s, n, md),
        modulus: params.modulus.clone(),
    };
    let rhs = params.reduce(u_prev_at(&outer, m) * &inner.u_prev);
    IdentityCheck { lhs, rhs }
}

/// `t_{mn}(x; s)` against `t_n(t_m(x; s); s^m)`.
pub fn compose_t(m: u64, n: u64, params: &ChebyParams) -> IdentityCheck {
    let md = params.modulus.as_ref();
    let lhs = t_at(params, m * n);
    let outer = ChebyParams {
        x: t_at(params, m),
        s: pow_index(&params.s, m, md),
        modulus: params.modulus.clone(),
    };
    IdentityCheck {
        lhs,
        rhs: t_at(&outer, n),
    }
}

/// `(x² − 4s)·u_{n−1}²` against `t_n² − 4sⁿ`.
pub fn norm_identity(params: &ChebyParams, n: u64) -> IdentityCheck {
    let pair = eval_fast(params, n);
    let s_n = pow_index(&params.s, n, params.modulus.as_ref());
    IdentityCheck {
        lhs: params.reduce(params.discriminant() * &pair.u_prev * &pair.u_prev),
        rhs: params.reduce(&pair.t * &pair.t - 4 * s_n),
    }
}

/// `t_n²` against `t_{2n} + 2sⁿ`.
pub fn doubling_identity(params: &ChebyParams, n: u64) -> IdentityCheck {
    let t_n = t_at(params, n);
    let s_n = pow_index(&params.s, n, params.modulus.as_ref());
    IdentityCheck {
        lhs: params.reduce(&t_n * &t_n),
        rhs: params.reduce(t_at(params, 2 * n) + 2 * s_n),
    }
}

/// If `μ | u_{n−1}(x; s)` then `μ | u_{mn−1}(x; s)`.
///
/// `None` when the hypothesis fails, otherwise whether the conclusion holds.
pub fn divisibility_transport(params: &ChebyParams, n: u64, m: u64, mu: &BigInt) -> Option<bool> {
    let exact = params.with_modulus(None);
    let mu = mu.abs();
    let divides = |v: BigInt| {
        if mu.is_zero() {
            v.is_zero()
        } else {
            (v % &mu).is_zero()
        }
    };
    if !divides(u_prev_at(&exact, n)) {
        return None;
    }
    Some(divides(u_prev_at(&exact, m * n)))
}
