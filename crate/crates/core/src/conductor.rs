//! The least `ν` with `α^ν` in the order `O_f` of conductor `f`.
//!
//! `α^ν` has `√d`-coefficient `u_{ν−1}(x; s)·b`, so membership only depends
//! on `f_0 = f / gcd(b, f)` dividing `u_{ν−1}`. The exact value comes from a
//! scan of the recurrence modulo `f_0`; the bounds multiply `q(p)·p^{k−1}`
//! over the prime powers of an odd conductor.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::check::Cell;
use crate::cheby::{compose_u, u_prev_at, ChebyParams};
use crate::error::{Error, Result};
use crate::modarith::{factorize, gcd, modp, OddPrime};
use crate::ordersolver::q_of_p;
use crate::quadint::QuadInt;

/// Scan ceiling when no product bound is available.
pub const DEFAULT_CEILING: u64 = 10_000_000;

/// `c = gcd(b, f)`, `b_0 = b/c`, `f_0 = f/c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduced {
    pub c: BigInt,
    pub b0: BigInt,
    pub f0: BigInt,
}

pub fn reduce_f(b: &BigInt, f: &BigInt) -> Result<Reduced> {
    if b.is_zero() {
        return Err(Error::Invalid("b = 0: alpha is rational and n(f) = 1".into()));
    }
    if !f.is_positive() {
        return Err(Error::NonPositive(f.clone()));
    }
    let c = gcd(b, f);
    Ok(Reduced {
        b0: b / &c,
        f0: f / &c,
        c,
    })
}

/// A prime dividing `f_0` and `s` but not `x` keeps `u_ν ≡ x^ν` nonzero forever.
fn unreachable_prime(x: &BigInt, s: &BigInt, f0: &BigInt) -> Result<Option<BigInt>> {
    let g = gcd(s, f0);
    if g.is_one() {
        return Ok(None);
    }
    let fac = factorize(&g)?;
    let found = fac.primes().find(|p| !(x % *p).is_zero()).cloned();
    Ok(found)
}

/// Least `ν ≥ 1` with `u_{ν−1} ≡ 0 (mod m)`, at most `ceiling`.
fn scan_u(x: &BigInt, s: &BigInt, m: &BigInt, ceiling: u64) -> Result<u64> {
    if m.is_one() {
        return Ok(1);
    }
    if let Some(mu) = m.to_u64().filter(|&v| v < 1 << 63) {
        let m128 = mu as u128;
        let xr = modp(x, m).to_u128().expect("reduced");
        let neg_s = modp(&-s, m).to_u128().expect("reduced");
        let (mut prev, mut cur) = (0u128, 1u128);
        for nu in 1..=ceiling {
            if cur == 0 {
                return Ok(nu);
            }
            let next = (xr * cur % m128 + neg_s * prev % m128) % m128;
            prev = cur;
            cur = next;
        }
        return Err(Error::CeilingExceeded { ceiling });
    }
    let (xr, sr) = (modp(x, m), modp(s, m));
    let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
    for nu in 1..=ceiling {
        if cur.is_zero() {
            return Ok(nu);
        }
        let next = modp(&(&xr * &cur - &sr * &prev), m);
        prev = std::mem::replace(&mut cur, next);
    }
    Err(Error::CeilingExceeded { ceiling })
}

fn params_of(alpha: &QuadInt) -> Result<(BigInt, BigInt)> {
    let s = alpha.norm();
    if s.is_zero() {
        return Err(Error::ZeroNorm);
    }
    Ok((alpha.trace_x(), s))
}

/// Product of `q(p)·p^{k−1}` over the factorization of an odd `f_0`.
fn product_bound(x: &BigInt, s: &BigInt, f0: &BigInt) -> Result<(BigInt, Vec<PrimeContribution>)> {
    let fac = factorize(f0)?;
    let mut per_prime = Vec::new();
    let mut bound = BigInt::one();
    for (p, k) in &fac.factors {
        let op = OddPrime::new(p.clone())?;
        let q = q_of_p(x, s, &op)?.value;
        let contribution = BigInt::from(q) * num_traits::pow(p.clone(), *k as usize - 1);
        bound *= &contribution;
        per_prime.push(PrimeContribution {
            p: p.clone(),
            k: *k,
            q,
            contribution,
        });
    }
    Ok((bound, per_prime))
}

/// `n(f)` with an explicit scan ceiling.
pub fn n_of_f_with_ceiling(alpha: &QuadInt, f: &BigInt, ceiling: u64) -> Result<u64> {
    let (x, s) = params_of(alpha)?;
    if alpha.b().is_zero() {
        return Ok(1);
    }
    let red = reduce_f(alpha.b(), f)?;
    if let Some(p) = unreachable_prime(&x, &s, &red.f0)? {
        return Err(Error::Unreachable { p });
    }
    scan_u(&x, &s, &red.f0, ceiling)
}

/// `n(f) = min{ν : α^ν ∈ O_f} = min{ν : u_{ν−1}(x; s) ≡ 0 (mod f_0)}`.
///
/// The scan is capped at ten times the product bound for odd `f_0`, and at
/// [`DEFAULT_CEILING`] otherwise.
pub fn n_of_f(alpha: &QuadInt, f: &BigInt) -> Result<u64> {
    let (x, s) = params_of(alpha)?;
    if alpha.b().is_zero() {
        return Ok(1);
    }
    let red = reduce_f(alpha.b(), f)?;
    if let Some(p) = unreachable_prime(&x, &s, &red.f0)? {
        return Err(Error::Unreachable { p });
    }
    let ceiling = if red.f0.is_odd() {
        product_bound(&x, &s, &red.f0)?
            .0
            .checked_mul(&BigInt::from(10))
            .and_then(|v| v.to_u64())
            .unwrap_or(u64::MAX)
    } else {
        DEFAULT_CEILING
    };
    scan_u(&x, &s, &red.f0, ceiling)
}

/// `n(fg)` against `n(f)·n(g)` for coprime `f`, `g`.
#[derive(Debug, Clone)]
pub struct MultiplicativeCheck {
    pub n_f: u64,
    pub n_g: u64,
    pub n_fg: u64,
    /// `gcd(b, f) = 1` and `gcd(b, g) = 1`.
    pub b_coprime: bool,
    pub cells: Vec<Cell>,
}

impl MultiplicativeCheck {
    pub fn holds(&self) -> bool {
        crate::check::all_pass(&self.cells)
    }

    pub fn tight(&self) -> bool {
        self.n_fg as u128 == self.n_f as u128 * self.n_g as u128
    }
}

/// Check `n(fg) ≤ n(f)·n(g)`; the `b`-coprimality side condition is reported,
/// not required.
pub fn bound_multiplicative(alpha: &QuadInt, f: &BigInt, g: &BigInt) -> Result<MultiplicativeCheck> {
    if !gcd(f, g).is_one() {
        return Err(Error::NotApplicable(format!("gcd({f}, {g}) ≠ 1")));
    }
    let n_f = n_of_f(alpha, f)?;
    let n_g = n_of_f(alpha, g)?;
    let n_fg = n_of_f(alpha, &(f * g))?;
    let b = alpha.b();
    let b_coprime = gcd(b, f).is_one() && gcd(b, g).is_one();
    let holds = n_fg as u128 <= n_f as u128 * n_g as u128;
    let cells = vec![Cell::check("n(fg) <= n(f) n(g)", holds)];
    Ok(MultiplicativeCheck {
        n_f,
        n_g,
        n_fg,
        b_coprime,
        cells,
    })
}

/// `n(p^k f)` against `q(p)·p^{k−1}·n(f)`.
#[derive(Debug, Clone)]
pub struct PrimePowerCheck {
    pub lhs: u64,
    pub q: u64,
    pub n_f: u64,
    pub rhs: BigInt,
    pub cells: Vec<Cell>,
}

impl PrimePowerCheck {
    pub fn holds(&self) -> bool {
        crate::check::all_pass(&self.cells)
    }
}

/// Check `n(p^k f) ≤ q(p)·p^{k−1}·n(f)` for `gcd(f, b) = 1`, `p ∤ f`.
///
/// Along the way each step `ν ↦ pν` of the induction is re-derived: the
/// composition `u_{pν−1}(x; s) = u_{p−1}(t_ν; s^ν)·u_{ν−1}(x; s)` and the
/// congruence `u_{p−1}(z; S) ≡ (z² − 4S)^{(p−1)/2} (mod p)`.
pub fn bound_prime_power(alpha: &QuadInt, p: &OddPrime, k: u32, f: &BigInt) -> Result<PrimePowerCheck> {
    let (x, s) = params_of(alpha)?;
    let pm = p.get();
    if k == 0 {
        return Err(Error::NotApplicable("k must be at least 1".into()));
    }
    if !gcd(f, alpha.b()).is_one() {
        return Err(Error::NotApplicable(format!("gcd(f, b) ≠ 1 for f = {f}")));
    }
    if (f % pm).is_zero() {
        return Err(Error::NotApplicable(format!("p = {p} divides f = {f}")));
    }
    let q = q_of_p(&x, &s, p)?.value;
    let n_f = n_of_f(alpha, f)?;
    let pk = num_traits::pow(pm.clone(), k as usize);
    let lhs = n_of_f(alpha, &(&pk * f))?;
    let rhs = BigInt::from(q) * num_traits::pow(pm.clone(), k as usize - 1) * BigInt::from(n_f);
    let mut cells = vec![Cell::check("n(p^k f) <= q(p) p^(k-1) n(f)", BigInt::from(lhs) <= rhs)];

    let exact = ChebyParams {
        x: x.clone(),
        s: s.clone(),
        modulus: None,
    };
    let pu = p.to_u64().unwrap_or(u64::MAX);
    let nu = n_f;
    if nu.checked_mul(pu).is_some_and(|v| v <= 2_000) {
        cells.push(Cell::check("u_{p nu - 1} factors through u_{p-1}(t_nu)", compose_u(pu, nu, &exact).holds()));
    }
    let modular = exact.with_modulus(Some(pm.clone()));
    let pair = crate::cheby::eval_fast(&modular, nu);
    let s_nu = s.modpow(&BigInt::from(nu), pm);
    let outer = ChebyParams {
        x: pair.t.clone(),
        s: s_nu.clone(),
        modulus: Some(pm.clone()),
    };
    let lhs_f = u_prev_at(&outer, pu);
    let disc = modp(&(&pair.t * &pair.t - 4 * &s_nu), pm);
    let rhs_f = disc.modpow(&((pm - 1u32) / 2u32), pm);
    cells.push(Cell::check("u_{p-1}(z; S) = (z^2 - 4S)^((p-1)/2) mod p", lhs_f == rhs_f));
    Ok(PrimePowerCheck {
        lhs,
        q,
        n_f,
        rhs,
        cells,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeContribution {
    pub p: BigInt,
    pub k: u32,
    pub q: u64,
    /// `q(p)·p^{k−1}`.
    pub contribution: BigInt,
}

#[derive(Debug, Clone)]
pub struct ConductorReport {
    pub f: BigInt,
    pub f0: BigInt,
    pub n_exact: u64,
    /// Only for odd `f`.
    pub bound_thm53: Option<BigInt>,
    pub per_prime: Vec<PrimeContribution>,
    pub notes: Vec<String>,
    pub cells: Vec<Cell>,
}

impl ConductorReport {
    pub fn passed(&self) -> bool {
        crate::check::all_pass(&self.cells)
    }

    pub fn tight(&self) -> bool {
        self.bound_thm53.as_ref() == Some(&BigInt::from(self.n_exact))
    }
}

/// Exact `n(f)` paired with the product bound `∏ q(p)·p^{k−1}` for odd `f`.
///
/// The bound is taken over the prime powers of `f_0`; it never exceeds the
/// one over `f`. Even `f` gets the exact value and no bound.
pub fn bound_full(alpha: &QuadInt, f: &BigInt) -> Result<ConductorReport> {
    let (x, s) = params_of(alpha)?;
    if !f.is_positive() {
        return Err(Error::NonPositive(f.clone()));
    }
    let mut notes = Vec::new();
    if alpha.b().is_zero() {
        notes.push("b = 0: alpha is rational".into());
        return Ok(ConductorReport {
            f: f.clone(),
            f0: BigInt::one(),
            n_exact: 1,
            bound_thm53: f.is_odd().then(BigInt::one),
            per_prime: Vec::new(),
            notes,
            cells: vec![Cell::check("n(f) <= bound", true)],
        });
    }
    let red = reduce_f(alpha.b(), f)?;
    if !red.c.is_one() {
        notes.push(format!("gcd(b, f) = {}, reduced to f0 = {}", red.c, red.f0));
    }
    let n_exact = n_of_f(alpha, f)?;
    let mut cells = Vec::new();
    let (bound, per_prime) = if f.is_odd() {
        let (b, pp) = product_bound(&x, &s, &red.f0)?;
        cells.push(Cell::check("n(f) <= prod q(p) p^(k-1)", BigInt::from(n_exact) <= b));
        (Some(b), pp)
    } else {
        notes.push("f is even: no bound claimed".into());
        cells.push(Cell::not_applicable("n(f) <= prod q(p) p^(k-1)", "f is even"));
        (None, Vec::new())
    };
    Ok(ConductorReport {
        f: f.clone(),
        f0: red.f0,
        n_exact,
        bound_thm53: bound,
        per_prime,
        notes,
        cells,
    })
}
