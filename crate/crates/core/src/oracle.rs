//! Brute-force ground truth.
//!
//! Nothing in here touches the Chebyshev fast path. Powers are built by
//! repeated [`QuadInt::mul`]; the stored pair is reduced modulo `m` (or `2m`
//! for the half-integer representation, which keeps `a + b` even) so that the
//! class of `α^ν` modulo `m·O_K` is tracked exactly. A scan stops at the first
//! hit, at the iteration cap, or when a state repeats (the sequence is then
//! periodic and can never hit).

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::modarith::{modp, OddPrime};
use crate::quadint::QuadInt;

pub const DEFAULT_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    OrderModP,
    MatrixOrderModP,
    NOfF,
    QOfP,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub quantity: Quantity,
    pub inputs: String,
    /// The least index satisfying the predicate, or `None` below the cap.
    pub value: Option<u64>,
    pub cap: u64,
    /// The scan ended because a state repeated rather than at the cap.
    pub cycle_closed: bool,
}

fn reduce_pair(x: &QuadInt, m: &BigInt) -> QuadInt {
    let m2 = if x.is_half() { m * 2 } else { m.clone() };
    QuadInt::with_valid_d(modp(x.a(), &m2), modp(x.b(), &m2), x.d().clone())
        .expect("reduction preserves validity")
}

/// Scan `ν = 1, 2, …` over `α^ν mod m·O_K` until `hit` holds.
fn scan_powers(
    alpha: &QuadInt,
    m: &BigInt,
    cap: u64,
    hit: impl Fn(&QuadInt) -> bool,
) -> (Option<u64>, bool) {
    let base = reduce_pair(alpha, m);
    let mut seen = HashSet::new();
    let mut cur = base.clone();
    for nu in 1..=cap {
        if hit(&cur) {
            return (Some(nu), false);
        }
        if !seen.insert(cur.clone()) {
            return (None, true);
        }
        cur = reduce_pair(&cur.mul(&base).expect("same field"), m);
    }
    (None, false)
}

/// Least `ν ≥ 1` with `α^ν ≡ 1 (mod p)`.
pub fn oracle_order_mod_p(alpha: &QuadInt, p: &OddPrime, cap: u64) -> OracleResult {
    let pm = p.get();
    let one_a = if alpha.is_half() { BigInt::from(2) } else { BigInt::one() };
    let (value, cycle_closed) = scan_powers(alpha, pm, cap, |x| {
        modp(x.b(), pm).is_zero() && modp(x.a(), pm) == one_a
    });
    OracleResult {
        quantity: Quantity::OrderModP,
        inputs: format!("alpha={alpha}, p={p}"),
        value,
        cap,
        cycle_closed,
    }
}

/// Least `ν ≥ 1` with `φ(α)^ν ≡ I (mod p)`, by repeated matrix products.
pub fn oracle_matrix_order_mod_p(alpha: &QuadInt, p: &OddPrime, cap: u64) -> Option<OracleResult> {
    let pm = p.get();
    let e = alpha.embed().ok()?.reduce(pm);
    let mut seen = HashSet::new();
    let mut cur = e.clone();
    let mut out = (None, false);
    for nu in 1..=cap {
        if cur.is_identity_mod(pm) {
            out = (Some(nu), false);
            break;
        }
        if !seen.insert(cur.clone()) {
            out = (None, true);
            break;
        }
        cur = cur.mul_mod(&e, Some(pm));
    }
    Some(OracleResult {
        quantity: Quantity::MatrixOrderModP,
        inputs: format!("alpha={alpha}, p={p}"),
        value: out.0,
        cap,
        cycle_closed: out.1,
    })
}

/// Least `ν ≥ 1` with `α^ν ∈ O_f`.
pub fn oracle_n_of_f(alpha: &QuadInt, f: &BigInt, cap: u64) -> OracleResult {
    let (value, cycle_closed) = scan_powers(alpha, f, cap, |x| x.in_order(f));
    OracleResult {
        quantity: Quantity::NOfF,
        inputs: format!("alpha={alpha}, f={f}"),
        value,
        cap,
        cycle_closed,
    }
}

/// Least `ν ≥ 1` with `u_{ν−1}(x; s) ≡ 0 (mod p)`, scanning the recurrence.
pub fn oracle_q_of_p(x: &BigInt, s: &BigInt, p: &OddPrime, cap: u64) -> OracleResult {
    let pm = p.get();
    let (x, s) = (modp(x, pm), modp(s, pm));
    // (u_{ν−2}, u_{ν−1}) starting at ν = 1: (u_{−1}, u_0) = (0, 1).
    let mut prev = BigInt::zero();
    let mut cur = BigInt::one();
    let mut seen = HashSet::new();
    let mut value = None;
    let mut cycle_closed = false;
    for nu in 1..=cap {
        if cur.is_zero() {
            value = Some(nu);
            break;
        }
        if !seen.insert((prev.clone(), cur.clone())) {
            cycle_closed = true;
            break;
        }
        let next = modp(&(&x * &cur - &s * &prev), pm);
        prev = std::mem::replace(&mut cur, next);
    }
    OracleResult {
        quantity: Quantity::QOfP,
        inputs: format!("x={x}, s={s}, p={p}"),
        value,
        cap,
        cycle_closed,
    }
}
