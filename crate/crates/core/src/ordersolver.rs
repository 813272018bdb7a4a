//! Least exponents `ν` with `α^ν ≡ 1 (mod p)`.
//!
//! Everything is driven by the Legendre symbol `ℓ = ((x² − 4s)/p)`: the
//! congruence table for `t_{p−ℓ}`, `u_{p−ℓ−1}` and their half-index values, the
//! chain of iterated square roots `x_0, …, x_m` that extracts the 2-part of the
//! order, and the resulting bounds for norms `+1` and `−1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::check::Cell;
use crate::cheby::{eval_fast, t_at, u_prev_at, u_seq, ChebyParams};
use crate::error::{Error, Result};
use crate::modarith::{legendre, modp, sqrt_mod, OddPrime, Residue};
use crate::oracle::{oracle_matrix_order_mod_p, oracle_order_mod_p};
use crate::quadint::QuadInt;

/// `ℓ = ((x² − 4s)/p)`.
pub fn ell_symbol(x: &BigInt, s: &BigInt, p: &OddPrime) -> i8 {
    legendre(&(x * x - 4 * s), p)
}

fn divisible(v: &BigInt, p: &OddPrime) -> bool {
    modp(v, p.get()).is_zero()
}

fn congruent(v: &BigInt, k: &BigInt, p: &OddPrime) -> bool {
    modp(&(v - k), p.get()).is_zero()
}

fn small_prime(p: &OddPrime) -> Result<u64> {
    p.to_u64()
        .filter(|&v| v < (1 << 62))
        .ok_or_else(|| Error::NotApplicable(format!("p = {p} does not fit the index range")))
}

/// `p − ℓ` as an index.
fn p_minus_ell(p: u64, ell: i8) -> u64 {
    (p as i64 - ell as i64) as u64
}

fn pow2_divides(k: u32, n: u64) -> bool {
    k < 64 && n.is_multiple_of(1u64 << k)
}

/// Shared hypotheses: nonzero norm and `ℓ ≠ 0`, i.e. `p ∤ bd`.
fn base_hypotheses(alpha: &QuadInt, p: &OddPrime) -> Result<(BigInt, BigInt, i8)> {
    let s = alpha.norm();
    if s.is_zero() {
        return Err(Error::NotApplicable("Norm(alpha) = 0".into()));
    }
    let x = alpha.trace_x();
    let ell = ell_symbol(&x, &s, p);
    // x² − 4s is b²d (times 4 when r ≠ 1), so this also covers p | b and p | d.
    if ell == 0 {
        let what = if divisible(alpha.d(), p) { "d" } else { "b" };
        return Err(Error::NotApplicable(format!(
            "ℓ = 0: x² − 4s = {} ≡ 0 (mod {p}), p divides {what}",
            &x * &x - 4 * &s
        )));
    }
    Ok((x, s, ell))
}

/// Evaluate the congruence table for `α` modulo `p`.
///
/// With `σ = 1` for `ℓ = +1` and `σ = s` for `ℓ = −1`, and `h = (p − ℓ)/2`:
/// always `t_{p−ℓ} ≡ 2σ` and `u_{p−ℓ−1} ≡ 0`; if `(s/p) = +1`, `t_h² ≡ 4σ` and
/// `u_{h−1} ≡ 0`; if `(s/p) = −1`, `t_h ≡ 0` and `(x² − 4s)·u_{h−1}² ≡ 4σ`.
///
/// The last cell is also recorded, unasserted, in the two printed forms that
/// use `a` in place of `x` (`(a² − 4s)u² ≡ 4σ` and `(a² − s)u² ≡ σ`).
pub fn table_check(alpha: &QuadInt, p: &OddPrime) -> Vec<Cell> {
    const NAME: &str = "congruence table";
    let (x, s, ell) = match base_hypotheses(alpha, p) {
        Ok(v) => v,
        Err(e) => return vec![Cell::not_applicable(NAME, e.to_string())],
    };
    if divisible(&s, p) {
        return vec![Cell::not_applicable(NAME, format!("p = {p} divides s = {s}"))];
    }
    let pu = match small_prime(p) {
        Ok(v) => v,
        Err(e) => return vec![Cell::not_applicable(NAME, e.to_string())],
    };
    let pm = p.get();
    let params = ChebyParams {
        x: x.clone(),
        s: s.clone(),
        modulus: Some(pm.clone()),
    };
    let sigma = if ell == 1 { BigInt::one() } else { s.clone() };
    let full = p_minus_ell(pu, ell);
    let half = full / 2;
    let at_full = eval_fast(&params, full);
    let at_half = eval_fast(&params, half);
    let mut cells = vec![
        Cell::check("t_{p-l} = 2 sigma", congruent(&at_full.t, &(2 * &sigma), p)),
        Cell::check("u_{p-l-1} = 0", divisible(&at_full.u_prev, p)),
    ];
    let u2 = &at_half.u_prev * &at_half.u_prev;
    match legendre(&s, p) {
        1 => {
            cells.push(Cell::check(
                "t_{(p-l)/2}^2 = 4 sigma",
                congruent(&(&at_half.t * &at_half.t), &(4 * &sigma), p),
            ));
            cells.push(Cell::check("u_{(p-l)/2-1} = 0", divisible(&at_half.u_prev, p)));
        }
        _ => {
            cells.push(Cell::check("t_{(p-l)/2} = 0", divisible(&at_half.t, p)));
            cells.push(Cell::check(
                "(x^2-4s) u_{(p-l)/2-1}^2 = 4 sigma",
                congruent(&(params.discriminant() * &u2), &(4 * &sigma), p),
            ));
            let a = alpha.a();
            cells.push(Cell::observed(
                "printed (a^2-4s) u^2 = 4 sigma",
                congruent(&((a * a - 4 * &s) * &u2), &(4 * &sigma), p),
            ));
            cells.push(Cell::observed(
                "printed (a^2-s) u^2 = sigma",
                congruent(&((a * a - &s) * &u2), &sigma, p),
            ));
        }
    }
    cells
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    NonresidueAtStart,
    NonresidueAtK,
    PowerOfTwoExhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainVariant {
    NormPlusOne,
    NormMinusOne,
}

/// How to pick between the two square roots at each chain step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootPolicy {
    /// Always the smaller root.
    Canonical,
    /// A coin flip from a seeded generator.
    Seeded(u64),
}

/// The chain `x_0, …, x_m` with `x_{ν−1} ≡ x_ν² − 2 (mod p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainResult {
    pub ell: i8,
    pub chain: Vec<Residue>,
    pub m: u32,
    pub stop_reason: StopReason,
    pub variant: ChainVariant,
}

impl ChainResult {
    pub fn values(&self) -> Vec<BigInt> {
        self.chain.iter().map(|r| r.value().clone()).collect()
    }

    /// Check the step relation, the Legendre condition on every `x_ν`
    /// (`ν ≥ 1`) and `2^m | p − ℓ`.
    pub fn invariants_hold(&self, p: &OddPrime) -> bool {
        let two = BigInt::from(2);
        let four = BigInt::from(4);
        let steps_ok = self.chain.windows(2).all(|w| {
            let (prev, next) = (w[0].value(), w[1].value());
            congruent(prev, &(next * next - &two), p)
                && legendre(&(next * next - &four), p) == self.ell
        });
        let pm_ell = p.get() - BigInt::from(self.ell);
        let pow = BigInt::one() << self.m;
        steps_ok && self.chain.len() == self.m as usize + 1 && modp(&pm_ell, &pow).is_zero()
    }
}

fn extend_chain(
    start: BigInt,
    p: &OddPrime,
    ell: i8,
    variant: ChainVariant,
    policy: RootPolicy,
) -> Result<ChainResult> {
    let pu = small_prime(p)?;
    let pl = p_minus_ell(pu, ell);
    let pm = p.get();
    let mut rng = match policy {
        RootPolicy::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        RootPolicy::Canonical => None,
    };
    let mut chain = vec![Residue::new(&start, pm)?];
    let two = BigInt::from(2);
    let stop = loop {
        let k = chain.len() as u32 - 1;
        let last = chain[k as usize].value() + &two;
        let residue = legendre(&last, p) != -1;
        if k == 0 && !residue {
            break StopReason::NonresidueAtStart;
        }
        if !pow2_divides(k + 1, pl) {
            break StopReason::PowerOfTwoExhausted;
        }
        if !residue {
            break StopReason::NonresidueAtK;
        }
        let root = sqrt_mod(&last, p).expect("residue has a root");
        let flip = rng.as_mut().is_some_and(|r| r.gen_bool(0.5));
        let root = if flip { -&root } else { root };
        chain.push(root);
    };
    Ok(ChainResult {
        ell,
        m: chain.len() as u32 - 1,
        chain,
        stop_reason: stop,
        variant,
    })
}

/// Chain for norm `+1`: `x_0 = x`, then `x_{k+1}² ≡ x_k + 2` while
/// `2^{k+1} | p − ℓ` and `x_k + 2` is a square.
pub fn build_chain_s1(x: &BigInt, p: &OddPrime) -> Result<ChainResult> {
    build_chain_s1_with(x, p, RootPolicy::Canonical)
}

pub fn build_chain_s1_with(x: &BigInt, p: &OddPrime, policy: RootPolicy) -> Result<ChainResult> {
    let ell = ell_symbol(x, &BigInt::one(), p);
    if ell == 0 {
        return Err(Error::NotApplicable(format!(
            "ℓ = 0 for x = {x}, s = 1 modulo {p}"
        )));
    }
    extend_chain(x.clone(), p, ell, ChainVariant::NormPlusOne, policy)
}

/// Reject `x` unless `p ≡ 1 (mod 4)`, `x ≢ 0`, `x² + 4 ≢ 0` and `ℓ = +1`.
fn minus_one_chain_hypotheses(x: &BigInt, p: &OddPrime) -> Result<()> {
    if p.residue_mod4() != 1 {
        return Err(Error::NotApplicable(format!("p = {p} is not 1 mod 4")));
    }
    if divisible(x, p) {
        return Err(Error::NotApplicable(format!("x = {x} ≡ 0 (mod {p})")));
    }
    match ell_symbol(x, &BigInt::from(-1), p) {
        0 => Err(Error::NotApplicable(format!(
            "x² + 4 ≡ 0 (mod {p}): x ≡ ±2j with j² ≡ −1"
        ))),
        -1 => Err(Error::NotApplicable("ℓ = −1, the chain needs ℓ = +1".into())),
        _ => Ok(()),
    }
}

/// Chain for norm `−1`: identical steps starting from `y_0 = x² + 2`.
pub fn build_chain_s_minus1(x: &BigInt, p: &OddPrime) -> Result<ChainResult> {
    build_chain_s_minus1_with(x, p, RootPolicy::Canonical)
}

pub fn build_chain_s_minus1_with(x: &BigInt, p: &OddPrime, policy: RootPolicy) -> Result<ChainResult> {
    minus_one_chain_hypotheses(x, p)?;
    extend_chain(x * x + 2, p, 1, ChainVariant::NormMinusOne, policy)
}

/// Bounds and checks for one `(α, p)`.
#[derive(Debug, Clone)]
pub struct OrderReport {
    pub p: OddPrime,
    pub x: BigInt,
    pub s: BigInt,
    pub ell: i8,
    pub chain: Option<ChainResult>,
    /// `None` when no bound is licensed for this input.
    pub bound_n: Option<u64>,
    /// `α^{n/2} ≡ −1` is claimed.
    pub half_bound_applies: bool,
    pub oracle_order: Option<u64>,
    pub cells: Vec<Cell>,
}

impl OrderReport {
    fn new(p: &OddPrime, x: BigInt, s: BigInt, ell: i8) -> Self {
        OrderReport {
            p: p.clone(),
            x,
            s,
            ell,
            chain: None,
            bound_n: None,
            half_bound_applies: false,
            oracle_order: None,
            cells: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        crate::check::all_pass(&self.cells)
    }

    /// Run the brute-force order and check it against the bound.
    pub fn attach_oracle(&mut self, alpha: &QuadInt, cap: u64) {
        let o = oracle_order_mod_p(alpha, &self.p, cap);
        self.oracle_order = o.value;
        if let Some(mo) = oracle_matrix_order_mod_p(alpha, &self.p, cap) {
            self.cells
                .push(Cell::check("oracle: matrix order = element order", mo.value == o.value));
        }
        if let Some(n) = self.bound_n {
            let divides = matches!(o.value, Some(v) if n % v == 0);
            self.cells.push(Cell::check("oracle: order divides n", divides));
            if divides {
                self.cells
                    .push(Cell::observed("oracle: order = n", o.value == Some(n)));
            }
        }
    }
}

fn ladder_cell(params: &ChebyParams, idx: u64, p: &OddPrime, want: i64) -> Cell {
    Cell::check(
        format!("t_{idx} = {want}"),
        congruent(&t_at(params, idx), &BigInt::from(want), p),
    )
}

fn alpha_power_cells(alpha: &QuadInt, params: &ChebyParams, n: u64, p: &OddPrime, want: i64) -> Vec<Cell> {
    let u = u_prev_at(params, n);
    let pw = alpha.pow_mod(n, p).expect("nonzero norm");
    vec![
        Cell::check(format!("u_{} = 0", n as i64 - 1), divisible(&u, p)),
        Cell::check(format!("alpha^{n} = {want}"), pw.is_congruent_to(want)),
    ]
}

/// Norm `+1`: `n = (p − ℓ)/2^m` from the chain, with `u_{n−1} ≡ 0` and
/// `αⁿ ≡ 1`; if `2^{m+1} | p − ℓ` also `α^{n/2} ≡ −1`.
///
/// Also checks the ladder `t_{(p−ℓ)/2^k} ≡ 2` for `k ≤ m` and its terminal
/// alternative. When `2^{m+2} | p − ℓ` both readings of the sharpness clause
/// (`u_{n/2−1} ≢ 0` and `u_{n/4−1} ≢ 0`) are recorded without being asserted.
pub fn bound_norm1(alpha: &QuadInt, p: &OddPrime) -> Result<OrderReport> {
    let (x, s, ell) = base_hypotheses(alpha, p)?;
    if !s.is_one() {
        return Err(Error::NotApplicable(format!("Norm(alpha) = {s}, not 1")));
    }
    let pu = small_prime(p)?;
    let chain = build_chain_s1(&x, p)?;
    let params = ChebyParams {
        x: x.clone(),
        s: s.clone(),
        modulus: Some(p.get().clone()),
    };
    let pl = p_minus_ell(pu, ell);
    let m = chain.m;
    let n = pl >> m;
    let mut rep = OrderReport::new(p, x, s, ell);
    rep.cells.push(Cell::check("chain invariants", chain.invariants_hold(p)));
    for k in 0..=m {
        rep.cells.push(ladder_cell(&params, pl >> k, p, 2));
    }
    let next_pow = pow2_divides(m + 1, pl);
    rep.cells.push(Cell::check(
        "t_{(p-l)/2^(m+1)} = -2 or 2^(m+1) does not divide p-l",
        !next_pow || congruent(&t_at(&params, pl >> (m + 1)), &BigInt::from(-2), p),
    ));
    rep.cells.extend(alpha_power_cells(alpha, &params, n, p, 1));
    if next_pow {
        rep.half_bound_applies = true;
        rep.cells.extend(alpha_power_cells(alpha, &params, n / 2, p, -1));
    }
    if pow2_divides(m + 2, pl) {
        rep.cells.push(Cell::observed(
            "sharpness as stated: u_{n/2-1} != 0",
            !divisible(&u_prev_at(&params, n / 2), p),
        ));
        rep.cells.push(Cell::observed(
            "sharpness as proved: u_{n/4-1} != 0",
            !divisible(&u_prev_at(&params, n / 4), p),
        ));
    }
    rep.chain = Some(chain);
    rep.bound_n = Some(n);
    Ok(rep)
}

/// Base congruences for norm `−1` with `h = (p − ℓ)/2`.
///
/// For `p ≡ 1 (mod 4)`: `t_{2h} ≡ 2ℓ`, `t_h² ≡ 4ℓ`, `u_{h−1} ≡ 0`. For
/// `p ≡ 3 (mod 4)`: `t_{2h} ≡ 2ℓ`, `t_h ≡ 0`, `u_{h−1} ≢ 0`. Always
/// `t_{2(p−ℓ)} ≡ 2`.
pub fn norm_minus1_diagnostics(alpha: &QuadInt, p: &OddPrime) -> Result<Vec<Cell>> {
    let (x, s, ell) = base_hypotheses(alpha, p)?;
    if s != BigInt::from(-1) {
        return Err(Error::NotApplicable(format!("Norm(alpha) = {s}, not −1")));
    }
    let pu = small_prime(p)?;
    let params = ChebyParams {
        x,
        s,
        modulus: Some(p.get().clone()),
    };
    let full = p_minus_ell(pu, ell);
    let h = full / 2;
    let at_h = eval_fast(&params, h);
    let two_ell = BigInt::from(2 * ell as i64);
    let mut cells = vec![Cell::check(
        "t_{p-l} = 2l",
        congruent(&t_at(&params, full), &two_ell, p),
    )];
    if p.residue_mod4() == 1 {
        cells.push(Cell::check(
            "t_{(p-l)/2}^2 = 4l",
            congruent(&(&at_h.t * &at_h.t), &(2 * &two_ell), p),
        ));
        cells.push(Cell::check("u_{(p-l)/2-1} = 0", divisible(&at_h.u_prev, p)));
    } else {
        cells.push(Cell::check("t_{(p-l)/2} = 0", divisible(&at_h.t, p)));
        cells.push(Cell::check("u_{(p-l)/2-1} != 0", !divisible(&at_h.u_prev, p)));
    }
    cells.push(Cell::check(
        "t_{2(p-l)} = 2",
        congruent(&t_at(&params, 2 * full), &BigInt::from(2), p),
    ));
    Ok(cells)
}

/// Norm `−1`: base diagnostics for every `p`, and for `p ≡ 1 (mod 4)`,
/// `ℓ = +1`, `x ≢ 0` the chain from `y_0 = x² + 2` with `m ≥ 1`,
/// `n = (p − 1)/2^{m−1}`, `αⁿ ≡ 1` and, if `2^{m+1} | p − 1`, `α^{n/2} ≡ −1`.
///
/// The ladder `t_{(p−1)/2^k} ≡ 2` for `k < m` and the terminal alternative
/// (`≡ −2`, or `≡ 0` with `2^{m+1} ∤ p − 1`) are checked. The printed
/// hypothesis on `a² + 4` is compared with the enforced one on `x² + 4` and any
/// disagreement is recorded.
pub fn bound_norm_minus1(alpha: &QuadInt, p: &OddPrime) -> Result<OrderReport> {
    let mut cells = norm_minus1_diagnostics(alpha, p)?;
    let (x, s, ell) = base_hypotheses(alpha, p)?;
    let mut rep = OrderReport::new(p, x.clone(), s.clone(), ell);
    let a = alpha.a();
    cells.push(Cell::observed(
        "a^2+4 and x^2+4 vanish together",
        divisible(&(a * a + 4), p) == divisible(&(&x * &x + 4), p),
    ));
    let chain = match build_chain_s_minus1(&x, p) {
        Ok(c) => c,
        Err(e) => {
            cells.push(Cell::not_applicable("norm -1 chain bound", e.to_string()));
            rep.cells = cells;
            return Ok(rep);
        }
    };
    let pu = small_prime(p)?;
    let params = ChebyParams {
        x,
        s,
        modulus: Some(p.get().clone()),
    };
    let pl = pu - 1;
    let m = chain.m;
    cells.push(Cell::check("chain invariants", chain.invariants_hold(p)));
    cells.push(Cell::check("m >= 1", m >= 1));
    if m == 0 {
        rep.cells = cells;
        return Ok(rep);
    }
    for k in 0..m {
        cells.push(ladder_cell(&params, pl >> k, p, 2));
    }
    let next_pow = pow2_divides(m + 1, pl);
    let t_term = t_at(&params, pl >> m);
    cells.push(Cell::check(
        "t_{(p-1)/2^m} = -2, or = 0 with 2^(m+1) not dividing p-1",
        congruent(&t_term, &BigInt::from(-2), p) || (divisible(&t_term, p) && !next_pow),
    ));
    let n = pl >> (m - 1);
    cells.extend(alpha_power_cells(alpha, &params, n, p, 1));
    if next_pow {
        rep.half_bound_applies = true;
        cells.extend(alpha_power_cells(alpha, &params, n / 2, p, -1));
        cells.push(Cell::observed(
            "sharpness as printed: u_{n/4-1} != 0",
            !divisible(&u_prev_at(&params, n / 4), p),
        ));
    }
    rep.cells = cells;
    rep.chain = Some(chain);
    rep.bound_n = Some(n);
    Ok(rep)
}

/// Full single-case analysis: the congruence table plus whichever bound
/// applies to the norm of `α`.
pub fn analyze(alpha: &QuadInt, p: &OddPrime) -> Result<OrderReport> {
    let (x, s, ell) = base_hypotheses(alpha, p)?;
    let table = table_check(alpha, p);
    let mut rep = if s.is_one() {
        bound_norm1(alpha, p)?
    } else if s == BigInt::from(-1) {
        bound_norm_minus1(alpha, p)?
    } else {
        OrderReport::new(p, x, s, ell)
    };
    let mut cells = table;
    cells.append(&mut rep.cells);
    rep.cells = cells;
    Ok(rep)
}

/// A preimage `y` with `t_k(y) ≡ x` and the exponent it yields.
#[derive(Debug, Clone)]
pub struct DivisorBound {
    pub k: u64,
    pub y: BigInt,
    pub n: u64,
    pub ell: i8,
    pub s: BigInt,
    pub cells: Vec<Cell>,
}

impl DivisorBound {
    /// `αⁿ ≡ 1` (norm `+1`) or `αⁿ ≡ ℓ` (norm `−1`), together with `u_{n−1} ≡ 0`.
    pub fn alpha_cells(&self, alpha: &QuadInt, p: &OddPrime) -> Vec<Cell> {
        let want = if self.s.is_one() { 1 } else { self.ell as i64 };
        let Ok(params) = alpha.cheby_params() else {
            return vec![Cell::not_applicable("alpha^n", "zero norm")];
        };
        alpha_power_cells(alpha, &params.with_modulus(Some(p.get().clone())), self.n, p, want)
    }
}

/// Exhaustive search for `y ∈ [0, p)` with `t_k(y; s) ≡ x (mod p)`.
///
/// For `s = 1` and `k | p − ℓ` a preimage gives `n = (p − ℓ)/k` with
/// `t_n(x) ≡ 2` and `u_{n−1}(x) ≡ 0`. For `s = −1`, odd `k | p − ℓ` and
/// `x² + 4 ≢ 0`, it gives `n = (p − ℓ)/k` with `t_{2n}(x) ≡ 2` and
/// `t_n(x) ≡ 2ℓ`. Returns `Ok(None)` when no preimage exists.
pub fn divisor_bound(x: &BigInt, s: &BigInt, p: &OddPrime, k: u64) -> Result<Option<DivisorBound>> {
    let minus_one = BigInt::from(-1);
    if !s.is_one() && s != &minus_one {
        return Err(Error::NotApplicable(format!("s = {s} is not ±1")));
    }
    let ell = ell_symbol(x, s, p);
    if ell == 0 {
        return Err(Error::NotApplicable("ℓ = 0".into()));
    }
    let pu = small_prime(p)?;
    let pl = p_minus_ell(pu, ell);
    if k == 0 || !pl.is_multiple_of(k) {
        return Err(Error::NotApplicable(format!("k = {k} does not divide p − ℓ = {pl}")));
    }
    if s == &minus_one && k.is_multiple_of(2) {
        return Err(Error::NotApplicable(format!("k = {k} must be odd for s = −1")));
    }
    let target = modp(x, p.get());
    let found = (0..pu).map(BigInt::from).find(|y| {
        let params = ChebyParams {
            x: y.clone(),
            s: s.clone(),
            modulus: Some(p.get().clone()),
        };
        t_at(&params, k) == target
    });
    let Some(y) = found else { return Ok(None) };
    let n = pl / k;
    let params = ChebyParams {
        x: x.clone(),
        s: s.clone(),
        modulus: Some(p.get().clone()),
    };
    let cells = if s.is_one() {
        vec![
            ladder_cell(&params, n, p, 2),
            Cell::check(format!("u_{} = 0", n - 1), divisible(&u_prev_at(&params, n), p)),
        ]
    } else {
        vec![
            ladder_cell(&params, 2 * n, p, 2),
            ladder_cell(&params, n, p, 2 * ell as i64),
        ]
    };
    Ok(Some(DivisorBound {
        k,
        y,
        n,
        ell,
        s: s.clone(),
        cells,
    }))
}

/// `q(p)`: the least `ν` with `u_{ν−1}(x; s) ≡ 0 (mod p)`.
#[derive(Debug, Clone)]
pub struct QOfP {
    pub value: u64,
    pub ell: i8,
    pub degenerate: bool,
    pub cells: Vec<Cell>,
}

/// Scan for `q(p)`.
///
/// For `ℓ ≠ 0` the scan stops by `p − ℓ`. When `x² − 4s ≡ 0` it stops by `p`,
/// and the closed form `2^{ν−1}·u_{ν−1} ≡ ν·x^{ν−1}` is checked along the way,
/// together with `q(p) = p` for `p ∤ s` and `q(p) = 2` for `p | s`. If `p | s`
/// but `p ∤ x`, `u_ν ≡ xⁿ` never vanishes and [`Error::Unreachable`] is
/// returned.
pub fn q_of_p(x: &BigInt, s: &BigInt, p: &OddPrime) -> Result<QOfP> {
    let ell = ell_symbol(x, s, p);
    let s_div = divisible(s, p);
    if s_div && ell != 0 {
        return Err(Error::Unreachable { p: p.get().clone() });
    }
    let pu = small_prime(p)?;
    let cap = if ell == 0 { pu } else { p_minus_ell(pu, ell) };
    let params = ChebyParams {
        x: x.clone(),
        s: if s.is_zero() { BigInt::one() } else { s.clone() },
        modulus: Some(p.get().clone()),
    };
    if s.is_zero() {
        return Err(Error::ZeroNorm);
    }
    let us = u_seq(&params, cap as usize);
    let value = us
        .iter()
        .position(|u| u.is_zero())
        .map(|i| i as u64 + 1)
        .ok_or(Error::CeilingExceeded { ceiling: cap })?;
    let mut cells = Vec::new();
    if ell == 0 {
        let pm = p.get();
        let closed = (1..=value).all(|nu| {
            let lhs = (BigInt::one() << (nu - 1)) * &us[nu as usize - 1];
            let rhs = BigInt::from(nu) * x.modpow(&BigInt::from(nu - 1), pm);
            congruent(&lhs, &rhs, p)
        });
        cells.push(Cell::check("2^(v-1) u_{v-1} = v x^(v-1)", closed));
        if s_div {
            cells.push(Cell::check("q(p) = 2 when p | s", value == 2));
        } else {
            cells.push(Cell::check("q(p) = p when p does not divide s", value == pu));
        }
    }
    Ok(QOfP {
        value,
        ell,
        degenerate: ell == 0,
        cells,
    })
}

/// Chain depth `m` under a seeded random root choice.
pub fn chain_depth_with(x: &BigInt, s: &BigInt, p: &OddPrime, seed: u64) -> Result<u32> {
    let c = if s.is_one() {
        build_chain_s1_with(x, p, RootPolicy::Seeded(seed))?
    } else {
        build_chain_s_minus1_with(x, p, RootPolicy::Seeded(seed))?
    };
    Ok(c.m)
}
