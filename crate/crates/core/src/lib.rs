//! Orders of quadratic-field integers modulo odd primes and conductors.
//!
//! An integer `α` of `Q(√d)` is embedded in `GL(2, Z)`; its powers are
//! described by the adapted Chebyshev polynomials `t_n(x; s)` and
//! `u_{n−1}(x; s)` in the trace `x` and norm `s`. On top of that sit explicit
//! bounds for the least `ν` with `α^ν ≡ 1 (mod p)` ([`ordersolver`]) and for
//! the least `ν` with `α^ν` in the order of conductor `f` ([`conductor`]),
//! each checked against a brute-force [`oracle`].

pub mod check;
pub mod cheby;
pub mod cli;
pub mod conductor;
pub mod error;
pub mod modarith;
pub mod oracle;
pub mod ordersolver;
pub mod quadint;
pub mod units;

pub use error::{Error, Result};
pub use modarith::OddPrime;
pub use quadint::{Mat2, QuadInt};
