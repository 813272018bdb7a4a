//! Fundamental units of real quadratic fields.
//!
//! Expand the reduced irrational `ξ = ⌊√d⌋ + √d` (for `d ≡ 2, 3 mod 4`) or
//! `ξ = (P_0 + √d)/2` with `P_0` the largest odd integer below `√d` (for
//! `d ≡ 1 mod 4`) as a purely periodic continued fraction. After one period
//! of length `L` the unit is `ε = k_{L−1}·ξ + k_{L−2}`, where `k_n` are the
//! convergent denominators.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::quadint::{validate_d, QuadInt};

/// `(P + √d)/Q` with `Q | d − P²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfState {
    pub p: BigInt,
    pub q: BigInt,
}

impl CfState {
    /// One step: partial quotient and successor.
    fn step(&self, d: &BigInt, root: &BigInt) -> (BigInt, CfState) {
        let a = (&self.p + root) / &self.q;
        let p = &a * &self.q - &self.p;
        let q = (d - &p * &p) / &self.q;
        (a, CfState { p, q })
    }
}

/// The fundamental unit `ε > 1` of the maximal order of `Q(√d)`.
pub fn fundamental_unit(d: impl Into<BigInt>) -> Result<QuadInt> {
    let d = d.into();
    if d <= BigInt::one() {
        return Err(Error::InvalidDiscriminant(d));
    }
    validate_d(&d)?;
    let root = d.sqrt();
    let one_mod4 = (&d % 4u32) == BigInt::one();
    let start = if one_mod4 {
        let p0 = if (&root % 2u32).is_zero() { &root - 1 } else { root.clone() };
        CfState {
            p: p0,
            q: BigInt::from(2),
        }
    } else {
        CfState {
            p: root.clone(),
            q: BigInt::one(),
        }
    };
    // k_{n−1}, k_{n−2}
    let (mut k1, mut k2) = (BigInt::zero(), BigInt::one());
    let mut state = start.clone();
    loop {
        let (a, next) = state.step(&d, &root);
        let k = &a * &k1 + &k2;
        k2 = std::mem::replace(&mut k1, k);
        state = next;
        if state == start {
            break;
        }
    }
    // ε = k1·(P0 + √d)/Q0 + k2
    let unit = if one_mod4 {
        QuadInt::new(&k1 * &start.p + 2 * &k2, k1, d)?
    } else {
        QuadInt::new(&k1 * &start.p + &k2, k1, d)?
    };
    debug_assert!(is_unit(&unit));
    Ok(unit)
}

/// `Norm(α) = ±1`.
pub fn is_unit(alpha: &QuadInt) -> bool {
    alpha.norm().abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn norm_of(a: i64, b: i64, d: i64, half: bool) -> i64 {
        let s = a * a - b * b * d;
        if half {
            s / 4
        } else {
            s
        }
    }

    /// Smallest unit with positive coefficients, by brute force.
    fn brute(d: i64) -> Option<(i64, i64)> {
        let half = d % 4 == 1;
        let limit = 200_000i64;
        for b in 1..limit {
            let t = b * b * d;
            for target in [t - 4, t + 4, t - 1, t + 1] {
                if target <= 0 {
                    continue;
                }
                let a = (target as f64).sqrt().round() as i64;
                for a in [a - 1, a, a + 1] {
                    if a <= 0 || a * a != target {
                        continue;
                    }
                    let ok = if half {
                        (a + b) % 2 == 0 && norm_of(a, b, d, true).abs() == 1 && a * a - t != 0
                    } else {
                        norm_of(a, b, d, false).abs() == 1
                    };
                    if ok {
                        return Some((a, b));
                    }
                }
            }
        }
        None
    }

    #[test]
    fn examples() {
        let e = fundamental_unit(2).unwrap();
        assert_eq!((e.a().clone(), e.b().clone()), (BigInt::from(1), BigInt::from(1)));
        assert_eq!(e.norm(), BigInt::from(-1));
        let e = fundamental_unit(3).unwrap();
        assert_eq!((e.a().clone(), e.b().clone()), (BigInt::from(2), BigInt::from(1)));
        assert_eq!(e.norm(), BigInt::from(1));
        let e = fundamental_unit(5).unwrap();
        assert!(e.is_half());
        assert_eq!((e.a().clone(), e.b().clone()), (BigInt::from(1), BigInt::from(1)));
        assert_eq!(e.norm(), BigInt::from(-1));
    }

    #[test]
    fn rejects() {
        for d in [-3i64, 0, 1, 4, 12, 49] {
            assert!(fundamental_unit(d).is_err(), "d={d}");
        }
    }

    #[test]
    fn matches_brute_force_up_to_50() {
        for d in 2i64..=50 {
            if validate_d(&BigInt::from(d)).is_err() {
                continue;
            }
            let e = fundamental_unit(d).unwrap();
            assert!(is_unit(&e));
            let (a, b) = brute(d).unwrap_or_else(|| panic!("no unit for d={d}"));
            assert_eq!((e.a().clone(), e.b().clone()), (BigInt::from(a), BigInt::from(b)), "d={d}");
        }
    }

    #[test]
    fn large_fundamental_units() {
        // d = 94: 2143295 + 221064√94.
        let e = fundamental_unit(94).unwrap();
        assert_eq!(e.a(), &BigInt::from(2_143_295));
        assert_eq!(e.b(), &BigInt::from(221_064));
        let e = fundamental_unit(991).unwrap();
        assert!(is_unit(&e));
        assert!(e.a().bits() > 90);
    }

    #[test]
    fn is_unit_examples() {
        assert!(is_unit(&QuadInt::new(2, 1, 3).unwrap()));
        assert!(is_unit(&QuadInt::new(1, 1, 2).unwrap()));
        assert!(is_unit(&QuadInt::new(3, 2, 2).unwrap()));
        assert!(!is_unit(&QuadInt::new(2, 1, 2).unwrap()));
    }
}
