//! Shared exact-arithmetic helpers: extended gcd, congruence solving over
//! non-coprime moduli, and bounded trial-division factorization.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Trial division proves primality only up to this bound squared.
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FactorError {
    #[error("cannot factorize {0}: not a positive integer")]
    NonPositive(u64),
    #[error("cofactor {0} exceeds the trial-division certification bound")]
    BeyondTrialDivision(u64),
}

/// Exact prime factorization by trial division.
///
/// Divisors are tried up to 10^6; a remaining cofactor is accepted as prime
/// only when trial division certifies it (cofactor below 10^12), otherwise
/// the factorization is refused.
pub fn factorize_u64(m: u64) -> Result<BTreeMap<u64, u32>, FactorError> {
    if m == 0 {
        return Err(FactorError::NonPositive(m));
    }
    let mut rest = m;
    let mut factors = BTreeMap::new();
    let mut d: u64 = 2;
    while d <= TRIAL_DIVISION_BOUND && d.saturating_mul(d) <= rest {
        while rest % d == 0 {
            *factors.entry(d).or_insert(0) += 1;
            rest /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        if rest > TRIAL_DIVISION_BOUND * TRIAL_DIVISION_BOUND {
            return Err(FactorError::BeyondTrialDivision(rest));
        }
        *factors.entry(rest).or_insert(0) += 1;
    }
    Ok(factors)
}

/// Splits `m = s² · r` with `r` squarefree. Returns `(s, r)`.
pub fn squarefree_split(m: u64) -> Result<(BigUint, BigUint), FactorError> {
    let factors = factorize_u64(m)?;
    let mut square = BigUint::one();
    let mut radical = BigUint::one();
    for (p, e) in factors {
        square *= BigUint::from(p).pow(e / 2);
        if e % 2 == 1 {
            radical *= BigUint::from(p);
        }
    }
    Ok((square, radical))
}

/// Solves `a·x ≡ r (mod m)` for `m ≥ 1`.
///
/// Returns the solution class `(x0, m0)` meaning `x ≡ x0 (mod m0)` with
/// `0 ≤ x0 < m0`, or `None` when no solution exists.
pub fn solve_linear_congruence(a: &BigInt, r: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    debug_assert!(m.is_positive());
    let ext = a.extended_gcd(m);
    let g = &ext.gcd;
    if !(r % g).is_zero() {
        return None;
    }
    let m0 = m / g;
    if m0.is_one() {
        return Some((BigInt::zero(), BigInt::one()));
    }
    // x ≡ (a/g)^{-1} (r/g) (mod m/g); ext.x is the Bézout coefficient of a.
    let x0 = (&ext.x * (r / g)).mod_floor(&m0);
    Some((x0, m0))
}

/// Intersects the residue classes `x ≡ r1 (mod m1)` and `x ≡ r2 (mod m2)`.
///
/// Moduli need not be coprime. Returns `(r, lcm(m1, m2))` with `0 ≤ r < lcm`,
/// or `None` when the classes are disjoint.
pub fn crt_pair(r1: &BigInt, m1: &BigInt, r2: &BigInt, m2: &BigInt) -> Option<(BigInt, BigInt)> {
    debug_assert!(m1.is_positive() && m2.is_positive());
    let ext = m1.extended_gcd(m2);
    let g = &ext.gcd;
    let diff = r2 - r1;
    if !(&diff % g).is_zero() {
        return None;
    }
    let lcm = m1 / g * m2;
    // x = r1 + m1·t with t ≡ (diff/g)·inv(m1/g) (mod m2/g).
    let m2g = m2 / g;
    let t = if m2g.is_one() {
        BigInt::zero()
    } else {
        (&ext.x * (&diff / g)).mod_floor(&m2g)
    };
    let r = (r1 + m1 * t).mod_floor(&lcm);
    Some((r, lcm))
}

/// `lcm` over `BigUint`.
pub fn lcm_biguint(a: &BigUint, b: &BigUint) -> BigUint {
    a / a.gcd(b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn factorization_small() {
        assert_eq!(
            factorize_u64(12).unwrap(),
            BTreeMap::from([(2, 2), (3, 1)])
        );
        assert_eq!(factorize_u64(1).unwrap(), BTreeMap::new());
        assert_eq!(factorize_u64(97).unwrap(), BTreeMap::from([(97, 1)]));
        assert_eq!(factorize_u64(0), Err(FactorError::NonPositive(0)));
    }

    #[test]
    fn factorization_certification_bound() {
        // 10^6 + 3 is prime and within the certified range.
        assert!(factorize_u64(1_000_003).is_ok());
        // A prime beyond 10^12 cannot be certified by trial division here.
        let big = 1_000_000_000_039u64;
        assert_eq!(
            factorize_u64(big),
            Err(FactorError::BeyondTrialDivision(big))
        );
    }

    #[test]
    fn squarefree_parts() {
        let (s, r) = squarefree_split(72).unwrap(); // 72 = 6² · 2
        assert_eq!(s, BigUint::from(6u32));
        assert_eq!(r, BigUint::from(2u32));
    }

    #[test]
    fn linear_congruence() {
        // 4x ≡ 2 (mod 6)  →  x ≡ 2 (mod 3)
        let (x, m) = solve_linear_congruence(&bi(4), &bi(2), &bi(6)).unwrap();
        assert_eq!((x, m), (bi(2), bi(3)));
        // 4x ≡ 1 (mod 6) has no solution
        assert!(solve_linear_congruence(&bi(4), &bi(1), &bi(6)).is_none());
    }

    #[test]
    fn crt_non_coprime() {
        // x ≡ 2 (mod 4), x ≡ 6 (mod 8) → x ≡ 6 (mod 8)? 6 mod 4 = 2 ✓
        let (r, m) = crt_pair(&bi(2), &bi(4), &bi(6), &bi(8)).unwrap();
        assert_eq!((r, m), (bi(6), bi(8)));
        // disjoint classes
        assert!(crt_pair(&bi(1), &bi(4), &bi(2), &bi(8)).is_none());
        // coprime classic
        let (r, m) = crt_pair(&bi(2), &bi(3), &bi(3), &bi(5)).unwrap();
        assert_eq!((r, m), (bi(8), bi(15)));
    }
}
