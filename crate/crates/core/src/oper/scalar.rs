//! Exact scalars of the form `Σ c_m · √m` with rational `c_m` and
//! squarefree positive integers `m`.
//!
//! Square roots of distinct squarefree integers are linearly independent
//! over the rationals, so this normal form is canonical: two scalars are
//! equal iff their term maps agree. Products stay in the ring because
//! `√m₁·√m₂ = g·√(m₁m₂/g²)` with `g = gcd(m₁, m₂)`. This representation is
//! what keeps coefficients exact when alphabet sizes are multiplicatively
//! dependent (over sizes `(2,4)` the scalar `√4` must reduce to `2`).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::squarefree_split;
use crate::kgraph::{Degree, KGraphSpec};

/// A finite rational combination of square roots of squarefree integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ExactScalar {
    // radical (squarefree, ≥ 1) → nonzero rational coefficient
    terms: BTreeMap<BigUint, BigRational>,
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        ExactScalar::from_rational(BigRational::one())
    }

    pub fn from_rational(value: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(BigUint::one(), value);
        }
        ExactScalar { terms }
    }

    pub fn from_integer(value: i64) -> Self {
        ExactScalar::from_rational(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn from_biguint(value: &BigUint) -> Self {
        ExactScalar::from_rational(BigRational::from_integer(BigInt::from(value.clone())))
    }

    /// `√m` for a positive integer `m`, reduced to `s·√r` with `r` squarefree.
    pub fn sqrt_integer(m: u64) -> Self {
        let (square, radical) = squarefree_split(m).expect("desk-scale radicand");
        let mut terms = BTreeMap::new();
        terms.insert(
            radical,
            BigRational::from_integer(BigInt::from(square)),
        );
        ExactScalar { terms }
    }

    /// `√(n^p)`, reduced exactly using the prime factorization of each size.
    pub fn sqrt_npow(spec: &KGraphSpec, degree: &Degree) -> Self {
        let mut out = ExactScalar::one();
        for (i, &e) in degree.0.iter().enumerate() {
            let n = spec.alphabet(i);
            // n^e = n^{2⌊e/2⌋} · n^{e mod 2}
            let whole = BigUint::from(n).pow(e / 2);
            out = out.mul(&ExactScalar::from_rational(BigRational::from_integer(
                BigInt::from(whole),
            )));
            if e % 2 == 1 {
                out = out.mul(&ExactScalar::sqrt_integer(n));
            }
        }
        out
    }

    /// `1/√n = √n / n`.
    pub fn inv_sqrt_integer(n: u64) -> Self {
        let sqrt = ExactScalar::sqrt_integer(n);
        let inv = BigRational::new(BigInt::one(), BigInt::from(n));
        sqrt.mul(&ExactScalar::from_rational(inv))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&BigUint::one())
                .is_some_and(num_traits::One::is_one)
    }

    pub fn add(&self, other: &ExactScalar) -> ExactScalar {
        let mut terms = self.terms.clone();
        for (radical, coeff) in &other.terms {
            let entry = terms
                .entry(radical.clone())
                .or_insert_with(BigRational::zero);
            *entry += coeff;
            if entry.is_zero() {
                terms.remove(radical);
            }
        }
        ExactScalar { terms }
    }

    pub fn neg(&self) -> ExactScalar {
        ExactScalar {
            terms: self
                .terms
                .iter()
                .map(|(r, c)| (r.clone(), -c))
                .collect(),
        }
    }

    pub fn sub(&self, other: &ExactScalar) -> ExactScalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ExactScalar) -> ExactScalar {
        let mut out = ExactScalar::zero();
        for (r1, c1) in &self.terms {
            for (r2, c2) in &other.terms {
                let g = r1.gcd(r2);
                let radical = (r1 / &g) * (r2 / &g);
                let coeff = c1 * c2 * BigRational::from_integer(BigInt::from(g));
                let entry = out
                    .terms
                    .entry(radical.clone())
                    .or_insert_with(BigRational::zero);
                *entry += coeff;
                if entry.is_zero() {
                    out.terms.remove(&radical);
                }
            }
        }
        out
    }

    /// The purely rational value, when the scalar has no radical part.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&BigUint::one()) {
                return Some(c.clone());
            }
        }
        None
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (radical, coeff) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if radical.is_one() {
                write!(f, "{coeff}")?;
            } else if coeff.is_one() {
                write!(f, "sqrt({radical})")?;
            } else {
                write!(f, "{coeff}*sqrt({radical})")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kgraph::KGraphSpec;

    #[test]
    fn radicals_reduce() {
        // √4 = 2
        assert_eq!(ExactScalar::sqrt_integer(4), ExactScalar::from_integer(2));
        // √8 = 2√2
        let s = ExactScalar::sqrt_integer(8);
        assert_eq!(s.mul(&s), ExactScalar::from_integer(8));
        // √2·√6 = 2√3
        let p = ExactScalar::sqrt_integer(2).mul(&ExactScalar::sqrt_integer(6));
        assert_eq!(
            p,
            ExactScalar::from_integer(2).mul(&ExactScalar::sqrt_integer(3))
        );
    }

    #[test]
    fn sqrt_npow_dependent_sizes() {
        let spec = KGraphSpec::standard(vec![2, 4]).unwrap();
        // √(2¹·4¹) = √8 = 2√2
        let s = ExactScalar::sqrt_npow(&spec, &Degree(vec![1, 1]));
        assert_eq!(
            s,
            ExactScalar::from_integer(2).mul(&ExactScalar::sqrt_integer(2))
        );
        // √(2²) = 2 exactly
        assert_eq!(
            ExactScalar::sqrt_npow(&spec, &Degree(vec![2, 0])),
            ExactScalar::from_integer(2)
        );
    }

    #[test]
    fn ring_laws_smoke() {
        let a = ExactScalar::from_integer(3).add(&ExactScalar::sqrt_integer(2));
        let b = ExactScalar::sqrt_integer(2).neg();
        let c = ExactScalar::inv_sqrt_integer(2);
        // (3 + √2)·(−√2) = −3√2 − 2
        assert_eq!(
            a.mul(&b),
            ExactScalar::from_integer(-2)
                .add(&ExactScalar::from_integer(-3).mul(&ExactScalar::sqrt_integer(2)))
        );
        // 1/√2 · √2 = 1
        assert!(c.mul(&ExactScalar::sqrt_integer(2)).is_one());
        // a − a = 0
        assert!(a.sub(&a).is_zero());
    }
}
