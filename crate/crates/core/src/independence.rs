//! Multiplicative independence of the alphabet sizes, with integer
//! certificates.
//!
//! The sizes `n_1, …, n_k` are multiplicatively dependent iff there are
//! distinct `p, q ∈ N^k` with `n^p = n^q`, iff the prime-exponent rows of
//! the `n_i` are linearly dependent over the rationals. Dependence is
//! decided by exact fraction-free elimination; a dependence is always
//! returned as a verified pair `(p, q)`, and independence certifies the
//! simplicity of the associated boundary quotient.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{factorize_u64, FactorError};
use crate::kgraph::{Degree, KGraphError, KGraphSpec, Letter, Word};

/// Exact prime factorization by bounded trial division (see
/// [`crate::arith::factorize_u64`]).
pub use crate::arith::factorize_u64 as factorize_integer;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IndependenceError {
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    KGraph(#[from] KGraphError),
    #[error("certificate is invalid: {0}")]
    InvalidCertificate(String),
}

/// Prime-exponent presentation of the alphabet sizes: `n_i = ∏ primes^row_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentMatrix {
    pub primes: Vec<u64>,
    pub rows: Vec<Vec<u32>>,
}

impl ExponentMatrix {
    pub fn new(n: &[u64]) -> Result<Self, IndependenceError> {
        let factored: Vec<_> = n
            .iter()
            .map(|&m| factorize_u64(m))
            .collect::<Result<_, _>>()?;
        let mut primes: Vec<u64> = factored
            .iter()
            .flat_map(|f| f.keys().copied())
            .collect();
        primes.sort_unstable();
        primes.dedup();
        let rows = factored
            .iter()
            .map(|f| primes.iter().map(|p| *f.get(p).unwrap_or(&0)).collect())
            .collect();
        Ok(ExponentMatrix { primes, rows })
    }

    /// Reconstructs `n_i` from its row; used as a self-check.
    pub fn reconstruct(&self, row: usize) -> BigUint {
        self.primes
            .iter()
            .zip(&self.rows[row])
            .fold(BigUint::one(), |acc, (&p, &e)| {
                acc * BigUint::from(p).pow(e)
            })
    }
}

/// A verified relation `n^p = n^q` with `p ≠ q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependenceCertificate {
    pub p: Degree,
    pub q: Degree,
}

impl DependenceCertificate {
    /// Checked constructor: both powers are compared exactly.
    pub fn new(spec_n: &[u64], p: Degree, q: Degree) -> Result<Self, IndependenceError> {
        if p == q {
            return Err(IndependenceError::InvalidCertificate(
                "exponent vectors must differ".into(),
            ));
        }
        if p.rank() != spec_n.len() || q.rank() != spec_n.len() {
            return Err(IndependenceError::InvalidCertificate(
                "exponent vectors must match the rank".into(),
            ));
        }
        let npow = |d: &Degree| -> BigUint {
            spec_n
                .iter()
                .zip(&d.0)
                .fold(BigUint::one(), |acc, (&n, &e)| acc * BigUint::from(n).pow(e))
        };
        let (np, nq) = (npow(&p), npow(&q));
        if np != nq {
            return Err(IndependenceError::InvalidCertificate(format!(
                "powers differ: {np} vs {nq}"
            )));
        }
        Ok(DependenceCertificate { p, q })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dependence {
    Independent,
    Dependent(DependenceCertificate),
}

/// Decides multiplicative dependence of the sizes.
///
/// Special cases first: any `n_i = 1` is a dependence against the empty
/// power, and duplicate sizes are a dependence between unit vectors. The
/// general case finds an integer kernel vector of the exponent matrix by
/// rational elimination, scales it to a primitive integer vector, and
/// splits it into positive and negative parts.
pub fn multiplicative_dependence(n: &[u64]) -> Result<Dependence, IndependenceError> {
    let k = n.len();
    for (i, &ni) in n.iter().enumerate() {
        if ni == 0 {
            return Err(FactorError::NonPositive(0).into());
        }
        if ni == 1 {
            return Ok(Dependence::Dependent(DependenceCertificate::new(
                n,
                Degree::unit(k, i),
                Degree::zero(k),
            )?));
        }
    }
    for i in 0..k {
        for j in (i + 1)..k {
            if n[i] == n[j] {
                return Ok(Dependence::Dependent(DependenceCertificate::new(
                    n,
                    Degree::unit(k, i),
                    Degree::unit(k, j),
                )?));
            }
        }
    }

    let matrix = ExponentMatrix::new(n)?;
    match integer_kernel_vector(&matrix.rows) {
        None => Ok(Dependence::Independent),
        Some(v) => {
            let mut p = vec![0u32; k];
            let mut q = vec![0u32; k];
            for (i, value) in v.iter().enumerate() {
                let entry = value.abs().to_u32().ok_or_else(|| {
                    IndependenceError::InvalidCertificate(format!(
                        "kernel entry {value} does not fit a degree component"
                    ))
                })?;
                if value.is_positive() {
                    p[i] = entry;
                } else if value.is_negative() {
                    q[i] = entry;
                }
            }
            Ok(Dependence::Dependent(DependenceCertificate::new(
                n,
                Degree(p),
                Degree(q),
            )?))
        }
    }
}

/// A primitive nonzero integer vector `v` with `Σ v_i · rows_i = 0`, or
/// `None` when the rows are linearly independent over the rationals.
///
/// Elimination runs on the transpose so that `v` lives in row space;
/// the first free variable is fixed to one, denominators are cleared, the
/// gcd is divided out, and the sign is normalized to make the first nonzero
/// entry positive.
fn integer_kernel_vector(rows: &[Vec<u32>]) -> Option<Vec<BigInt>> {
    let k = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    // transpose: one equation per prime
    let mut m: Vec<Vec<BigRational>> = (0..cols)
        .map(|c| {
            (0..k)
                .map(|r| BigRational::from_integer(BigInt::from(rows[r][c])))
                .collect()
        })
        .collect();

    let mut pivot_of_col: Vec<Option<usize>> = vec![None; k];
    let mut row = 0;
    for col in 0..k {
        let Some(pivot_row) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pivot_row);
        let pivot = m[row][col].clone();
        for c in col..k {
            m[row][c] = &m[row][c] / &pivot;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..k {
                    m[r][c] = &m[r][c] - &factor * &m[row][c];
                }
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == m.len() {
            // remaining columns are all free
            break;
        }
    }

    let free_col = pivot_of_col.iter().position(Option::is_none)?;
    let mut v = vec![BigRational::zero(); k];
    v[free_col] = BigRational::one();
    for (col, pivot) in pivot_of_col.iter().enumerate() {
        if let Some(r) = *pivot {
            v[col] = -m[r][free_col].clone();
        }
    }

    // clear denominators, divide by gcd, normalize sign
    let denom_lcm = v
        .iter()
        .map(|x| x.denom().clone())
        .fold(BigInt::one(), |acc, d| &acc / acc.gcd(&d) * d);
    let mut ints: Vec<BigInt> = v.iter().map(|x| x.numer() * &denom_lcm / x.denom()).collect();
    let gcd = ints
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd > BigInt::one() {
        for x in &mut ints {
            *x = &*x / &gcd;
        }
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut ints {
                *x = -&*x;
            }
        }
    }
    debug_assert!(ints.iter().any(|x| !x.is_zero()));
    Some(ints)
}

/// The simplicity verdict for a spec: simple iff the sizes are
/// multiplicatively independent. A dependence comes with the certificate and
/// the two distinct words whose operator images coincide, ready for the
/// operator-level confirmation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityVerdict {
    pub simple: bool,
    pub certificate: Option<DependenceCertificate>,
    pub kernel_witness: Option<(Word, Word)>,
}

pub fn is_simple(spec: &Arc<KGraphSpec>) -> Result<SimplicityVerdict, IndependenceError> {
    match multiplicative_dependence(spec.alphabet_sizes())? {
        Dependence::Independent => Ok(SimplicityVerdict {
            simple: true,
            certificate: None,
            kernel_witness: None,
        }),
        Dependence::Dependent(cert) => {
            let witness = (
                zero_letter_power(spec, &cert.p)?,
                zero_letter_power(spec, &cert.q)?,
            );
            Ok(SimplicityVerdict {
                simple: false,
                certificate: Some(cert),
                kernel_witness: Some(witness),
            })
        }
    }
}

/// `∏_i (x^i_0)^{p_i}` in normal form.
pub fn zero_letter_power(
    spec: &Arc<KGraphSpec>,
    power: &Degree,
) -> Result<Word, IndependenceError> {
    let mut letters = Vec::new();
    for (color, &count) in power.0.iter().enumerate() {
        for _ in 0..count {
            letters.push(Letter { color, symbol: 0 });
        }
    }
    Ok(Word::new(Arc::clone(spec), letters)?)
}
