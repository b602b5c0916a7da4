//! The monomial calculus of the product system over the circle-fibered
//! path space.
//!
//! The degree-`p` fiber is spanned by the monomials `γ_l(z, p) = z^l`; the
//! diamond product multiplies exponents by the same mixed-radix law as word
//! codes, inner products collapse to Laurent monomials `n^p·ι^N`, and the
//! representation sends `γ_{s + n_{i₀}l}` of degree `p` to
//! `√(n^p) · g_{i₀,s} f^l g_{i₀,0}^{p_{i₀}−1} ∏_{i>i₀} g_{i,0}^{p_i}`.
//! All of its defining identities are verified as exact canonical-form
//! equalities of the operator calculus.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::kgraph::{Degree, KGraphError, KGraphSpec};
use crate::oper::{ExactScalar, Generator, L2Model, Model, OpTerm, OperError};
use crate::report::CheckReport;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PsystemError {
    #[error(transparent)]
    KGraph(#[from] KGraphError),
    #[error(transparent)]
    Oper(#[from] OperError),
    #[error("operands come from different specs")]
    SpecMismatch,
    #[error("inner products need equal degrees: {0:?} vs {1:?}")]
    DegreeMismatch(Vec<u32>, Vec<u32>),
}

/// The basis function `γ_l(z, p) = z^l` on the degree-`p` fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    spec: Arc<KGraphSpec>,
    pub degree: Degree,
    pub exponent: BigInt,
}

impl Monomial {
    pub fn new(spec: Arc<KGraphSpec>, degree: Degree, exponent: impl Into<BigInt>) -> Self {
        Monomial {
            spec,
            degree,
            exponent: exponent.into(),
        }
    }

    pub fn spec(&self) -> &Arc<KGraphSpec> {
        &self.spec
    }
}

/// An element `c · ι^N` of the coefficient algebra, with explicit zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LaurentScalar {
    Zero,
    Term { coeff: ExactScalar, power: BigInt },
}

impl LaurentScalar {
    pub fn term(coeff: ExactScalar, power: impl Into<BigInt>) -> Self {
        if coeff.is_zero() {
            LaurentScalar::Zero
        } else {
            LaurentScalar::Term {
                coeff,
                power: power.into(),
            }
        }
    }
}

/// Diamond product: `γ_l ⋄ γ_{l'}` of degrees `p, q` is `γ_{l + n^p·l'}` of
/// degree `p + q` (the word-code law on exponents).
pub fn diamond(x: &Monomial, y: &Monomial) -> Result<Monomial, PsystemError> {
    if x.spec != y.spec {
        return Err(PsystemError::SpecMismatch);
    }
    let npow = BigInt::from(x.spec.npow(&x.degree));
    Ok(Monomial {
        spec: Arc::clone(&x.spec),
        degree: x.degree.add(&y.degree),
        exponent: &x.exponent + npow * &y.exponent,
    })
}

/// Inner product of equal-degree monomials:
/// `⟨γ_l, γ_{l'}⟩ = n^p · ι^{(l'−l)/n^p}` when `n^p | l'−l`, else `0`.
pub fn inner(x: &Monomial, y: &Monomial) -> Result<LaurentScalar, PsystemError> {
    if x.spec != y.spec {
        return Err(PsystemError::SpecMismatch);
    }
    if x.degree != y.degree {
        return Err(PsystemError::DegreeMismatch(
            x.degree.0.clone(),
            y.degree.0.clone(),
        ));
    }
    let npow = BigInt::from(x.spec.npow(&x.degree));
    let diff = &y.exponent - &x.exponent;
    let (q, r) = diff.div_rem(&npow);
    if !r.is_zero() {
        return Ok(LaurentScalar::Zero);
    }
    Ok(LaurentScalar::term(
        ExactScalar::from_biguint(&x.spec.npow(&x.degree)),
        q,
    ))
}

/// Left action of `ι^j`: `ι^j · γ_l = γ_{l+j}`.
pub fn left_act(j: impl Into<BigInt>, x: &Monomial) -> Monomial {
    Monomial {
        spec: Arc::clone(&x.spec),
        degree: x.degree.clone(),
        exponent: &x.exponent + j.into(),
    }
}

/// The representation of a monomial as a formal operator word.
///
/// Degree zero: `ι^j ↦ f^j`. Otherwise, with `i₀` the first color of
/// nonzero degree and `l = s + n_{i₀}·l'` (Euclidean split), the image is
/// `√(n^p) · g_{i₀,s} f^{l'} g_{i₀,0}^{p_{i₀}−1} ∏_{i>i₀} g_{i,0}^{p_i}`.
pub fn psi(x: &Monomial) -> Result<OpTerm, PsystemError> {
    if x.degree.is_zero() {
        let j = x
            .exponent
            .to_i64()
            .ok_or_else(|| OperError::InvalidGenerator("exponent too large".into()))?;
        return Ok(OpTerm::word(OpTerm::f_power(j)));
    }
    let i0 = x
        .degree
        .0
        .iter()
        .position(|&c| c > 0)
        .expect("nonzero degree");
    let n0 = BigInt::from(x.spec.alphabet(i0));
    let (l, s) = x.exponent.div_mod_floor(&n0);
    let s = s.to_u64().expect("letter fits u64");
    let l = l
        .to_i64()
        .ok_or_else(|| OperError::InvalidGenerator("exponent too large".into()))?;
    let mut word = vec![Generator::G(i0, s)];
    word.extend(OpTerm::f_power(l));
    word.extend(vec![Generator::G(i0, 0); (x.degree.0[i0] - 1) as usize]);
    for i in (i0 + 1)..x.spec.rank() {
        word.extend(vec![Generator::G(i, 0); x.degree.0[i] as usize]);
    }
    Ok(OpTerm::scaled_word(
        ExactScalar::sqrt_npow(&x.spec, &x.degree),
        word,
    ))
}

/// `ψ_0` on Laurent scalars: `c·ι^N ↦ c·f^N`.
pub fn psi_scalar(value: &LaurentScalar) -> Result<OpTerm, PsystemError> {
    match value {
        LaurentScalar::Zero => Ok(OpTerm::zero()),
        LaurentScalar::Term { coeff, power } => {
            let n = power
                .to_i64()
                .ok_or_else(|| OperError::InvalidGenerator("power too large".into()))?;
            Ok(OpTerm::scaled_word(coeff.clone(), OpTerm::f_power(n)))
        }
    }
}

fn monomials(spec: &Arc<KGraphSpec>, degree: &Degree, exp_range: i64) -> Vec<Monomial> {
    (-exp_range..=exp_range)
        .map(|l| Monomial::new(Arc::clone(spec), degree.clone(), l))
        .collect()
}

/// Isometry identity: `ψ(x)* ψ(y) = ψ_0(⟨x, y⟩)` over the exponent grid.
pub fn verify_psi_isometry(
    spec: &Arc<KGraphSpec>,
    degrees: &[Degree],
    exp_range: i64,
) -> Result<CheckReport, PsystemError> {
    let model = L2Model::new(Arc::clone(spec));
    let mut report = CheckReport::new("psi-isometry");
    for degree in degrees {
        for x in monomials(spec, degree, exp_range) {
            for y in monomials(spec, degree, exp_range) {
                let left = psi(&x)?.adjoint().mul(&psi(&y)?);
                let right = psi_scalar(&inner(&x, &y)?)?;
                let label = format!(
                    "deg={} l={} l'={}",
                    degree, x.exponent, y.exponent
                );
                if model.op_equal(&left, &right, Model::QFZ)? {
                    report.pass(label);
                } else {
                    let witness = model
                        .first_difference(&left, &right, Model::QFZ)?
                        .unwrap_or_default();
                    report.fail(label, witness);
                }
            }
        }
    }
    Ok(report)
}

/// Multiplicativity: `ψ(x)·ψ(y) = ψ(x ⋄ y)` over degree pairs.
pub fn verify_psi_multiplicative(
    spec: &Arc<KGraphSpec>,
    degrees: &[Degree],
    exp_range: i64,
) -> Result<CheckReport, PsystemError> {
    let model = L2Model::new(Arc::clone(spec));
    let mut report = CheckReport::new("psi-multiplicative");
    for p in degrees {
        for q in degrees {
            for x in monomials(spec, p, exp_range) {
                for y in monomials(spec, q, exp_range) {
                    let left = psi(&x)?.mul(&psi(&y)?);
                    let right = psi(&diamond(&x, &y)?)?;
                    let label = format!(
                        "p={} q={} l={} l'={}",
                        p, q, x.exponent, y.exponent
                    );
                    if model.op_equal(&left, &right, Model::QFZ)? {
                        report.pass(label);
                    } else {
                        let witness = model
                            .first_difference(&left, &right, Model::QFZ)?
                            .unwrap_or_default();
                        report.fail(label, witness);
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Left-action intertwining: `ψ(ι^j · x) = f^j · ψ(x)`.
pub fn verify_psi_left_action(
    spec: &Arc<KGraphSpec>,
    degrees: &[Degree],
    exp_range: i64,
) -> Result<CheckReport, PsystemError> {
    let model = L2Model::new(Arc::clone(spec));
    let mut report = CheckReport::new("psi-left-action");
    for degree in degrees {
        for x in monomials(spec, degree, exp_range) {
            for j in -2i64..=2 {
                let left = psi(&left_act(j, &x))?;
                let right = OpTerm::word(OpTerm::f_power(j)).mul(&psi(&x)?);
                let label = format!("deg={} l={} j={}", degree, x.exponent, j);
                if model.op_equal(&left, &right, Model::QFZ)? {
                    report.pass(label);
                } else {
                    let witness = model
                        .first_difference(&left, &right, Model::QFZ)?
                        .unwrap_or_default();
                    report.fail(label, witness);
                }
            }
        }
    }
    Ok(report)
}

/// Cuntz–Pimsner covariance at color `i`:
/// `Σ_{s∈[n_i]} (1/n_i) · ψ(γ_{s+1}) ψ(γ_s)* = f`.
pub fn verify_cp_covariance(
    spec: &Arc<KGraphSpec>,
    color: usize,
) -> Result<CheckReport, PsystemError> {
    let model = L2Model::new(Arc::clone(spec));
    let mut report = CheckReport::new("cp-covariance");
    let degree = Degree::unit(spec.rank(), color);
    let n = spec.alphabet(color);
    let inv_n = ExactScalar::from_rational(num_rational::BigRational::new(
        1.into(),
        BigInt::from(n),
    ));
    let mut sum = OpTerm::zero();
    for s in 0..n {
        let up = Monomial::new(Arc::clone(spec), degree.clone(), s as i64 + 1);
        let down = Monomial::new(Arc::clone(spec), degree.clone(), s as i64);
        sum = sum.add(&psi(&up)?.mul(&psi(&down)?.adjoint()).scale(&inv_n));
    }
    let right = OpTerm::generator(Generator::F);
    let label = format!("color={}", color + 1);
    if model.op_equal(&sum, &right, Model::QFZ)? {
        report.pass(label);
    } else {
        let witness = model
            .first_difference(&sum, &right, Model::QFZ)?
            .unwrap_or_default();
        report.fail(label, witness);
    }
    Ok(report)
}
