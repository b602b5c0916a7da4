//! Constructible right ideals of the monoid via congruence arithmetic.
//!
//! Over a coding spec, the principal ideal generated by a word of degree `p`
//! and code `a` is the set of words whose code is `≡ a (mod n^p)` in every
//! degree `≥ p`. Minimal common extensions therefore reduce to solving a
//! pair of congruences with non-coprime moduli, and every constructible
//! ideal is a finite code set at a single degree. Set operations inflate to
//! a common degree, which is exact.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::arith::crt_pair;
use crate::kgraph::{Degree, KGraphError, KGraphSpec, Word};
use crate::oper::{Generator, OpTerm};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdealError {
    #[error(transparent)]
    KGraph(#[from] KGraphError),
    #[error("chains must contain at least one pair")]
    EmptyChain,
    #[error("generators of an ideal must share one degree")]
    MixedDegrees,
    #[error("enumeration would touch {0} codes, above the configured bound")]
    EnumerationBound(BigUint),
}

/// A minimal common extension `μα = νβ` of degree `d(μ) ∨ d(ν)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionPair {
    pub alpha: Word,
    pub beta: Word,
}

/// All minimal common extensions of `μ` and `ν`, ordered by the code of the
/// common extension.
///
/// With `p = d(μ)`, `q = d(ν)`, `D = p ∨ q`, `a = code(μ)`, `b = code(ν)`,
/// the common extensions of degree `D` are exactly the codes
/// `c ≡ a (mod n^p)`, `c ≡ b (mod n^q)` in `[0, n^D)`; there are
/// `n^D / lcm(n^p, n^q)` of them when the congruences are compatible and
/// none otherwise.
pub fn min_common_extensions(mu: &Word, nu: &Word) -> Result<Vec<ExtensionPair>, IdealError> {
    if mu.spec() != nu.spec() {
        return Err(KGraphError::SpecMismatch.into());
    }
    let spec = mu.spec();
    let (p, a) = mu.encode()?;
    let (q, b) = nu.encode()?;
    let join = p.join(&q);
    let np = BigInt::from(spec.npow(&p));
    let nq = BigInt::from(spec.npow(&q));
    let nd = spec.npow(&join);

    let Some((r, m)) = crt_pair(&BigInt::from(a.clone()), &np, &BigInt::from(b.clone()), &nq)
    else {
        return Ok(Vec::new());
    };
    let step = m.to_biguint().expect("lcm positive");
    let mut c = r.to_biguint().expect("residue non-negative");
    let d_alpha = join.checked_sub(&p).expect("join dominates");
    let d_beta = join.checked_sub(&q).expect("join dominates");
    let np = spec.npow(&p);
    let nq = spec.npow(&q);
    let mut out = Vec::new();
    while c < nd {
        let alpha = Word::decode(spec, &d_alpha, &((&c - &a) / &np))?;
        let beta = Word::decode(spec, &d_beta, &((&c - &b) / &nq))?;
        debug_assert_eq!(mu.multiply(&alpha)?, nu.multiply(&beta)?);
        out.push(ExtensionPair { alpha, beta });
        c += &step;
    }
    Ok(out)
}

/// Outcome of the right-LCM query for a pair of words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RightLcm {
    Lcm(Word),
    NoCommonMultiple,
    MultipleMinimal { count: usize },
}

pub fn right_lcm(mu: &Word, nu: &Word) -> Result<RightLcm, IdealError> {
    let extensions = min_common_extensions(mu, nu)?;
    match extensions.len() {
        0 => Ok(RightLcm::NoCommonMultiple),
        1 => Ok(RightLcm::Lcm(mu.multiply(&extensions[0].alpha)?)),
        count => Ok(RightLcm::MultipleMinimal { count }),
    }
}

/// Witness for the failure of the right-LCM property: a pair of degree-one
/// words with two distinct minimal common extensions, exhibited as the two
/// commutation relations they satisfy.
#[derive(Clone, Debug)]
pub struct LcmFailure {
    pub colors: (usize, usize),
    pub gcd: u64,
    /// `x^i_0 x^j_{n_j/l} = x^j_0 x^i_{n_i/l}` with `l = gcd(n_i, n_j)`.
    pub relation_skew: (Word, Word),
    /// `x^i_0 x^j_0 = x^j_0 x^i_0`.
    pub relation_plain: (Word, Word),
}

/// Certified dichotomy: the monoid is right LCM iff the alphabet sizes are
/// pairwise coprime. On failure the returned witness relations are
/// re-verified through the rewriting engine before being emitted.
pub fn is_right_lcm_monoid(spec: &Arc<KGraphSpec>) -> Result<Result<(), LcmFailure>, IdealError> {
    spec.require_standard_coding()?;
    let n = spec.alphabet_sizes();
    for i in 0..n.len() {
        for j in (i + 1)..n.len() {
            let l = n[i].gcd(&n[j]);
            if l == 1 {
                continue;
            }
            // Claimed relations, re-verified through the rewriting engine:
            // the two sides must normalize to the same word.
            let pair = |s: u64, t: u64, tp: u64, sp: u64| -> Result<(Word, Word), IdealError> {
                let left = Word::letter(Arc::clone(spec), i, s)?
                    .multiply(&Word::letter(Arc::clone(spec), j, t)?)?;
                let right = Word::letter(Arc::clone(spec), j, tp)?
                    .multiply(&Word::letter(Arc::clone(spec), i, sp)?)?;
                assert_eq!(left, right, "witness relation failed to verify");
                Ok((left, right))
            };
            let skew = pair(0, n[j] / l, 0, n[i] / l)?;
            let plain = pair(0, 0, 0, 0)?;
            return Ok(Err(LcmFailure {
                colors: (i, j),
                gcd: l,
                relation_skew: skew,
                relation_plain: plain,
            }));
        }
    }
    Ok(Ok(()))
}

/// A constructible right ideal in canonical single-degree form: a finite
/// set of generator codes at one degree. The union of the corresponding
/// principal ideals is disjoint because the codes are distinct.
#[derive(Clone, Debug)]
pub struct ConstructibleIdeal {
    spec: Arc<KGraphSpec>,
    degree: Degree,
    codes: BTreeSet<BigUint>,
}

impl ConstructibleIdeal {
    /// The whole monoid: degree `0`, single code `0`.
    pub fn full(spec: Arc<KGraphSpec>) -> Self {
        ConstructibleIdeal {
            degree: Degree::zero(spec.rank()),
            codes: BTreeSet::from([BigUint::zero()]),
            spec,
        }
    }

    /// The empty ideal.
    pub fn empty(spec: Arc<KGraphSpec>) -> Self {
        ConstructibleIdeal {
            degree: Degree::zero(spec.rank()),
            codes: BTreeSet::new(),
            spec,
        }
    }

    /// Builds the ideal generated by same-degree words.
    pub fn from_generators(spec: &Arc<KGraphSpec>, generators: &[Word]) -> Result<Self, IdealError> {
        spec.require_standard_coding()?;
        let mut degree = None;
        let mut codes = BTreeSet::new();
        for word in generators {
            if word.spec() != spec {
                return Err(KGraphError::SpecMismatch.into());
            }
            let (d, c) = word.encode()?;
            match &degree {
                None => degree = Some(d),
                Some(existing) if *existing == d => {}
                Some(_) => return Err(IdealError::MixedDegrees),
            }
            codes.insert(c);
        }
        Ok(ConstructibleIdeal {
            spec: Arc::clone(spec),
            degree: degree.unwrap_or_else(|| Degree::zero(spec.rank())),
            codes,
        })
    }

    pub fn from_parts(
        spec: &Arc<KGraphSpec>,
        degree: Degree,
        codes: BTreeSet<BigUint>,
    ) -> Result<Self, IdealError> {
        spec.require_standard_coding()?;
        let bound = spec.npow(&degree);
        for c in &codes {
            if *c >= bound {
                return Err(KGraphError::CodeOutOfRange(c.clone(), degree.0.clone()).into());
            }
        }
        Ok(ConstructibleIdeal {
            spec: Arc::clone(spec),
            degree,
            codes,
        })
    }

    pub fn spec(&self) -> &Arc<KGraphSpec> {
        &self.spec
    }

    pub fn degree(&self) -> &Degree {
        &self.degree
    }

    pub fn codes(&self) -> &BTreeSet<BigUint> {
        &self.codes
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// Full iff the generators cover every residue at their degree.
    pub fn is_full(&self) -> bool {
        BigUint::from(self.codes.len()) == self.spec.npow(&self.degree)
    }

    pub fn generators(&self) -> Vec<Word> {
        self.codes
            .iter()
            .map(|c| Word::decode(&self.spec, &self.degree, c).expect("codes in range"))
            .collect()
    }

    /// Deduplicated canonical form. Idempotent; the empty ideal normalizes
    /// to degree `0`.
    pub fn canonical_form(&self) -> Self {
        if self.codes.is_empty() {
            return ConstructibleIdeal::empty(Arc::clone(&self.spec));
        }
        self.clone()
    }

    /// Re-expresses the ideal at a larger degree: each generator of degree
    /// `p` expands to all codes congruent to it mod `n^p`.
    ///
    /// The two forms agree on every word whose degree dominates the target
    /// and carry the same range projection; words strictly below the target
    /// degree are traded for their one-step extensions, which is exactly
    /// the identification the boundary relations impose.
    pub fn inflate(&self, degree: &Degree) -> Result<Self, IdealError> {
        if !self.degree.le(degree) {
            return Err(IdealError::KGraph(KGraphError::DegreeOutOfRange));
        }
        if self.degree == *degree {
            return Ok(self.clone());
        }
        let small = self.spec.npow(&self.degree);
        let big = self.spec.npow(degree);
        let mut codes = BTreeSet::new();
        for base in &self.codes {
            let mut c = base.clone();
            while c < big {
                codes.insert(c.clone());
                c += &small;
            }
        }
        Ok(ConstructibleIdeal {
            spec: Arc::clone(&self.spec),
            degree: degree.clone(),
            codes,
        })
    }

    /// Literal membership of a word: some generator is a prefix, which
    /// requires the word's degree to dominate the ideal's degree.
    pub fn contains(&self, word: &Word) -> Result<bool, IdealError> {
        if word.spec() != &self.spec {
            return Err(KGraphError::SpecMismatch.into());
        }
        let (d, c) = word.encode()?;
        if !self.degree.le(&d) {
            return Ok(false);
        }
        let m = self.spec.npow(&self.degree);
        Ok(self.codes.contains(&(c % m)))
    }
}

impl ConstructibleIdeal {
    /// JSON form with decimal-string codes:
    /// `{"degree":[1,1],"codes":["0","4"]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "degree": self.degree.0,
            "codes": self.codes.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(
        spec: &Arc<KGraphSpec>,
        value: &serde_json::Value,
    ) -> Result<Self, IdealError> {
        let degree: Vec<u32> = value
            .get("degree")
            .and_then(|v| v.as_array())
            .ok_or_else(|| KGraphError::ParseError("missing \"degree\" array".into()))?
            .iter()
            .map(|v| {
                v.as_u64()
                    .and_then(|x| u32::try_from(x).ok())
                    .ok_or_else(|| KGraphError::ParseError("bad degree entry".into()))
            })
            .collect::<Result<_, _>>()?;
        let codes: BTreeSet<BigUint> = value
            .get("codes")
            .and_then(|v| v.as_array())
            .ok_or_else(|| KGraphError::ParseError("missing \"codes\" array".into()))?
            .iter()
            .map(|v| {
                v.as_str()
                    .and_then(|s| s.parse::<BigUint>().ok())
                    .ok_or_else(|| {
                        KGraphError::ParseError("codes are decimal strings".into())
                    })
            })
            .collect::<Result<_, _>>()?;
        ConstructibleIdeal::from_parts(spec, Degree(degree), codes)
    }
}

/// Equality compares code sets after inflating both sides to the join
/// degree — the identification under which a generator and the family of
/// its one-letter extensions present the same ideal, matching the equality
/// of the associated range projections.
impl PartialEq for ConstructibleIdeal {
    fn eq(&self, other: &Self) -> bool {
        if self.spec != other.spec {
            return false;
        }
        if self.codes.is_empty() || other.codes.is_empty() {
            return self.codes.is_empty() && other.codes.is_empty();
        }
        let join = self.degree.join(&other.degree);
        let a = self.inflate(&join).expect("join dominates");
        let b = other.inflate(&join).expect("join dominates");
        a.codes == b.codes
    }
}

impl Eq for ConstructibleIdeal {}

/// The ideal `μ_n^{-1} ν_n ⋯ μ_1^{-1} ν_1 · F` computed by the minimal
/// common extension recursion: start from the extension pairs of
/// `(μ_1, ν_1)`, then repeatedly extend against `(μ_{i+1}, ν_{i+1}·α)`.
pub fn chain_ideal(
    spec: &Arc<KGraphSpec>,
    pairs: &[(Word, Word)],
) -> Result<ConstructibleIdeal, IdealError> {
    spec.require_standard_coding()?;
    if pairs.is_empty() {
        return Err(IdealError::EmptyChain);
    }
    let (mu1, nu1) = &pairs[0];
    let mut front: Vec<Word> = min_common_extensions(mu1, nu1)?
        .into_iter()
        .map(|ext| ext.alpha)
        .collect();
    for (mu, nu) in &pairs[1..] {
        let mut next = Vec::new();
        for alpha in &front {
            let extended = nu.multiply(alpha)?;
            for ext in min_common_extensions(mu, &extended)? {
                next.push(ext.alpha);
            }
        }
        front = next;
    }
    if front.is_empty() {
        return Ok(ConstructibleIdeal::empty(Arc::clone(spec)));
    }
    // Generators at one step share a degree; padding to the join is a no-op
    // kept for safety.
    let join = front
        .iter()
        .map(Word::degree)
        .fold(Degree::zero(spec.rank()), |acc, d| acc.join(&d));
    ConstructibleIdeal::from_generators(spec, &front)?
        .inflate(&join)
        .map(|ideal| ideal.canonical_form())
}

/// Intersection via minimal common extensions of the generators:
/// `X ∩ Y = ⋃_{a,b} ⋃_{(μ,ν) ∈ min(a, b)} aμ·F`, realized on codes by the
/// pairwise congruence solver.
pub fn intersect(
    x: &ConstructibleIdeal,
    y: &ConstructibleIdeal,
) -> Result<ConstructibleIdeal, IdealError> {
    if x.spec != y.spec {
        return Err(KGraphError::SpecMismatch.into());
    }
    let spec = &x.spec;
    let join = x.degree.join(&y.degree);
    let nd = spec.npow(&join);
    let np = BigInt::from(spec.npow(&x.degree));
    let nq = BigInt::from(spec.npow(&y.degree));
    let mut codes = BTreeSet::new();
    for a in &x.codes {
        for b in &y.codes {
            let Some((r, m)) =
                crt_pair(&BigInt::from(a.clone()), &np, &BigInt::from(b.clone()), &nq)
            else {
                continue;
            };
            let step = m.to_biguint().expect("lcm positive");
            let mut c = r.to_biguint().expect("residue non-negative");
            while c < nd {
                codes.insert(c.clone());
                c += &step;
            }
        }
    }
    Ok(ConstructibleIdeal {
        spec: Arc::clone(spec),
        degree: join,
        codes,
    }
    .canonical_form())
}

/// Report of the exhaustiveness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExhaustiveReport {
    pub exhaustive: bool,
    /// A code at the join degree with no common extension into the family.
    pub witness: Option<BigUint>,
    pub degree: Degree,
}

/// Decides whether every word has a common extension with some member of
/// `family` — equivalently, whether the principal ideals of the family form
/// a foundation set.
///
/// Quantifies over codes at the join degree `d_max`: `c` is covered iff
/// `c ≡ code(α) (mod n^{d(α)})` for some `α`. `enumeration_bound`, when set,
/// refuses runs that would enumerate more than that many codes.
pub fn is_exhaustive(
    spec: &Arc<KGraphSpec>,
    family: &[Word],
    enumeration_bound: Option<u64>,
) -> Result<ExhaustiveReport, IdealError> {
    spec.require_standard_coding()?;
    let d_max = family
        .iter()
        .map(Word::degree)
        .fold(Degree::zero(spec.rank()), |acc, d| acc.join(&d));
    let total = spec.npow(&d_max);
    if let Some(bound) = enumeration_bound {
        if total > BigUint::from(bound) {
            return Err(IdealError::EnumerationBound(total));
        }
    }
    let moduli: Vec<(BigUint, BigUint)> = family
        .iter()
        .map(|w| {
            let (d, c) = w.encode()?;
            Ok((spec.npow(&d), c))
        })
        .collect::<Result<_, IdealError>>()?;
    let mut c = BigUint::zero();
    while c < total {
        let covered = moduli.iter().any(|(m, code)| &c % m == *code);
        if !covered {
            return Ok(ExhaustiveReport {
                exhaustive: false,
                witness: Some(c),
                degree: d_max,
            });
        }
        c += 1u32;
    }
    Ok(ExhaustiveReport {
        exhaustive: true,
        witness: None,
        degree: d_max,
    })
}

/// The range projection of an ideal as a formal operator: the sum of
/// `g_α g_α^*` over the canonical generators. The empty ideal maps to the
/// zero operator and the full ideal to the identity.
pub fn ideal_projection(ideal: &ConstructibleIdeal) -> OpTerm {
    let mut term = OpTerm::zero();
    for word in ideal.generators() {
        let gens: Vec<Generator> = word
            .letters()
            .iter()
            .map(|l| Generator::G(l.color, l.symbol))
            .collect();
        let mut adjoint: Vec<Generator> = gens
            .iter()
            .rev()
            .map(|g| g.adjoint())
            .collect();
        let mut product = gens;
        product.append(&mut adjoint);
        term = term.add(&OpTerm::word(product));
    }
    term
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, ToPrimitive};

    fn spec(n: &[u64]) -> Arc<KGraphSpec> {
        KGraphSpec::standard(n.to_vec()).unwrap()
    }

    fn w(spec: &Arc<KGraphSpec>, s: &str) -> Word {
        Word::parse(spec, s).unwrap()
    }

    fn codes(values: &[u64]) -> BTreeSet<BigUint> {
        values.iter().map(|&v| BigUint::from(v)).collect()
    }

    #[test]
    fn min_ext_coprime_singleton() {
        let s = spec(&[2, 3]);
        let exts = min_common_extensions(&w(&s, "x1:0"), &w(&s, "x2:0")).unwrap();
        assert_eq!(exts.len(), 1);
        let common = w(&s, "x1:0").multiply(&exts[0].alpha).unwrap();
        let (d, c) = common.encode().unwrap();
        assert_eq!(d, Degree(vec![1, 1]));
        assert_eq!(c, BigUint::zero());
    }

    #[test]
    fn min_ext_equal_words() {
        let s = spec(&[2, 3]);
        let word = w(&s, "x1:1 x2:2");
        let exts = min_common_extensions(&word, &word).unwrap();
        assert_eq!(exts.len(), 1);
        assert!(exts[0].alpha.is_empty());
        assert!(exts[0].beta.is_empty());
    }

    #[test]
    fn min_ext_non_coprime_pair() {
        let s = spec(&[2, 4]);
        let exts = min_common_extensions(&w(&s, "x1:0"), &w(&s, "x2:0")).unwrap();
        assert_eq!(exts.len(), 2);
        let cs: Vec<u64> = exts
            .iter()
            .map(|e| {
                let (_, c) = w(&s, "x1:0").multiply(&e.alpha).unwrap().encode().unwrap();
                c.to_u64().unwrap()
            })
            .collect();
        assert_eq!(cs, vec![0, 4]);
    }

    #[test]
    fn right_lcm_cases() {
        let s = spec(&[2, 3]);
        let lcm = right_lcm(&w(&s, "x1:0"), &w(&s, "x2:0")).unwrap();
        match lcm {
            RightLcm::Lcm(word) => {
                let (d, c) = word.encode().unwrap();
                assert_eq!((d, c), (Degree(vec![1, 1]), BigUint::zero()));
            }
            other => panic!("expected unique lcm, got {other:?}"),
        }
        let word = w(&s, "x1:1");
        assert_eq!(right_lcm(&word, &word).unwrap(), RightLcm::Lcm(word));
        assert_eq!(
            right_lcm(&w(&s, "x1:0"), &w(&s, "x1:1")).unwrap(),
            RightLcm::NoCommonMultiple
        );

        let s24 = spec(&[2, 4]);
        assert_eq!(
            right_lcm(&w(&s24, "x1:0"), &w(&s24, "x2:0")).unwrap(),
            RightLcm::MultipleMinimal { count: 2 }
        );
    }

    #[test]
    fn lcm_monoid_dichotomy() {
        assert!(is_right_lcm_monoid(&spec(&[2, 3])).unwrap().is_ok());
        assert!(is_right_lcm_monoid(&spec(&[5])).unwrap().is_ok());
        let failure = is_right_lcm_monoid(&spec(&[2, 4])).unwrap().unwrap_err();
        assert_eq!(failure.gcd, 2);
        // letters (0, n_j/l) = (0, 2) and (0, 0)
        let s24 = spec(&[2, 4]);
        assert_eq!(
            failure.relation_skew.0,
            w(&s24, "x1:0 x2:2")
        );
        assert_eq!(failure.relation_skew.0, failure.relation_skew.1);
        assert_eq!(failure.relation_plain.0, failure.relation_plain.1);
    }

    #[test]
    fn chain_examples() {
        let s = spec(&[2, 3]);
        // trivial chain: the whole monoid
        let full = chain_ideal(&s, &[(w(&s, "x1:0"), w(&s, "x1:0"))]).unwrap();
        assert_eq!(full, ConstructibleIdeal::full(s.clone()));
        assert!(full.is_full());

        // incompatible letters: empty
        let empty = chain_ideal(&s, &[(w(&s, "x1:0"), w(&s, "x1:1"))]).unwrap();
        assert!(empty.is_empty());

        // non-coprime: two generators at degree (0,1)
        let s24 = spec(&[2, 4]);
        let ideal = chain_ideal(&s24, &[(w(&s24, "x1:0"), w(&s24, "x2:0"))]).unwrap();
        assert_eq!(ideal.degree(), &Degree(vec![0, 1]));
        assert_eq!(ideal.codes(), &codes(&[0, 2]));
    }

    #[test]
    fn canonical_and_inflate() {
        let s = spec(&[2, 3]);
        // {x1:0, x1:1} inflated to degree (1,0) covers everything
        let gens = vec![w(&s, "x1:0"), w(&s, "x1:1")];
        let ideal = ConstructibleIdeal::from_generators(&s, &gens).unwrap();
        assert!(ideal.is_full());
        assert_eq!(ideal, ConstructibleIdeal::full(s.clone()));

        let empty = ConstructibleIdeal::empty(s.clone());
        assert_eq!(empty.canonical_form(), empty);

        let full = ConstructibleIdeal::full(s.clone());
        let inflated = full.inflate(&Degree(vec![1, 1])).unwrap();
        assert_eq!(inflated.codes().len(), 6);
        assert_eq!(inflated, full);
    }

    #[test]
    fn intersect_examples() {
        let s = spec(&[2, 3]);
        let x = ConstructibleIdeal::from_generators(&s, &[w(&s, "x1:0")]).unwrap();
        let y = ConstructibleIdeal::from_generators(&s, &[w(&s, "x2:0")]).unwrap();
        let meet = intersect(&x, &y).unwrap();
        assert_eq!(meet.degree(), &Degree(vec![1, 1]));
        assert_eq!(meet.codes(), &codes(&[0]));

        let full = ConstructibleIdeal::full(s.clone());
        assert_eq!(intersect(&full, &y).unwrap(), y);

        let s24 = spec(&[2, 4]);
        let x = ConstructibleIdeal::from_generators(&s24, &[w(&s24, "x1:0")]).unwrap();
        let y = ConstructibleIdeal::from_generators(&s24, &[w(&s24, "x2:0")]).unwrap();
        let meet = intersect(&x, &y).unwrap();
        assert_eq!(meet.degree(), &Degree(vec![1, 1]));
        assert_eq!(meet.codes(), &codes(&[0, 4]));
    }

    #[test]
    fn intersect_laws_small() {
        let s = spec(&[2, 4]);
        let ideals = vec![
            ConstructibleIdeal::full(s.clone()),
            ConstructibleIdeal::empty(s.clone()),
            ConstructibleIdeal::from_generators(&s, &[w(&s, "x1:0")]).unwrap(),
            ConstructibleIdeal::from_generators(&s, &[w(&s, "x2:1"), w(&s, "x2:3")]).unwrap(),
        ];
        for a in &ideals {
            assert_eq!(intersect(a, a).unwrap(), *a);
            for b in &ideals {
                let ab = intersect(a, b).unwrap();
                assert_eq!(ab, intersect(b, a).unwrap());
                assert_eq!(ab.canonical_form(), ab);
                for c in &ideals {
                    assert_eq!(
                        intersect(&ab, c).unwrap(),
                        intersect(a, &intersect(b, c).unwrap()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn exhaustive_examples() {
        let s = spec(&[2, 3]);
        let letters: Vec<Word> = vec![
            w(&s, "x1:0"),
            w(&s, "x1:1"),
        ];
        assert!(is_exhaustive(&s, &letters, None).unwrap().exhaustive);

        let report = is_exhaustive(&s, &[w(&s, "x1:0")], None).unwrap();
        assert!(!report.exhaustive);
        assert_eq!(report.witness, Some(BigUint::one()));

        let s24 = spec(&[2, 4]);
        let family = vec![w(&s24, "x1:0"), w(&s24, "x2:1"), w(&s24, "x2:3")];
        let report = is_exhaustive(&s24, &family, None).unwrap();
        assert!(report.exhaustive);
        assert_eq!(report.degree, Degree(vec![1, 1]));

        assert!(matches!(
            is_exhaustive(&s24, &family, Some(4)),
            Err(IdealError::EnumerationBound(_))
        ));
    }

    #[test]
    fn projection_semantics() {
        use crate::oper::{L2Model, Model, OpTerm};
        let s = spec(&[2, 3]);
        let model = L2Model::new(s.clone());
        // full ideal → identity
        let full = ideal_projection(&ConstructibleIdeal::full(s.clone()));
        assert!(model.op_equal(&full, &OpTerm::one(), Model::QFZ).unwrap());
        // empty ideal → zero
        let empty = ideal_projection(&ConstructibleIdeal::empty(s.clone()));
        assert!(model.semantics(&empty, Model::QFZ).unwrap().is_zero());
        // {x1:0 F} → the indicator of the even class
        let even =
            ideal_projection(&ConstructibleIdeal::from_generators(&s, &[w(&s, "x1:0")]).unwrap());
        let canon = model.semantics(&even, Model::QFZ).unwrap();
        assert_eq!(canon.modulus(), 2);
        for m in -6i64..=6 {
            let image = canon.apply(&num_bigint::BigInt::from(m));
            if m % 2 == 0 {
                assert_eq!(image.len(), 1);
                assert_eq!(image[0].1, num_bigint::BigInt::from(m));
            } else {
                assert!(image.is_empty());
            }
        }
    }

    #[test]
    fn membership_matches_inflation() {
        let s = spec(&[2, 4]);
        let ideal = ConstructibleIdeal::from_generators(&s, &[w(&s, "x2:1")]).unwrap();
        assert!(ideal.contains(&w(&s, "x2:1 x1:0")).unwrap());
        assert!(!ideal.contains(&w(&s, "x2:0")).unwrap());
        assert!(!ideal.contains(&w(&s, "x1:1")).unwrap());
        // an inflated copy agrees on every word dominating its degree; the
        // generator itself is traded for its one-step extensions
        let target = Degree(vec![1, 1]);
        let inflated = ideal.inflate(&target).unwrap();
        assert_eq!(inflated, ideal);
        assert!(!inflated.contains(&w(&s, "x2:1")).unwrap());
        for word in crate::selfsim::words_up_to_length(&s, 4) {
            if !target.le(&word.degree()) {
                continue;
            }
            assert_eq!(
                ideal.contains(&word).unwrap(),
                inflated.contains(&word).unwrap(),
                "word {word}"
            );
        }
    }
}
