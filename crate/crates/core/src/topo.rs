//! The circle-fibered path space over exact rational angles.
//!
//! A path of degree `p` is a pair `(z, p)` with range `(z, 0)` and source
//! `(z^{n^p}, 0)`; on rational angles `a/b` the power map is multiplication
//! by `n^p` mod 1, so all of the path arithmetic, root extraction and
//! orbit-density searches run in exact rational arithmetic. Irrational
//! angles are out of computational reach; the arithmetic criterion
//! `n^p ≠ n^q` handled by the independence machinery is the exact
//! replacement wherever the construction would call for one.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::kgraph::{Degree, KGraphSpec};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TopoError {
    #[error("paths are not composable: source {0} ≠ range {1}")]
    NotComposable(Angle, Angle),
    #[error("degree is out of range")]
    DegreeOutOfRange,
    #[error("cannot parse angle: {0}")]
    ParseError(String),
    #[error("ε must be positive")]
    NonPositiveEpsilon,
    #[error("orbit search requires some alphabet size ≥ 2")]
    NoExpansion,
    #[error("n_1·δ = {0} is not below 1/4")]
    DeltaTooLarge(BigRational),
    #[error("contracting sets need n_1 ≥ 2")]
    RankDegenerate,
    #[error("orbit search exhausted the degree cap")]
    SearchExhausted,
}

/// A point of the circle as a reduced fraction in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Angle(BigRational);

impl Angle {
    pub fn new(value: BigRational) -> Self {
        Angle(value.clone() - value.floor())
    }

    pub fn zero() -> Self {
        Angle(BigRational::zero())
    }

    pub fn from_fraction(numer: i64, denom: i64) -> Self {
        Angle::new(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    /// Parses `"a/b"` (or a bare integer, which reduces to 0).
    pub fn parse(input: &str) -> Result<Self, TopoError> {
        let input = input.trim();
        let (n, d) = match input.split_once('/') {
            Some((n, d)) => (n, d),
            None => (input, "1"),
        };
        let numer: BigInt = n
            .trim()
            .parse()
            .map_err(|_| TopoError::ParseError(input.into()))?;
        let denom: BigInt = d
            .trim()
            .parse()
            .map_err(|_| TopoError::ParseError(input.into()))?;
        if denom.is_zero() {
            return Err(TopoError::ParseError(input.into()));
        }
        Ok(Angle::new(BigRational::new(numer, denom)))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    /// The image under `z ↦ z^m`: multiplication by `m` mod 1.
    pub fn power(&self, m: &BigUint) -> Angle {
        Angle::new(&self.0 * BigRational::from_integer(BigInt::from(m.clone())))
    }

    /// Normalized arc distance: `min(|Δ|, 1 − |Δ|)`.
    pub fn circle_distance(&self, other: &Angle) -> BigRational {
        let diff = (&self.0 - &other.0).abs();
        let wrap = BigRational::one() - &diff;
        diff.min(wrap)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

/// A path `(z, p)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PathPoint {
    pub angle: Angle,
    pub degree: Degree,
}

impl PathPoint {
    pub fn new(angle: Angle, degree: Degree) -> Self {
        PathPoint { angle, degree }
    }
}

impl fmt::Display for PathPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.angle, self.degree)
    }
}

/// Range `(z, 0)`.
pub fn range(x: &PathPoint) -> PathPoint {
    PathPoint::new(x.angle.clone(), Degree::zero(x.degree.rank()))
}

/// Source `(z^{n^p}, 0)`.
pub fn source(spec: &KGraphSpec, x: &PathPoint) -> PathPoint {
    PathPoint::new(
        x.angle.power(&spec.npow(&x.degree)),
        Degree::zero(x.degree.rank()),
    )
}

pub fn deg(x: &PathPoint) -> Degree {
    x.degree.clone()
}

/// `(z, p)·(w, q) = (z, p+q)` when `s(z,p) = r(w,q)`.
pub fn compose(spec: &KGraphSpec, x: &PathPoint, y: &PathPoint) -> Result<PathPoint, TopoError> {
    let s = source(spec, x);
    if s.angle != y.angle {
        return Err(TopoError::NotComposable(s.angle, y.angle.clone()));
    }
    Ok(PathPoint::new(
        x.angle.clone(),
        x.degree.add(&y.degree),
    ))
}

/// Unique factorization `(z, p) = (z, front)·(z^{n^front}, p − front)`.
pub fn factorize_path(
    spec: &KGraphSpec,
    x: &PathPoint,
    front: &Degree,
) -> Result<(PathPoint, PathPoint), TopoError> {
    let back = x
        .degree
        .checked_sub(front)
        .ok_or(TopoError::DegreeOutOfRange)?;
    let head = PathPoint::new(x.angle.clone(), front.clone());
    let tail = PathPoint::new(x.angle.power(&spec.npow(front)), back);
    Ok((head, tail))
}

/// The `n^p` angles `w` with `w·n^p ≡ v (mod 1)`: `(v + j)/n^p` for
/// `j ∈ [n^p]`, each reduced. Every one satisfies `s((w, p)) = (v, 0)`.
pub fn roots(spec: &KGraphSpec, v: &Angle, p: &Degree) -> Vec<Angle> {
    let count = spec.npow(p);
    let denom = BigRational::from_integer(BigInt::from(count.clone()));
    let mut out = Vec::new();
    let mut j = BigUint::zero();
    while j < count {
        let w = (v.value() + BigRational::from_integer(BigInt::from(j.clone()))) / &denom;
        out.push(Angle::new(w));
        j += 1u32;
    }
    out
}

/// Result of the orbit-density search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitWitness {
    pub degree: Degree,
    pub root: Angle,
    pub distance: BigRational,
}

/// Finds the smallest degree (by total degree, ties lexicographically) at
/// which some `n^p`-th root of `v` lands within `ε` of `target` on the
/// circle. The roots of degree `p` are equally spaced with gap `1/n^p`, so
/// the search terminates as soon as any coordinate direction expands.
pub fn orbit_approx(
    spec: &KGraphSpec,
    v: &Angle,
    target: &Angle,
    epsilon: &BigRational,
) -> Result<OrbitWitness, TopoError> {
    if !epsilon.is_positive() {
        return Err(TopoError::NonPositiveEpsilon);
    }
    if !spec.alphabet_sizes().iter().any(|&n| n >= 2) {
        return Err(TopoError::NoExpansion);
    }
    const TOTAL_DEGREE_CAP: u32 = 4096;
    for total in 0..=TOTAL_DEGREE_CAP {
        for degree in compositions(spec.rank(), total) {
            let count = spec.npow(&degree);
            // nearest j to count·target − v
            let offset = BigRational::from_integer(BigInt::from(count.clone()))
                * target.value()
                - v.value();
            let base = offset.floor().to_integer();
            let modulus = BigInt::from(count.clone());
            let mut best: Option<(BigRational, Angle)> = None;
            for delta in 0..=1 {
                let j = (&base + BigInt::from(delta)).mod_floor(&modulus);
                let w = Angle::new(
                    (v.value() + BigRational::from_integer(j))
                        / BigRational::from_integer(modulus.clone()),
                );
                let d = w.circle_distance(target);
                if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
                    best = Some((d, w));
                }
            }
            let (distance, root) = best.expect("at least one candidate");
            if distance <= *epsilon {
                // re-verify: the root really is an n^p-th root of v
                debug_assert_eq!(root.power(&count), *v);
                return Ok(OrbitWitness {
                    degree,
                    root,
                    distance,
                });
            }
        }
    }
    Err(TopoError::SearchExhausted)
}

/// All degrees of a given total, in lexicographic order.
fn compositions(rank: usize, total: u32) -> Vec<Degree> {
    fn rec(rank: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Degree>) {
        if rank == 1 {
            let mut v = prefix.clone();
            v.push(total);
            out.push(Degree(v));
            return;
        }
        for c in 0..=total {
            prefix.push(c);
            rec(rank - 1, total - c, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(rank, total, &mut Vec::new(), &mut out);
    out
}

/// A verified contracting neighbourhood of the basepoint: the symmetric arc
/// `V = (−δ, δ)` together with `U = V × {e_1}`, whose source arc
/// `(−n_1δ, n_1δ)` strictly contains the closure of `V`.
#[derive(Clone, Debug)]
pub struct ContractingWitness {
    pub delta: BigRational,
    pub source_radius: BigRational,
    /// `r(U) ⊆ V × {0}`: ranges stay inside the arc (immediate from the
    /// fibration structure).
    pub range_contained: bool,
    /// `closure(V) ⊊ s(U)`: exact endpoint comparison `δ < n_1·δ`.
    pub strictly_contracting: bool,
}

pub fn contracting_witness(
    spec: &KGraphSpec,
    delta: &BigRational,
) -> Result<ContractingWitness, TopoError> {
    if spec.alphabet(0) < 2 {
        return Err(TopoError::RankDegenerate);
    }
    if !delta.is_positive() {
        return Err(TopoError::DeltaTooLarge(delta.clone()));
    }
    let n1 = BigRational::from_integer(BigInt::from(spec.alphabet(0)));
    let source_radius = &n1 * delta;
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    if source_radius >= quarter {
        return Err(TopoError::DeltaTooLarge(source_radius));
    }
    // r(z, e_1) = z ∈ V for z ∈ V by construction; the strict inclusion
    // [−δ, δ] ⊊ (−n_1δ, n_1δ) reduces to δ < n_1δ, an exact comparison.
    let strictly_contracting = *delta < source_radius;
    Ok(ContractingWitness {
        delta: delta.clone(),
        source_radius,
        range_contained: true,
        strictly_contracting,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kgraph::KGraphSpec;

    fn spec23() -> std::sync::Arc<KGraphSpec> {
        KGraphSpec::standard(vec![2, 3]).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn range_source_degree() {
        let spec = spec23();
        let x = PathPoint::new(Angle::from_fraction(1, 3), Degree(vec![1, 0]));
        assert_eq!(source(&spec, &x).angle, Angle::from_fraction(2, 3));
        assert_eq!(range(&x).angle, Angle::from_fraction(1, 3));

        let trivial = PathPoint::new(Angle::from_fraction(2, 7), Degree(vec![0, 0]));
        assert_eq!(source(&spec, &trivial), range(&trivial));

        // 6·(1/5) mod 1 = 1/5
        let x = PathPoint::new(Angle::from_fraction(1, 5), Degree(vec![1, 1]));
        assert_eq!(source(&spec, &x).angle, Angle::from_fraction(1, 5));
        assert_eq!(deg(&x), Degree(vec![1, 1]));
    }

    #[test]
    fn compose_examples() {
        let spec = spec23();
        let x = PathPoint::new(Angle::from_fraction(1, 3), Degree(vec![1, 0]));
        let y = PathPoint::new(Angle::from_fraction(2, 3), Degree(vec![0, 1]));
        let xy = compose(&spec, &x, &y).unwrap();
        assert_eq!(xy, PathPoint::new(Angle::from_fraction(1, 3), Degree(vec![1, 1])));

        // x · (s(x), 0) = x
        let unit = source(&spec, &x);
        assert_eq!(compose(&spec, &x, &unit).unwrap(), x);

        let bad = PathPoint::new(Angle::from_fraction(1, 3), Degree(vec![0, 1]));
        assert!(matches!(
            compose(&spec, &x, &bad),
            Err(TopoError::NotComposable(..))
        ));
    }

    #[test]
    fn factorize_inverts_compose() {
        let spec = spec23();
        let x = PathPoint::new(Angle::from_fraction(1, 5), Degree(vec![1, 1]));
        let (head, tail) = factorize_path(&spec, &x, &Degree(vec![1, 0])).unwrap();
        assert_eq!(head, PathPoint::new(Angle::from_fraction(1, 5), Degree(vec![1, 0])));
        assert_eq!(tail, PathPoint::new(Angle::from_fraction(2, 5), Degree(vec![0, 1])));
        assert_eq!(compose(&spec, &head, &tail).unwrap(), x);

        let (unit, whole) = factorize_path(&spec, &x, &Degree(vec![0, 0])).unwrap();
        assert_eq!(unit.degree, Degree(vec![0, 0]));
        assert_eq!(whole, x);
    }

    #[test]
    fn factorization_routes_consistent() {
        // all six orders of splitting a degree-(1,1,1) path agree on sources
        let spec = KGraphSpec::standard(vec![2, 3, 5]).unwrap();
        let x = PathPoint::new(Angle::from_fraction(3, 7), Degree(vec![1, 1, 1]));
        let orders = [
            [0usize, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0],
        ];
        let mut finals = Vec::new();
        for order in orders {
            let mut rest = x.clone();
            let mut pieces = Vec::new();
            for &i in &order {
                let (head, tail) =
                    factorize_path(&spec, &rest, &Degree::unit(3, i)).unwrap();
                pieces.push(head);
                rest = tail;
            }
            // recompose in the same order
            let mut acc = pieces[0].clone();
            acc = compose(&spec, &acc, &pieces[1]).unwrap();
            acc = compose(&spec, &acc, &pieces[2]).unwrap();
            assert_eq!(acc.angle, x.angle);
            finals.push(source(&spec, &rest.clone()).angle);
        }
        assert!(finals.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn roots_examples() {
        let spec = spec23();
        let r = roots(&spec, &Angle::zero(), &Degree(vec![1, 0]));
        assert_eq!(r, vec![Angle::zero(), Angle::from_fraction(1, 2)]);

        let r = roots(&spec, &Angle::zero(), &Degree(vec![1, 1]));
        assert_eq!(r.len(), 6);
        for (j, w) in r.iter().enumerate() {
            assert_eq!(*w, Angle::from_fraction(j as i64, 6));
            assert_eq!(
                source(&spec, &PathPoint::new(w.clone(), Degree(vec![1, 1]))).angle,
                Angle::zero()
            );
        }

        let r = roots(&spec, &Angle::from_fraction(1, 3), &Degree(vec![1, 0]));
        assert_eq!(r, vec![Angle::from_fraction(1, 6), Angle::from_fraction(2, 3)]);
    }

    #[test]
    fn orbit_search_examples() {
        let spec = spec23();
        // ε = 1/12 reaches 1/3 exactly at degree (0,1)
        let w = orbit_approx(
            &spec,
            &Angle::zero(),
            &Angle::from_fraction(1, 3),
            &rat(1, 12),
        )
        .unwrap();
        assert_eq!(w.degree, Degree(vec![0, 1]));
        assert_eq!(w.root, Angle::from_fraction(1, 3));
        assert!(w.distance.is_zero());

        // target = v succeeds at degree zero
        let w = orbit_approx(&spec, &Angle::from_fraction(2, 7), &Angle::from_fraction(2, 7), &rat(1, 100)).unwrap();
        assert!(w.degree.is_zero());
        assert!(w.distance.is_zero());

        // 1/7 within 1/128: the first hit in (total, lex) order is the
        // 27th-root 4/27 at distance 4/27 − 1/7 = 1/189 (checked by hand
        // against the root spacings of every smaller degree)
        let w = orbit_approx(&spec, &Angle::zero(), &Angle::from_fraction(1, 7), &rat(1, 128)).unwrap();
        assert_eq!(w.degree, Degree(vec![0, 3]));
        assert_eq!(w.root, Angle::from_fraction(4, 27));
        assert_eq!(w.distance, rat(1, 189));
        // independent re-verification through roots()
        assert!(roots(&spec, &Angle::zero(), &w.degree).contains(&w.root));
    }

    #[test]
    fn contracting_examples() {
        let spec = spec23();
        let w = contracting_witness(&spec, &rat(1, 32)).unwrap();
        assert!(w.strictly_contracting && w.range_contained);
        assert_eq!(w.source_radius, rat(1, 16));

        assert!(matches!(
            contracting_witness(&spec, &rat(1, 4)),
            Err(TopoError::DeltaTooLarge(_))
        ));

        let w = contracting_witness(&spec, &rat(1, 10)).unwrap();
        assert!(w.strictly_contracting);
    }
}
