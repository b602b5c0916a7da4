//! Independent brute-force reference routes.
//!
//! Everything here deliberately avoids the fast machinery it is used to
//! check: chain membership walks multiply/factorize on words instead of
//! solving congruences, the dependence search enumerates powers instead of
//! eliminating, and the window comparison replays operator terms one
//! generator at a time.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::ideals::IdealError;
use crate::kgraph::{Degree, KGraphSpec, Word};
use crate::oper::{L2Model, Model, OpTerm, OperError};

/// Membership of `w` in the chain ideal `μ_n^{-1} ν_n ⋯ μ_1^{-1} ν_1 · F`,
/// decided by peeling the chain from the outside: `w` belongs iff
/// `μ_n w = ν_n u` for some `u` in the shorter chain, and the factorization
/// property makes `u` unique when it exists.
pub fn chain_membership(pairs: &[(Word, Word)], w: &Word) -> Result<bool, IdealError> {
    match pairs.split_last() {
        None => Ok(true),
        Some(((mu, nu), rest)) => {
            let extended = mu.multiply(w)?;
            let front = nu.degree();
            if !front.le(&extended.degree()) {
                return Ok(false);
            }
            let (head, tail) = extended.factorize(&front)?;
            if head != *nu {
                return Ok(false);
            }
            chain_membership(rest, &tail)
        }
    }
}

/// Whether two words admit a common extension, by enumerating every word at
/// the join degree and testing both prefixes through the rewriting-based
/// factorization.
pub fn has_common_extension_brute(a: &Word, b: &Word) -> Result<bool, IdealError> {
    let spec = a.spec();
    let join = a.degree().join(&b.degree());
    for w in spec.words_of_degree(&join) {
        let (pa, _) = w.factorize(&a.degree())?;
        if pa != *a {
            continue;
        }
        let (pb, _) = w.factorize(&b.degree())?;
        if pb == *b {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Foundation-set test evaluated from the definition: every word of degree
/// `≤ probe` must have a common extension with some member of the family.
pub fn is_exhaustive_brute(
    spec: &Arc<KGraphSpec>,
    family: &[Word],
    probe: &Degree,
) -> Result<bool, IdealError> {
    for degree in probe.degrees_below() {
        for w in spec.words_of_degree(&degree) {
            let mut covered = false;
            for alpha in family {
                if has_common_extension_brute(&w, alpha)? {
                    covered = true;
                    break;
                }
            }
            if !covered {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Searches for distinct exponent vectors `p ≠ q` with `n^p = n^q`, all
/// entries at most `max_exp`, by enumerating powers into a table. Returns
/// the lexicographically first collision.
///
/// For alphabet entries up to 20 and rank up to 3 an exponent cap of 8 is
/// complete: a minimal integer relation between the exponent rows is a
/// vector of 2×2 minors of entries bounded by the maximal prime exponents
/// (4 for 2, 2 for 3), so its components are at most 4·2+4·2 = 16, and the
/// realizable row pairs cap the bound at 8.
pub fn brute_force_dependence(n: &[u64], max_exp: u32) -> Option<(Degree, Degree)> {
    use num_bigint::BigUint;
    let pow_tables: Vec<Vec<BigUint>> = n
        .iter()
        .map(|&ni| {
            (0..=max_exp)
                .map(|e| BigUint::from(ni).pow(e))
                .collect()
        })
        .collect();
    let mut seen: BTreeMap<BigUint, Degree> = BTreeMap::new();
    let cap = Degree(vec![max_exp; n.len()]);
    for degree in cap.degrees_below() {
        let mut power = BigUint::from(1u32);
        for (i, &e) in degree.0.iter().enumerate() {
            if e > 0 {
                power *= &pow_tables[i][e as usize];
            }
        }
        if let Some(previous) = seen.get(&power) {
            return Some((previous.clone(), degree));
        }
        seen.insert(power, degree);
    }
    None
}

/// Compares the canonical-form semantics of a term against direct
/// generator-by-generator evaluation on every basis vector in the window.
pub fn eval_window_agrees(
    model: &L2Model,
    term: &OpTerm,
    window: std::ops::RangeInclusive<i64>,
) -> Result<bool, OperError> {
    let canonical = model.semantics(term, Model::QN)?;
    for m in window {
        let m = BigInt::from(m);
        let direct = model.eval(term, &m, Model::QN)?;
        let fast = canonical.apply(&m);
        if direct != fast {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::chain_ideal;
    use crate::selfsim::words_up_to_length;

    #[test]
    fn chain_oracle_matches_congruence_route() {
        let spec = KGraphSpec::standard(vec![2, 4]).unwrap();
        let w = |s: &str| Word::parse(&spec, s).unwrap();
        let chains = vec![
            vec![(w("x1:0"), w("x2:0"))],
            vec![(w("x1:0"), w("x1:1"))],
            vec![(w("x2:1"), w("x1:0 x1:1")), (w("x1:0"), w("x2:2"))],
        ];
        for pairs in chains {
            let ideal = chain_ideal(&spec, &pairs).unwrap();
            for word in words_up_to_length(&spec, 4) {
                if !word.degree().le(&Degree(vec![2, 2])) {
                    continue;
                }
                assert_eq!(
                    ideal.contains(&word).unwrap(),
                    chain_membership(&pairs, &word).unwrap(),
                    "word {word}"
                );
            }
        }
    }

    #[test]
    fn exhaustive_oracle_agrees() {
        let spec = KGraphSpec::standard(vec![2, 4]).unwrap();
        let w = |s: &str| Word::parse(&spec, s).unwrap();
        let families = vec![
            vec![w("x1:0"), w("x2:1"), w("x2:3")],
            vec![w("x1:0")],
            vec![w("x2:0"), w("x2:1"), w("x2:2"), w("x2:3")],
        ];
        for family in families {
            let fast = crate::ideals::is_exhaustive(&spec, &family, None)
                .unwrap()
                .exhaustive;
            let slow = is_exhaustive_brute(&spec, &family, &Degree(vec![1, 1])).unwrap();
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn dependence_search_examples() {
        assert!(brute_force_dependence(&[2, 3], 6).is_none());
        let (p, q) = brute_force_dependence(&[2, 4], 6).unwrap();
        // first collision in lexicographic order: 4¹ = 2²
        assert_eq!((p, q), (Degree(vec![0, 1]), Degree(vec![2, 0])));
        assert!(brute_force_dependence(&[6, 10, 15], 6).is_none());
        // the deep relation 16³·18⁴ = 12⁸ needs the full cap
        assert!(brute_force_dependence(&[16, 12, 18], 6).is_none());
        assert!(brute_force_dependence(&[16, 12, 18], 8).is_some());
    }
}
