//! Relation suites: every defining relation of the generator presentations
//! is checked as an exact canonical-form equality.

use std::sync::Arc;

use num_bigint::BigUint;

use super::{Generator, L2Model, Model, OpTerm, OperError};
use crate::independence::{zero_letter_power, DependenceCertificate};
use crate::kgraph::{KGraphSpec, Word};
use crate::report::CheckReport;

fn check(
    model: &L2Model,
    report: &mut CheckReport,
    label: String,
    left: &OpTerm,
    right: &OpTerm,
    m: Model,
) -> Result<(), OperError> {
    if model.op_equal(left, right, m)? {
        report.pass(label);
    } else {
        let witness = model
            .first_difference(left, right, m)?
            .unwrap_or_else(|| "canonical forms differ".into());
        report.fail(label, witness);
    }
    Ok(())
}

/// The universal presentation: per color the defect-free sum
/// `Σ_s g_{i,s} g_{i,s}^* = 1`, the shift intertwining
/// `f g_{i,s} = g_{i,s+1}` (wrapping to `g_{i,0} f` at the top letter),
/// the commutation squares, plus unitarity of `f` and isometry of every
/// `g_{i,s}`.
pub fn verify_universal_relations(model: &L2Model) -> Result<CheckReport, OperError> {
    let spec = Arc::clone(model.spec());
    let mut report = CheckReport::new("universal-relations");
    let m = Model::QFZ;

    for i in 0..spec.rank() {
        let n = spec.alphabet(i);
        let mut sum = OpTerm::zero();
        for s in 0..n {
            sum = sum.add(&OpTerm::word(vec![Generator::G(i, s), Generator::GStar(i, s)]));
        }
        check(
            model,
            &mut report,
            format!("defect-free(i={})", i + 1),
            &sum,
            &OpTerm::one(),
            m,
        )?;
        for s in 0..n {
            let left = OpTerm::word(vec![Generator::F, Generator::G(i, s)]);
            let right = if s + 1 < n {
                OpTerm::word(vec![Generator::G(i, s + 1)])
            } else {
                OpTerm::word(vec![Generator::G(i, 0), Generator::F])
            };
            check(
                model,
                &mut report,
                format!("shift(i={},s={s})", i + 1),
                &left,
                &right,
                m,
            )?;
            check(
                model,
                &mut report,
                format!("isometry(i={},s={s})", i + 1),
                &OpTerm::word(vec![Generator::GStar(i, s), Generator::G(i, s)]),
                &OpTerm::one(),
                m,
            )?;
        }
    }

    for i in 0..spec.rank() {
        for j in (i + 1)..spec.rank() {
            for s in 0..spec.alphabet(i) {
                for t in 0..spec.alphabet(j) {
                    let (tp, sp) = spec.theta(i, j, s, t);
                    check(
                        model,
                        &mut report,
                        format!("square(i={},j={},s={s},t={t})", i + 1, j + 1),
                        &OpTerm::word(vec![Generator::G(i, s), Generator::G(j, t)]),
                        &OpTerm::word(vec![Generator::G(j, tp), Generator::G(i, sp)]),
                        m,
                    )?;
                }
            }
        }
    }

    check(
        model,
        &mut report,
        "unitary(f f*)".into(),
        &OpTerm::word(vec![Generator::F, Generator::FStar]),
        &OpTerm::one(),
        m,
    )?;
    check(
        model,
        &mut report,
        "unitary(f* f)".into(),
        &OpTerm::word(vec![Generator::FStar, Generator::F]),
        &OpTerm::one(),
        m,
    )?;

    Ok(report)
}

/// Derived identities: zero letters of different colors commute,
/// `f^s g_{i,0} = g_{i,s}`, and the tower commutation
/// `f^{n_i^l · N} g_{i,0}^l = g_{i,0}^l f^N` over the sampled ranges.
pub fn verify_properties(
    model: &L2Model,
    l_max: u32,
    n_bound: i64,
) -> Result<CheckReport, OperError> {
    let spec = Arc::clone(model.spec());
    let mut report = CheckReport::new("derived-properties");
    let m = Model::QFZ;

    for i in 0..spec.rank() {
        for j in (i + 1)..spec.rank() {
            check(
                model,
                &mut report,
                format!("zero-letters-commute(i={},j={})", i + 1, j + 1),
                &OpTerm::word(vec![Generator::G(i, 0), Generator::G(j, 0)]),
                &OpTerm::word(vec![Generator::G(j, 0), Generator::G(i, 0)]),
                m,
            )?;
        }
    }

    for i in 0..spec.rank() {
        for s in 0..spec.alphabet(i) {
            let mut word = OpTerm::f_power(s as i64);
            word.push(Generator::G(i, 0));
            check(
                model,
                &mut report,
                format!("f-power-letter(i={},s={s})", i + 1),
                &OpTerm::word(word),
                &OpTerm::word(vec![Generator::G(i, s)]),
                m,
            )?;
        }
    }

    for i in 0..spec.rank() {
        let n = spec.alphabet(i) as i64;
        for l in 0..=l_max {
            let tower = n.pow(l);
            for big_n in -n_bound..=n_bound {
                let mut left = OpTerm::f_power(tower * big_n);
                left.extend(vec![Generator::G(i, 0); l as usize]);
                let mut right = vec![Generator::G(i, 0); l as usize];
                right.extend(OpTerm::f_power(big_n));
                check(
                    model,
                    &mut report,
                    format!("tower(i={},l={l},N={big_n})", i + 1),
                    &OpTerm::word(left),
                    &OpTerm::word(right),
                    m,
                )?;
            }
        }
    }

    Ok(report)
}

/// The `u`/`s_n` presentation and the substitution `f ↦ u`,
/// `g_{i,s} ↦ u^s s_{n_i}`.
///
/// Checks `s_n s_m = s_{nm}`, `u^n s_n = s_n u` and the partition of unity
/// `Σ_t u^t s_n s_n^* u^{-t} = 1` for every alphabet size and pairwise
/// product, then re-runs the universal relations with the substituted
/// generators. For rank one the two-relation presentation
/// `Σ u^i s (u^i s)^* = 1`, `u^n s = s u` is recorded explicitly.
pub fn verify_qn_homomorphism(model: &L2Model) -> Result<CheckReport, OperError> {
    let spec = Arc::clone(model.spec());
    let mut report = CheckReport::new("qn-homomorphism");
    let m = Model::QN;

    let mut sizes: Vec<u64> = spec.alphabet_sizes().to_vec();
    for a in spec.alphabet_sizes() {
        for b in spec.alphabet_sizes() {
            sizes.push(a * b);
        }
    }
    sizes.sort_unstable();
    sizes.dedup();

    for &n in &sizes {
        for &k in &sizes {
            check(
                model,
                &mut report,
                format!("s-multiplicative({n},{k})"),
                &OpTerm::word(vec![Generator::S(n), Generator::S(k)]),
                &OpTerm::word(vec![Generator::S(n * k)]),
                m,
            )?;
        }
        let mut left = OpTerm::u_power(n as i64);
        left.push(Generator::S(n));
        check(
            model,
            &mut report,
            format!("u-s-intertwine({n})"),
            &OpTerm::word(left),
            &OpTerm::word(vec![Generator::S(n), Generator::U]),
            m,
        )?;
        let mut sum = OpTerm::zero();
        for t in 0..n {
            let mut word = OpTerm::u_power(t as i64);
            word.push(Generator::S(n));
            word.push(Generator::SStar(n));
            word.extend(OpTerm::u_power(-(t as i64)));
            sum = sum.add(&OpTerm::word(word));
        }
        check(
            model,
            &mut report,
            format!("partition-of-unity({n})"),
            &sum,
            &OpTerm::one(),
            m,
        )?;
    }

    // substitution g_{i,s} ↦ u^s s_{n_i}, f ↦ u
    let subst = |i: usize, s: u64| -> Vec<Generator> {
        let mut word = OpTerm::u_power(s as i64);
        word.push(Generator::S(spec.alphabet(i)));
        word
    };
    for i in 0..spec.rank() {
        let n = spec.alphabet(i);
        let mut sum = OpTerm::zero();
        for s in 0..n {
            let word = subst(i, s);
            let mut full = word.clone();
            full.extend(word.iter().rev().map(Generator::adjoint));
            sum = sum.add(&OpTerm::word(full));
        }
        check(
            model,
            &mut report,
            format!("subst-defect-free(i={})", i + 1),
            &sum,
            &OpTerm::one(),
            m,
        )?;
        for s in 0..n {
            let mut left = vec![Generator::U];
            left.extend(subst(i, s));
            let right = if s + 1 < n {
                subst(i, s + 1)
            } else {
                let mut w = subst(i, 0);
                w.push(Generator::U);
                w
            };
            check(
                model,
                &mut report,
                format!("subst-shift(i={},s={s})", i + 1),
                &OpTerm::word(left),
                &OpTerm::word(right),
                m,
            )?;
        }
    }
    for i in 0..spec.rank() {
        for j in (i + 1)..spec.rank() {
            for s in 0..spec.alphabet(i) {
                for t in 0..spec.alphabet(j) {
                    let (tp, sp) = spec.theta(i, j, s, t);
                    let mut left = subst(i, s);
                    left.extend(subst(j, t));
                    let mut right = subst(j, tp);
                    right.extend(subst(i, sp));
                    check(
                        model,
                        &mut report,
                        format!("subst-square(i={},j={},s={s},t={t})", i + 1, j + 1),
                        &OpTerm::word(left),
                        &OpTerm::word(right),
                        m,
                    )?;
                }
            }
        }
    }

    if spec.rank() == 1 {
        let n = spec.alphabet(0);
        let mut sum = OpTerm::zero();
        for i in 0..n {
            let mut word = OpTerm::u_power(i as i64);
            word.push(Generator::S(n));
            let mut full = word.clone();
            full.extend(word.iter().rev().map(Generator::adjoint));
            sum = sum.add(&OpTerm::word(full));
        }
        check(
            model,
            &mut report,
            format!("rank-one-partition({n})"),
            &sum,
            &OpTerm::one(),
            m,
        )?;
        let mut left = OpTerm::u_power(n as i64);
        left.push(Generator::S(n));
        check(
            model,
            &mut report,
            format!("rank-one-intertwine({n})"),
            &OpTerm::word(left),
            &OpTerm::word(vec![Generator::S(n), Generator::U]),
            m,
        )?;
    }

    Ok(report)
}

/// Two distinct monoid words with identical operator semantics, produced
/// from a verified dependence `n^p = n^q`: both `∏ (x^i_0)^{p_i}` and
/// `∏ (x^i_0)^{q_i}` act by `m ↦ n^p · m`.
#[derive(Clone, Debug)]
pub struct KernelWitness {
    pub left: Word,
    pub right: Word,
    pub power: BigUint,
    pub map_description: String,
}

pub fn kernel_witness(
    spec: &Arc<KGraphSpec>,
    certificate: &DependenceCertificate,
) -> Result<KernelWitness, OperError> {
    // Re-validate: the powers must agree exactly and the exponents differ.
    let checked = DependenceCertificate::new(
        spec.alphabet_sizes(),
        certificate.p.clone(),
        certificate.q.clone(),
    )
    .map_err(|e| OperError::InvalidCertificate(e.to_string()))?;

    let left = zero_letter_power(spec, &checked.p)
        .map_err(|e| OperError::InvalidCertificate(e.to_string()))?;
    let right = zero_letter_power(spec, &checked.q)
        .map_err(|e| OperError::InvalidCertificate(e.to_string()))?;
    assert_ne!(left, right, "distinct exponents give distinct words");

    let to_term = |w: &Word| -> OpTerm {
        OpTerm::word(
            w.letters()
                .iter()
                .map(|l| Generator::G(l.color, l.symbol))
                .collect(),
        )
    };
    let model = L2Model::new(Arc::clone(spec));
    let equal = model.op_equal(&to_term(&left), &to_term(&right), Model::QFZ)?;
    assert!(equal, "verified certificate must collapse the two words");
    let power = spec.npow(&checked.p);
    Ok(KernelWitness {
        left,
        right,
        map_description: format!("m -> {power}m"),
        power,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kgraph::Degree;

    fn model(n: &[u64]) -> L2Model {
        L2Model::new(KGraphSpec::standard(n.to_vec()).unwrap())
    }

    #[test]
    fn universal_relations_hold() {
        for n in [vec![2, 3], vec![2, 4], vec![1, 2], vec![5]] {
            let report = verify_universal_relations(&model(&n)).unwrap();
            assert!(report.all_pass(), "{report:?}");
        }
    }

    #[test]
    fn corrupted_model_fails_defect_free() {
        // redefine g(1,1) to act like g(1,0): the defect-free sum double
        // counts the even class and misses the odd one
        let broken = model(&[2, 3]).override_generator(Generator::G(0, 1), 2, 0, 1, 1, 0);
        let report = verify_universal_relations(&broken).unwrap();
        assert!(!report.all_pass());
        let failing = report.first_failure().unwrap();
        assert_eq!(failing.label, "defect-free(i=1)");
        assert!(failing.detail.as_deref().unwrap_or("").contains("mod"));
    }

    #[test]
    fn derived_properties_hold() {
        let report = verify_properties(&model(&[2, 3]), 3, 5).unwrap();
        assert!(report.all_pass(), "{report:?}");
        // l = 0 / N = 0 instances are part of the sweep and pass trivially
        assert!(report
            .items
            .iter()
            .any(|item| item.label == "tower(i=1,l=0,N=0)" && item.pass));
    }

    #[test]
    fn qn_relations_hold() {
        for n in [vec![2, 3], vec![2, 4]] {
            let report = verify_qn_homomorphism(&model(&n)).unwrap();
            assert!(report.all_pass(), "{report:?}");
        }
        // rank one records the two-relation presentation
        let report = verify_qn_homomorphism(&model(&[2])).unwrap();
        assert!(report.all_pass());
        assert!(report
            .items
            .iter()
            .any(|item| item.label == "rank-one-partition(2)"));
    }

    #[test]
    fn kernel_witness_for_dependent_sizes() {
        let spec = KGraphSpec::standard(vec![2, 4]).unwrap();
        let cert = DependenceCertificate::new(
            spec.alphabet_sizes(),
            Degree(vec![2, 0]),
            Degree(vec![0, 1]),
        )
        .unwrap();
        let witness = kernel_witness(&spec, &cert).unwrap();
        assert_eq!(witness.left, Word::parse(&spec, "x1:0 x1:0").unwrap());
        assert_eq!(witness.right, Word::parse(&spec, "x2:0").unwrap());
        assert_eq!(witness.power, BigUint::from(4u32));

        // equal alphabets: the two unit words collapse
        let spec_mm = KGraphSpec::standard(vec![3, 3]).unwrap();
        let cert = DependenceCertificate::new(
            spec_mm.alphabet_sizes(),
            Degree(vec![1, 0]),
            Degree(vec![0, 1]),
        )
        .unwrap();
        let witness = kernel_witness(&spec_mm, &cert).unwrap();
        assert_eq!(witness.power, BigUint::from(3u32));

        // a bogus certificate is rejected before any operator work
        let bogus = DependenceCertificate {
            p: Degree(vec![1, 0]),
            q: Degree(vec![0, 1]),
        };
        assert!(matches!(
            kernel_witness(&spec, &bogus),
            Err(OperError::InvalidCertificate(_))
        ));
    }
}
