//! The end-to-end verification suite.
//!
//! Ten criteria cover the whole crate: exhaustive rewriting/coding
//! equivalence, coherence of the commutation tables, the Zappa–Szép axioms,
//! the right-LCM dichotomy, the ideal calculus against brute-force
//! membership, the independence verdicts against brute-force power search,
//! the operator relation suites with a window oracle, kernel witnesses for
//! dependent sizes, the product-system identities, and the path-space
//! arithmetic. Every check is exact; randomized corpora are seeded and
//! deterministic.

use std::sync::Arc;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ideals::{
    chain_ideal, intersect, is_right_lcm_monoid, min_common_extensions, ConstructibleIdeal,
};
use crate::independence::{is_simple, multiplicative_dependence, Dependence};
use crate::kgraph::{cubic_check, flip_tables, Degree, KGraphSpec, Letter, Word};
use crate::oper::{
    kernel_witness, verify_properties, verify_qn_homomorphism, verify_universal_relations,
    ExactScalar, Generator, L2Model, OpTerm,
};
use crate::oracle;
use crate::psystem::{
    verify_cp_covariance, verify_psi_isometry, verify_psi_left_action, verify_psi_multiplicative,
};
use crate::report::CheckReport;
use crate::selfsim::{
    act_closed, act_recursive, check_zs_axioms, words_up_to_length, LetterAction,
};
use crate::topo::{
    compose, contracting_witness, factorize_path, orbit_approx, roots, source, Angle, PathPoint,
};

pub const DEFAULT_SEED: u64 = 0x0d0_97a9;

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub report: CheckReport,
    pub millis: u128,
}

impl CriterionResult {
    pub fn pass(&self) -> bool {
        self.report.all_pass()
    }
}

/// Runs the ten criteria in order.
pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    let criteria: Vec<fn(u64) -> CheckReport> = vec![
        |_| rewriting_coding_equivalence(),
        |_| cubic_condition(),
        |_| zappa_szep_axioms(),
        |_| lcm_dichotomy(),
        ideal_oracle,
        |_| simplicity_oracle(),
        relation_suite,
        |_| kernel_witness_criterion(),
        |_| product_system_identities(),
        topological_graph,
    ];
    criteria
        .into_iter()
        .map(|f| {
            let start = Instant::now();
            let report = f(seed);
            CriterionResult {
                report,
                millis: start.elapsed().as_millis(),
            }
        })
        .collect()
}

/// 1. Every mixed word of length ≤ 5 over sizes (2,3,5) normalizes to the
/// decode of its code: the rewriting route and the coding route agree.
pub fn rewriting_coding_equivalence() -> CheckReport {
    let mut report = CheckReport::new("rewriting-coding-equivalence");
    let spec = KGraphSpec::standard(vec![2, 3, 5]).unwrap();
    let alphabet: Vec<Letter> = (0..spec.rank())
        .flat_map(|color| {
            (0..spec.alphabet(color)).map(move |symbol| Letter { color, symbol })
        })
        .collect();
    let mut checked: u64 = 0;
    for len in 0..=5usize {
        let mut digits = vec![0usize; len];
        loop {
            let letters: Vec<Letter> = digits.iter().map(|&d| alphabet[d]).collect();
            let word = Word::new(spec.clone(), letters).unwrap();
            let via_rewriting = word.normal_form();
            let (degree, code) = word.encode().unwrap();
            let via_coding = Word::decode(&spec, &degree, &code).unwrap();
            if via_rewriting.letters() != via_coding.letters() {
                report.fail(
                    "normal form equals decode∘encode",
                    format!("word {word}: {via_rewriting} vs {via_coding}"),
                );
                return report;
            }
            checked += 1;
            // advance the mixed-radix counter
            let mut pos = 0;
            loop {
                if pos == len {
                    break;
                }
                digits[pos] += 1;
                if digits[pos] < alphabet.len() {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == len {
                break;
            }
        }
    }
    report.pass(format!(
        "normal form equals decode∘encode on all {checked} words of length ≤ 5"
    ));
    report
}

/// 2. The coherence condition over triples: the standard tables for
/// (2,3,5) and the flip tables for (2,2,2) pass; a perturbed table fails
/// with a witness triple.
pub fn cubic_condition() -> CheckReport {
    let mut report = CheckReport::new("cubic-condition");

    let std235 = KGraphSpec::standard(vec![2, 3, 5]).unwrap();
    report.record(
        "standard tables (2,3,5)",
        cubic_check(&std235).is_ok(),
        None,
    );

    let flip = flip_tables(2, 3).unwrap();
    report.record("flip tables (2,2,2)", cubic_check(&flip).is_ok(), None);

    // standard (2,2,2) with one table perturbed by a transposition
    let table = |_: ()| -> Vec<Vec<(u64, u64)>> {
        (0..2u64)
            .map(|s| {
                (0..2u64)
                    .map(|t| {
                        let c = s + 2 * t;
                        (c % 2, c / 2)
                    })
                    .collect()
            })
            .collect()
    };
    let mut raw = std::collections::BTreeMap::new();
    raw.insert((0usize, 1usize), table(()));
    raw.insert((1, 2), table(()));
    let mut perturbed = table(());
    perturbed[0].swap(0, 1);
    raw.insert((0, 2), perturbed);
    let spec = KGraphSpec::with_tables(vec![2, 2, 2], raw).unwrap();
    match cubic_check(&spec) {
        Err(witness) => report.pass(format!(
            "perturbed table fails with witness at colors {:?} letters {:?}",
            witness.colors, witness.letters
        )),
        Ok(()) => report.fail(
            "perturbed table fails with witness",
            "perturbation went undetected",
        ),
    }
    report
}

/// 3. The Zappa–Szép axioms hold exhaustively for sizes (2,3) with
/// `g ∈ [−30,30]` and words of length ≤ 4, and the recursive and
/// closed-form evaluators agree on every case.
pub fn zappa_szep_axioms() -> CheckReport {
    let mut report = CheckReport::new("zappa-szep-axioms");
    let spec = KGraphSpec::standard(vec![2, 3]).unwrap();
    let outcomes = check_zs_axioms(&spec, &LetterAction::Odometer, 30, 4).unwrap();
    for outcome in outcomes {
        report.record(
            format!("axiom {}", outcome.axiom),
            outcome.counterexample.is_none(),
            outcome.counterexample,
        );
    }

    let words = words_up_to_length(&spec, 4);
    let mut agreements: u64 = 0;
    let mut divergence = None;
    'outer: for g in -30i64..=30 {
        let g = BigInt::from(g);
        for word in &words {
            let rec = act_recursive(&spec, &LetterAction::Odometer, &g, word).unwrap();
            let closed = act_closed(&spec, &g, word).unwrap();
            if rec != closed {
                divergence = Some(format!("g={g} word={word}"));
                break 'outer;
            }
            agreements += 1;
        }
    }
    report.record(
        format!("recursive = closed-form on {agreements} cases"),
        divergence.is_none(),
        divergence,
    );
    report
}

/// 4. Right-LCM dichotomy: over (2,3) every pair of words of length ≤ 3
/// with a common extension has exactly one minimal extension at the join
/// degree; over (2,4) the zero letters have exactly two and the monoid
/// fails the dichotomy with verified witness relations.
pub fn lcm_dichotomy() -> CheckReport {
    let mut report = CheckReport::new("lcm-dichotomy");
    let spec = KGraphSpec::standard(vec![2, 3]).unwrap();
    let words = words_up_to_length(&spec, 3);
    let mut pairs_with_extension: u64 = 0;
    let mut failure = None;
    'outer: for mu in &words {
        for nu in &words {
            let exts = min_common_extensions(mu, nu).unwrap();
            if exts.is_empty() {
                continue;
            }
            pairs_with_extension += 1;
            if exts.len() != 1 {
                failure = Some(format!("({mu}, {nu}) has {} minimal extensions", exts.len()));
                break 'outer;
            }
            let ext = &exts[0];
            let common = mu.multiply(&ext.alpha).unwrap();
            if common.degree() != mu.degree().join(&nu.degree())
                || common != nu.multiply(&ext.beta).unwrap()
            {
                failure = Some(format!("({mu}, {nu}) extension malformed"));
                break 'outer;
            }
        }
    }
    report.record(
        format!("(2,3): unique minimal extension on {pairs_with_extension} extendable pairs"),
        failure.is_none(),
        failure,
    );

    let spec24 = KGraphSpec::standard(vec![2, 4]).unwrap();
    let zero_pair = min_common_extensions(
        &Word::parse(&spec24, "x1:0").unwrap(),
        &Word::parse(&spec24, "x2:0").unwrap(),
    )
    .unwrap();
    report.record(
        "(2,4): zero letters have exactly 2 minimal extensions",
        zero_pair.len() == 2,
        Some(format!("found {}", zero_pair.len())),
    );
    match right_lcm_verdict(&spec24) {
        Some(detail) => report.pass(detail),
        None => report.fail("(2,4): dichotomy verdict", "expected failure with witness"),
    }
    match is_right_lcm_monoid(&spec).unwrap() {
        Ok(()) => report.pass("(2,3): right-LCM confirmed"),
        Err(_) => report.fail("(2,3): right-LCM confirmed", "unexpected witness"),
    }
    report
}

fn right_lcm_verdict(spec: &Arc<KGraphSpec>) -> Option<String> {
    match is_right_lcm_monoid(spec).unwrap() {
        Ok(()) => None,
        Err(failure) => Some(format!(
            "(2,4): not right-LCM, gcd {} with verified relations {} = {} and {} = {}",
            failure.gcd,
            failure.relation_skew.0,
            failure.relation_skew.1,
            failure.relation_plain.0,
            failure.relation_plain.1,
        )),
    }
}

fn random_word(rng: &mut ChaCha8Rng, spec: &Arc<KGraphSpec>, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let color = rng.gen_range(0..spec.rank());
            let symbol = rng.gen_range(0..spec.alphabet(color));
            Letter { color, symbol }
        })
        .collect();
    Word::new(Arc::clone(spec), letters).unwrap()
}

/// 5. Chain ideals agree with brute-force membership on seeded random
/// chains, and intersection is commutative, associative and idempotent on
/// the produced corpus.
pub fn ideal_oracle(seed: u64) -> CheckReport {
    let mut report = CheckReport::new("ideal-oracle");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let window = Degree(vec![2, 2]);

    for n in [vec![2u64, 3], vec![2, 4]] {
        let spec = KGraphSpec::standard(n.clone()).unwrap();
        let probe_words: Vec<Word> = window
            .degrees_below()
            .iter()
            .flat_map(|d| spec.words_of_degree(d))
            .collect();
        let mut ideals = vec![
            ConstructibleIdeal::full(spec.clone()),
            ConstructibleIdeal::empty(spec.clone()),
        ];
        let mut mismatch = None;
        for _ in 0..50 {
            let chain_len = rng.gen_range(1..=2);
            let pairs: Vec<(Word, Word)> = (0..chain_len)
                .map(|_| {
                    (
                        random_word(&mut rng, &spec, 2),
                        random_word(&mut rng, &spec, 2),
                    )
                })
                .collect();
            let ideal = chain_ideal(&spec, &pairs).unwrap();
            for word in &probe_words {
                let fast = ideal.contains(word).unwrap();
                let slow = oracle::chain_membership(&pairs, word).unwrap();
                if fast != slow {
                    mismatch = Some(format!(
                        "spec {n:?}: word {word} fast={fast} slow={slow}"
                    ));
                    break;
                }
            }
            if mismatch.is_some() {
                break;
            }
            ideals.push(ideal);
        }
        report.record(
            format!("{n:?}: 50 chains agree with brute-force membership"),
            mismatch.is_none(),
            mismatch,
        );

        // intersection laws on a sampled sub-corpus
        let sample: Vec<_> = ideals.iter().step_by(4).cloned().collect();
        let mut law_failure = None;
        'laws: for a in &sample {
            if intersect(a, a).unwrap() != *a {
                law_failure = Some("idempotence".to_string());
                break;
            }
            for b in &sample {
                let ab = intersect(a, b).unwrap();
                if ab != intersect(b, a).unwrap() {
                    law_failure = Some("commutativity".to_string());
                    break 'laws;
                }
                if ab.canonical_form() != ab {
                    law_failure = Some("canonical stability".to_string());
                    break 'laws;
                }
                for c in sample.iter().step_by(3) {
                    if intersect(&ab, c).unwrap()
                        != intersect(a, &intersect(b, c).unwrap()).unwrap()
                    {
                        law_failure = Some("associativity".to_string());
                        break 'laws;
                    }
                }
            }
        }
        report.record(
            format!("{n:?}: intersection laws on the corpus"),
            law_failure.is_none(),
            law_failure,
        );
    }
    report
}

/// 6. Simplicity verdicts: the named cases, plus exhaustive agreement with
/// the brute-force power search for every rank ≤ 3 size tuple with entries
/// ≤ 20 (exponent cap 8, complete for that range).
pub fn simplicity_oracle() -> CheckReport {
    let mut report = CheckReport::new("simplicity-oracle");

    let expect = |n: &[u64], simple: bool| -> (bool, Option<String>) {
        match multiplicative_dependence(n).unwrap() {
            Dependence::Independent => (simple, None),
            Dependence::Dependent(cert) => {
                (!simple, Some(format!("certificate {:?} = {:?}", cert.p, cert.q)))
            }
        }
    };
    let (ok, _) = expect(&[2, 3], true);
    report.record("(2,3) independent", ok, None);
    match multiplicative_dependence(&[2, 4]).unwrap() {
        Dependence::Dependent(cert)
            if cert.p == Degree(vec![2, 0]) && cert.q == Degree(vec![0, 1]) =>
        {
            report.pass("(2,4) dependent with certificate 2² = 4¹")
        }
        other => report.fail(
            "(2,4) dependent with certificate 2² = 4¹",
            format!("got {other:?}"),
        ),
    }
    let (ok, _) = expect(&[6, 10, 15], true);
    report.record("(6,10,15) independent", ok, None);
    let (ok, detail) = expect(&[9, 9], false);
    report.record("(m,m) dependent", ok, detail);

    let mut disagreement = None;
    let mut checked: u64 = 0;
    'sweep: for k in 1..=3usize {
        let mut tuple = vec![1u64; k];
        loop {
            checked += 1;
            let fast = matches!(
                multiplicative_dependence(&tuple).unwrap(),
                Dependence::Dependent(_)
            );
            let slow = oracle::brute_force_dependence(&tuple, 8).is_some();
            if fast != slow {
                disagreement = Some(format!("tuple {tuple:?}: fast={fast} slow={slow}"));
                break 'sweep;
            }
            // next tuple
            let mut pos = 0;
            loop {
                if pos == k {
                    break;
                }
                tuple[pos] += 1;
                if tuple[pos] <= 20 {
                    break;
                }
                tuple[pos] = 1;
                pos += 1;
            }
            if pos == k {
                break;
            }
        }
    }
    report.record(
        format!("exhaustive agreement with power search on {checked} size tuples"),
        disagreement.is_none(),
        disagreement,
    );
    report
}

fn random_term(rng: &mut ChaCha8Rng, spec: &Arc<KGraphSpec>) -> OpTerm {
    let mut gens = Vec::new();
    for _ in 0..rng.gen_range(1..=6) {
        let color = rng.gen_range(0..spec.rank());
        let symbol = rng.gen_range(0..spec.alphabet(color));
        let gen = match rng.gen_range(0..4) {
            0 => Generator::F,
            1 => Generator::FStar,
            2 => Generator::G(color, symbol),
            _ => Generator::GStar(color, symbol),
        };
        gens.push(gen);
    }
    let scalar = match rng.gen_range(0..4) {
        0 => ExactScalar::from_integer(rng.gen_range(-3i64..=3).max(1)),
        1 => ExactScalar::from_rational(BigRational::new(BigInt::one(), BigInt::from(2))),
        2 => ExactScalar::sqrt_integer(spec.alphabet(rng.gen_range(0..spec.rank()))),
        _ => ExactScalar::one(),
    };
    let head = OpTerm::scaled_word(scalar, gens);
    if rng.gen_bool(0.3) {
        head.add(&random_term(rng, spec))
    } else {
        head
    }
}

/// 7. The full relation suites pass for (2,3) and (2,4), and the canonical
/// semantics agrees with direct evaluation on `m ∈ [−200, 200]` for 100
/// seeded random terms.
pub fn relation_suite(seed: u64) -> CheckReport {
    let mut report = CheckReport::new("relation-suite");
    for n in [vec![2u64, 3], vec![2, 4]] {
        let model = L2Model::new(KGraphSpec::standard(n.clone()).unwrap());
        let universal = verify_universal_relations(&model).unwrap();
        report.record(
            format!("{n:?}: universal relations ({} checks)", universal.items.len()),
            universal.all_pass(),
            universal.first_failure().map(|i| i.label.clone()),
        );
        let properties = verify_properties(&model, 3, 5).unwrap();
        report.record(
            format!("{n:?}: derived properties ({} checks)", properties.items.len()),
            properties.all_pass(),
            properties.first_failure().map(|i| i.label.clone()),
        );
        let qn = verify_qn_homomorphism(&model).unwrap();
        report.record(
            format!("{n:?}: u/s_n presentation ({} checks)", qn.items.len()),
            qn.all_pass(),
            qn.first_failure().map(|i| i.label.clone()),
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7e57);
    let spec = KGraphSpec::standard(vec![2, 3]).unwrap();
    let model = L2Model::new(spec.clone());
    let mut bad_term = None;
    for _ in 0..100 {
        let term = random_term(&mut rng, &spec);
        if !oracle::eval_window_agrees(&model, &term, -200..=200).unwrap() {
            bad_term = Some(format!("term {term}"));
            break;
        }
    }
    report.record(
        "100 random terms agree with the window oracle on [−200,200]",
        bad_term.is_none(),
        bad_term,
    );
    report
}

/// 8. Kernel witnesses: for (2,4) the distinct words `x1:0 x1:0` and `x2:0`
/// have identical operator semantics `m ↦ 4m`; for (2,3) the verdict is
/// simple and no certificate exists.
pub fn kernel_witness_criterion() -> CheckReport {
    let mut report = CheckReport::new("kernel-witness");
    let spec = KGraphSpec::standard(vec![2, 4]).unwrap();
    let verdict = is_simple(&spec).unwrap();
    match (&verdict.certificate, &verdict.kernel_witness) {
        (Some(cert), Some(_)) => {
            let witness = kernel_witness(&spec, cert).unwrap();
            let expected_left = Word::parse(&spec, "x1:0 x1:0").unwrap();
            let expected_right = Word::parse(&spec, "x2:0").unwrap();
            report.record(
                "(2,4): witness words are x1:0 x1:0 and x2:0",
                witness.left == expected_left && witness.right == expected_right,
                Some(format!("{} vs {}", witness.left, witness.right)),
            );
            report.record(
                "(2,4): both act as m ↦ 4m",
                witness.power == BigUint::from(4u32),
                Some(witness.map_description.clone()),
            );
        }
        _ => report.fail("(2,4): dependence detected", "no certificate"),
    }
    let verdict = is_simple(&KGraphSpec::standard(vec![2, 3]).unwrap()).unwrap();
    report.record(
        "(2,3): simple, no certificate exists",
        verdict.simple && verdict.certificate.is_none(),
        None,
    );
    report
}

/// 9. Product-system identities over (2,3) for degrees `e₁, e₂, e₁+e₂` and
/// exponents in `[−6, 6]`: isometry, multiplicativity, left-action
/// intertwining and Cuntz–Pimsner covariance, all as exact canonical-form
/// equalities.
pub fn product_system_identities() -> CheckReport {
    let mut report = CheckReport::new("product-system-identities");
    let spec = KGraphSpec::standard(vec![2, 3]).unwrap();
    let degrees = [
        Degree(vec![1, 0]),
        Degree(vec![0, 1]),
        Degree(vec![1, 1]),
    ];

    let isometry = verify_psi_isometry(&spec, &degrees, 6).unwrap();
    report.record(
        format!("isometry identity ({} pairs)", isometry.items.len()),
        isometry.all_pass(),
        isometry.first_failure().map(|i| i.label.clone()),
    );
    let multiplicative = verify_psi_multiplicative(&spec, &degrees, 6).unwrap();
    report.record(
        format!("multiplicativity ({} pairs)", multiplicative.items.len()),
        multiplicative.all_pass(),
        multiplicative.first_failure().map(|i| i.label.clone()),
    );
    let left = verify_psi_left_action(&spec, &degrees, 6).unwrap();
    report.record(
        format!("left-action intertwining ({} cases)", left.items.len()),
        left.all_pass(),
        left.first_failure().map(|i| i.label.clone()),
    );
    for color in 0..spec.rank() {
        let cp = verify_cp_covariance(&spec, color).unwrap();
        report.record(
            format!("covariance at color {}", color + 1),
            cp.all_pass(),
            cp.first_failure().map(|i| i.label.clone()),
        );
    }
    report
}

/// 10. Path-space arithmetic: compose/factorize round-trips on 100 seeded
/// rational paths, orbit searches reach every target `a/b` with `b ≤ 64`
/// within `1/128` from the basepoint, and the contracting witness holds at
/// `δ = 1/32`.
pub fn topological_graph(seed: u64) -> CheckReport {
    let mut report = CheckReport::new("topological-graph");
    let spec = KGraphSpec::standard(vec![2, 3]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x70b0);

    let mut roundtrip_failure = None;
    for _ in 0..100 {
        let denom = rng.gen_range(1..=64u64);
        let numer = rng.gen_range(0..denom);
        let degree = Degree(vec![rng.gen_range(0..=3u32), rng.gen_range(0..=3u32)]);
        let x = PathPoint::new(
            Angle::from_fraction(numer as i64, denom as i64),
            degree.clone(),
        );
        let front = Degree(vec![
            rng.gen_range(0..=degree.0[0]),
            rng.gen_range(0..=degree.0[1]),
        ]);
        let (head, tail) = factorize_path(&spec, &x, &front).unwrap();
        let back = compose(&spec, &head, &tail).unwrap();
        if back != x || source(&spec, &head).angle != tail.angle {
            roundtrip_failure = Some(format!("path {x} front {front}"));
            break;
        }
    }
    report.record(
        "100 compose/factorize round-trips",
        roundtrip_failure.is_none(),
        roundtrip_failure,
    );

    let eps = BigRational::new(BigInt::one(), BigInt::from(128));
    let mut orbit_failure = None;
    let mut targets: u64 = 0;
    'orbit: for denom in 1..=64i64 {
        for numer in 0..denom {
            if num_integer::Integer::gcd(&numer, &denom) != 1 {
                continue;
            }
            targets += 1;
            let target = Angle::from_fraction(numer, denom);
            let witness = orbit_approx(&spec, &Angle::zero(), &target, &eps).unwrap();
            if witness.distance > eps
                || !roots(&spec, &Angle::zero(), &witness.degree).contains(&witness.root)
            {
                orbit_failure = Some(format!("target {target}"));
                break 'orbit;
            }
        }
    }
    report.record(
        format!("orbit reaches all {targets} targets with denominator ≤ 64 within 1/128"),
        orbit_failure.is_none(),
        orbit_failure,
    );

    let delta = BigRational::new(BigInt::one(), BigInt::from(32));
    match contracting_witness(&spec, &delta) {
        Ok(w) => report.record(
            "contracting witness at δ = 1/32",
            w.strictly_contracting && w.range_contained,
            Some(format!("source radius {}", w.source_radius)),
        ),
        Err(e) => report.fail("contracting witness at δ = 1/32", e.to_string()),
    }
    report
}
