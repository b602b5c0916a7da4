//! Benchmarks for the hot exact kernels: rewriting, the whole-word action,
//! congruence-based extensions, ideal chains, independence verdicts and the
//! operator relation checks.

use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use odograph_core::ideals::{chain_ideal, min_common_extensions};
use odograph_core::independence::multiplicative_dependence;
use odograph_core::kgraph::{KGraphSpec, Letter, Word};
use odograph_core::oper::{verify_universal_relations, L2Model};
use odograph_core::selfsim::{act_closed, act_recursive, LetterAction};
use odograph_core::topo::{orbit_approx, Angle};
use num_rational::BigRational;

fn random_letters(rng: &mut ChaCha8Rng, spec: &Arc<KGraphSpec>, len: usize) -> Vec<Letter> {
    (0..len)
        .map(|_| {
            let color = rng.gen_range(0..spec.rank());
            Letter {
                color,
                symbol: rng.gen_range(0..spec.alphabet(color)),
            }
        })
        .collect()
}

fn bench_normal_form(c: &mut Criterion) {
    let spec = KGraphSpec::standard(vec![2, 3, 5]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    c.bench_function("normal_form/len64", |b| {
        b.iter_batched(
            || Word::new(spec.clone(), random_letters(&mut rng, &spec, 64)).unwrap(),
            |word| word.normal_form(),
            BatchSize::SmallInput,
        )
    });
}

fn bench_action(c: &mut Criterion) {
    let spec = KGraphSpec::standard(vec![2, 3]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let word = Word::new(spec.clone(), random_letters(&mut rng, &spec, 32))
        .unwrap()
        .normal_form();
    let g = BigInt::from(123456789i64);
    c.bench_function("act/closed_len32", |b| {
        b.iter(|| act_closed(&spec, &g, &word).unwrap())
    });
    c.bench_function("act/recursive_len32", |b| {
        b.iter(|| act_recursive(&spec, &LetterAction::Odometer, &g, &word).unwrap())
    });
}

fn bench_extensions(c: &mut Criterion) {
    let spec = KGraphSpec::standard(vec![2, 4]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    c.bench_function("min_common_extensions/len6", |b| {
        b.iter_batched(
            || {
                (
                    Word::new(spec.clone(), random_letters(&mut rng, &spec, 6)).unwrap(),
                    Word::new(spec.clone(), random_letters(&mut rng, &spec, 6)).unwrap(),
                )
            },
            |(mu, nu)| min_common_extensions(&mu, &nu).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

fn bench_chain_ideal(c: &mut Criterion) {
    let spec = KGraphSpec::standard(vec![2, 4]).unwrap();
    let w = |s: &str| Word::parse(&spec, s).unwrap();
    let pairs = vec![
        (w("x2:1"), w("x1:0 x1:1")),
        (w("x1:0"), w("x2:2")),
    ];
    c.bench_function("chain_ideal/len2", |b| {
        b.iter(|| chain_ideal(&spec, &pairs).unwrap())
    });
}

fn bench_independence(c: &mut Criterion) {
    c.bench_function("multiplicative_dependence/(6,10,15)", |b| {
        b.iter(|| multiplicative_dependence(&[6, 10, 15]).unwrap())
    });
    c.bench_function("multiplicative_dependence/(16,12,18)", |b| {
        b.iter(|| multiplicative_dependence(&[16, 12, 18]).unwrap())
    });
}

fn bench_relations(c: &mut Criterion) {
    let model = L2Model::new(KGraphSpec::standard(vec![2, 3]).unwrap());
    c.bench_function("verify_universal_relations/(2,3)", |b| {
        b.iter(|| verify_universal_relations(&model).unwrap())
    });
}

fn bench_orbit(c: &mut Criterion) {
    let spec = KGraphSpec::standard(vec![2, 3]).unwrap();
    let target = Angle::from_fraction(1, 97);
    let eps = BigRational::new(BigInt::from(1), BigInt::from(512));
    c.bench_function("orbit_approx/1-97@1-512", |b| {
        b.iter(|| orbit_approx(&spec, &Angle::zero(), &target, &eps).unwrap())
    });
}

criterion_group!(
    benches,
    bench_normal_form,
    bench_action,
    bench_extensions,
    bench_chain_ideal,
    bench_independence,
    bench_relations,
    bench_orbit
);
criterion_main!(benches);
