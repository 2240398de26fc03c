//! Compares the sequential and rayon-parallel batch signature tables on a
//! realistic workload: mixed elements over (-1, theta) / Q(sqrt 2), whose
//! sign determinations exercise the exact interval refinement path.

use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use wittq_core::batch::{par_signature_table, signature_table};
use wittq_core::mixed::{HermitianDiagonal, MixedElement, SkewHermitianDiagonal};
use wittq_core::numberfield::{FieldElement, NumberField};
use wittq_core::parse::parse_polynomial;
use wittq_core::quat::{PureQuaternion, QuaternionAlgebra};
use wittq_core::rational::Rat;
use wittq_core::signpol::{SignatureContext, DEFAULT_SEARCH_BUDGET};
use wittq_core::witt::QuadraticForm;

fn nonzero_element(rng: &mut StdRng, field: &Arc<NumberField>) -> FieldElement {
    loop {
        let coeffs: Vec<Rat> = (0..field.degree())
            .map(|_| {
                Rat::new(
                    rng.random_range(-5i64..=5).into(),
                    rng.random_range(1i64..=2).into(),
                )
            })
            .collect();
        let e = FieldElement::new(field, coeffs);
        if !e.is_zero() {
            return e;
        }
    }
}

fn random_mixed(rng: &mut StdRng, algebra: &Arc<QuaternionAlgebra>) -> MixedElement {
    let field = algebra.field();
    let scalar = QuadraticForm::diagonal(
        field,
        (0..rng.random_range(1..=3))
            .map(|_| nonzero_element(rng, field))
            .collect(),
    )
    .unwrap();
    let herm = HermitianDiagonal::new(
        algebra,
        (0..rng.random_range(0..=2))
            .map(|_| nonzero_element(rng, field))
            .collect(),
    )
    .unwrap();
    let skew = SkewHermitianDiagonal::new(
        algebra,
        (0..rng.random_range(0..=2))
            .map(|_| loop {
                let z = PureQuaternion::from_ints(
                    algebra,
                    rng.random_range(-3i64..=3),
                    rng.random_range(-3i64..=3),
                    rng.random_range(-3i64..=3),
                );
                if z.is_invertible() {
                    break z;
                }
            })
            .collect(),
    )
    .unwrap();
    MixedElement::new(algebra, scalar, herm, skew).unwrap()
}

fn bench_signature_tables(c: &mut Criterion) {
    let k = NumberField::new(parse_polynomial("t^2-2").unwrap()).unwrap();
    let theta = FieldElement::generator(&k);
    let algebra = QuaternionAlgebra::new(&k, FieldElement::from_int(&k, -1), theta).unwrap();
    let mut ctx = SignatureContext::new(&algebra).unwrap();
    ctx.ensure_reference(DEFAULT_SEARCH_BUDGET).unwrap();
    let mut rng = StdRng::seed_from_u64(0xbe9c_0001);

    let mut group = c.benchmark_group("signature_table");
    for &size in &[32usize, 128] {
        let elements: Vec<MixedElement> =
            (0..size).map(|_| random_mixed(&mut rng, &algebra)).collect();
        group.bench_with_input(BenchmarkId::new("sequential", size), &elements, |b, els| {
            b.iter(|| signature_table(&ctx, els).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("parallel", size), &elements, |b, els| {
            b.iter(|| par_signature_table(&ctx, els).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_signature_tables);
criterion_main!(benches);
