use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use braidloc::fixtures::{gyb31_operator, sl3_level3};
use braidloc::linalg::{kron, random_unitary};
use braidloc::{
    check_gybe, image_closure, markov_check, multiplicity_search, random_word, represent, tl_quotient_dims, EtaFormula,
    Tolerance,
};

fn linear_algebra(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let a = random_unitary(8, &mut rng);
    let b = random_unitary(4, &mut rng);
    c.bench_function("kron 8x8 by 4x4", |bench| bench.iter(|| kron(black_box(&a), black_box(&b))));

    let op = gyb31_operator();
    let word = random_word(5, 12, 7).unwrap();
    c.bench_function("represent n=5 length 12", |bench| bench.iter(|| represent(&op, black_box(&word))));
    c.bench_function("check_gybe 8x8", |bench| bench.iter(|| check_gybe(black_box(&op), Tolerance::default())));
}

fn group_and_trace(c: &mut Criterion) {
    let op = gyb31_operator();
    let mut group = c.benchmark_group("slow");
    group.sample_size(10);
    group.bench_function("image_closure n=3", |bench| bench.iter(|| image_closure(&op, 3, 100_000).unwrap()));
    group.bench_function("markov_check n=4 cap 6", |bench| {
        bench.iter(|| markov_check(&op, 4, 6, EtaFormula::HeckeRank3, Tolerance::default(), 0).unwrap())
    });
    group.finish();
}

fn combinatorics(c: &mut Criterion) {
    c.bench_function("tl_quotient_dims ell=6 n=6", |bench| bench.iter(|| tl_quotient_dims(6, black_box(6)).unwrap()));
    let f = sl3_level3();
    c.bench_function("multiplicity_search sl3 w=2", |bench| {
        bench.iter(|| multiplicity_search(&f, 2, 1, 4, 64).unwrap())
    });
}

criterion_group!(benches, linear_algebra, group_and_trace, combinatorics);
criterion_main!(benches);
