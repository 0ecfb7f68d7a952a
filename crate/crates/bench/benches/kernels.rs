use std::hint::black_box;

use codedel::codes::{make_ar4ja, make_rln, make_rs, Ar4jaRate};
use codedel::delivery::{run_mixed_code_trial, SessionConfig};
use codedel::lifting::{lift_generator, LiftedCode};
use codedel::{BitMatrix, BitVec, Field};
use criterion::{criterion_group, criterion_main, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gf_mul(c: &mut Criterion) {
    let f = Field::gf256();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let pairs: Vec<(u16, u16)> = (0..4096).map(|_| (rng.gen_range(0..256), rng.gen_range(0..256))).collect();
    c.bench_function("gf256_mul_4096", |b| {
        b.iter(|| {
            let mut acc = 0u16;
            for &(x, y) in &pairs {
                acc ^= f.mul_raw(black_box(x), black_box(y));
            }
            acc
        })
    });
}

fn binary_rank(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let rows: Vec<BitVec> = (0..1024)
        .map(|_| BitVec::from_bools(&(0..1024).map(|_| rng.gen::<bool>()).collect::<Vec<_>>()))
        .collect();
    let m = BitMatrix::from_rows(1024, &rows);
    c.bench_function("binary_rank_1024", |b| b.iter(|| black_box(&m).rank()));
}

fn mixed_trial(c: &mut Criterion) {
    let f = Field::gf256();
    let sources: Vec<LiftedCode> = vec![
        lift_generator(&make_rln(160, 128, &f, 1).unwrap()),
        lift_generator(&make_rs(160, 128, &f).unwrap()),
        LiftedCode::binary_blocks(&make_ar4ja(1024, Ar4jaRate::R4_5).unwrap(), 8).unwrap(),
    ];
    let config = SessionConfig::mixed(160, 128, vec![43, 43, 42]);
    let mut trial = 0u64;
    c.bench_function("mixed_trial_43_43_42", |b| {
        b.iter(|| {
            trial += 1;
            run_mixed_code_trial(&config, &sources, trial).unwrap()
        })
    });
}

criterion_group!(benches, gf_mul, binary_rank, mixed_trial);
criterion_main!(benches);
