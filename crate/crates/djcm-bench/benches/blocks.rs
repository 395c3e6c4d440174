use criterion::{black_box, criterion_group, criterion_main, Criterion};

use djcm::dressed::numeric_diagonalizer;
use djcm::evolution::{initial_block_state, propagate, InitialAmplitudes};
use djcm::{block_spectrum, interaction_block, BlockIndex, Scenario, SystemParams};

fn bench_block_spectrum(c: &mut Criterion) {
    let p = SystemParams::resonant(1.0, 1.0, 1.3, 0.7, Scenario::I).unwrap();
    let h = interaction_block(&p, BlockIndex::new(7, 3));
    c.bench_function("block_spectrum", |b| {
        b.iter(|| block_spectrum(black_box(&h), false).unwrap())
    });
}

fn bench_numeric_diagonalizer(c: &mut Criterion) {
    let p = SystemParams::resonant(1.0, 1.0, 2.1, 1.9, Scenario::I).unwrap();
    let h = interaction_block(&p, BlockIndex::new(12, 5));
    c.bench_function("numeric_diagonalizer", |b| {
        b.iter(|| numeric_diagonalizer(black_box(&h)).unwrap())
    });
}

fn bench_propagate(c: &mut Criterion) {
    let p = SystemParams::resonant(1.0, 1.0, 1.0, 1.0, Scenario::I).unwrap();
    let h = interaction_block(&p, BlockIndex::new(0, 0));
    let amps = InitialAmplitudes::from_theta(Scenario::I, 0.4);
    let s0 = initial_block_state(Scenario::I, &amps, BlockIndex::new(0, 0)).unwrap();
    c.bench_function("propagate", |b| {
        b.iter(|| propagate(black_box(&s0), black_box(&h), 3.7).unwrap())
    });
}

criterion_group!(benches, bench_block_spectrum, bench_numeric_diagonalizer, bench_propagate);
criterion_main!(benches);
