use std::hint::black_box;
use std::sync::Arc;

use bigfree::excision::{self, Excision};
use bigfree::exec::{self, Execution};
use bigfree::extension::{self, Strategy};
use bigfree::group::FiniteGroup;
use bigfree::hom::{Homomorphism, LetterRule};
use bigfree::realization::LengthAssignment;
use bigfree::tame::TameOracle;
use bigfree::verify;
use bigfree::Word;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn m_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("m-sweep");
    let iota = LengthAssignment::dyadic();
    let words: Vec<Word> = ["T(1,2) R(2,2)", "a1 T(2,2) R(1) a5", "R'(1) a3 T(2)"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    for w in &words {
        let ex = Excision::new(w, &iota, &TameOracle::fa()).unwrap();
        for (name, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(name, w), &ex, |b, ex| {
                b.iter(|| exec::try_map_range(mode, 1, 256, |m| ex.h(m)).unwrap())
            });
        }
    }
    group.finish();
}

fn configs(c: &mut Criterion) {
    let mut group = c.benchmark_group("config-sweep");
    group.sample_size(20);
    let cfgs = verify::configs(3, 64);
    for (name, mode) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| {
                exec::map(mode, &cfgs, |cfg| {
                    let ex = Excision::new(&cfg.word, &cfg.iota, &cfg.oracle).unwrap();
                    (1..=32).map(|m| ex.plan(m).unwrap().kept.len()).sum::<usize>()
                })
            })
        });
    }
    group.finish();
}

fn threshold(c: &mut Criterion) {
    let mut group = c.benchmark_group("threshold");
    let iota = LengthAssignment::dyadic();
    let h = TameOracle::fa();
    let (u, v): (Word, Word) = ("a1 T(2,2) R(1)".parse().unwrap(), "R'(1) a3 T(2)".parse().unwrap());
    for (name, mode) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| excision::threshold(black_box(&u), black_box(&v), &iota, &h, 64, mode).unwrap())
        });
    }
    group.finish();
}

fn extension(c: &mut Criterion) {
    let mut group = c.benchmark_group("extend");
    let g = Arc::new(FiniteGroup::symmetric(4).unwrap());
    let f = Homomorphism::new(g, TameOracle::fa(), LetterRule::periodic(vec![1, 7, 13]), vec![]).unwrap();
    let iota = LengthAssignment::dyadic();
    let w: Word = "T(1,2) R(2,2)".parse().unwrap();
    for (name, mode) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| extension::extend_eval(&w, &iota, &f, &Strategy::MinAccumulation, 256, mode).unwrap())
        });
    }
    group.finish();
}

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify-all");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(name, |b| b.iter(|| verify::run_all(mode)));
    }
    group.finish();
}

criterion_group!(benches, m_sweep, configs, threshold, extension, suites);
criterion_main!(benches);
